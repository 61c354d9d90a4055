#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "folforge/default_vocabulary.hpp"
#include "folforge/error.hpp"
#include "folforge/formula.hpp"
#include "json.hpp"

namespace folforge {

struct PredicateEntry {
  std::string name;
  int arity = 1;
  std::vector<EntityClass> signature;

  bool operator==(const PredicateEntry&) const = default;
};

// Predicate lexicon plus entity lexemes keyed by class.
//
// File format (JSON):
//   {"predicates": [{"name": "LivesIn", "arity": 2,
//                    "signature": ["Person", "Location"]}, ...],
//    "entities": {"Person": ["chef", ...], "Location": ["zone", ...]}}
class Vocabulary {
 public:
  Vocabulary(std::vector<PredicateEntry> predicates,
             std::map<EntityClass, std::vector<std::string>> entities)
      : predicates_(std::move(predicates)), entities_(std::move(entities)) {
    validate();
  }

  static Vocabulary from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw VocabularyError("vocabulary must be an object");
    if (!doc.contains("predicates") || !doc["predicates"].is_array()) {
      throw VocabularyError("vocabulary is missing a 'predicates' array");
    }
    if (!doc.contains("entities") || !doc["entities"].is_object()) {
      throw VocabularyError("vocabulary is missing an 'entities' object");
    }
    std::vector<PredicateEntry> preds;
    for (const auto& p : doc["predicates"]) {
      PredicateEntry e;
      try {
        e.name = p.at("name").get<std::string>();
        e.arity = p.at("arity").get<int>();
        for (const auto& c : p.at("signature")) {
          const auto cls = entity_class_from_string(c.get<std::string>());
          if (!cls) {
            throw VocabularyError("unknown entity class '" +
                                  c.get<std::string>() + "' in predicate " +
                                  e.name);
          }
          e.signature.push_back(*cls);
        }
      } catch (const nlohmann::json::exception& ex) {
        throw VocabularyError(std::string("malformed predicate entry: ") +
                              ex.what());
      }
      preds.push_back(std::move(e));
    }
    std::map<EntityClass, std::vector<std::string>> ents;
    for (const auto& [key, list] : doc["entities"].items()) {
      const auto cls = entity_class_from_string(key);
      if (!cls) throw VocabularyError("unknown entity class '" + key + "'");
      if (!list.is_array()) {
        throw VocabularyError("entities for " + key + " must be a list");
      }
      auto& dst = ents[*cls];
      for (const auto& lex : list) {
        if (!lex.is_string()) {
          throw VocabularyError("entity lexemes must be strings");
        }
        dst.push_back(lex.get<std::string>());
      }
    }
    return Vocabulary(std::move(preds), std::move(ents));
  }

  static Vocabulary from_json_text(std::string_view text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw VocabularyError(std::string("vocabulary is not valid JSON: ") +
                            e.what());
    }
    return from_json(doc);
  }

  static Vocabulary load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open vocabulary file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
  }

  static const Vocabulary& builtin() {
    static const Vocabulary v = from_json_text(kDefaultVocabularyJson);
    return v;
  }

  nlohmann::json to_json() const {
    nlohmann::json doc;
    doc["predicates"] = nlohmann::json::array();
    for (const auto& p : predicates_) {
      nlohmann::json sig = nlohmann::json::array();
      for (EntityClass c : p.signature) sig.push_back(std::string(to_string(c)));
      doc["predicates"].push_back(
          {{"name", p.name}, {"arity", p.arity}, {"signature", sig}});
    }
    doc["entities"] = nlohmann::json::object();
    for (const auto& [cls, list] : entities_) {
      doc["entities"][std::string(to_string(cls))] = list;
    }
    return doc;
  }

  const std::vector<PredicateEntry>& predicates() const { return predicates_; }

  std::vector<const PredicateEntry*> predicates_with_arity(int arity) const {
    std::vector<const PredicateEntry*> out;
    for (const auto& p : predicates_) {
      if (p.arity == arity) out.push_back(&p);
    }
    return out;
  }

  // Empty when the class has no lexemes.
  const std::vector<std::string>& entities(EntityClass c) const {
    static const std::vector<std::string> kNone;
    auto it = entities_.find(c);
    return it == entities_.end() ? kNone : it->second;
  }

  std::vector<EntityClass> populated_classes() const {
    std::vector<EntityClass> out;
    for (const auto& [cls, list] : entities_) {
      if (!list.empty()) out.push_back(cls);
    }
    return out;
  }

  std::optional<int> arity_of(std::string_view name) const {
    for (const auto& p : predicates_) {
      if (p.name == name) return p.arity;
    }
    return std::nullopt;
  }

 private:
  // Words that would be read as operators once a formula is rendered or its
  // symbols rewritten to lexical items.
  static bool reserved(std::string_view w) {
    static const std::set<std::string_view> kReserved = {
        "forall", "exists", "xor", "No", "For", "All", "There", "Exists",
        "XOR",    "implies", "and", "or"};
    return kReserved.contains(w);
  }

  void validate() const {
    if (predicates_.empty()) throw VocabularyError("vocabulary has no predicates");
    std::set<std::string> names;
    for (const auto& p : predicates_) {
      if (!is_identifier(p.name) || !(p.name[0] >= 'A' && p.name[0] <= 'Z')) {
        throw VocabularyError("predicate name '" + p.name +
                              "' must be a CamelCase identifier");
      }
      if (reserved(p.name)) {
        throw VocabularyError("predicate name '" + p.name + "' is reserved");
      }
      if (p.arity != 1 && p.arity != 2) {
        throw VocabularyError("predicate " + p.name + " has arity " +
                              std::to_string(p.arity) + "; expected 1 or 2");
      }
      if (static_cast<int>(p.signature.size()) != p.arity) {
        throw VocabularyError("predicate " + p.name +
                              " signature length differs from its arity");
      }
      if (!names.insert(p.name).second) {
        throw VocabularyError("duplicate predicate name " + p.name);
      }
      for (EntityClass c : p.signature) {
        if (entities(c).empty()) {
          throw VocabularyError("predicate " + p.name + " uses class " +
                                std::string(to_string(c)) +
                                " which has no entities");
        }
      }
    }
    for (const auto& [cls, list] : entities_) {
      for (const auto& lex : list) {
        if (!is_identifier(lex) || reserved(lex)) {
          throw VocabularyError("entity lexeme '" + lex + "' of class " +
                                std::string(to_string(cls)) +
                                " is not a usable identifier");
        }
      }
    }
  }

  std::vector<PredicateEntry> predicates_;
  std::map<EntityClass, std::vector<std::string>> entities_;
};

}  // namespace folforge
