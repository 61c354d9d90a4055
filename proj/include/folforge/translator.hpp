#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "folforge/error.hpp"
#include "folforge/formula.hpp"
#include "folforge/lexicalizer.hpp"

namespace folforge {

namespace detail {

inline std::vector<std::string> split_camel_case(std::string_view name) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : name) {
    if (c == '_') {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c)) && !cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
    cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

// Third-person singular of a bare verb ("like" -> "likes").
inline std::string inflect(const std::string& verb) {
  static const std::vector<std::string_view> kModals = {
      "is", "can", "could", "will", "would", "should", "must", "may", "might",
      "has", "does"};
  for (auto m : kModals) {
    if (verb == m) return verb;
  }
  if (verb.ends_with("s")) return verb;
  if (verb.ends_with("ch") || verb.ends_with("sh") || verb.ends_with("x") ||
      verb.ends_with("z") || verb.ends_with("o")) {
    return verb + "es";
  }
  if (verb.size() > 1 && verb.ends_with("y") &&
      std::string_view("aeiou").find(verb[verb.size() - 2]) ==
          std::string_view::npos) {
    return verb.substr(0, verb.size() - 1) + "ies";
  }
  if (verb == "have") return "has";
  return verb + "s";
}

// "LivesIn" -> "lives in", "IsHappy" -> "is happy", "Like" -> "likes".
inline std::string predicate_phrase(std::string_view name) {
  auto words = split_camel_case(name);
  if (words.empty()) return std::string(name);
  words[0] = inflect(words[0]);
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

inline std::string clause(const Formula& f);

inline std::string argument_text(const Argument& arg) {
  if (const auto* t = std::get_if<Term>(&arg)) return t->name;
  return "the claim that " + clause(std::get<Formula>(arg));
}

inline std::string atom_clause(const Atom& a) {
  if (is_abstract_predicate(a.predicate)) {
    throw UnlexicalizedInput("abstract predicate symbol " + a.predicate +
                             " remains; lexicalize the formula first");
  }
  const std::string phrase = predicate_phrase(a.predicate);
  std::string out;
  if (const auto* sub = std::get_if<Formula>(&a.args.front())) {
    out = "it holds of " + clause(*sub) + " that " + phrase;
  } else {
    out = std::get<Term>(a.args.front()).name + " " + phrase;
  }
  for (std::size_t i = 1; i < a.args.size(); ++i) {
    out += i == 1 ? " " : " and ";
    out += argument_text(a.args[i]);
  }
  return out;
}

inline std::string clause(const Formula& f) {
  return std::visit(
      Overloaded{
          [](const Atom& a) { return atom_clause(a); },
          [](const Negation& n) {
            return "it is not the case that " + clause(n.inner);
          },
          [](const Binary& b) {
            const std::string l = clause(b.left);
            const std::string r = clause(b.right);
            switch (b.op) {
              case Connective::And: return l + " and " + r;
              case Connective::Or: return l + " or " + r;
              case Connective::Implies: return "if " + l + ", then " + r;
              case Connective::Xor: return "either " + l + " or " + r + ", but not both";
            }
            return l;
          },
          [](const Quantified& q) {
            if (q.quantifier == Quantifier::ForAll) {
              return "for every " + q.var + ", " + clause(q.body);
            }
            return "there exists some " + q.var + " such that " + clause(q.body);
          },
      },
      f.node().value);
}

}  // namespace detail

// Rule-based English rendering of a lexicalized formula.  One template per
// node kind; the result starts with a capital letter and ends with a period.
inline std::string translate(const Formula& f) {
  std::string s = detail::clause(f);
  if (!s.empty()) {
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  }
  s += '.';
  return s;
}

}  // namespace folforge
