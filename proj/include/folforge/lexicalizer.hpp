#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "folforge/error.hpp"
#include "folforge/formula.hpp"
#include "folforge/random.hpp"
#include "folforge/vocabulary.hpp"

namespace folforge {

// Abstract predicate symbols produced by the generator: one capital letter
// optionally followed by digits (A, B, ..., Z, A1, ...).
inline bool is_abstract_predicate(std::string_view name) {
  if (name.empty() || !(name[0] >= 'A' && name[0] <= 'Z')) return false;
  for (char c : name.substr(1)) {
    if (!(c >= '0' && c <= '9')) return false;
  }
  return true;
}

// The term kept verbatim during lexicalization: the outermost quantified
// variable, or for quantifier-free formulas the first term that occurs.
inline std::optional<std::string> subject_term(const Formula& f) {
  std::optional<std::string> first_term;
  std::optional<std::string> first_var;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    if (first_var) return;
    std::visit(Overloaded{
                   [&](const Atom& a) {
                     for (const auto& arg : a.args) {
                       if (const auto* t = std::get_if<Term>(&arg)) {
                         if (!first_term) first_term = t->name;
                       } else {
                         self(self, std::get<Formula>(arg));
                       }
                     }
                   },
                   [&](const Negation& n) { self(self, n.inner); },
                   [&](const Binary& b) {
                     self(self, b.left);
                     self(self, b.right);
                   },
                   [&](const Quantified& q) { first_var = q.var; },
               },
               g.node().value);
  };
  walk(walk, f);
  return first_var ? first_var : first_term;
}

namespace detail {

class Lexicalizer {
 public:
  Lexicalizer(const Vocabulary& vocab, Rng& rng) : vocab_(vocab), rng_(rng) {}

  Formula run(const Formula& f) {
    subject_ = subject_term(f);
    assign(f);
    for (const auto& v : bound_order_) {
      if (!lexeme_.contains(v) && v != subject_) {
        const auto classes = vocab_.populated_classes();
        if (classes.empty()) {
          throw NoMatchingPredicate("vocabulary has no entities");
        }
        draw_lexeme(v, classes[rng_.below(classes.size())]);
      }
    }
    return rebuild(f);
  }

 private:
  // Pre-order pass deciding every draw, so the random stream is consumed in
  // left-to-right reading order.
  void assign(const Formula& f) {
    std::visit(
        Overloaded{
            [&](const Atom& a) {
              const int arity = static_cast<int>(a.args.size());
              const auto key = std::make_pair(a.predicate, arity);
              auto it = predicate_.find(key);
              if (it == predicate_.end()) {
                const auto options = vocab_.predicates_with_arity(arity);
                if (options.empty()) {
                  throw NoMatchingPredicate(
                      "vocabulary has no predicate of arity " +
                      std::to_string(arity) + " for " + a.predicate);
                }
                it = predicate_.emplace(key, options[rng_.below(options.size())])
                         .first;
              }
              const PredicateEntry& entry = *it->second;
              for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (const auto* t = std::get_if<Term>(&a.args[i])) {
                  if (t->name == subject_ || lexeme_.contains(t->name)) continue;
                  draw_lexeme(t->name, entry.signature[i]);
                } else {
                  assign(std::get<Formula>(a.args[i]));
                }
              }
            },
            [&](const Negation& n) { assign(n.inner); },
            [&](const Binary& b) {
              assign(b.left);
              assign(b.right);
            },
            [&](const Quantified& q) {
              bound_order_.push_back(q.var);
              assign(q.body);
            },
        },
        f.node().value);
  }

  // Distinct symbols get distinct lexemes while the class list allows it, so
  // lexicalization never merges two variables.
  void draw_lexeme(const std::string& symbol, EntityClass cls) {
    const auto& all = vocab_.entities(cls);
    std::vector<const std::string*> fresh;
    for (const auto& w : all) {
      if (!used_.contains(w)) fresh.push_back(&w);
    }
    const std::string& word =
        fresh.empty() ? all[rng_.below(all.size())]
                      : *fresh[rng_.below(fresh.size())];
    used_.insert(word);
    lexeme_.emplace(symbol, std::make_pair(word, cls));
  }

  Term rename(const Term& t) const {
    if (t.name == subject_) return t;
    auto it = lexeme_.find(t.name);
    if (it == lexeme_.end()) return t;
    if (t.kind == Term::Kind::Variable) return Term::variable(it->second.first);
    return Term::lexeme(it->second.first, it->second.second);
  }

  Formula rebuild(const Formula& f) const {
    return std::visit(
        Overloaded{
            [&](const Atom& a) {
              std::vector<Argument> args;
              args.reserve(a.args.size());
              for (const auto& arg : a.args) {
                if (const auto* t = std::get_if<Term>(&arg)) {
                  args.emplace_back(rename(*t));
                } else {
                  args.emplace_back(rebuild(std::get<Formula>(arg)));
                }
              }
              const auto key =
                  std::make_pair(a.predicate, static_cast<int>(a.args.size()));
              return Formula::atom(predicate_.at(key)->name, std::move(args));
            },
            [&](const Negation& n) { return Formula::negation(rebuild(n.inner)); },
            [&](const Binary& b) {
              return Formula::binary(b.op, rebuild(b.left), rebuild(b.right));
            },
            [&](const Quantified& q) {
              std::string v = q.var;
              if (v != subject_) {
                if (auto it = lexeme_.find(v); it != lexeme_.end()) {
                  v = it->second.first;
                }
              }
              return Formula::quantified(q.quantifier, std::move(v),
                                         rebuild(q.body));
            },
        },
        f.node().value);
  }

  const Vocabulary& vocab_;
  Rng& rng_;
  std::optional<std::string> subject_;
  std::map<std::pair<std::string, int>, const PredicateEntry*> predicate_;
  std::map<std::string, std::pair<std::string, EntityClass>> lexeme_;
  std::set<std::string> used_;
  std::vector<std::string> bound_order_;
};

}  // namespace detail

// Fills an abstract formula with vocabulary items.  Each abstract predicate
// (per name and arity) maps to one uniformly drawn predicate of that arity;
// every other term symbol maps to one lexeme drawn from the entity class of
// the argument position where it first occurs.  The subject term (see
// subject_term) is left untouched.
inline Formula lexicalize(const Formula& f, const Vocabulary& vocab, Rng& rng) {
  return detail::Lexicalizer(vocab, rng).run(f);
}

// Same node kinds, connectives, quantifiers, predicate arities and argument
// kinds.  Names are ignored, and constants may have become lexemes.
inline bool structurally_isomorphic(const Formula& a, const Formula& b) {
  if (a.node().value.index() != b.node().value.index()) return false;
  return std::visit(
      Overloaded{
          [&](const Atom& x) {
            const auto& y = *b.as<Atom>();
            if (x.args.size() != y.args.size()) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              const auto* tx = std::get_if<Term>(&x.args[i]);
              const auto* ty = std::get_if<Term>(&y.args[i]);
              if ((tx == nullptr) != (ty == nullptr)) return false;
              if (tx != nullptr) {
                const bool vx = tx->kind == Term::Kind::Variable;
                const bool vy = ty->kind == Term::Kind::Variable;
                if (vx != vy) return false;
              } else if (!structurally_isomorphic(std::get<Formula>(x.args[i]),
                                                  std::get<Formula>(y.args[i]))) {
                return false;
              }
            }
            return true;
          },
          [&](const Negation& x) {
            return structurally_isomorphic(x.inner, b.as<Negation>()->inner);
          },
          [&](const Binary& x) {
            const auto& y = *b.as<Binary>();
            return x.op == y.op && structurally_isomorphic(x.left, y.left) &&
                   structurally_isomorphic(x.right, y.right);
          },
          [&](const Quantified& x) {
            const auto& y = *b.as<Quantified>();
            return x.quantifier == y.quantifier &&
                   structurally_isomorphic(x.body, y.body);
          },
      },
      a.node().value);
}

}  // namespace folforge
