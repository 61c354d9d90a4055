#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace folforge {

enum class Connective { And, Or, Implies, Xor };
enum class Quantifier { ForAll, Exists };

enum class EntityClass {
  Person,
  Organization,
  Location,
  Field,
  Object,
  Animal,
  Drink
};

inline constexpr std::array<EntityClass, 7> kEntityClasses = {
    EntityClass::Person, EntityClass::Organization, EntityClass::Location,
    EntityClass::Field,  EntityClass::Object,       EntityClass::Animal,
    EntityClass::Drink};

inline std::string_view to_string(EntityClass c) {
  switch (c) {
    case EntityClass::Person: return "Person";
    case EntityClass::Organization: return "Organization";
    case EntityClass::Location: return "Location";
    case EntityClass::Field: return "Field";
    case EntityClass::Object: return "Object";
    case EntityClass::Animal: return "Animal";
    case EntityClass::Drink: return "Drink";
  }
  return "?";
}

inline std::optional<EntityClass> entity_class_from_string(std::string_view s) {
  for (EntityClass c : kEntityClasses) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

// Identifiers are drawn from [A-Za-z][A-Za-z0-9_]*.
inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  const auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  if (!alpha(s.front())) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '_') return false;
  }
  return true;
}

struct Term {
  enum class Kind { Variable, Constant, Lexeme };

  Kind kind = Kind::Constant;
  std::string name;
  // Set only for Lexeme terms.
  std::optional<EntityClass> entity_class;

  static Term variable(std::string name) {
    return {Kind::Variable, std::move(name), std::nullopt};
  }
  static Term constant(std::string name) {
    return {Kind::Constant, std::move(name), std::nullopt};
  }
  static Term lexeme(std::string text, EntityClass c) {
    return {Kind::Lexeme, std::move(text), c};
  }

  bool operator==(const Term&) const = default;
};

struct Node;

// Immutable formula handle.  Copies share structure; nodes are never mutated
// after construction, so values may be shared freely between threads.
class Formula {
 public:
  using Argument = std::variant<Term, Formula>;

  static Formula atom(std::string predicate, std::vector<Argument> args);
  static Formula negation(Formula inner);
  static Formula binary(Connective op, Formula left, Formula right);
  static Formula quantified(Quantifier q, std::string var, Formula body);

  const Node& node() const { return *node_; }

  template <typename T>
  const T* as() const;

  bool operator==(const Formula& other) const;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using Argument = Formula::Argument;

struct Atom {
  std::string predicate;
  std::vector<Argument> args;
  bool operator==(const Atom&) const = default;
};

struct Negation {
  Formula inner;
  bool operator==(const Negation&) const = default;
};

struct Binary {
  Connective op;
  Formula left;
  Formula right;
  bool operator==(const Binary&) const = default;
};

struct Quantified {
  Quantifier quantifier;
  std::string var;
  Formula body;
  bool operator==(const Quantified&) const = default;
};

struct Node {
  std::variant<Atom, Negation, Binary, Quantified> value;
};

inline Formula Formula::atom(std::string predicate, std::vector<Argument> args) {
  return Formula(std::make_shared<const Node>(
      Node{Atom{std::move(predicate), std::move(args)}}));
}

inline Formula Formula::negation(Formula inner) {
  return Formula(std::make_shared<const Node>(Node{Negation{std::move(inner)}}));
}

inline Formula Formula::binary(Connective op, Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(
      Node{Binary{op, std::move(left), std::move(right)}}));
}

inline Formula Formula::quantified(Quantifier q, std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Quantified{q, std::move(var), std::move(body)}}));
}

template <typename T>
const T* Formula::as() const {
  return std::get_if<T>(&node_->value);
}

inline bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  return node_->value == other.node_->value;
}

// Helper for std::visit with a set of lambdas.
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Convenience builders used mostly by tests and examples.
inline Argument var(std::string name) { return Term::variable(std::move(name)); }
inline Argument cst(std::string name) { return Term::constant(std::move(name)); }

inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }

inline bool has_formula_arguments(const Formula& f) {
  return std::visit(
      Overloaded{
          [](const Atom& a) {
            for (const auto& arg : a.args) {
              if (std::holds_alternative<Formula>(arg)) return true;
            }
            return false;
          },
          [](const Negation& n) { return has_formula_arguments(n.inner); },
          [](const Binary& b) {
            return has_formula_arguments(b.left) ||
                   has_formula_arguments(b.right);
          },
          [](const Quantified& q) { return has_formula_arguments(q.body); },
      },
      f.node().value);
}

}  // namespace folforge
