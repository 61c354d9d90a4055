#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "folforge/formula.hpp"

namespace folforge {

enum class Style { Symbolic, Ascii };

namespace notation {

inline constexpr std::string_view kNot = "¬";      // ¬
inline constexpr std::string_view kAnd = "∧";      // ∧
inline constexpr std::string_view kOr = "∨";       // ∨
inline constexpr std::string_view kXor = "⊕";      // ⊕
inline constexpr std::string_view kImplies = "→";  // →
inline constexpr std::string_view kForAll = "∀";   // ∀
inline constexpr std::string_view kExists = "∃";   // ∃

inline std::string_view symbol(Connective op, Style style) {
  const bool sym = style == Style::Symbolic;
  switch (op) {
    case Connective::And: return sym ? kAnd : "&";
    case Connective::Or: return sym ? kOr : "|";
    case Connective::Xor: return sym ? kXor : "xor";
    case Connective::Implies: return sym ? kImplies : "->";
  }
  return "?";
}

inline std::string_view symbol(Quantifier q, Style style) {
  const bool sym = style == Style::Symbolic;
  switch (q) {
    case Quantifier::ForAll: return sym ? kForAll : "forall";
    case Quantifier::Exists: return sym ? kExists : "exists";
  }
  return "?";
}

inline std::string_view negation_symbol(Style style) {
  return style == Style::Symbolic ? kNot : "~";
}

// Binding strength, loosest first.  Unary and primary forms share the top.
inline int precedence(Connective op) {
  switch (op) {
    case Connective::Implies: return 1;
    case Connective::Xor: return 2;
    case Connective::Or: return 3;
    case Connective::And: return 4;
  }
  return 0;
}

inline bool is_associative(Connective op) {
  return op == Connective::And || op == Connective::Or;
}

inline constexpr int kUnaryPrecedence = 5;

}  // namespace notation

namespace detail {

inline int precedence_of(const Formula& f) {
  if (const auto* b = f.as<Binary>()) return notation::precedence(b->op);
  return notation::kUnaryPrecedence;
}

inline void render_into(std::string& out, const Formula& f, Style style);

inline void render_wrapped(std::string& out, const Formula& f, Style style,
                           bool parens) {
  if (parens) out += '(';
  render_into(out, f, style);
  if (parens) out += ')';
}

inline void render_into(std::string& out, const Formula& f, Style style) {
  std::visit(
      Overloaded{
          [&](const Atom& a) {
            out += a.predicate;
            out += '(';
            for (std::size_t i = 0; i < a.args.size(); ++i) {
              if (i > 0) out += ',';
              std::visit(Overloaded{
                             [&](const Term& t) { out += t.name; },
                             [&](const Formula& sub) {
                               render_into(out, sub, style);
                             },
                         },
                         a.args[i]);
            }
            out += ')';
          },
          [&](const Negation& n) {
            out += notation::negation_symbol(style);
            render_wrapped(out, n.inner, style, n.inner.as<Binary>() != nullptr);
          },
          [&](const Binary& b) {
            const int p = notation::precedence(b.op);
            const bool assoc = notation::is_associative(b.op);
            const int lp = precedence_of(b.left);
            const int rp = precedence_of(b.right);
            render_wrapped(out, b.left, style, lp < p || (lp == p && !assoc));
            out += ' ';
            out += notation::symbol(b.op, style);
            out += ' ';
            render_wrapped(out, b.right, style, rp <= p);
          },
          [&](const Quantified& q) {
            out += notation::symbol(q.quantifier, style);
            if (style == Style::Ascii) out += ' ';
            out += q.var;
            if (style == Style::Ascii) out += ' ';
            out += '(';
            render_into(out, q.body, style);
            out += ')';
          },
      },
      f.node().value);
}

}  // namespace detail

// Canonical text of a formula: minimal parentheses under the parser's
// precedence rules, plus mandatory parentheses around quantifier bodies.
inline std::string render(const Formula& f, Style style = Style::Symbolic) {
  std::string out;
  detail::render_into(out, f, style);
  return out;
}

}  // namespace folforge
