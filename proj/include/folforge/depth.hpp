#pragma once

#include <algorithm>
#include <variant>

#include "folforge/formula.hpp"

namespace folforge {

// Quantifier depth.  Atoms are 0 unless they carry formula-valued
// arguments, in which case they take the maximum over those arguments;
// negation is transparent; binary connectives take the max of both sides;
// each quantifier adds one.
inline int quantifier_depth(const Formula& f) {
  return std::visit(
      Overloaded{
          [](const Atom& a) {
            int d = 0;
            for (const auto& arg : a.args) {
              if (const auto* sub = std::get_if<Formula>(&arg)) {
                d = std::max(d, quantifier_depth(*sub));
              }
            }
            return d;
          },
          [](const Negation& n) { return quantifier_depth(n.inner); },
          [](const Binary& b) {
            return std::max(quantifier_depth(b.left),
                            quantifier_depth(b.right));
          },
          [](const Quantified& q) { return quantifier_depth(q.body) + 1; },
      },
      f.node().value);
}

// Height of the AST, counting Atom, Negation, Binary and Quantified nodes as
// one level each and terms as nothing.  Formula-valued atom arguments are
// counted through, so a plain atom has depth 1.
inline int structural_depth(const Formula& f) {
  return std::visit(
      Overloaded{
          [](const Atom& a) {
            int d = 0;
            for (const auto& arg : a.args) {
              if (const auto* sub = std::get_if<Formula>(&arg)) {
                d = std::max(d, structural_depth(*sub));
              }
            }
            return d + 1;
          },
          [](const Negation& n) { return structural_depth(n.inner) + 1; },
          [](const Binary& b) {
            return std::max(structural_depth(b.left),
                            structural_depth(b.right)) +
                   1;
          },
          [](const Quantified& q) { return structural_depth(q.body) + 1; },
      },
      f.node().value);
}

}  // namespace folforge
