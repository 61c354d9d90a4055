#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "folforge/depth.hpp"
#include "folforge/error.hpp"
#include "folforge/formula.hpp"
#include "folforge/random.hpp"
#include "folforge/render.hpp"

namespace folforge {

enum class Grammar { Standard, Nested, Both };

inline std::string_view to_string(Grammar g) {
  switch (g) {
    case Grammar::Standard: return "standard";
    case Grammar::Nested: return "nested";
    case Grammar::Both: return "both";
  }
  return "?";
}

inline std::optional<Grammar> grammar_from_string(std::string_view s) {
  if (s == "standard") return Grammar::Standard;
  if (s == "nested") return Grammar::Nested;
  if (s == "both") return Grammar::Both;
  return std::nullopt;
}

struct GenerationConfig {
  Grammar grammar = Grammar::Both;
  int min_depth = 4;
  int max_depth = 10;
  int count = 1;
  std::uint64_t seed = 0;
  // Optional quantifier-depth window, enforced by rejection.
  std::optional<int> min_qd;
  std::optional<int> max_qd;

  void validate() const {
    if (min_depth < 1 || max_depth < 1) {
      throw DepthUnreachable("depth bounds must be positive");
    }
    if (min_depth > max_depth) {
      throw DepthUnreachable("min_depth " + std::to_string(min_depth) +
                             " exceeds max_depth " + std::to_string(max_depth));
    }
    if (count < 1) throw ConfigError("count must be at least 1");
    if (min_qd && max_qd && *min_qd > *max_qd) {
      throw DepthUnreachable("min_qd exceeds max_qd");
    }
    // A formula of structural depth d has at most d - 1 quantifiers.
    if (min_qd && *min_qd > max_depth - 1) {
      throw DepthUnreachable("min_qd " + std::to_string(*min_qd) +
                             " unreachable within max_depth " +
                             std::to_string(max_depth));
    }
    if (max_qd && *max_qd < 0) throw DepthUnreachable("max_qd is negative");
  }
};

// Symbol naming: A, B, ..., Z, A1, ..., Z1, A2, ...
inline std::string cyclic_name(std::size_t index, char base) {
  std::string s(1, static_cast<char>(base + index % 26));
  if (index >= 26) s += std::to_string(index / 26);
  return s;
}

namespace detail {

// Samples a derivation of exactly the requested structural depth.  Only
// productions that can still reach that depth are offered, so every draw
// lands inside the configured window without rejection.
class DerivationSampler {
 public:
  DerivationSampler(Rng& rng, bool nested) : rng_(rng), nested_(nested) {}

  Formula run(int depth) {
    Formula raw = expand(depth);
    return finalize(raw);
  }

 private:
  enum class Production { Negation, Binary, Quantifier, NestedUnary, NestedBinary };

  static constexpr std::string_view kVarTag = "#v";
  static constexpr std::string_view kConstTag = "#c";

  Formula expand(int depth) {
    if (depth <= 1) return plain_atom();
    const std::size_t n = nested_ ? 5 : 3;
    switch (static_cast<Production>(rng_.below(n))) {
      case Production::Negation:
        return Formula::negation(expand(depth - 1));
      case Production::Binary: {
        const auto op = static_cast<Connective>(rng_.below(4));
        // One side carries the exact depth, the other anything up to it.
        const bool deep_left = rng_.below(2) == 0;
        const int other = rng_.between(1, depth - 1);
        Formula left = expand(deep_left ? depth - 1 : other);
        Formula right = expand(deep_left ? other : depth - 1);
        return Formula::binary(op, std::move(left), std::move(right));
      }
      case Production::Quantifier: {
        const auto q = static_cast<Quantifier>(rng_.below(2));
        const std::size_t id = var_count_++;
        scope_.push_back(id);
        Formula body = expand(depth - 1);
        scope_.pop_back();
        return Formula::quantified(q, tag(kVarTag, id), std::move(body));
      }
      case Production::NestedUnary: {
        std::string pred = next_predicate();
        std::vector<Argument> args;
        args.emplace_back(expand(depth - 1));
        return Formula::atom(std::move(pred), std::move(args));
      }
      case Production::NestedBinary: {
        std::string pred = next_predicate();
        std::vector<Argument> args;
        args.emplace_back(expand(depth - 1));
        args.emplace_back(term());
        return Formula::atom(std::move(pred), std::move(args));
      }
    }
    return plain_atom();
  }

  Formula plain_atom() {
    std::string pred = next_predicate();
    const int arity = rng_.between(1, 2);
    std::vector<Argument> args;
    for (int i = 0; i < arity; ++i) args.emplace_back(term());
    return Formula::atom(std::move(pred), std::move(args));
  }

  // Uniform over the bound variables in scope, the constants introduced so
  // far, and one fresh constant.
  Term term() {
    const std::size_t options = scope_.size() + const_count_ + 1;
    const std::size_t k = rng_.below(options);
    if (k < scope_.size()) return Term::variable(tag(kVarTag, scope_[k]));
    const std::size_t c = k - scope_.size();
    if (c == const_count_) ++const_count_;
    return Term::constant(tag(kConstTag, c));
  }

  std::string next_predicate() { return cyclic_name(pred_count_++, 'A'); }

  static std::string tag(std::string_view kind, std::size_t id) {
    return std::string(kind) + std::to_string(id);
  }

  // Variables take letters in quantifier order; constants follow, in order
  // of first occurrence.
  std::string final_name(const std::string& placeholder) {
    const std::size_t id = std::stoul(placeholder.substr(2));
    if (placeholder.starts_with(kVarTag)) return cyclic_name(id, 'a');
    auto it = std::find(const_order_.begin(), const_order_.end(), id);
    std::size_t pos = static_cast<std::size_t>(it - const_order_.begin());
    if (it == const_order_.end()) {
      const_order_.push_back(id);
    }
    return cyclic_name(var_count_ + pos, 'a');
  }

  Formula finalize(const Formula& f) {
    return std::visit(
        Overloaded{
            [&](const Atom& a) {
              std::vector<Argument> args;
              args.reserve(a.args.size());
              for (const auto& arg : a.args) {
                if (const auto* t = std::get_if<Term>(&arg)) {
                  Term renamed = *t;
                  renamed.name = final_name(t->name);
                  args.emplace_back(std::move(renamed));
                } else {
                  args.emplace_back(finalize(std::get<Formula>(arg)));
                }
              }
              return Formula::atom(a.predicate, std::move(args));
            },
            [&](const Negation& n) {
              return Formula::negation(finalize(n.inner));
            },
            [&](const Binary& b) {
              Formula left = finalize(b.left);
              return Formula::binary(b.op, std::move(left), finalize(b.right));
            },
            [&](const Quantified& q) {
              std::string v = final_name(q.var);
              return Formula::quantified(q.quantifier, std::move(v),
                                         finalize(q.body));
            },
        },
        f.node().value);
  }

  Rng& rng_;
  bool nested_;
  std::size_t var_count_ = 0;
  std::size_t const_count_ = 0;
  std::size_t pred_count_ = 0;
  std::vector<std::size_t> scope_;
  std::vector<std::size_t> const_order_;
};

inline Formula sample(const GenerationConfig& cfg, Rng& rng, bool nested) {
  cfg.validate();
  const int depth = rng.between(cfg.min_depth, cfg.max_depth);
  return DerivationSampler(rng, nested).run(depth);
}

}  // namespace detail

// Standard grammar: F -> Atom | ¬F | (F op F) | Qx(F), expanded left to
// right, atoms over term arguments only.
inline Formula sample_standard(const GenerationConfig& cfg, Rng& rng) {
  return detail::sample(cfg, rng, false);
}

// Nested grammar: Standard plus Atom -> Pred(F) | Pred(F, t).
inline Formula sample_nested(const GenerationConfig& cfg, Rng& rng) {
  return detail::sample(cfg, rng, true);
}

struct GeneratedFormula {
  Formula formula;
  Grammar grammar;  // Standard or Nested, never Both
  std::string text;  // canonical symbolic render
};

// Draws cfg.count pairwise-distinct formulas.  With Grammar::Both the two
// grammars alternate per accepted sample, Standard first.  Duplicates and
// quantifier-depth violations are rejected and redrawn.
inline std::vector<GeneratedFormula> generate_corpus(const GenerationConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  std::vector<GeneratedFormula> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  std::unordered_set<std::string> seen;
  const std::uint64_t max_rejections = 1000ULL * static_cast<std::uint64_t>(cfg.count);
  std::uint64_t rejections = 0;

  while (out.size() < static_cast<std::size_t>(cfg.count)) {
    Grammar g = cfg.grammar;
    if (g == Grammar::Both) {
      g = out.size() % 2 == 0 ? Grammar::Standard : Grammar::Nested;
    }
    Formula f = g == Grammar::Standard ? sample_standard(cfg, rng)
                                       : sample_nested(cfg, rng);
    const int depth = structural_depth(f);
    const int qd = quantifier_depth(f);
    bool ok = depth >= cfg.min_depth && depth <= cfg.max_depth;
    if (cfg.min_qd && qd < *cfg.min_qd) ok = false;
    if (cfg.max_qd && qd > *cfg.max_qd) ok = false;
    std::string text = render(f);
    if (ok && seen.insert(text).second) {
      out.push_back({std::move(f), g, std::move(text)});
      rejections = 0;
      continue;
    }
    if (++rejections >= max_rejections) {
      throw ExhaustedSampling(
          "gave up after " + std::to_string(rejections) +
          " consecutive rejections with " + std::to_string(out.size()) +
          " of " + std::to_string(cfg.count) +
          " formulas accepted; the configuration is over-constrained");
    }
  }
  return out;
}

}  // namespace folforge
