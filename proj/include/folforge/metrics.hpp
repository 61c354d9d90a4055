#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folforge/error.hpp"
#include "folforge/utf8.hpp"

namespace folforge {

struct PairScore {
  std::size_t edit_distance = 0;
  double normalized_score = 0.0;
  double bleu = 0.0;
};

struct MetricsReport {
  std::vector<PairScore> per_pair;
  // Index into the caller's input for each entry of per_pair.
  std::vector<std::size_t> source_index;
  double avg_distance = 0.0;
  double avg_score = 0.0;
  double avg_bleu = 0.0;
  std::size_t n_pairs = 0;
};

struct BleuOptions {
  int max_order = 4;
  double epsilon = 1e-3;
};

// Character-level (code point) edit distance with unit costs.
inline std::size_t levenshtein(std::string_view candidate,
                               std::string_view reference) {
  std::u32string a = utf8::decode(candidate);
  std::u32string b = utf8::decode(reference);
  // Common prefix and suffix never need edits.
  std::size_t lo = 0;
  while (lo < a.size() && lo < b.size() && a[lo] == b[lo]) ++lo;
  std::size_t ea = a.size(), eb = b.size();
  while (ea > lo && eb > lo && a[ea - 1] == b[eb - 1]) {
    --ea;
    --eb;
  }
  std::u32string_view x(a.data() + lo, ea - lo);
  std::u32string_view y(b.data() + lo, eb - lo);
  if (x.size() < y.size()) std::swap(x, y);
  if (y.empty()) return x.size();

  std::vector<std::size_t> row(y.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = x[i - 1] == y[j - 1] ? 0 : 1;
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[y.size()];
}

inline std::size_t token_count(std::string_view s) {
  return utf8::split_whitespace(s).size();
}

// Character edits divided by the longer whitespace-token length of the pair.
// Not bounded by 1.
inline double normalized_score(std::string_view candidate,
                               std::string_view reference) {
  const std::size_t denom =
      std::max(token_count(candidate), token_count(reference));
  if (denom == 0) {
    throw DegenerateInput("normalized score undefined: both strings are empty");
  }
  return static_cast<double>(levenshtein(candidate, reference)) /
         static_cast<double>(denom);
}

// Sentence BLEU against a single reference.
//
//   p_n  = clipped n-gram matches / (candidate n-grams + eps), floored at eps
//   BP   = 1 if c > r, else exp(1 - r / (c + eps))
//   BLEU = BP * exp(mean_n ln p_n),  n = 1..max_order
inline double bleu(std::string_view candidate, std::string_view reference,
                   const BleuOptions& opts = {}) {
  const auto cand = utf8::split_whitespace(candidate);
  const auto ref = utf8::split_whitespace(reference);
  const double eps = opts.epsilon;

  double log_sum = 0.0;
  for (int n = 1; n <= opts.max_order; ++n) {
    const std::size_t order = static_cast<std::size_t>(n);
    std::map<std::vector<std::string_view>, std::size_t> ref_counts;
    for (std::size_t i = 0; i + order <= ref.size(); ++i) {
      ++ref_counts[{ref.begin() + i, ref.begin() + i + order}];
    }
    std::map<std::vector<std::string_view>, std::size_t> cand_counts;
    std::size_t total = 0;
    for (std::size_t i = 0; i + order <= cand.size(); ++i) {
      ++cand_counts[{cand.begin() + i, cand.begin() + i + order}];
      ++total;
    }
    std::size_t clipped = 0;
    for (const auto& [gram, count] : cand_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) clipped += std::min(count, it->second);
    }
    double p = static_cast<double>(clipped) / (static_cast<double>(total) + eps);
    p = std::max(p, eps);
    log_sum += std::log(p);
  }

  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / (c + eps));
  return bp * std::exp(log_sum / opts.max_order);
}

inline PairScore score_pair(std::string_view candidate,
                            std::string_view reference,
                            const BleuOptions& opts = {}) {
  PairScore s;
  s.edit_distance = levenshtein(candidate, reference);
  s.normalized_score = normalized_score(candidate, reference);
  s.bleu = bleu(candidate, reference, opts);
  return s;
}

// Scores every pair and averages over the N pairs with at least one
// nonempty side.  Pairs empty on both sides are skipped.
inline MetricsReport evaluate(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const BleuOptions& opts = {}) {
  MetricsReport report;
  double sum_d = 0.0, sum_s = 0.0, sum_b = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [cand, ref] = pairs[i];
    if (token_count(cand) == 0 && token_count(ref) == 0) continue;
    PairScore s = score_pair(cand, ref, opts);
    sum_d += static_cast<double>(s.edit_distance);
    sum_s += s.normalized_score;
    sum_b += s.bleu;
    report.per_pair.push_back(s);
    report.source_index.push_back(i);
  }
  report.n_pairs = report.per_pair.size();
  if (report.n_pairs == 0) {
    throw EmptyInput("no non-empty candidate/reference pairs to evaluate");
  }
  const double n = static_cast<double>(report.n_pairs);
  report.avg_distance = sum_d / n;
  report.avg_score = sum_s / n;
  report.avg_bleu = sum_b / n;
  return report;
}

}  // namespace folforge
