#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folforge/error.hpp"
#include "folforge/random.hpp"
#include "folforge/render.hpp"
#include "folforge/utf8.hpp"
#include "json.hpp"

namespace folforge::corpus {

enum class Split { Train, Validation, Test, Unassigned };

inline std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
    case Split::Unassigned: return "unassigned";
  }
  return "?";
}

struct ParallelPair {
  std::string fol;
  std::string ns;
  Split split = Split::Unassigned;

  bool operator==(const ParallelPair&) const = default;
};

// Source column names.  Defaults follow the FOLIO release files.
struct ColumnMap {
  std::string premises = "premises";
  std::string premises_fol = "premises-FOL";
  std::string conclusion = "conclusion";
  std::string conclusion_fol = "conclusion-FOL";

  static ColumnMap from_json(const nlohmann::json& doc) {
    ColumnMap m;
    if (!doc.is_object()) throw SchemaError("column map must be a JSON object");
    auto read = [&](const char* key, std::string& dst) {
      if (doc.contains(key)) dst = doc.at(key).get<std::string>();
    };
    read("premises", m.premises);
    read("premises_fol", m.premises_fol);
    read("conclusion", m.conclusion);
    read("conclusion_fol", m.conclusion_fol);
    return m;
  }

  std::vector<std::string> required() const {
    return {premises, premises_fol, conclusion, conclusion_fol};
  }
};

struct RawRecord {
  std::size_t source_row = 0;  // 1-based line (JSONL) or element index + 1
  std::vector<std::string> premises;
  std::vector<std::string> premises_fol;
  std::string conclusion;
  std::string conclusion_fol;
  nlohmann::json columns;  // the row as read
};

struct Reject {
  std::size_t source_row = 0;
  std::string reason;
  std::string raw;
};

struct IngestResult {
  std::vector<RawRecord> records;
  std::vector<Reject> rejects;
  std::vector<std::string> warnings;
};

namespace detail {

// A premise column is either a list of strings or one newline-separated
// string.
inline std::optional<std::vector<std::string>> string_list(const nlohmann::json& v) {
  std::vector<std::string> out;
  if (v.is_string()) {
    std::istringstream ss(v.get<std::string>());
    std::string line;
    while (std::getline(ss, line)) {
      auto t = utf8::trim(line);
      if (!t.empty()) out.emplace_back(t);
    }
    return out;
  }
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_string()) return std::nullopt;
      const auto& text = e.get_ref<const std::string&>();
      auto t = utf8::trim(text);
      if (!t.empty()) out.emplace_back(t);
    }
    return out;
  }
  return std::nullopt;
}

inline std::optional<std::string> string_field(const nlohmann::json& v) {
  if (!v.is_string()) return std::nullopt;
  return std::string(utf8::trim(v.get<std::string>()));
}

}  // namespace detail

// Reads a FOLIO-style record file: JSON Lines, or a single JSON array.  Rows
// that are not objects, lack a required column, or hold mistyped values are
// collected in `rejects`.  A column that no row of a nonempty file carries is
// a SchemaError.
inline IngestResult ingest(const std::filesystem::path& path,
                           const ColumnMap& columns = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  IngestResult result;
  std::vector<std::pair<std::size_t, std::string>> rows;
  const auto body = utf8::trim(text);
  if (body.empty()) {
    result.warnings.push_back(path.string() + " is empty");
    return result;
  }
  if (body.front() == '[') {
    nlohmann::json arr;
    try {
      arr = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(path.string() + " is not a valid JSON array: " + e.what());
    }
    std::size_t idx = 0;
    for (const auto& e : arr) rows.emplace_back(++idx, e.dump());
  } else {
    std::istringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      if (!utf8::trim(line).empty()) rows.emplace_back(lineno, line);
    }
  }

  std::map<std::string, std::size_t> seen_columns;
  std::size_t object_rows = 0;
  for (const auto& [row, raw] : rows) {
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
      result.rejects.push_back({row, std::string("invalid JSON: ") + e.what(), raw});
      continue;
    }
    if (!obj.is_object()) {
      result.rejects.push_back({row, "row is not an object", raw});
      continue;
    }
    ++object_rows;
    for (const auto& col : columns.required()) {
      if (obj.contains(col)) ++seen_columns[col];
    }
    std::string problem;
    for (const auto& col : columns.required()) {
      if (!obj.contains(col)) {
        problem = "missing column '" + col + "'";
        break;
      }
    }
    RawRecord rec;
    rec.source_row = row;
    if (problem.empty()) {
      auto prem = detail::string_list(obj[columns.premises]);
      auto prem_fol = detail::string_list(obj[columns.premises_fol]);
      auto concl = detail::string_field(obj[columns.conclusion]);
      auto concl_fol = detail::string_field(obj[columns.conclusion_fol]);
      if (!prem) problem = "column '" + columns.premises + "' is not text";
      else if (!prem_fol) problem = "column '" + columns.premises_fol + "' is not text";
      else if (!concl) problem = "column '" + columns.conclusion + "' is not a string";
      else if (!concl_fol) problem = "column '" + columns.conclusion_fol + "' is not a string";
      else {
        rec.premises = std::move(*prem);
        rec.premises_fol = std::move(*prem_fol);
        rec.conclusion = std::move(*concl);
        rec.conclusion_fol = std::move(*concl_fol);
      }
    }
    if (!problem.empty()) {
      result.rejects.push_back({row, problem, raw});
      continue;
    }
    rec.columns = std::move(obj);
    result.records.push_back(std::move(rec));
  }
  if (object_rows > 0) {
    for (const auto& col : columns.required()) {
      if (!seen_columns.contains(col)) {
        throw SchemaError("column '" + col + "' is missing from every row of " +
                          path.string());
      }
    }
  }
  return result;
}

// One pair per premise (when the premise and FOL lists align) plus one for
// the conclusion.  Misaligned premise lists pass through as a single pair.
// Exact duplicates are dropped, keeping the first occurrence.
inline std::vector<ParallelPair> extract_pairs(const std::vector<RawRecord>& records) {
  std::vector<ParallelPair> out;
  std::set<std::pair<std::string, std::string>> seen;
  auto add = [&](std::string_view fol, std::string_view ns) {
    auto f = std::string(utf8::trim(fol));
    auto n = std::string(utf8::trim(ns));
    if (f.empty() || n.empty()) return;
    if (seen.emplace(f, n).second) out.push_back({std::move(f), std::move(n)});
  };
  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) {
      if (!s.empty()) s += ' ';
      s += p;
    }
    return s;
  };
  for (const auto& r : records) {
    if (r.premises.size() == r.premises_fol.size()) {
      for (std::size_t i = 0; i < r.premises.size(); ++i) {
        add(r.premises_fol[i], r.premises[i]);
      }
    } else {
      add(join(r.premises_fol), join(r.premises));
    }
    add(r.conclusion_fol, r.conclusion);
  }
  return out;
}

// Dedup over already-extracted pairs, keeping first occurrences.
inline std::vector<ParallelPair> dedup(const std::vector<ParallelPair>& pairs) {
  std::vector<ParallelPair> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& p : pairs) {
    if (seen.emplace(p.fol, p.ns).second) out.push_back(p);
  }
  return out;
}

struct SplitResult {
  std::vector<ParallelPair> train;
  std::vector<ParallelPair> validation;
};

// Seeded Fisher-Yates shuffle, then the first round(ratio * N) go to train.
inline SplitResult split(std::vector<ParallelPair> pairs, double ratio = 0.8,
                         std::uint64_t seed = 0) {
  if (pairs.empty()) throw EmptyInput("cannot split an empty pair list");
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ConfigError("split ratio must lie strictly between 0 and 1");
  }
  Rng rng(seed);
  for (std::size_t i = pairs.size() - 1; i > 0; --i) {
    std::swap(pairs[i], pairs[rng.below(i + 1)]);
  }
  const auto n_train = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(pairs.size())));
  SplitResult out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& p = pairs[i];
    p.split = i < n_train ? Split::Train : Split::Validation;
    (i < n_train ? out.train : out.validation).push_back(std::move(p));
  }
  return out;
}

enum class Side { Fol, Ns };

// Separates punctuation and logical symbols from adjacent text, then splits
// on whitespace.  Case is preserved.
inline std::vector<std::string> tokenize(std::string_view text) {
  static const std::vector<std::string_view> kSymbols = {
      notation::kNot,    notation::kAnd,    notation::kOr,
      notation::kXor,    notation::kImplies, notation::kForAll,
      notation::kExists, "↔",     "->"};
  static constexpr std::string_view kPunct = "()[]{},.;:!?\"'~&|";
  std::string spaced;
  spaced.reserve(text.size() * 2);
  std::size_t i = 0;
  while (i < text.size()) {
    bool hit = false;
    for (auto sym : kSymbols) {
      if (text.substr(i).starts_with(sym)) {
        spaced += ' ';
        spaced += sym;
        spaced += ' ';
        i += sym.size();
        hit = true;
        break;
      }
    }
    if (hit) continue;
    const char c = text[i];
    if (kPunct.find(c) != std::string_view::npos) {
      spaced += ' ';
      spaced += c;
      spaced += ' ';
    } else {
      spaced += c;
    }
    ++i;
  }
  std::vector<std::string> out;
  for (auto t : utf8::split_whitespace(spaced)) out.emplace_back(t);
  return out;
}

struct TokenDistribution {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  double smoothing_epsilon = 1e-9;

  // Epsilon-smoothed probability over `vocab`, renormalized to sum to 1.
  double probability(const std::string& token, std::size_t vocab_size) const {
    const auto it = counts.find(token);
    const double raw = it == counts.end()
                           ? 0.0
                           : static_cast<double>(it->second) /
                                 static_cast<double>(total);
    return (raw + smoothing_epsilon) /
           (1.0 + smoothing_epsilon * static_cast<double>(vocab_size));
  }

  std::vector<std::pair<std::string, std::size_t>> top_k(std::size_t k) const {
    std::vector<std::pair<std::string, std::size_t>> v(counts.begin(), counts.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return a.second > b.second;
    });
    if (v.size() > k) v.resize(k);
    return v;
  }
};

inline TokenDistribution token_frequency(const std::vector<ParallelPair>& pairs,
                                         Side side, double epsilon = 1e-9) {
  if (pairs.empty()) throw EmptyInput("token frequency of an empty pair list");
  TokenDistribution d;
  d.smoothing_epsilon = epsilon;
  for (const auto& p : pairs) {
    for (auto& tok : tokenize(side == Side::Fol ? p.fol : p.ns)) {
      ++d.counts[std::move(tok)];
      ++d.total;
    }
  }
  if (d.total == 0) throw EmptyInput("pairs contain no tokens");
  return d;
}

// D(P || Q) in nats over the union vocabulary of both distributions.
inline double kl_divergence(const TokenDistribution& p, const TokenDistribution& q) {
  if (p.total == 0 || q.total == 0) {
    throw EmptyInput("KL divergence of an empty distribution");
  }
  std::set<std::string> vocab;
  for (const auto& [t, _] : p.counts) vocab.insert(t);
  for (const auto& [t, _] : q.counts) vocab.insert(t);
  double d = 0.0;
  for (const auto& t : vocab) {
    const double pt = p.probability(t, vocab.size());
    const double qt = q.probability(t, vocab.size());
    d += pt * std::log(pt / qt);
  }
  return d;
}

}  // namespace folforge::corpus
