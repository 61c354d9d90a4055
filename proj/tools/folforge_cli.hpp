#pragma once

// Command-line front end: generate, lexicalize, preprocess, translate,
// evaluate, stats, plus replay of a run manifest.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "folforge/folforge.hpp"
#include "json.hpp"

namespace folforge::cli {

using nlohmann::json;
namespace fs = std::filesystem;

inline constexpr std::uint64_t kDefaultSeed = 20250707;

// Thrown for problems with how the tool was invoked (exit status 1).
class UsageError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Collects output files as temporaries and renames them into place only
// when the whole subcommand succeeded.  Temporaries are removed otherwise.
class AtomicOutputs {
 public:
  AtomicOutputs() = default;
  AtomicOutputs(const AtomicOutputs&) = delete;
  AtomicOutputs& operator=(const AtomicOutputs&) = delete;

  ~AtomicOutputs() {
    for (const auto& [tmp, _] : pending_) {
      std::error_code ec;
      fs::remove(tmp, ec);
    }
  }

  void write(const fs::path& target, const std::string& content) {
    if (target.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError("cannot write " + tmp.string());
    pending_.emplace_back(tmp, target);
    out << content;
    out.close();
    if (!out) throw FileError("failed writing " + tmp.string());
  }

  void commit() {
    for (const auto& [tmp, target] : pending_) {
      std::error_code ec;
      fs::rename(tmp, target, ec);
      if (ec) throw FileError("cannot move " + tmp.string() + " to " + target.string());
    }
    pending_.clear();
  }

 private:
  std::vector<std::pair<fs::path, fs::path>> pending_;
};

inline std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path.string());
  std::vector<json> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (utf8::trim(line).empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                        ": invalid JSON: " + e.what());
    }
    if (!rows.back().is_object()) {
      throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                        ": expected a JSON object");
    }
  }
  return rows;
}

template <typename T>
T field(const json& row, const char* key, const fs::path& path) {
  if (!row.contains(key)) {
    throw SchemaError(path.string() + ": record lacks field '" + key + "'");
  }
  try {
    return row.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(path.string() + ": field '" + key + "' has the wrong type");
  }
}

inline std::string dump_line(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::strict) + "\n";
}

inline std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

inline double round2(double x) { return std::round(x * 100.0) / 100.0; }

struct Options {
  std::string grammar = "both";
  int min_depth = 4;
  int max_depth = 10;
  int count = 1;
  std::optional<std::uint64_t> seed;
  std::optional<int> min_qd;
  std::optional<int> max_qd;
  std::string vocab;
  double ratio = 0.8;
  std::string input;
  std::string output;
  std::string references;
  std::string reference_field = "reference";
  std::string columns;
  int max_order = 4;
  double epsilon = 1e-3;
  double kl_epsilon = 1e-9;
  int top_k = 20;
  std::string manifest;
};

inline std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("FOLFORGE_SEED"); env != nullptr && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("FOLFORGE_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

// The manifest records the fully resolved command line so `replay` can
// reproduce the outputs byte for byte.
inline json make_manifest(const std::string& sub, const std::vector<std::string>& argv,
                          const json& config, std::optional<std::uint64_t> seed,
                          const std::vector<std::string>& inputs,
                          const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "folforge";
  m["version"] = kVersion;
  m["subcommand"] = sub;
  m["argv"] = argv;
  m["config"] = config;
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["inputs"] = inputs;
  m["outputs"] = outputs;
  m["started_at"] = timestamp_utc();
  return m;
}

inline fs::path manifest_path_for(const fs::path& output) {
  fs::path p = output;
  p += ".manifest.json";
  return p;
}

inline void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
}

inline int cmd_generate(const Options& o, std::ostream& log) {
  require(o.output, "--output");
  GenerationConfig cfg;
  const auto g = grammar_from_string(o.grammar);
  if (!g) throw UsageError("--grammar must be standard, nested or both; got " + o.grammar);
  cfg.grammar = *g;
  cfg.min_depth = o.min_depth;
  cfg.max_depth = o.max_depth;
  cfg.count = o.count;
  cfg.seed = resolve_seed(o);
  cfg.min_qd = o.min_qd;
  cfg.max_qd = o.max_qd;
  cfg.validate();

  const auto corpus = generate_corpus(cfg);
  std::string body;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& item = corpus[i];
    json row;
    row["id"] = i;
    row["fol"] = item.text;
    row["qd"] = quantifier_depth(item.formula);
    row["depth"] = structural_depth(item.formula);
    row["grammar"] = std::string(to_string(item.grammar));
    body += dump_line(row);
  }

  std::vector<std::string> argv = {
      "generate", "--grammar", o.grammar, "--min-depth", std::to_string(cfg.min_depth),
      "--max-depth", std::to_string(cfg.max_depth), "--count", std::to_string(cfg.count),
      "--seed", std::to_string(cfg.seed), "--output", o.output};
  json config = {{"grammar", o.grammar}, {"min_depth", cfg.min_depth},
                 {"max_depth", cfg.max_depth}, {"count", cfg.count}};
  if (cfg.min_qd) {
    argv.insert(argv.end(), {"--min-qd", std::to_string(*cfg.min_qd)});
    config["min_qd"] = *cfg.min_qd;
  }
  if (cfg.max_qd) {
    argv.insert(argv.end(), {"--max-qd", std::to_string(*cfg.max_qd)});
    config["max_qd"] = *cfg.max_qd;
  }

  AtomicOutputs out;
  out.write(o.output, body);
  out.write(manifest_path_for(o.output),
            make_manifest("generate", argv, config, cfg.seed, {}, {o.output}).dump(2) + "\n");
  out.commit();
  log << "wrote " << corpus.size() << " formulas to " << o.output << "\n";
  return 0;
}

inline int cmd_lexicalize(const Options& o, std::ostream& log) {
  require(o.input, "--input");
  require(o.output, "--output");
  const std::uint64_t seed = resolve_seed(o);
  std::optional<Vocabulary> loaded;
  if (!o.vocab.empty()) loaded = Vocabulary::load(o.vocab);
  const Vocabulary& vocab = loaded ? *loaded : Vocabulary::builtin();

  std::string body;
  const auto rows = read_jsonl(o.input);
  for (const auto& row : rows) {
    const auto id = field<std::int64_t>(row, "id", o.input);
    const auto fol = field<std::string>(row, "fol", o.input);
    const Formula f = parse(fol, Syntax::Either);
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(id)));
    const std::string lexical = render(lexicalize(f, vocab, rng));
    json out_row;
    out_row["id"] = id;
    out_row["fol"] = fol;
    out_row["fol_lexical"] = lexical;
    out_row["model_input"] = rewrite_symbols(lexical);
    body += dump_line(out_row);
  }

  std::vector<std::string> argv = {"lexicalize", "--input", o.input, "--output", o.output,
                                   "--seed", std::to_string(seed)};
  json config = json::object();
  if (!o.vocab.empty()) {
    argv.insert(argv.end(), {"--vocab", o.vocab});
    config["vocab"] = o.vocab;
  }
  std::vector<std::string> inputs = {o.input};
  if (!o.vocab.empty()) inputs.push_back(o.vocab);

  AtomicOutputs out;
  out.write(o.output, body);
  out.write(manifest_path_for(o.output),
            make_manifest("lexicalize", argv, config, seed, inputs, {o.output}).dump(2) + "\n");
  out.commit();
  log << "lexicalized " << rows.size() << " formulas into " << o.output << "\n";
  return 0;
}

inline int cmd_translate(const Options& o, std::ostream& log) {
  require(o.input, "--input");
  require(o.output, "--output");
  std::string body;
  const auto rows = read_jsonl(o.input);
  for (const auto& row : rows) {
    const auto id = field<std::int64_t>(row, "id", o.input);
    const auto text = row.contains("fol_lexical") ? field<std::string>(row, "fol_lexical", o.input)
                                                  : field<std::string>(row, "fol", o.input);
    json out_row;
    out_row["id"] = id;
    out_row["candidate"] = translate(parse(text, Syntax::Either));
    body += dump_line(out_row);
  }
  AtomicOutputs out;
  out.write(o.output, body);
  out.write(manifest_path_for(o.output),
            make_manifest("translate",
                          {"translate", "--input", o.input, "--output", o.output},
                          json::object(), std::nullopt, {o.input}, {o.output})
                    .dump(2) +
                "\n");
  out.commit();
  log << "translated " << rows.size() << " formulas into " << o.output << "\n";
  return 0;
}

inline json report_json(const MetricsReport& r, const std::vector<json>& ids) {
  json j;
  j["n_pairs"] = r.n_pairs;
  j["avg_distance"] = round2(r.avg_distance);
  j["avg_score"] = round2(r.avg_score);
  j["avg_bleu"] = round2(r.avg_bleu);
  j["per_pair"] = json::array();
  for (std::size_t i = 0; i < r.per_pair.size(); ++i) {
    const auto& s = r.per_pair[i];
    j["per_pair"].push_back({{"id", ids[r.source_index[i]]},
                             {"edit_distance", s.edit_distance},
                             {"normalized_score", s.normalized_score},
                             {"bleu", s.bleu}});
  }
  return j;
}

inline int cmd_evaluate(const Options& o, std::ostream& log) {
  require(o.input, "--input");
  if (o.max_order < 1) throw UsageError("--max-order must be at least 1");
  if (!(o.epsilon > 0.0)) throw UsageError("--epsilon must be positive");

  std::map<std::int64_t, std::string> refs;
  if (!o.references.empty()) {
    for (const auto& row : read_jsonl(o.references)) {
      refs[field<std::int64_t>(row, "id", o.references)] =
          field<std::string>(row, o.reference_field.c_str(), o.references);
    }
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<json> ids;
  for (const auto& row : read_jsonl(o.input)) {
    const auto id = field<std::int64_t>(row, "id", o.input);
    std::string ref;
    if (!o.references.empty()) {
      auto it = refs.find(id);
      if (it == refs.end()) {
        throw SchemaError("no reference for id " + std::to_string(id) + " in " + o.references);
      }
      ref = it->second;
    } else {
      ref = field<std::string>(row, o.reference_field.c_str(), o.input);
    }
    pairs.emplace_back(field<std::string>(row, "candidate", o.input), std::move(ref));
    ids.emplace_back(id);
  }
  const MetricsReport report = evaluate(pairs, {o.max_order, o.epsilon});
  const json j = report_json(report, ids);

  std::ostringstream summary;
  summary << std::fixed << std::setprecision(2) << "N = " << report.n_pairs << "\n"
          << "Avg Edit Distance  " << report.avg_distance << "\n"
          << "Avg Distance Score " << report.avg_score << "\n"
          << "AVG BLEU           " << report.avg_bleu << "\n";
  if (o.output.empty()) {
    log << j.dump(2) << "\n";
  } else {
    std::vector<std::string> argv = {"evaluate", "--input", o.input, "--output", o.output,
                                     "--max-order", std::to_string(o.max_order),
                                     "--epsilon", json(o.epsilon).dump(),
                                     "--reference-field", o.reference_field};
    std::vector<std::string> inputs = {o.input};
    if (!o.references.empty()) {
      argv.insert(argv.end(), {"--references", o.references});
      inputs.push_back(o.references);
    }
    AtomicOutputs out;
    out.write(o.output, j.dump(2) + "\n");
    out.write(manifest_path_for(o.output),
              make_manifest("evaluate", argv,
                            {{"max_order", o.max_order}, {"epsilon", o.epsilon}},
                            std::nullopt, inputs, {o.output})
                      .dump(2) +
                  "\n");
    out.commit();
  }
  log << summary.str();
  return 0;
}

inline std::string pairs_jsonl(const std::vector<corpus::ParallelPair>& pairs) {
  std::string body;
  for (const auto& p : pairs) body += dump_line({{"fol", p.fol}, {"ns", p.ns}});
  return body;
}

inline int cmd_preprocess(const Options& o, std::ostream& log) {
  require(o.input, "--input");
  require(o.output, "--output");
  if (!(o.ratio > 0.0 && o.ratio < 1.0)) throw UsageError("--ratio must lie in (0, 1)");
  const std::uint64_t seed = resolve_seed(o);
  corpus::ColumnMap columns;
  if (!o.columns.empty()) {
    std::ifstream in(o.columns);
    if (!in) throw FileError("cannot open " + o.columns);
    try {
      columns = corpus::ColumnMap::from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw SchemaError("bad column map " + o.columns + ": " + e.what());
    }
  }

  const auto ingested = corpus::ingest(o.input, columns);
  for (const auto& w : ingested.warnings) log << "warning: " << w << "\n";
  const auto pairs = corpus::extract_pairs(ingested.records);
  if (pairs.empty()) throw EmptyInput("no FOL/NS pairs found in " + o.input);
  const auto parts = corpus::split(pairs, o.ratio, seed);

  std::string rejects;
  for (const auto& r : ingested.rejects) {
    rejects += dump_line({{"row", r.source_row}, {"reason", r.reason}, {"raw", r.raw}});
  }
  const fs::path dir = o.output;
  std::vector<std::string> argv = {"preprocess", "--input", o.input, "--output", o.output,
                                   "--ratio", json(o.ratio).dump(), "--seed",
                                   std::to_string(seed)};
  std::vector<std::string> inputs = {o.input};
  if (!o.columns.empty()) {
    argv.insert(argv.end(), {"--columns", o.columns});
    inputs.push_back(o.columns);
  }
  json config = {{"ratio", o.ratio},
                 {"records", ingested.records.size()},
                 {"rejects", ingested.rejects.size()},
                 {"pairs", pairs.size()},
                 {"train", parts.train.size()},
                 {"validation", parts.validation.size()}};

  AtomicOutputs out;
  out.write(dir / "train.jsonl", pairs_jsonl(parts.train));
  out.write(dir / "validation.jsonl", pairs_jsonl(parts.validation));
  out.write(dir / "rejects.jsonl", rejects);
  out.write(dir / "manifest.json",
            make_manifest("preprocess", argv, config, seed, inputs,
                          {(dir / "train.jsonl").string(), (dir / "validation.jsonl").string(),
                           (dir / "rejects.jsonl").string()})
                    .dump(2) +
                "\n");
  out.commit();
  log << ingested.records.size() << " records, " << ingested.rejects.size() << " rejected, "
      << pairs.size() << " unique pairs -> " << parts.train.size() << " train / "
      << parts.validation.size() << " validation\n";
  return 0;
}

inline std::vector<corpus::ParallelPair> read_pairs(const fs::path& path) {
  std::vector<corpus::ParallelPair> pairs;
  for (const auto& row : read_jsonl(path)) {
    pairs.push_back({field<std::string>(row, "fol", path), field<std::string>(row, "ns", path)});
  }
  return pairs;
}

inline int cmd_stats(const Options& o, std::ostream& log) {
  require(o.input, "--input");
  require(o.output, "--output");
  if (o.top_k < 1) throw UsageError("--top-k must be positive");
  const fs::path dir = o.input;
  const auto train = read_pairs(dir / "train.jsonl");
  const auto validation = read_pairs(dir / "validation.jsonl");

  json report = json::array();
  for (auto side : {corpus::Side::Fol, corpus::Side::Ns}) {
    const auto p = corpus::token_frequency(train, side, o.kl_epsilon);
    const auto q = corpus::token_frequency(validation, side, o.kl_epsilon);
    const double pq = corpus::kl_divergence(p, q);
    const double qp = corpus::kl_divergence(q, p);
    const char* side_name = side == corpus::Side::Fol ? "fol" : "ns";
    for (const auto& [split_name, dist] :
         {std::pair{"train", &p}, std::pair{"validation", &q}}) {
      json top = json::array();
      for (const auto& [tok, n] : dist->top_k(static_cast<std::size_t>(o.top_k))) {
        top.push_back({{"token", tok}, {"count", n}});
      }
      report.push_back({{"side", side_name},
                        {"split", split_name},
                        {"total", dist->total},
                        {"vocabulary", dist->counts.size()},
                        {"top_k", top},
                        {"kl_pq", pq},
                        {"kl_qp", qp}});
    }
    log << std::fixed << std::setprecision(4) << side_name << ": D(train||validation) = " << pq
        << ", D(validation||train) = " << qp << "\n";
  }
  AtomicOutputs out;
  out.write(o.output, report.dump(2) + "\n");
  out.write(manifest_path_for(o.output),
            make_manifest("stats",
                          {"stats", "--input", o.input, "--output", o.output, "--top-k",
                           std::to_string(o.top_k), "--epsilon", json(o.kl_epsilon).dump()},
                          {{"top_k", o.top_k}, {"kl_epsilon", o.kl_epsilon}}, std::nullopt,
                          {(dir / "train.jsonl").string(), (dir / "validation.jsonl").string()},
                          {o.output})
                    .dump(2) +
                "\n");
  out.commit();
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

inline int cmd_replay(const Options& o, std::ostream& log, std::ostream& err) {
  require(o.manifest, "--manifest");
  std::ifstream in(o.manifest);
  if (!in) throw FileError("cannot open " + o.manifest);
  json m;
  try {
    m = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!m.contains("argv") || !m["argv"].is_array()) {
    throw SchemaError("manifest has no argv list");
  }
  auto argv = m["argv"].get<std::vector<std::string>>();
  if (!argv.empty() && argv.front() == "replay") throw SchemaError("manifest replays itself");
  return run(argv, log, err);
}

// Exit status: 0 success, 1 usage error, 2 data error.
inline int run(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
  CLI::App app{"folforge: synthetic first-order-logic corpora and logic-to-text metrics",
               "folforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "random seed (default: $FOLFORGE_SEED or built-in)");
  };

  auto* gen = app.add_subcommand("generate", "sample a de-duplicated formula corpus");
  gen->add_option("--grammar", o.grammar, "standard | nested | both");
  gen->add_option("--min-depth", o.min_depth, "minimum structural depth");
  gen->add_option("--max-depth", o.max_depth, "maximum structural depth");
  gen->add_option("--count", o.count, "number of formulas");
  gen->add_option("--min-qd", o.min_qd, "optional minimum quantifier depth");
  gen->add_option("--max-qd", o.max_qd, "optional maximum quantifier depth");
  gen->add_option("--output", o.output, "output JSONL path");
  seed_opt(gen);

  auto* lex = app.add_subcommand("lexicalize", "fill abstract formulas with vocabulary items");
  lex->add_option("--input", o.input, "generate output JSONL");
  lex->add_option("--output", o.output, "output JSONL path");
  lex->add_option("--vocab", o.vocab, "vocabulary JSON (default: built-in)");
  seed_opt(lex);

  auto* pre = app.add_subcommand("preprocess", "extract and split FOL/NS pairs");
  pre->add_option("--input", o.input, "FOLIO-style JSONL or JSON array");
  pre->add_option("--output", o.output, "output directory");
  pre->add_option("--ratio", o.ratio, "train fraction");
  pre->add_option("--columns", o.columns, "column-name mapping JSON");
  seed_opt(pre);

  auto* tr = app.add_subcommand("translate", "rule-based English rendering");
  tr->add_option("--input", o.input, "lexicalize output JSONL");
  tr->add_option("--output", o.output, "output JSONL path");

  auto* ev = app.add_subcommand("evaluate", "edit distance, normalized score and BLEU");
  ev->add_option("--input", o.input, "predictions JSONL");
  ev->add_option("--output", o.output, "report JSON path (default: stdout)");
  ev->add_option("--references", o.references, "JSONL joined on id for references");
  ev->add_option("--reference-field", o.reference_field, "field holding the reference text");
  ev->add_option("--max-order", o.max_order, "BLEU n-gram order");
  ev->add_option("--epsilon", o.epsilon, "BLEU epsilon");

  auto* st = app.add_subcommand("stats", "token frequencies and KL divergence");
  st->add_option("--input", o.input, "directory with train.jsonl and validation.jsonl");
  st->add_option("--output", o.output, "report JSON path");
  st->add_option("--top-k", o.top_k, "tokens listed per split");
  st->add_option("--epsilon", o.kl_epsilon, "smoothing epsilon");

  auto* rp = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  rp->add_option("--manifest", o.manifest, "manifest JSON path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    log << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    log << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (gen->parsed()) return cmd_generate(o, log);
    if (lex->parsed()) return cmd_lexicalize(o, log);
    if (pre->parsed()) return cmd_preprocess(o, log);
    if (tr->parsed()) return cmd_translate(o, log);
    if (ev->parsed()) return cmd_evaluate(o, log);
    if (st->parsed()) return cmd_stats(o, log);
    if (rp->parsed()) return cmd_replay(o, log, err);
  } catch (const Error& e) {
    err << (e.is_usage() ? "usage error: " : "error: ") << e.what() << "\n";
    return e.is_usage() ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace folforge::cli
