// Acceptance gate: one PASS/FAIL line per criterion, INFO lines for
// reference figures that are reported but not gated.  Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "folforge/folforge.hpp"
#include "folforge_cli.hpp"
#include "metrics_fixture.hpp"
#include "test_support.hpp"

namespace {

using namespace folforge;
namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check,
            double budget_seconds = 0.0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0.0 && secs >= budget_seconds) {
    o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::string line = (o.ok ? "PASS  " : "FAIL  ") + name + "  [" + timing;
  if (budget_seconds > 0.0) {
    char b[32];
    std::snprintf(b, sizeof b, " < %.0fs", budget_seconds);
    line += b;
  }
  line += "]";
  if (!o.detail.empty()) line += "  " + o.detail;
  std::puts(line.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

void info(const std::string& name, const std::string& detail) {
  std::puts(("INFO  " + name + "  " + detail).c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> read_rows(const fs::path& p) {
  std::vector<json> out;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

int cli(const std::vector<std::string>& args, std::string* errors = nullptr) {
  std::ostringstream log, err;
  const int rc = cli::run(args, log, err);
  if (errors) *errors = err.str();
  return rc;
}

Formula draw(Rng& rng, int i) {
  static const GenerationConfig cfg;
  return i % 2 == 0 ? sample_standard(cfg, rng) : sample_nested(cfg, rng);
}

Outcome qd_oracle() {
  Rng rng(101);
  int agree = 0;
  for (int i = 0; i < 10000; ++i) {
    testing::RandomAst gen(rng, i % 2 == 1);
    const Formula f = gen.make(10);
    agree += quantifier_depth(f) == testing::qd_oracle(f) ? 1 : 0;
  }
  const int example = quantifier_depth(parse(testing::kExampleFormula));
  return {agree == 10000 && example == 2,
          std::to_string(agree) + "/10000 agree; worked example qd=" + std::to_string(example)};
}

Outcome round_trip() {
  Rng rng(102);
  int ok = 0;
  for (int i = 0; i < 10000; ++i) {
    const Formula f = draw(rng, i);
    const bool sym = parse(render(f, Style::Symbolic), Syntax::Unicode) == f;
    const bool ascii = parse(render(f, Style::Ascii), Syntax::Ascii) == f;
    ok += sym && ascii ? 1 : 0;
  }
  return {ok == 10000, std::to_string(ok) + "/10000 in both syntaxes"};
}

Outcome full_size_corpus(const fs::path& dir) {
  const fs::path out = dir / "corpus.jsonl";
  std::string err;
  const int rc = cli({"generate", "--count", "3071", "--min-depth", "4", "--max-depth", "10",
                      "--grammar", "both", "--output", out.string()},
                     &err);
  if (rc != 0) return {false, "exit " + std::to_string(rc) + ": " + err};
  const auto rows = read_rows(out);
  std::set<std::string> unique;
  int in_window = 0, clean_standard = 0, standard = 0;
  for (const auto& r : rows) {
    const auto text = r["fol"].get<std::string>();
    unique.insert(text);
    const Formula f = parse(text);
    const int d = structural_depth(f);
    in_window += d >= 4 && d <= 10 ? 1 : 0;
    if (r["grammar"] == "standard") {
      ++standard;
      clean_standard += testing::any_formula_argument(f) ? 0 : 1;
    }
  }
  const bool ok = rows.size() == 3071 && unique.size() == 3071 && in_window == 3071 &&
                  clean_standard == standard;
  return {ok, std::to_string(rows.size()) + " rows, " + std::to_string(unique.size()) +
                  " unique, " + std::to_string(in_window) + " in depth [4,10], " +
                  std::to_string(clean_standard) + "/" + std::to_string(standard) +
                  " standard items without nested arguments"};
}

Outcome lexicalization() {
  const auto& vocab = Vocabulary::builtin();
  Rng gen(103), lex(104);
  int iso = 0, qd = 0, subject = 0;
  for (int i = 0; i < 10000; ++i) {
    const Formula f = draw(gen, i);
    const Formula g = lexicalize(f, vocab, lex);
    iso += structurally_isomorphic(f, g) ? 1 : 0;
    qd += quantifier_depth(f) == quantifier_depth(g) ? 1 : 0;
    // The outermost quantified variable survives verbatim.
    const auto* q = f.as<Quantified>();
    const auto s = subject_term(f);
    bool kept = s.has_value() && subject_term(g) == s;
    if (q != nullptr) kept = kept && g.as<Quantified>()->var == q->var;
    subject += kept ? 1 : 0;
  }
  Rng pinned(testing::kExampleSeed);
  const std::string row = render(lexicalize(parse(testing::kExampleFormula), vocab, pinned));
  const bool table = row == render(parse(testing::kExampleLexical));
  return {iso == 10000 && qd == 10000 && subject == 10000 && table,
          "isomorphic " + std::to_string(iso) + "/10000, qd kept " + std::to_string(qd) +
              "/10000, subject kept " + std::to_string(subject) + "/10000; worked example " +
              (table ? "reproduced: " : "differs: ") + row};
}

Outcome symbol_map() {
  const auto& m = SymbolMap::standard();
  const std::vector<std::pair<std::string, std::string>> table = {
      {"¬", "No"}, {"∀", "For All"}, {"∃", "There Exists"}, {"⊕", "XOR"},
      {"→", "implies"}, {"∧", "and"}, {"∨", "or"}};
  int entries = 0;
  for (const auto& [sym, item] : table) {
    const auto* e = m.by_symbol(sym);
    entries += e != nullptr && e->item == item ? 1 : 0;
  }
  const bool examples = rewrite_symbols("¬P(a)", m) == "No P(a)" &&
                        rewrite_symbols("∀x(P(x))", m) == "For All x(P(x))";
  Rng rng(105);
  int inverse = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string text = render(draw(rng, i));
    inverse += restore_symbols(rewrite_symbols(text, m), m) == text ? 1 : 0;
  }
  return {entries == 7 && m.entries().size() == 7 && examples && inverse == 10000,
          std::to_string(entries) + "/7 entries match, examples " +
              (examples ? "match" : "differ") + ", inverse " + std::to_string(inverse) +
              "/10000"};
}

std::size_t dp_oracle(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

std::string random_text(Rng& rng, std::size_t max_len) {
  static const char* kAlphabet[] = {"a", "b", "c", " ", "é", "∀", "x"};
  std::string s;
  const std::size_t n = rng.below(max_len + 1);
  for (std::size_t i = 0; i < n; ++i) s += kAlphabet[rng.below(7)];
  return s;
}

Outcome levenshtein_check() {
  Rng rng(106);
  int agree = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string a = random_text(rng, 24);
    const std::string b = random_text(rng, 24);
    agree += levenshtein(a, b) == dp_oracle(utf8::decode(a), utf8::decode(b)) ? 1 : 0;
  }
  int axioms = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string a = random_text(rng, 16);
    const std::string b = random_text(rng, 16);
    const std::string c = random_text(rng, 16);
    const bool ok = levenshtein(a, a) == 0 && (levenshtein(a, b) == 0) == (a == b) &&
                    levenshtein(a, b) == levenshtein(b, a) &&
                    levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c);
    axioms += ok ? 1 : 0;
  }
  return {agree == 10000 && axioms == 1000, std::to_string(agree) + "/10000 agree with DP, " +
                                                std::to_string(axioms) + "/1000 triples satisfy axioms"};
}

Outcome bleu_check() {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& row : testing::kMetricsFixture) pairs.emplace_back(row.candidate, row.reference);
  const auto r = evaluate(pairs);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.per_pair.size(); ++i) {
    worst = std::max(worst, std::abs(r.per_pair[i].bleu - testing::kMetricsFixture[i].bleu));
  }
  const double avg_err = std::abs(r.avg_bleu - testing::kFixtureAvgBleu);

  static const char* kWords[] = {"the", "cat", "dog", "sat", "on", "mat", "every", "chef", "is",
                                 "happy", "zone", "lives"};
  Rng rng(107);
  int self = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const std::size_t n = 4 + rng.below(20);
    for (std::size_t k = 0; k < n; ++k) s += std::string(k ? " " : "") + kWords[rng.below(12)];
    const double b = bleu(s, s);
    self += b >= 0.99 && b <= 1.01 ? 1 : 0;
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "max |BLEU_i err| %.1e, |avg err| %.1e (tol 1e-9); bleu(x,x) in range %d/1000",
                worst, avg_err, self);
  return {r.per_pair.size() == 10 && worst <= 1e-9 && avg_err <= 1e-9 && self == 1000, detail};
}

corpus::TokenDistribution random_distribution(Rng& rng) {
  static const char* kWords[] = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  std::string text;
  const std::size_t n = 1 + rng.below(40);
  for (std::size_t i = 0; i < n; ++i) text += std::string(kWords[rng.below(10)]) + " ";
  return corpus::token_frequency({{"x", text}}, corpus::Side::Ns);
}

Outcome kl_check() {
  Rng rng(108);
  const auto p = random_distribution(rng);
  const double self = corpus::kl_divergence(p, p);
  int nonneg = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_distribution(rng);
    const auto b = random_distribution(rng);
    nonneg += corpus::kl_divergence(a, b) >= 0.0 ? 1 : 0;
  }
  const auto x = corpus::token_frequency({{"x", "a a a b"}}, corpus::Side::Ns);
  const auto y = corpus::token_frequency({{"x", "a b c d"}}, corpus::Side::Ns);
  const double xy = corpus::kl_divergence(x, y);
  const double yx = corpus::kl_divergence(y, x);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "D(P||P)=%.1e, nonnegative %d/1000, fixture D(P||Q)=%.4f vs D(Q||P)=%.4f", self,
                nonneg, xy, yx);
  return {std::abs(self) <= 1e-12 && nonneg == 1000 && std::abs(xy - yx) > 1e-6, detail};
}

Outcome end_to_end(const fs::path& dir) {
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const fs::path d = dir / ("run" + std::to_string(run));
    fs::create_directories(d);
    std::string err;
    const auto step = [&](const std::vector<std::string>& args) {
      if (cli(args, &err) != 0) throw std::runtime_error(args.front() + " failed: " + err);
    };
    step({"generate", "--count", "1000", "--seed", "2024", "--output", (d / "g.jsonl").string()});
    step({"lexicalize", "--input", (d / "g.jsonl").string(), "--seed", "2024", "--output",
          (d / "l.jsonl").string()});
    step({"translate", "--input", (d / "l.jsonl").string(), "--output",
          (d / "t.jsonl").string()});
    // No human references exist for synthetic formulas, so each sentence is
    // scored against the lexical model input it was rendered from.
    const auto lex = read_rows(d / "l.jsonl");
    const auto tr = read_rows(d / "t.jsonl");
    if (lex.size() != 1000 || tr.size() != 1000) throw std::runtime_error("row count mismatch");
    std::string preds;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      json row = {{"id", tr[i]["id"]},
                  {"candidate", tr[i]["candidate"]},
                  {"reference", lex[i]["model_input"]}};
      preds += row.dump() + "\n";
    }
    std::ofstream(d / "preds.jsonl", std::ios::binary) << preds;
    step({"evaluate", "--input", (d / "preds.jsonl").string(), "--output",
          (d / "report.json").string()});
    reports.push_back(slurp(d / "report.json"));
  }
  const auto j = json::parse(reports[0]);
  const bool ok = j["n_pairs"] == 1000 && reports[0] == reports[1];
  std::ostringstream detail;
  detail << "n_pairs " << j["n_pairs"] << ", avg distance " << j["avg_distance"]
         << ", avg score " << j["avg_score"] << ", avg BLEU " << j["avg_bleu"]
         << (reports[0] == reports[1] ? ", reports identical" : ", reports differ");
  return {ok, detail.str()};
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "folforge_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  report("quantifier depth matches independent oracle on 10000 formulas", qd_oracle, 5.0);
  report("parse(render(f)) == f on 10000 generated formulas, both syntaxes", round_trip, 10.0);
  report("generate 3071 formulas, grammar both, depth 4-10",
         [&] { return full_size_corpus(dir); }, 60.0);
  report("lexicalization fidelity on 10000 samples and worked example", lexicalization);
  report("symbol map entries and inverse round trip on 10000 formulas", symbol_map);
  report("Levenshtein vs DP oracle on 10000 pairs, axioms on 1000 triples", levenshtein_check);
  report("BLEU fixture within 1e-9 and self-similarity on 1000 sentences", bleu_check);
  report("KL identity, nonnegativity, asymmetry", kl_check);
  report("generate -> lexicalize -> translate -> evaluate on 1000 formulas, deterministic",
         [&] { return end_to_end(dir); });

  info("KL reference values (train vs validation, FOL 0.5094/0.2186, NS 1.1563/0.4896)",
       "not gated; they need the original corpus revision and tokenizer. Run "
       "`folforge preprocess` then `folforge stats` on a local copy to compare.");
  info("fine-tuned model metrics (edit distance 20.17, score 1.46, BLEU 0.67)",
       "not reproducible without GPU fine-tuning; substituted by the property checks above.");

  fs::remove_all(dir);
  std::printf("%s  %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
