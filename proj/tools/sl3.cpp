#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sl3/embed.hpp"
#include "sl3/generators.hpp"
#include "sl3/identities.hpp"
#include "sl3/mat3.hpp"
#include "sl3/reducer.hpp"
#include "sl3/relmat.hpp"

using namespace sl3;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SL3_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("SL3_SEED must be a non-negative integer");
    }
  }
  return kDefaultSeed;
}

std::string complex_text(const Complex& z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
  return buf;
}

std::string value_text(const Rational& q) { return rational_text(q); }
std::string value_text(const Complex& z) { return complex_text(z); }
json value_json(const Rational& q) { return rational_text(q); }
json value_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

void check_rank(int r) {
  if (r < 1) throw UsageError("--r must be >= 1");
}

// count

int run_count(int r, bool table, bool as_json) {
  check_rank(r);
  TypeCountTable t = type_counts(r);
  if (as_json) {
    json rows = json::array();
    for (const auto& row : t.rows)
      rows.push_back({{"type", type_label(row.type)},
                      {"multiplier", row.multiplier},
                      {"letters", row.letters},
                      {"count", row.count.get_str()}});
    json out = {{"r", r}, {"count", count_formula(r).get_str()}};
    if (table) out["types"] = rows;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << count_formula(r).get_str() << "\n";
  if (table)
    for (const auto& row : t.rows)
      std::cout << type_label(row.type) << " " << row.multiplier << " * C(" << r << ","
                << row.letters << ") = " << row.count.get_str() << "\n";
  return 0;
}

// generators

int run_generators(int r, bool as_json) {
  check_rank(r);
  if (r > 6) throw UsageError("generators are enumerated for r <= 6");
  auto gens = enumerate_minimal_set(r);
  if (as_json) {
    json arr = json::array();
    for (std::size_t i = 0; i < gens.size(); ++i)
      arr.push_back({{"index", i + 1},
                     {"type", type_label(gens[i].type)},
                     {"letters", gens[i].letters},
                     {"key", gens[i].key.str()},
                     {"word", gens[i].word.str()}});
    std::cout << json{{"r", r}, {"count", gens.size()}, {"generators", arr}}.dump(2) << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    std::cout << i + 1 << " " << type_label(gens[i].type) << " " << gens[i].key.str() << "\n";
  return 0;
}

// embed

struct EmbedRow {
  std::string file;
  int r = 0;
  std::string field;
  std::vector<std::string> labels;
  std::vector<std::string> texts;
  json values = json::array();
};

template <class S>
void fill_rows(EmbedRow& row, const Rep<S>& rep) {
  auto e = embed(rep);
  for (std::size_t i = 0; i < e.size(); ++i) {
    row.labels.push_back(e.generators[i].key.str());
    row.texts.push_back(value_text(e.values[i]));
    row.values.push_back(value_json(e.values[i]));
  }
}

EmbedRow embed_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw UsageError("cannot read " + p.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(p.string() + ": " + e.what());
  }
  RepresentationData d;
  try {
    d = representation_from_json(j);
  } catch (const RepresentationError& e) {
    throw UsageError(p.string() + ": " + e.what());
  }
  if (d.rank() > 6) throw UsageError(p.string() + ": embedding is available for r <= 6");
  EmbedRow row;
  row.file = p.filename().string();
  row.r = d.rank();
  if (d.field == Field::Rational) {
    row.field = "rational";
    fill_rows(row, d.exact);
  } else {
    row.field = "complex";
    fill_rows(row, d.numeric);
  }
  return row;
}

int run_embed(const std::string& path, bool as_json, bool as_csv) {
  if (as_json && as_csv) throw UsageError("--json and --csv are exclusive");
  std::vector<fs::path> files;
  bool batch = fs::is_directory(path);
  if (batch) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no .json files in " + path);
  } else {
    files.push_back(path);
  }
  std::vector<EmbedRow> rows;
  for (const auto& f : files) rows.push_back(embed_file(f));
  if (as_json) {
    json arr = json::array();
    for (const auto& row : rows) {
      json coords = json::array();
      for (std::size_t i = 0; i < row.labels.size(); ++i)
        coords.push_back({{"label", row.labels[i]}, {"value", row.values[i]}});
      arr.push_back({{"file", row.file}, {"r", row.r}, {"field", row.field}, {"coordinates", coords}});
    }
    std::cout << (batch ? arr : arr[0]).dump(2) << "\n";
  } else if (as_csv) {
    std::cout << "file,index,label,value\n";
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.labels.size(); ++i)
        std::cout << row.file << "," << i + 1 << ",\"" << row.labels[i] << "\"," << row.texts[i]
                  << "\n";
  } else {
    for (const auto& row : rows) {
      if (batch) std::cout << "# " << row.file << "\n";
      for (std::size_t i = 0; i < row.labels.size(); ++i)
        std::cout << row.labels[i] << " = " << row.texts[i] << "\n";
    }
  }
  return 0;
}

// reduce

struct CheckSpec {
  bool enabled = false;
  int trials = 10;
  std::uint64_t seed = 0;
};

CheckSpec parse_check(const std::vector<std::string>& tokens, std::uint64_t seed) {
  CheckSpec c;
  c.seed = seed;
  c.enabled = true;
  std::vector<std::string> parts;
  for (const auto& t : tokens) {
    std::istringstream in(t);
    std::string s;
    while (in >> s) parts.push_back(s);
  }
  for (const auto& p : parts) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("--check expects trials=K seed=S");
    std::string k = p.substr(0, eq), v = p.substr(eq + 1);
    try {
      if (k == "trials")
        c.trials = std::stoi(v);
      else if (k == "seed")
        c.seed = std::stoull(v);
      else
        throw UsageError("unknown --check key " + k);
    } catch (const std::logic_error&) {
      throw UsageError("bad --check value " + p);
    }
  }
  if (c.trials < 1) throw UsageError("--check trials must be >= 1");
  return c;
}

int run_reduce(const std::string& text, int r, bool basis, const CheckSpec& check) {
  check_rank(r);
  if (r > 6) throw UsageError("reduction is available for r <= 6");
  Word w;
  try {
    w = parse_word(text);
  } catch (const ParseError& e) {
    throw UsageError("bad word at position " + std::to_string(e.position()) + ": " + e.what());
  }
  if (w.max_index() > r) throw UsageError("word uses letters beyond --r");
  TracePolynomial p = reduce_to_basis(w);
  if (!basis) p = reduce_to_minimal(p, r);
  std::cout << p.str() << "\n";
  if (!check.enabled) return 0;
  for (int t = 0; t < check.trials; ++t) {
    RepQ rep = random_rep_exact(r, derive_seed(check.seed, t));
    TraceEvaluator<Rational> ev(rep);
    if (ev(p) != word_matrix(rep, w).trace()) {
      std::cout << "check FAIL at trial " << t << "\n";
      return 1;
    }
  }
  std::cout << "check PASS " << check.trials << " trials\n";
  return 0;
}

// verify

struct CaseResult {
  std::string name;
  bool passed = true;
  double residual = 0;
  std::string detail;
};

std::vector<CaseResult> suite_identities(EvalMode mode, int trials, std::uint64_t seed) {
  std::vector<CaseResult> out;
  for (IdentityId id : all_identity_ids()) {
    IdentityReport r = verify_identity(build_identity(id), mode, trials, seed);
    out.push_back({"identity " + r.name, r.passed, r.max_residual, r.message});
  }
  IdentityReport r = verify_identity(rank2sum(), mode, trials, seed);
  out.push_back({"identity " + r.name + " (printed)", r.passed, r.max_residual, r.message});
  return out;
}

std::vector<CaseResult> suite_ranks() {
  std::vector<CaseResult> out;
  const std::pair<RelationFamily, int> expected[] = {
      {RelationFamily::FiveInFive, 12}, {RelationFamily::SixInFive, 5}, {RelationFamily::SixInSix, 105}};
  for (auto [f, want] : expected) {
    RelationMatrix m = build_relation_matrix(f);
    int got = exact_rank(m);
    out.push_back({"rank " + family_name(f), got == want, got == want ? 0.0 : 1.0,
                   "rank " + std::to_string(got) + ", expected " + std::to_string(want)});
  }
  auto keys = [](const std::vector<std::string>& ts) {
    std::vector<CyclicKey> k;
    for (const auto& t : ts) k.push_back(canonical_cyclic_key(parse_t_notation(t)));
    return k;
  };
  const std::pair<RelationFamily, std::vector<std::string>> kept[] = {
      {RelationFamily::FiveInFive, five_letter_kept()},
      {RelationFamily::SixInFive, six_in_five_kept()},
      {RelationFamily::SixInSix, six_letter_kept()}};
  for (const auto& [f, ts] : kept) {
    bool ok = validate_complement(build_relation_matrix(f), keys(ts));
    out.push_back({"complement " + family_name(f), ok, ok ? 0.0 : 1.0, ""});
  }
  return out;
}

template <class S>
double residual(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, Rational>) {
    return a == b ? 0.0 : 1.0;
  } else {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
  }
}

std::vector<CaseResult> suite_reduction(EvalMode mode, int trials, std::uint64_t seed) {
  constexpr int kRepsPerWord = 3;
  std::vector<CaseResult> out;
  CaseResult agg{"reduction round-trip", true, 0, ""};
  for (int t = 0; t < trials; ++t) {
    std::uint64_t s = derive_seed(seed, t);
    int r = 1 + static_cast<int>(s % 6);
    Word w = random_word(derive_seed(s, 1), r, 10, 3);
    TracePolynomial p = reduce_to_minimal(reduce_to_basis(w), r);
    for (int k = 0; k < kRepsPerWord; ++k) {
      std::uint64_t rs = derive_seed(s, 2 + k);
      double res;
      if (mode == EvalMode::Exact) {
        RepQ rep = random_rep_exact(r, rs);
        TraceEvaluator<Rational> ev(rep);
        res = residual(ev(p), word_matrix(rep, w).trace());
      } else {
        RepC rep = random_rep_numeric(r, rs);
        TraceEvaluator<Complex> ev(rep);
        res = residual(ev(p), word_matrix(rep, w).trace());
      }
      agg.residual = std::max(agg.residual, res);
      bool ok = mode == EvalMode::Exact ? res == 0 : res <= kNumericTolerance;
      if (!ok && agg.passed) {
        agg.passed = false;
        agg.detail = "word " + w.str() + " r=" + std::to_string(r);
      }
    }
    for (Sym sym : p.symbols())
      if (!Reducer::shared().is_minimal_key(key_of(sym)) || key_of(sym).word().max_index() > r) {
        if (agg.passed) agg.detail = "non-minimal symbol " + key_of(sym).str();
        agg.passed = false;
      }
  }
  out.push_back(agg);
  return out;
}

std::vector<CaseResult> suite_embedding(EvalMode mode, int trials, std::uint64_t seed) {
  std::vector<CaseResult> out;
  for (int r = 1; r <= 4; ++r) {
    std::uint64_t s = derive_seed(seed, r);
    InvarianceReport rep = mode == EvalMode::Exact
                               ? invariance_report(random_rep_exact(r, s), trials, s)
                               : invariance_report(random_rep_numeric(r, s), trials, s);
    out.push_back({"embedding invariance r=" + std::to_string(r), rep.passed, rep.max_residual,
                   rep.message});
  }
  return out;
}

std::vector<CaseResult> suite_counts() {
  std::vector<CaseResult> out;
  for (int r = 1; r <= 10; ++r) {
    bool ok = count_formula(r) == count_binomial_sum(r) && count_formula(r) == type_counts(r).total();
    out.push_back({"count r=" + std::to_string(r), ok, ok ? 0.0 : 1.0, count_formula(r).get_str()});
  }
  for (int r = 1; r <= 6; ++r) {
    DimensionReport d = dimension_crosscheck(r);
    out.push_back({"dimensions r=" + std::to_string(r), d.passed, d.passed ? 0.0 : 1.0, d.message});
  }
  for (int r = 1; r <= 6; ++r) {
    bool ok = count_formula(r) == enumerate_minimal_set(r).size();
    out.push_back({"enumeration r=" + std::to_string(r), ok, ok ? 0.0 : 1.0, ""});
  }
  return out;
}

int run_verify(const std::string& suite, const std::string& mode_name, int trials,
               std::uint64_t seed) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  EvalMode mode = mode_name == "exact" ? EvalMode::Exact : EvalMode::Numeric;
  std::vector<CaseResult> cases;
  auto add = [&](std::vector<CaseResult> v) { cases.insert(cases.end(), v.begin(), v.end()); };
  bool all = suite == "all";
  if (all || suite == "identities") add(suite_identities(mode, trials, seed));
  if (all || suite == "ranks") add(suite_ranks());
  if (all || suite == "reduction") add(suite_reduction(mode, trials, seed));
  if (all || suite == "embedding") add(suite_embedding(mode, trials, seed));
  if (all || suite == "counts") add(suite_counts());
  bool ok = true;
  double worst = 0;
  for (const auto& c : cases) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " residual=" << c.residual;
    if (!c.passed && !c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
    ok = ok && c.passed;
    worst = std::max(worst, c.residual);
  }
  std::cout << (ok ? "PASS" : "FAIL") << " suite=" << suite << " mode=" << mode_name
            << " cases=" << cases.size() << " worst_residual=" << worst << "\n";
  return ok ? 0 : 1;
}

// rank

int run_rank(const std::string& family, const std::string& dump) {
  RelationMatrix m = build_relation_matrix(family_from_name(family));
  std::cout << exact_rank(m) << "\n";
  if (!dump.empty()) {
    std::ofstream out(dump);
    if (!out) throw UsageError("cannot write " + dump);
    out << matrix_csv(m);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace coordinates for SL(3,C) character varieties of free groups"};
  app.require_subcommand(1);

  int r = 0;
  bool as_json = false, as_csv = false, table = false;

  auto* count = app.add_subcommand("count", "Size of the minimal generating set");
  count->add_option("--r", r, "Rank of the free group")->required();
  count->add_flag("--table", table, "Per-type breakdown");
  count->add_flag("--json", as_json, "JSON output");

  auto* gens = app.add_subcommand("generators", "List the minimal generating set");
  gens->add_option("--r", r, "Rank of the free group")->required();
  gens->add_flag("--json", as_json, "JSON output");

  std::string rep_path;
  auto* emb = app.add_subcommand("embed", "Trace coordinates of a representation");
  emb->add_option("--rep", rep_path, "Representation file or directory")->required();
  emb->add_flag("--json", as_json, "JSON output");
  emb->add_flag("--csv", as_csv, "CSV output");

  std::string word;
  bool basis = false, minimal = false;
  std::vector<std::string> check_tokens;
  auto* red = app.add_subcommand("reduce", "Reduce the trace of a word");
  red->add_option("--word", word, "Word such as \"x1 x2^-1\"")->required();
  red->add_option("--r", r, "Rank of the free group")->required();
  auto* fb = red->add_flag("--basis", basis, "Stop at the generator forms");
  auto* fm = red->add_flag("--minimal", minimal, "Reduce to the minimal generating set (default)");
  fb->excludes(fm);
  auto* check_opt = red->add_option("--check", check_tokens, "Evaluation check: trials=K seed=S")
                        ->expected(0, 2)
                        ->allow_extra_args(false);

  std::string suite = "all", mode = "exact";
  int trials = 100;
  std::uint64_t seed = 0;
  auto* ver = app.add_subcommand("verify", "Run verification suites");
  ver->add_option("--suite", suite, "Suite")
      ->check(CLI::IsMember({"identities", "ranks", "reduction", "embedding", "counts", "all"}));
  ver->add_option("--mode", mode, "Arithmetic")->check(CLI::IsMember({"exact", "numeric"}));
  ver->add_option("--trials", trials, "Trials per case");
  auto* seed_opt = ver->add_option("--seed", seed, "Random seed");

  std::string family, dump;
  auto* rank = app.add_subcommand("rank", "Exact rank of a relation matrix");
  rank->add_option("--family", family, "Matrix family")
      ->required()
      ->check(CLI::IsMember({"five5", "six5", "six6"}));
  rank->add_option("--dump-matrix", dump, "Write the matrix as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (count->parsed()) return run_count(r, table, as_json);
    if (gens->parsed()) return run_generators(r, as_json);
    if (emb->parsed()) return run_embed(rep_path, as_json, as_csv);
    if (red->parsed()) {
      CheckSpec check;
      if (check_opt->count() > 0) check = parse_check(check_tokens, default_seed());
      return run_reduce(word, r, basis, check);
    }
    if (ver->parsed()) return run_verify(suite, mode, trials, seed_opt->count() ? seed : default_seed());
    if (rank->parsed()) return run_rank(family, dump);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
