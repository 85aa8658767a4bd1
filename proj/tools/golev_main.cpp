// golev: exact computation of golombic and Levine sequences over the free
// group on the integers, driven by cached Vardi polynomials.

#include <golev/analysis.hpp>
#include <golev/fastseq.hpp>
#include <golev/reference_tables.hpp>
#include <golev/vardi_cache.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace golev;
using nlohmann::json;

namespace {

enum class OutputFormat { human, bfile, records };

struct RunConfig {
  unsigned window = 7;
  std::string cache_dir;
  std::size_t budget = kDefaultRowBudget;
  OutputFormat format = OutputFormat::human;
  bool verbose = false;

  std::filesystem::path cache_path() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("GOLEV_CACHE_DIR")) return env;
    return "golev-cache";
  }
};

// Windows up to this size regenerate on demand in seconds; anything larger
// is an explicit batch job via `vardi gen`.
constexpr unsigned kAutoGenerateWindow = 7;

void heartbeat(const RunConfig& cfg, const std::string& msg) {
  if (cfg.verbose) std::cerr << "# " << msg << "\n";
}

VardiSet::ProgressFn gen_progress() {
  return [](unsigned n, std::size_t terms) {
    std::cerr << "# T_" << n << " generated (" << terms << " terms)\n";
  };
}

VardiSet ensure_vardi(const RunConfig& cfg, unsigned window) {
  const auto dir = cfg.cache_path();
  if (std::filesystem::exists(dir / "manifest.txt")) {
    VardiSet vs = load_vardi_cache(dir);
    if (vs.window() >= window) return vs;
    if (window > kAutoGenerateWindow)
      throw CacheError("cache at " + dir.string() + " has window " +
                       std::to_string(vs.window()) + "; window " +
                       std::to_string(window) +
                       " is a long generation, run: golev vardi gen " +
                       std::to_string(window));
    heartbeat(cfg, "extending polynomial cache to window " +
                       std::to_string(window));
    vs = VardiSet::extend(std::move(vs), window, gen_progress());
    save_vardi_cache(vs, dir);
    return vs;
  }
  if (window > kAutoGenerateWindow)
    throw CacheError("no polynomial cache at " + dir.string() + "; window " +
                     std::to_string(window) +
                     " is a long generation, run: golev vardi gen " +
                     std::to_string(window));
  heartbeat(cfg, "generating polynomials to window " + std::to_string(window));
  VardiSet vs = VardiSet::generate(window, gen_progress());
  save_vardi_cache(vs, dir);
  return vs;
}

SeqKind parse_kind(const std::string& s) {
  if (s == "gol" || s == "golombic") return SeqKind::golombic;
  if (s == "lev" || s == "levine") return SeqKind::levine;
  throw CLI::ValidationError("kind must be gol or lev, got '" + s + "'");
}

// Seeds accept the word grammar plus comma-separated tuple shorthand.
Word parse_seed(std::string text) {
  for (char& c : text)
    if (c == ',') c = ' ';
  return parse_word(text);
}

Rat parse_decimal(const std::string& s) {
  const std::size_t dot = s.find('.');
  if (dot == std::string::npos) return Rat(Int(s));
  const std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  Int scale = 1;
  for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
  const bool neg = !ip.empty() && ip[0] == '-';
  Int num = Int(ip.empty() || ip == "-" ? "0" : ip) * scale;
  num += neg ? -Int(fp) : Int(fp);
  return Rat(num, scale);
}

void emit_terms(const RunConfig& cfg, const SeqReport& report) {
  switch (cfg.format) {
    case OutputFormat::bfile:
      for (std::size_t n = 1; n <= report.terms.size(); ++n)
        std::cout << n << " " << report.terms[n - 1].str() << "\n";
      break;
    case OutputFormat::records:
      for (std::size_t n = 1; n <= report.terms.size(); ++n) {
        json rec = {{"kind", seq_kind_name(report.kind)},
                    {"seed", format_word(report.seed)},
                    {"n", n},
                    {"term", report.terms[n - 1].str()}};
        std::cout << rec.dump() << "\n";
      }
      break;
    case OutputFormat::human:
      std::cout << "# seed " << format_word(report.seed) << " ("
                << seq_kind_name(report.kind) << ")\n";
      std::cout << "# method " << report.method_string()
                << ", oracle-checked prefix " << report.oracle_checked_prefix
                << "\n";
      if (report.orbit_death)
        std::cout << "# orbit reaches () at depth " << *report.orbit_death
                  << "; all later terms are 0\n";
      for (std::size_t n = 1; n <= report.terms.size(); ++n)
        std::cout << n << "\t" << report.terms[n - 1].str() << "\n";
      break;
  }
}

int cmd_vardi_gen(const RunConfig& cfg, unsigned window) {
  const VardiSet vs =
      load_or_generate(cfg.cache_path(), window, gen_progress());
  std::cout << "cache " << cfg.cache_path().string() << ": window "
            << vs.window() << ", content hash " << vs.content_hash()
            << ", generated " << vs.generated_at() << "\n";
  return 0;
}

int cmd_vardi_show(const RunConfig& cfg, unsigned n) {
  const VardiSet vs = load_vardi_cache(cfg.cache_path());
  if (n < 1 || n > vs.window()) {
    std::cerr << "error: T_" << n << " not generated (cache window is "
              << vs.window() << "); run: golev vardi gen " << n << "\n";
    return 1;
  }
  const MPoly& t = vs.T(n);
  std::cout << "T_" << n << " (binomial basis, " << t.term_count()
            << " terms):\n  " << to_pretty_string(t) << "\n";
  std::cout << "T_" << n << " (monomial basis):\n  "
            << to_pretty_string(to_monomial(t)) << "\n";
  std::cout << "d_" << n << " = " << vs.tilde(n).d.str() << ", T~_" << n
            << " = " << to_pretty_string(vs.tilde(n).poly) << "\n";
  return 0;
}

int cmd_vardi_verify(const RunConfig& cfg, unsigned trials) {
  const VardiSet vs = load_vardi_cache(cfg.cache_path());
  heartbeat(cfg, "verifying window " + std::to_string(vs.window()) + " with " +
                     std::to_string(trials) + " trials");
  const VerifyReport report = vs.verify(trials);
  for (const auto& note : report.notes) std::cout << "# " << note << "\n";
  if (report.ok()) {
    std::cout << "all identities pass (" << report.checks << " checks, "
              << report.trials << " trials, window " << vs.window() << ")\n";
    return 0;
  }
  for (const auto& f : report.failures)
    std::cout << "FAIL " << f.identity << " at n=" << f.n << ", a=" << f.witness
              << "\n";
  return 1;
}

int cmd_seq(const RunConfig& cfg, const std::string& kind_text,
            const std::string& seed_text, std::size_t target, bool oracle_only,
            std::size_t check, const std::string& checkpoint,
            std::size_t checkpoint_every) {
  const SeqKind kind = parse_kind(kind_text);
  const Word seed = parse_seed(seed_text);
  const VardiSet vs = ensure_vardi(cfg, cfg.window);
  BootstrapOptions opt;
  opt.row_budget = cfg.budget;
  opt.oracle_only = oracle_only;
  opt.check_prefix = check;
  if (!checkpoint.empty()) {
    opt.checkpoint_path = checkpoint;
    opt.checkpoint_every = checkpoint_every;
  }
  if (cfg.verbose)
    opt.progress = [](const std::string& msg) {
      std::cerr << "# " << msg << "\n";
    };
  const SeqReport report = bootstrap(kind, seed, target, vs, opt);
  emit_terms(cfg, report);
  return 0;
}

int cmd_tables(const RunConfig& cfg, int id, std::size_t max_terms) {
  const ReferenceTable& table = reference_table(id);
  const std::vector<Int> expected = reference_terms(id);
  const std::size_t prefix =
      max_terms == 0 ? expected.size() : std::min(max_terms, expected.size());

  const VardiSet vs = ensure_vardi(cfg, cfg.window);
  BootstrapOptions opt;
  opt.row_budget = cfg.budget;
  if (cfg.verbose)
    opt.progress = [](const std::string& msg) {
      std::cerr << "# " << msg << "\n";
    };
  SeqReport report;
  try {
    report =
        bootstrap(table.kind, parse_seed(table.seed_text), prefix, vs, opt);
  } catch (const UnreachableError& e) {
    std::cerr << "error: table " << id << " prefix " << prefix
              << " is not reachable with window " << cfg.window << ": "
              << e.what() << "\n";
    return 1;
  }

  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= prefix; ++n) {
    if (report.terms[n - 1] != expected[n - 1]) {
      ++mismatches;
      std::cout << "MISMATCH n=" << n << ": computed "
                << report.terms[n - 1].str() << ", published "
                << expected[n - 1].str() << "\n";
    }
  }
  if (mismatches == 0) {
    std::cout << "table " << id << ": first " << prefix
              << " terms match exactly (" << report.method_string() << ")\n";
    return 0;
  }
  std::cout << "table " << id << ": " << mismatches << " of " << prefix
            << " terms differ\n";
  return 1;
}

int cmd_analyze_orbit(const RunConfig& cfg, const std::string& kind_text,
                      const std::string& seed_text, std::size_t max_iter) {
  const SeqKind kind = parse_kind(kind_text);
  const Word seed = parse_seed(seed_text);
  TriangleIterator it(kind, seed, cfg.budget);
  std::vector<Int> lengths;
  for (std::size_t i = 0; i <= max_iter; ++i) {
    if (it.row().empty()) {
      std::string joined;
      for (std::size_t t = 0; t < lengths.size(); ++t) {
        if (t) joined += ",";
        joined += lengths[t].str();
      }
      std::cout << "(" << joined << ")\nreached () after " << it.depth()
                << " steps\n";
      return 0;
    }
    lengths.push_back(length(it.row()));
    it.advance();
  }
  std::cout << "orbit still alive after " << max_iter
            << " iterations; lengths so far:\n";
  for (std::size_t n = 1; n <= lengths.size(); ++n)
    std::cout << n << "\t" << lengths[n - 1].str() << "\n";
  return 0;
}

int cmd_analyze_ratios(const RunConfig& cfg, const std::string& kind_text,
                       const std::string& seed_text, std::size_t terms,
                       const std::string& kappa_text) {
  const SeqKind kind = parse_kind(kind_text);
  const Word seed = parse_seed(seed_text);
  const VardiSet vs = ensure_vardi(cfg, cfg.window);
  BootstrapOptions opt;
  opt.row_budget = cfg.budget;
  const SeqReport seq = bootstrap(kind, seed, terms, vs, opt);

  std::optional<Rat> kappa;
  if (!kappa_text.empty()) kappa = parse_decimal(kappa_text);
  const RatioTarget target =
      kind == SeqKind::golombic ? RatioTarget::golden : RatioTarget::mallows;
  const RatioReport report = ratio_report(seq.terms, target, kappa);
  const std::string target_name =
      target == RatioTarget::golden ? "phi-1" : "kappa";
  const bool in_scope = is_homogeneous(seed);

  if (cfg.format == OutputFormat::records) {
    for (const auto& row : report.rows) {
      json rec = {{"n", row.n},
                  {"target", target_name},
                  {"in_conjecture_scope", in_scope},
                  {"skipped", row.skipped}};
      if (!row.skipped) {
        rec["ratio"] = decimal_string(row.ratio, 12);
        rec["deviation"] = decimal_string(row.deviation, 12);
      }
      std::cout << rec.dump() << "\n";
    }
    return 0;
  }
  std::cout << "# a_{n+1}/(a_n a_{n-1}) against " << target_name << " = "
            << decimal_string(report.target, 12) << "\n";
  if (!in_scope)
    std::cout << "# seed " << format_word(seed)
              << " is not homogeneous: outside conjecture scope\n";
  for (const auto& row : report.rows) {
    if (row.skipped) {
      std::cout << row.n << "\tskipped (zero denominator)\n";
      continue;
    }
    std::cout << row.n << "\t" << decimal_string(row.ratio, 12)
              << "\tdeviation " << decimal_string(row.deviation, 12) << "\n";
  }
  return 0;
}

int cmd_analyze_degrees(const RunConfig& cfg, const std::string& kind_text,
                        unsigned n, unsigned k) {
  const SeqKind kind = parse_kind(kind_text);
  const unsigned window = std::max(cfg.window, n);
  const VardiSet vs = ensure_vardi(cfg, window);
  const DegreeReport report = degree_check(kind, n, k, vs);
  for (const auto& row : report.rows) {
    std::cout << (row.var == 'm' ? "deg_m" : "deg_b") << row.j << " = "
              << row.degree << " vs F_" << (row.var == 'm' ? n : n - 1)
              << " = " << row.expected.str() << ": "
              << (row.agree ? "agree" : "DISAGREE") << "\n";
  }
  std::cout << "F_" << n << "/F_" << n - 1 << ": "
            << (report.all_agree ? "agree" : "disagree") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "golev: exact golombic and Levine sequences over the free group on the "
      "integers"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--window,-w", cfg.window, "Vardi polynomial window W")
      ->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir,
                 "polynomial cache directory (default: $GOLEV_CACHE_DIR or "
                 "./golev-cache)");
  app.add_option("--budget", cfg.budget, "maximal reduced row size in powers")
      ->capture_default_str();
  std::string format = "human";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "bfile", "records"}))
      ->capture_default_str();
  app.add_flag("--verbose,-v", cfg.verbose, "progress heartbeats on stderr");

  // vardi
  auto* vardi = app.add_subcommand(
      "vardi", "generate, inspect and verify the polynomial cache");
  vardi->require_subcommand(1);
  unsigned gen_window = 7;
  auto* vgen = vardi->add_subcommand("gen", "generate or extend the cache");
  vgen->add_option("window", gen_window, "target window")->required();
  unsigned show_n = 1;
  auto* vshow = vardi->add_subcommand("show", "print T_n in both bases");
  vshow->add_option("n", show_n, "polynomial index")->required();
  unsigned verify_trials = 50;
  auto* vverify = vardi->add_subcommand("verify", "run the identity suite");
  vverify->add_option("trials", verify_trials, "random trials")->required();

  // seq
  auto* seq = app.add_subcommand("seq", "compute sequence terms");
  std::string seq_kind, seq_seed;
  std::size_t seq_n = 0, seq_check = 0, cp_every = 1000;
  bool oracle_only = false;
  std::string cp_path;
  seq->add_option("kind", seq_kind, "gol or lev")->required();
  seq->add_option("seed", seq_seed, "seed word or tuple")->required();
  seq->add_option("N", seq_n, "number of terms")->required();
  seq->add_flag("--oracle-only", oracle_only, "force the brute-force path");
  seq->add_option("--check", seq_check,
                  "cross-check this many terms against the oracle");
  seq->add_option("--checkpoint", cp_path, "checkpoint file for long runs");
  seq->add_option("--checkpoint-every", cp_every,
                  "powers between checkpoint writes")
      ->capture_default_str();

  // tables
  auto* tables =
      app.add_subcommand("tables", "recompute a published table and diff it");
  int table_id = 0;
  std::size_t table_max = 0;
  tables->add_option("id", table_id, "table id (1..4)")->required();
  tables->add_option("--max", table_max, "prefix length (default: full)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "conjecture checks and orbits");
  analyze->require_subcommand(1);
  auto* orbit =
      analyze->add_subcommand("orbit", "iterate until () or --max-iter");
  std::string orb_kind, orb_seed;
  std::size_t orb_max = 64;
  orbit->add_option("kind", orb_kind)->required();
  orbit->add_option("seed", orb_seed)->required();
  orbit->add_option("--max-iter", orb_max)->capture_default_str();

  auto* ratios = analyze->add_subcommand(
      "ratios", "a_{n+1}/(a_n a_{n-1}) against the conjectured limits");
  std::string rat_kind, rat_seed, rat_kappa;
  std::size_t rat_terms = 14;
  ratios->add_option("kind", rat_kind)->required();
  ratios->add_option("seed", rat_seed)->required();
  ratios->add_option("--terms", rat_terms)->capture_default_str();
  ratios->add_option("--kappa", rat_kappa,
                     "decimal override for Mallows's constant");

  auto* degrees = analyze->add_subcommand(
      "degrees", "per-variable degrees against the Fibonacci pattern");
  std::string deg_kind;
  unsigned deg_n = 1, deg_k = 1;
  degrees->add_option("kind", deg_kind)->required();
  degrees->add_option("n", deg_n)->required();
  degrees->add_option("k", deg_k)->required();

  CLI11_PARSE(app, argc, argv);

  cfg.format = format == "bfile"     ? OutputFormat::bfile
               : format == "records" ? OutputFormat::records
                                     : OutputFormat::human;

  try {
    if (vgen->parsed()) return cmd_vardi_gen(cfg, gen_window);
    if (vshow->parsed()) return cmd_vardi_show(cfg, show_n);
    if (vverify->parsed()) return cmd_vardi_verify(cfg, verify_trials);
    if (seq->parsed())
      return cmd_seq(cfg, seq_kind, seq_seed, seq_n, oracle_only, seq_check,
                     cp_path, cp_every);
    if (tables->parsed()) return cmd_tables(cfg, table_id, table_max);
    if (orbit->parsed())
      return cmd_analyze_orbit(cfg, orb_kind, orb_seed, orb_max);
    if (ratios->parsed())
      return cmd_analyze_ratios(cfg, rat_kind, rat_seed, rat_terms, rat_kappa);
    if (degrees->parsed())
      return cmd_analyze_degrees(cfg, deg_kind, deg_n, deg_k);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
