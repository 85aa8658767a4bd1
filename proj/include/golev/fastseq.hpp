#pragma once

#include <golev/golomb_op.hpp>
#include <golev/vardi.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace golev {

// E: the largest even index <= W-2. A fast Levine call on w needs
// lev_2 w, lev_4 w, ..., lev_E w supplied up front.
inline unsigned even_window(unsigned window) {
  return window < 4 ? 0 : (window - 2) / 2 * 2;
}

// The requested index cannot be reached under the current window and row
// budget; carries the largest index that can.
class UnreachableError : public std::runtime_error {
 public:
  UnreachableError(const std::string& what, std::size_t max_reachable)
      : std::runtime_error(what), max_reachable_(max_reachable) {}
  std::size_t max_reachable() const noexcept { return max_reachable_; }

 private:
  std::size_t max_reachable_;
};

// Interruptible state of one fast call: powers [0, next_j) are folded in.
struct FastCallState {
  std::size_t next_j = 0;
  std::vector<Int> s;
};

using StepHook =
    std::function<void(std::size_t j_done, const std::vector<Int>& s)>;

namespace detail {

// Shared delta loop of the two fast algorithms. Folds each reduced power
// (b_j, m_j) into the running state via the fused T evaluation on
// a = (sign m_j, sign b_j) . (s - h).
inline void run_delta_loop(const VardiSet& vs, const Word& w, int sign,
                           const std::vector<Int>& h, FastCallState& st,
                           const StepHook& hook) {
  const unsigned W = vs.window();
  const auto& powers = w.powers();
  for (std::size_t j = st.next_j; j < powers.size(); ++j) {
    std::vector<Int> a;
    a.reserve(W + 2);
    a.push_back(sign * powers[j].exponent);
    a.push_back(sign * powers[j].base);
    for (unsigned n = 1; n <= W; ++n) a.push_back(st.s[n - 1] - h[n - 1]);
    const std::vector<Int> deltas = vs.eval_T_fused(IntTuple(std::move(a)));
    for (unsigned n = 1; n <= W; ++n) st.s[n - 1] += deltas[n - 1];
    st.next_j = j + 1;
    if (hook) hook(j + 1, st.s);
  }
}

}  // namespace detail

// (gol_1 w, ..., gol_W w). State s carries 1 + gol_n(prefix); an optional
// caller-provided state resumes a longer run mid-word.
inline std::vector<Int> golombic_numbers(const Word& w, const VardiSet& vs,
                                         FastCallState* state = nullptr,
                                         const StepHook& hook = {}) {
  const unsigned W = vs.window();
  FastCallState local;
  FastCallState& st = state ? *state : local;
  if (st.s.empty()) st.s.assign(W, Int(1));
  if (st.s.size() != W)
    throw std::invalid_argument("resume state has wrong window");
  detail::run_delta_loop(vs, w, +1, std::vector<Int>(W, Int(0)), st, hook);
  std::vector<Int> out = st.s;
  for (Int& v : out) v -= 1;
  return out;
}

// (lev_1 w, ..., lev_W w) given h_even = (lev_2 w, lev_4 w, ..., lev_E w).
// State s carries (-1)^n l_{n,j}; the returned even positions must reproduce
// h_even exactly, which is re-checked before returning.
inline std::vector<Int> levine_numbers(const Word& w, const VardiSet& vs,
                                       const std::vector<Int>& h_even,
                                       FastCallState* state = nullptr,
                                       const StepHook& hook = {}) {
  const unsigned W = vs.window();
  const unsigned E = even_window(W);
  if (h_even.size() != E / 2)
    throw std::invalid_argument(
        "levine_numbers needs " + std::to_string(E / 2) +
        " even seed values (lev_2, lev_4, ..., lev_" + std::to_string(E) +
        "), got " + std::to_string(h_even.size()));
  std::vector<Int> h(W, Int(0));
  for (unsigned i = 0; i < h_even.size(); ++i) h[2 * i + 1] = h_even[i];

  FastCallState local;
  FastCallState& st = state ? *state : local;
  if (st.s.empty()) st.s.assign(W, Int(0));
  if (st.s.size() != W)
    throw std::invalid_argument("resume state has wrong window");
  detail::run_delta_loop(vs, w, -1, h, st, hook);

  std::vector<Int> out(W);
  for (unsigned n = 1; n <= W; ++n)
    out[n - 1] = n % 2 == 0 ? st.s[n - 1] : -st.s[n - 1];
  for (unsigned i = 0; i < h_even.size(); ++i)
    if (out[2 * i + 1] != h_even[i])
      throw std::invalid_argument(
          "inconsistent seed values: computed lev_" + std::to_string(2 * i + 2) +
          " = " + out[2 * i + 1].str() + " but " + h_even[i].str() +
          " was supplied");
  return out;
}

// ---------------------------------------------------------------------------
// Checkpointing for long chained runs: kind, seed word text, schedule
// position, power index and the exact s values in decimal.

struct Checkpoint {
  SeqKind kind;
  std::string seed_text;  // the row word the interrupted call was running on
  std::size_t schedule_t = 0;
  std::size_t j = 0;
  std::vector<Int> s;

  std::string to_text() const {
    std::string out = "golev-checkpoint v1\n";
    out += std::string("kind ") + seq_kind_name(kind) + "\n";
    out += "schedule_t " + std::to_string(schedule_t) + "\n";
    out += "j " + std::to_string(j) + "\n";
    out += "s";
    for (const Int& v : s) out += " " + v.str();
    out += "\nseed " + seed_text + "\n";
    return out;
  }

  static Checkpoint from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "golev-checkpoint v1")
      throw CacheError("bad checkpoint header: '" + line + "'");
    Checkpoint cp;
    bool have_kind = false, have_seed = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string key;
      ls >> key;
      if (key == "kind") {
        std::string k;
        ls >> k;
        cp.kind = k == "golombic" ? SeqKind::golombic : SeqKind::levine;
        have_kind = true;
      } else if (key == "schedule_t") {
        ls >> cp.schedule_t;
      } else if (key == "j") {
        ls >> cp.j;
      } else if (key == "s") {
        std::string v;
        while (ls >> v) cp.s.push_back(Int(v));
      } else if (key == "seed") {
        cp.seed_text = line.substr(5);
        have_seed = true;
      } else {
        throw CacheError("bad checkpoint key '" + key + "'");
      }
    }
    if (!have_kind || !have_seed)
      throw CacheError("incomplete checkpoint file");
    return cp;
  }

  void save(const std::filesystem::path& path) const {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw CacheError("cannot write checkpoint " + tmp.string());
      out << to_text();
      if (!out.flush()) throw CacheError("short checkpoint write");
    }
    std::filesystem::rename(tmp, path);
  }

  static std::optional<Checkpoint> load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
  }
};

// ---------------------------------------------------------------------------
// Bootstrap driver.

enum class SeqMethod { oracle, fast, chained };

struct SeqReport {
  SeqKind kind;
  Word seed;
  std::vector<Int> terms;  // terms[i-1] = a_i, indices contiguous from 1
  SeqMethod method = SeqMethod::oracle;
  unsigned window = 0;
  std::vector<std::size_t> schedule;       // row depths of the fast calls
  std::size_t oracle_checked_prefix = 0;   // first terms confirmed by rows
  std::optional<std::size_t> orbit_death;  // first depth whose row is ()

  std::string method_string() const {
    switch (method) {
      case SeqMethod::oracle:
        return "oracle";
      case SeqMethod::fast:
        return "fast(W=" + std::to_string(window) + ")";
      case SeqMethod::chained: {
        std::string s = "chained(W=" + std::to_string(window) + ", t=";
        for (std::size_t i = 0; i < schedule.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(schedule[i]);
        }
        return s + ")";
      }
    }
    return "?";
  }
};

struct BootstrapOptions {
  std::size_t row_budget = kDefaultRowBudget;
  bool oracle_only = false;
  std::size_t check_prefix = 0;  // cross-check this many terms by oracle
  std::function<void(const std::string&)> progress;
  std::filesystem::path checkpoint_path;  // empty = no checkpointing
  std::size_t checkpoint_every = 0;       // powers between checkpoint writes
};

namespace detail {

inline void note(const BootstrapOptions& opt, const std::string& msg) {
  if (opt.progress) opt.progress(msg);
}

// Walks rows, recording term n = ||row_{n-1}|| into `terms` (1-based,
// already sized) and the first empty row. try_advance_to stops short when
// the next row would exceed the budget.
class RowWalker {
 public:
  RowWalker(SeqKind kind, const Word& seed, std::size_t budget,
            std::vector<Int>& terms)
      : it_(kind, seed, budget), terms_(&terms) {
    record();
  }

  const Word& row() const { return it_.row(); }
  std::size_t depth() const { return it_.depth(); }
  std::optional<std::size_t> orbit_death() const { return death_; }

  Int next_row_powers() const { return it_.next_row_powers(); }

  bool try_advance_to(std::size_t depth) {
    while (it_.depth() < depth) {
      if (!it_.next_fits()) return false;
      it_.advance();
      record();
    }
    return true;
  }

 private:
  void record() {
    if (!death_ && it_.row().empty()) death_ = it_.depth();
    if (it_.depth() < terms_->size())
      (*terms_)[it_.depth()] = length(it_.row());
  }

  TriangleIterator it_;
  std::vector<Int>* terms_;
  std::optional<std::size_t> death_;
};

[[noreturn]] inline void throw_unreachable(const RowWalker& rows,
                                           std::size_t reachable,
                                           const std::string& remedy) {
  throw UnreachableError("row " + std::to_string(rows.depth() + 1) +
                             " would need " + rows.next_row_powers().str() +
                             " powers, over the row budget; the maximal "
                             "reachable index is " +
                             std::to_string(reachable) + " (" + remedy + ")",
                         reachable);
}

inline StepHook checkpoint_hook(const BootstrapOptions& opt, SeqKind kind,
                                const Word& row, std::size_t schedule_t) {
  if (opt.checkpoint_path.empty() || opt.checkpoint_every == 0) return {};
  const std::string seed_text = format_word(row);
  const auto path = opt.checkpoint_path;
  const std::size_t every = opt.checkpoint_every;
  return [=](std::size_t j, const std::vector<Int>& s) {
    if (j % every != 0) return;
    Checkpoint cp{kind, seed_text, schedule_t, j, s};
    cp.save(path);
  };
}

// Resume state for the call on `row` at schedule position t, if a matching
// checkpoint exists.
inline FastCallState resume_state(const BootstrapOptions& opt, SeqKind kind,
                                  const Word& row, std::size_t schedule_t) {
  FastCallState st;
  if (opt.checkpoint_path.empty()) return st;
  auto cp = Checkpoint::load(opt.checkpoint_path);
  if (!cp) return st;
  if (cp->kind != kind || cp->schedule_t != schedule_t ||
      cp->seed_text != format_word(row))
    return st;
  st.next_j = cp->j;
  st.s = cp->s;
  return st;
}

}  // namespace detail

// Computes a_1..a_target of the golombic or Levine sequence based at `seed`.
//
// Golombic: rows Gol^m(seed) by oracle as deep as needed, then one fast call
// covering indices m+1..m+W.
//
// Levine: oracle prefix lev_1..lev_{2+E}, then fast calls chained on rows
// L^t(seed) for t = 2, 2+(W-E), ..., each feeding its even-position values
// from earlier output. Requires W >= 7; smaller windows fall back to the
// oracle.
inline SeqReport bootstrap(SeqKind kind, const Word& seed,
                           std::size_t target, const VardiSet& vs,
                           const BootstrapOptions& opt = {}) {
  if (target < 1) throw std::invalid_argument("target index must be >= 1");
  const unsigned W = vs.window();
  const unsigned E = even_window(W);

  SeqReport report;
  report.kind = kind;
  report.seed = seed;
  report.window = W;
  report.terms.assign(target, Int(0));

  const bool oracle_only =
      opt.oracle_only || (kind == SeqKind::levine && (W < 7 || target <= 2 + E)) ||
      (kind == SeqKind::golombic && target <= 1);

  detail::RowWalker rows(kind, seed, opt.row_budget, report.terms);

  if (oracle_only) {
    if (!rows.try_advance_to(target - 1))
      detail::throw_unreachable(rows, rows.depth() + 1,
                                "increase --budget, or allow the fast path");
    report.method = SeqMethod::oracle;
    report.oracle_checked_prefix = target;
    report.orbit_death = rows.orbit_death();
    return report;
  }

  if (kind == SeqKind::golombic) {
    const std::size_t t = target > W ? target - W : 0;
    if (!rows.try_advance_to(t))
      detail::throw_unreachable(rows, rows.depth() + W,
                                "increase --budget or use a larger window");
    detail::note(opt, "fast call on row " + std::to_string(t));
    FastCallState st = detail::resume_state(opt, kind, rows.row(), t);
    const std::vector<Int> out = golombic_numbers(
        rows.row(), vs, &st, detail::checkpoint_hook(opt, kind, rows.row(), t));
    // index t+1 is known both ways; any mismatch is a bug
    if (out[0] != report.terms[t])
      throw IntegrityError("fast/oracle mismatch at index " +
                           std::to_string(t + 1));
    for (unsigned n = 1; n <= W && t + n <= target; ++n)
      report.terms[t + n - 1] = out[n - 1];
    report.method = SeqMethod::fast;
    report.schedule = {t};
    report.oracle_checked_prefix = t + 1;
  } else {
    // Each call may sit at most W-E rows past the previous one (its even
    // seed values must be covered), and the last call need not overshoot
    // target-W: deeper rows are doubly-exponentially larger.
    const unsigned step = W - E;
    std::vector<std::size_t> schedule;
    for (std::size_t t = 2;; ) {
      schedule.push_back(t);
      if (t + W >= target) break;
      t = std::min(t + step, target - W);
    }

    // one pass over the triangle: the oracle prefix needs rows through
    // L^{1+E}, the fast calls need the rows at the scheduled depths
    std::map<std::size_t, Word> scheduled_rows;
    const std::size_t max_depth =
        std::max<std::size_t>(1 + E, schedule.back());
    std::size_t walked_calls = 0;
    {
      bool budget_hit = false;
      while (rows.depth() < max_depth) {
        if (!rows.try_advance_to(rows.depth() + 1)) {
          budget_hit = true;
          break;
        }
        if (walked_calls < schedule.size() &&
            rows.depth() == schedule[walked_calls]) {
          scheduled_rows.emplace(rows.depth(), rows.row());
          ++walked_calls;
        }
      }
      if (budget_hit) {
        // a call on the deepest materialized row is always schedulable
        const std::size_t reachable =
            rows.depth() < 1 + E ? rows.depth() + 1 : rows.depth() + W;
        detail::throw_unreachable(rows, reachable,
                                  "increase --budget or use window 9");
      }
    }

    std::size_t covered = 2 + E;
    for (const std::size_t t : schedule) {
      const Word& row_t = scheduled_rows.at(t);
      std::vector<Int> h_even;
      for (std::size_t i = t + 2; i <= t + E; i += 2)
        h_even.push_back(report.terms[i - 1]);
      detail::note(opt, "fast call on row " + std::to_string(t) + " (" +
                            std::to_string(row_t.size()) + " powers)");
      FastCallState st = detail::resume_state(opt, kind, row_t, t);
      const std::vector<Int> out =
          levine_numbers(row_t, vs, h_even, &st,
                         detail::checkpoint_hook(opt, kind, row_t, t));
      for (unsigned n = 1; n <= W; ++n) {
        const std::size_t idx = t + n;
        if (idx <= covered) {
          if (report.terms[idx - 1] != out[n - 1])
            throw IntegrityError("fast/known mismatch at index " +
                                 std::to_string(idx));
        } else if (idx <= target) {
          report.terms[idx - 1] = out[n - 1];
        }
      }
      covered = t + W;
    }
    report.schedule = std::move(schedule);
    report.method =
        report.schedule.size() > 1 ? SeqMethod::chained : SeqMethod::fast;
    report.oracle_checked_prefix = std::min<std::size_t>(2 + E, target);
  }

  // optional deeper oracle cross-check of the first K terms
  if (opt.check_prefix > 1) {
    const std::size_t k = std::min(opt.check_prefix, target);
    std::vector<Int> check_terms(k, Int(0));
    detail::RowWalker checker(kind, seed, opt.row_budget, check_terms);
    if (!checker.try_advance_to(k - 1))
      detail::throw_unreachable(checker, checker.depth() + 1,
                                "reduce --check or increase --budget");
    for (std::size_t i = 0; i < k; ++i)
      if (check_terms[i] != report.terms[i])
        throw IntegrityError("oracle cross-check failed at index " +
                             std::to_string(i + 1) + ": fast " +
                             report.terms[i].str() + ", oracle " +
                             check_terms[i].str());
    report.oracle_checked_prefix = std::max(report.oracle_checked_prefix, k);
  }

  report.orbit_death = rows.orbit_death();
  if (!opt.checkpoint_path.empty())
    std::filesystem::remove(opt.checkpoint_path);
  return report;
}

}  // namespace golev
