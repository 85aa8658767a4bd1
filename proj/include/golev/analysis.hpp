#pragma once

#include <golev/fastseq.hpp>
#include <golev/mpoly.hpp>
#include <golev/vardi.hpp>

#include <optional>
#include <string>
#include <vector>

namespace golev {

// A reduced word is homogeneous when its bases are all >= 0 or all <= 0 and
// its exponents are all > 0 or all < 0. Homogeneity is preserved by both
// operators, and the ratio conjecture speaks about homogeneous words only.
inline bool is_homogeneous(const Word& w) {
  bool base_nonneg = true, base_nonpos = true;
  bool exp_pos = true, exp_neg = true;
  for (const Power& p : w.powers()) {
    if (p.base < 0) base_nonneg = false;
    if (p.base > 0) base_nonpos = false;
    if (p.exponent < 0) exp_pos = false;
    if (p.exponent > 0) exp_neg = false;
  }
  return (base_nonneg || base_nonpos) && (exp_pos || exp_neg);
}

enum class RatioTarget { golden, mallows };

// phi - 1 to 18 decimal digits; the golden ratio itself is irrational, the
// comparisons below only need a fixed rational stand-in well inside 1e-15.
inline Rat golden_minus_one() {
  return Rat(Int("618033988749894848"), Int("1000000000000000000"));
}

// Mallows's constant as published to 9 decimal digits; more digits may be
// supplied through the override when available.
inline Rat mallows_kappa() { return Rat(Int("278877061"), Int("1000000000")); }

struct RatioRow {
  std::size_t n;  // the ratio a_{n+1} / (a_n a_{n-1})
  bool skipped = false;
  Rat ratio;
  Rat deviation;  // |ratio - target|
};

struct RatioReport {
  RatioTarget target_kind;
  Rat target;
  std::vector<RatioRow> rows;
};

// Exact ratios a_{n+1}/(a_n a_{n-1}) for n = 2..len-1 and their deviations
// from the conjectured limit. Rows with a zero denominator are kept but
// marked skipped.
inline RatioReport ratio_report(const std::vector<Int>& terms,
                                RatioTarget target,
                                const std::optional<Rat>& kappa_override = {}) {
  if (terms.size() < 3)
    throw std::invalid_argument("ratio report needs at least 3 terms");
  RatioReport report;
  report.target_kind = target;
  report.target = target == RatioTarget::golden
                      ? golden_minus_one()
                      : kappa_override.value_or(mallows_kappa());
  for (std::size_t n = 2; n + 1 <= terms.size(); ++n) {
    RatioRow row;
    row.n = n;
    const Int den = terms[n - 1] * terms[n - 2];
    if (den == 0) {
      row.skipped = true;
    } else {
      row.ratio = make_rat(terms[n], den);
      row.deviation = row.ratio - report.target;
      if (row.deviation < 0) row.deviation = -row.deviation;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Symbolic sequence polynomials: gol_n resp. lev_n of (b_1^{m_1}...b_k^{m_k})
// as an exact polynomial in the 2k variables m_j = x_{2j-1}, b_j = x_{2j}.

inline MPoly symbolic_var_m(unsigned j) {
  return MPoly::variable(2 * j - 1, Basis::binomial);
}
inline MPoly symbolic_var_b(unsigned j) {
  return MPoly::variable(2 * j, Basis::binomial);
}

namespace detail {

inline void check_term_budget(const MPoly& p, std::size_t budget) {
  if (p.term_count() > budget)
    throw BudgetError("symbolic polynomial exceeds the term budget of " +
                      std::to_string(budget));
}

}  // namespace detail

inline MPoly symbolic_seq_polynomial(SeqKind kind, unsigned n, unsigned k,
                                     const VardiSet& vs,
                                     std::size_t term_budget = 1'000'000) {
  if (n < 1 || n > vs.window())
    throw std::out_of_range("n must lie in 1..window");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const MPoly one = MPoly::constant(1, Basis::binomial);

  if (kind == SeqKind::golombic) {
    // column recurrence: g_i after j powers needs all g_{i'} (i' <= i-2)
    // after j-1 powers
    std::vector<MPoly> g(n + 1, MPoly(Basis::binomial));  // g[i], i = 1..n
    for (unsigned j = 1; j <= k; ++j) {
      std::vector<MPoly> next(n + 1, MPoly(Basis::binomial));
      for (unsigned i = 1; i <= n; ++i) {
        std::vector<MPoly> args;
        args.reserve(i);
        args.push_back(symbolic_var_m(j));
        args.push_back(symbolic_var_b(j));
        for (unsigned t = 1; t + 2 <= i; ++t) args.push_back(one + g[t]);
        next[i] = g[i] + compose(vs.T(i), args);
        detail::check_term_budget(next[i], term_budget);
      }
      g = std::move(next);
    }
    return g[n];
  }

  // Levine: l_{i,j} = l_{i,j-1} + (-1)^i T_i(-m_j, -b_j, c_1, c_2, ...)
  // where c_t = -l_{t,j-1} for odd t and l_{t,j-1} - l_{t,k} for even t;
  // the full row l_{t,0..k} is known before level t+2 is computed.
  std::vector<std::vector<MPoly>> l(
      n + 1, std::vector<MPoly>(k + 1, MPoly(Basis::binomial)));
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = 1; j <= k; ++j) {
      std::vector<MPoly> args;
      args.reserve(i);
      args.push_back(-symbolic_var_m(j));
      args.push_back(-symbolic_var_b(j));
      for (unsigned t = 1; t + 2 <= i; ++t) {
        if (t % 2 == 1)
          args.push_back(-l[t][j - 1]);
        else
          args.push_back(l[t][j - 1] - l[t][k]);
      }
      MPoly step = compose(vs.T(i), args);
      l[i][j] = i % 2 == 0 ? l[i][j - 1] + step : l[i][j - 1] - step;
      detail::check_term_budget(l[i][j], term_budget);
    }
  }
  return l[n][k];
}

inline Int fibonacci(unsigned n) {
  Int a = 0, b = 1;  // F_0, F_1
  for (unsigned i = 0; i < n; ++i) {
    Int next = a + b;
    a = std::move(b);
    b = std::move(next);
  }
  return a;
}

struct DegreeRow {
  unsigned j;
  char var;  // 'm' or 'b'
  std::uint32_t degree;
  Int expected;  // F_n for m_j, F_{n-1} for b_j
  bool agree;
};

struct DegreeReport {
  SeqKind kind;
  unsigned n;
  unsigned k;
  std::vector<DegreeRow> rows;
  bool all_agree = true;
};

// Compares the per-variable degrees of the symbolic polynomial with the
// Fibonacci numbers (F_n, F_{n-1}). The outcome is reported, not presumed.
inline DegreeReport degree_check(SeqKind kind, unsigned n, unsigned k,
                                 const VardiSet& vs,
                                 std::size_t term_budget = 1'000'000) {
  const MPoly p = symbolic_seq_polynomial(kind, n, k, vs, term_budget);
  DegreeReport report{kind, n, k, {}, true};
  const Int fm = fibonacci(n);
  const Int fb = n >= 1 ? fibonacci(n - 1) : Int(0);
  for (unsigned j = 1; j <= k; ++j) {
    const std::uint32_t dm = p.degree_in(2 * j - 1);
    const std::uint32_t db = p.degree_in(2 * j);
    report.rows.push_back({j, 'm', dm, fm, Int(dm) == fm});
    report.rows.push_back({j, 'b', db, fb, Int(db) == fb});
  }
  for (const auto& row : report.rows) report.all_agree &= row.agree;
  return report;
}

}  // namespace golev
