#pragma once

#include <golev/word.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace golev {

enum class SeqKind { golombic, levine };

inline const char* seq_kind_name(SeqKind k) {
  return k == SeqKind::golombic ? "golombic" : "levine";
}

// Default cap on the reduced size of a materialized row, in powers. Rows grow
// doubly exponentially, so oversized requests must fail loudly before they
// thrash the machine.
constexpr std::size_t kDefaultRowBudget = 100'000'000;

namespace detail {

// Emits Gol_z(b^m) as |m| reduced powers, no intermediate expansion:
//   m > 0:  z^b (z+1)^b ... (z+m-1)^b
//   m < 0:  (z-1)^{-b} (z-2)^{-b} ... (z-m)^{-b}
inline void append_gol_power(WordBuilder& out, const Int& z, const Int& base,
                             const Int& exp, std::size_t budget) {
  if (base == 0 || exp == 0) return;
  Int count = exp < 0 ? Int(-exp) : exp;
  if (count > budget - out.size())
    throw BudgetError("row budget of " + std::to_string(budget) +
                      " powers exceeded");
  if (exp > 0) {
    for (Int c = 0; c < exp; ++c) out.append(z + c, base);
  } else {
    for (Int c = 1; c <= count; ++c) out.append(z - c, -base);
  }
}

}  // namespace detail

// The generalized golombic operator Gol_z on F(Z), defined by the axioms
//   Gol_z() = (),  Gol_z(b) = (z^b),  Gol_z(v w) = Gol_z(v) Gol_{z+||v||}(w).
inline Word gol_z(const Int& z, const Word& w,
                  std::size_t budget = kDefaultRowBudget) {
  WordBuilder out;
  Int base_point = z;
  for (const Power& p : w.powers()) {
    detail::append_gol_power(out, base_point, p.base, p.exponent, budget);
    base_point += p.exponent;
  }
  return std::move(out).take();
}

// Lev_z(w) = rev(Gol_z(w)).
inline Word lev_z(const Int& z, const Word& w,
                  std::size_t budget = kDefaultRowBudget) {
  return rev(gol_z(z, w, budget));
}

inline Word gol(const Word& w, std::size_t budget = kDefaultRowBudget) {
  return gol_z(1, w, budget);
}

inline Word lev(const Word& w, std::size_t budget = kDefaultRowBudget) {
  return lev_z(1, w, budget);
}

// Gol_a^n = Gol_{a(n)} o ... o Gol_{a(1)}; missing terms of a read as 0.
inline Word gol_iter(const IntTuple& a, std::size_t n, Word w,
                     std::size_t budget = kDefaultRowBudget) {
  for (std::size_t i = 1; i <= n; ++i) w = gol_z(a.at(i), w, budget);
  return w;
}

// Walks the rows op^0(seed), op^1(seed), ... of a golombic or Levine
// triangle, one at a time. Refuses to build a row that would exceed the
// budget, naming the first undoable depth.
class TriangleIterator {
 public:
  TriangleIterator(SeqKind kind, Word seed,
                   std::size_t budget = kDefaultRowBudget)
      : kind_(kind), row_(std::move(seed)), budget_(budget) {}

  const Word& row() const noexcept { return row_; }
  std::size_t depth() const noexcept { return depth_; }

  // Number of powers Gol emits for the current row (before boundary melts).
  Int next_row_powers() const {
    Int s = 0;
    for (const Power& p : row_.powers()) s += abs(p.exponent);
    return s;
  }

  bool next_fits() const { return next_row_powers() <= budget_; }

  void advance() {
    if (!next_fits())
      throw BudgetError("triangle row " + std::to_string(depth_ + 1) +
                        " needs " + next_row_powers().str() +
                        " powers, over the budget of " +
                        std::to_string(budget_) +
                        "; first undoable depth is " +
                        std::to_string(depth_ + 1));
    row_ = kind_ == SeqKind::golombic ? gol(row_, budget_)
                                      : lev(row_, budget_);
    ++depth_;
  }

 private:
  SeqKind kind_;
  Word row_;
  std::size_t depth_ = 0;
  std::size_t budget_;
};

struct TriangleRow {
  std::size_t depth;
  Word word;
};

// Rows op^0(w) .. op^depth(w).
inline std::vector<TriangleRow> triangle(SeqKind kind, const Word& w,
                                         std::size_t depth,
                                         std::size_t budget = kDefaultRowBudget) {
  std::vector<TriangleRow> rows;
  TriangleIterator it(kind, w, budget);
  rows.push_back({0, it.row()});
  for (std::size_t d = 1; d <= depth; ++d) {
    it.advance();
    rows.push_back({d, it.row()});
  }
  return rows;
}

namespace detail {

inline IntTuple seq_oracle(SeqKind kind, const Word& w, std::size_t n_terms,
                           std::size_t budget) {
  std::vector<Int> out;
  out.reserve(n_terms);
  TriangleIterator it(kind, w, budget);
  for (std::size_t n = 1; n <= n_terms; ++n) {
    out.push_back(length(it.row()));
    if (n < n_terms) it.advance();
  }
  return IntTuple(std::move(out));
}

}  // namespace detail

// Brute-force oracle: term n is ||op^{n-1}(w)||. Authoritative ground truth
// for the fast algorithms.
inline IntTuple gol_seq_oracle(const Word& w, std::size_t n_terms,
                               std::size_t budget = kDefaultRowBudget) {
  return detail::seq_oracle(SeqKind::golombic, w, n_terms, budget);
}

inline IntTuple lev_seq_oracle(const Word& w, std::size_t n_terms,
                               std::size_t budget = kDefaultRowBudget) {
  return detail::seq_oracle(SeqKind::levine, w, n_terms, budget);
}

// Conjugate partition: lambda*(n) = #{k : lambda(k) >= n}. Input must be
// weakly decreasing and nonnegative.
inline IntTuple conjugate(const IntTuple& p) {
  const std::size_t len = p.length();
  for (std::size_t i = 1; i <= len; ++i) {
    if (p.at(i) < 0)
      throw std::invalid_argument("not a partition: negative term " +
                                  p.at(i).str());
    if (i > 1 && p.at(i) > p.at(i - 1))
      throw std::invalid_argument("not a partition: terms increase at index " +
                                  std::to_string(i));
  }
  if (len == 0) return IntTuple();
  if (p.at(1) > kDefaultRowBudget)
    throw BudgetError("conjugate partition would have " + p.at(1).str() +
                      " parts");
  const std::size_t width = p.at(1).convert_to<std::size_t>();
  std::vector<Int> out(width);
  // walking k downward: lambda*(n) = largest k with lambda(k) >= n
  std::size_t k = len;
  for (std::size_t n = 1; n <= width; ++n) {
    while (k > 0 && p.at(k) < n) --k;
    out[n - 1] = k;
  }
  return IntTuple(std::move(out));
}

}  // namespace golev
