#pragma once

#include <golev/numeric.hpp>
#include <golev/word.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace golev {

// Exponent vector: entry j-1 is the power of x_j; trailing zeros trimmed.
using ExpVec = std::vector<std::uint32_t>;

inline void trim_expvec(ExpVec& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

inline std::uint64_t expvec_degree(const ExpVec& e) {
  std::uint64_t d = 0;
  for (std::uint32_t v : e) d += v;
  return d;
}

// Graded lexicographic: total degree first, then entrywise comparison with
// missing entries read as 0. Fixes the canonical term order everywhere
// (storage, serialization, printing).
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    const std::uint64_t da = expvec_degree(a), db = expvec_degree(b);
    if (da != db) return da < db;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t ai = i < a.size() ? a[i] : 0;
      const std::uint32_t bi = i < b.size() ? b[i] : 0;
      if (ai != bi) return ai < bi;
    }
    return false;
  }
};

// Which product interpretation the exponent vectors carry:
//   monomial:  term r means  prod_j x_j^{r_j}
//   binomial:  term r means  prod_j C(x_j, r_j)
enum class Basis { monomial, binomial };

inline const char* basis_name(Basis b) {
  return b == Basis::monomial ? "monomial" : "binomial";
}

// Sparse multivariate polynomial with exact rational coefficients over
// x_1, x_2, ...; no zero coefficients stored. Values are immutable in
// practice: every operation returns a fresh canonical polynomial.
class MPoly {
 public:
  using TermMap = std::map<ExpVec, Rat, GrlexLess>;

  MPoly() = default;
  explicit MPoly(Basis b) : basis_(b) {}

  static MPoly constant(Rat c, Basis b = Basis::monomial) {
    MPoly p(b);
    p.add_term(ExpVec{}, std::move(c));
    return p;
  }

  // x_j; identical in both bases since C(x,1) = x.
  static MPoly variable(std::uint32_t j, Basis b = Basis::monomial) {
    if (j == 0) throw std::invalid_argument("variable index starts at 1");
    MPoly p(b);
    ExpVec e(j, 0);
    e[j - 1] = 1;
    p.add_term(std::move(e), 1);
    return p;
  }

  Basis basis() const noexcept { return basis_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const TermMap& terms() const noexcept { return terms_; }

  // Largest variable index that occurs (0 for constants and zero).
  std::uint32_t nvars() const {
    std::uint32_t n = 0;
    for (const auto& [e, c] : terms_)
      n = std::max(n, static_cast<std::uint32_t>(e.size()));
    return n;
  }

  std::uint32_t degree_in(std::uint32_t j) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_)
      if (j - 1 < e.size()) d = std::max(d, e[j - 1]);
    return d;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, expvec_degree(e));
    return d;
  }

  Rat coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(ExpVec e, Rat c) {
    if (c == 0) return;
    trim_expvec(e);
    auto it = terms_.lower_bound(e);
    if (it != terms_.end() && it->first == e) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.emplace_hint(it, std::move(e), std::move(c));
    }
  }

  MPoly& operator+=(const MPoly& o) { return add_scaled(o, 1); }
  MPoly& operator-=(const MPoly& o) { return add_scaled(o, -1); }

  MPoly& add_scaled(const MPoly& o, const Rat& s) {
    if (s == 0 || o.is_zero()) return *this;
    if (this == &o) {
      const MPoly copy = o;
      return add_scaled(copy, s);
    }
    if (basis_ != o.basis_ && !is_zero())
      throw std::invalid_argument("basis mismatch in add_scaled");
    if (is_zero()) basis_ = o.basis_;
    for (const auto& [e, c] : o.terms_) add_term(e, c * s);
    return *this;
  }

  MPoly scaled(const Rat& s) const {
    MPoly out(basis_);
    if (s == 0) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
    return out;
  }

  MPoly operator-() const { return scaled(-1); }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }

 private:
  Basis basis_ = Basis::monomial;
  TermMap terms_;
};

MPoly to_monomial(const MPoly& f);
MPoly to_binomial(const MPoly& f);

namespace detail {

inline ExpVec add_expvec(const ExpVec& a, const ExpVec& b) {
  ExpVec out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

// C(u,k)C(u,l) = sum_{n=max(k,l)}^{k+l} n!/((n-k)!(n-l)!(k+l-n)!) C(u,n),
// applied per variable; emits all (exponent vector, integer weight) combos
// for one pair of binomial-basis terms.
inline void binomial_pair_expansion(const ExpVec& a, const ExpVec& b,
                                    std::vector<std::pair<ExpVec, Int>>& out) {
  out.clear();
  out.emplace_back(ExpVec(std::max(a.size(), b.size()), 0), Int(1));
  for (std::size_t j = 0; j < out.front().first.size(); ++j) {
    const std::uint32_t k = j < a.size() ? a[j] : 0;
    const std::uint32_t l = j < b.size() ? b[j] : 0;
    if (k == 0 || l == 0) {
      for (auto& [e, w] : out) e[j] = k + l;
      continue;
    }
    std::vector<std::pair<ExpVec, Int>> next;
    next.reserve(out.size() * (std::min(k, l) + 1));
    for (const auto& [e, w] : out) {
      for (std::uint32_t n = std::max(k, l); n <= k + l; ++n) {
        Int weight = factorial(n) / (factorial(n - k) * factorial(n - l) *
                                     factorial(k + l - n));
        ExpVec ne = e;
        ne[j] = n;
        next.emplace_back(std::move(ne), w * weight);
      }
    }
    out = std::move(next);
  }
}

}  // namespace detail

inline MPoly operator*(const MPoly& af, const MPoly& bf) {
  const MPoly* a = &af;
  const MPoly* b = &bf;
  MPoly am, bm;
  if (af.basis() != bf.basis()) {
    am = to_monomial(af);
    bm = to_monomial(bf);
    a = &am;
    b = &bm;
  }
  MPoly out(a->basis());
  if (a->is_zero() || b->is_zero()) return out;
  if (a->basis() == Basis::monomial) {
    for (const auto& [e1, c1] : a->terms())
      for (const auto& [e2, c2] : b->terms())
        out.add_term(detail::add_expvec(e1, e2), c1 * c2);
  } else {
    std::vector<std::pair<ExpVec, Int>> combos;
    for (const auto& [e1, c1] : a->terms())
      for (const auto& [e2, c2] : b->terms()) {
        detail::binomial_pair_expansion(e1, e2, combos);
        const Rat cc = c1 * c2;
        for (auto& [e, w] : combos) out.add_term(std::move(e), cc * w);
      }
  }
  return out;
}

inline MPoly operator+(MPoly a, const MPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.basis() != b.basis()) {
    MPoly out = to_monomial(a);
    out += to_monomial(b);
    return out;
  }
  a += b;
  return a;
}

inline MPoly operator-(MPoly a, const MPoly& b) {
  if (b.is_zero()) return a;
  if (a.basis() != b.basis()) {
    MPoly out = to_monomial(a);
    out -= to_monomial(b);
    return out;
  }
  a -= b;
  return a;
}

// Basis changes via the univariate Stirling transforms applied per variable:
//   C(x,k) = (1/k!) sum_i s(k,i) x^i          (first kind, signed)
//   x^e    = sum_k S(e,k) k! C(x,k)           (second kind)
inline MPoly to_monomial(const MPoly& f) {
  if (f.basis() == Basis::monomial) return f;
  MPoly out(Basis::monomial);
  std::vector<std::pair<ExpVec, Rat>> parts, next;
  for (const auto& [e, c] : f.terms()) {
    parts.assign(1, {ExpVec{}, c});
    for (std::size_t j = 0; j < e.size(); ++j) {
      const std::uint32_t k = e[j];
      if (k == 0) continue;
      const Rat inv_fact = Rat(1) / Rat(factorial(k));
      next.clear();
      for (const auto& [pe, pc] : parts) {
        for (std::uint32_t i = 1; i <= k; ++i) {
          const Int s = stirling1(k, i);
          if (s == 0) continue;
          ExpVec ne = pe;
          ne.resize(j + 1, 0);
          ne[j] = i;
          next.emplace_back(std::move(ne), pc * s * inv_fact);
        }
      }
      parts.swap(next);
    }
    for (auto& [pe, pc] : parts) out.add_term(std::move(pe), std::move(pc));
  }
  return out;
}

inline MPoly to_binomial(const MPoly& f) {
  if (f.basis() == Basis::binomial) return f;
  MPoly out(Basis::binomial);
  std::vector<std::pair<ExpVec, Rat>> parts, next;
  for (const auto& [e, c] : f.terms()) {
    parts.assign(1, {ExpVec{}, c});
    for (std::size_t j = 0; j < e.size(); ++j) {
      const std::uint32_t k = e[j];
      if (k == 0) continue;
      next.clear();
      for (const auto& [pe, pc] : parts) {
        for (std::uint32_t i = 1; i <= k; ++i) {
          const Int s = stirling2(k, i);
          if (s == 0) continue;
          ExpVec ne = pe;
          ne.resize(j + 1, 0);
          ne[j] = i;
          next.emplace_back(std::move(ne), pc * s * factorial(i));
        }
      }
      parts.swap(next);
    }
    for (auto& [pe, pc] : parts) out.add_term(std::move(pe), std::move(pc));
  }
  return out;
}

namespace detail {

// Re-expresses only the x_1 direction through binomial coefficients, shifts
// the binomial index by +1 (discrete integral) or -1 (discrete derivative),
// and maps back. Monomial input stays monomial; binomial input is a plain
// index shift.
inline MPoly shift_x1(const MPoly& f, int shift) {
  if (f.basis() == Basis::binomial) {
    MPoly out(Basis::binomial);
    for (const auto& [e, c] : f.terms()) {
      const std::uint32_t k = e.empty() ? 0 : e[0];
      if (shift < 0 && k == 0) continue;  // d1 of an x1-free term is 0
      ExpVec ne = e;
      ne.resize(std::max<std::size_t>(ne.size(), 1), 0);
      ne[0] = static_cast<std::uint32_t>(static_cast<int>(k) + shift);
      out.add_term(std::move(ne), c);
    }
    return out;
  }

  // group the terms by their x_2,x_3,... part; each group is univariate in x_1
  std::map<ExpVec, std::map<std::uint32_t, Rat>, GrlexLess> groups;
  for (const auto& [e, c] : f.terms()) {
    const std::uint32_t e1 = e.empty() ? 0 : e[0];
    ExpVec rest = e;
    if (!rest.empty()) rest[0] = 0;
    trim_expvec(rest);
    groups[std::move(rest)][e1] += c;
  }
  MPoly out(Basis::monomial);
  for (const auto& [rest, coeffs] : groups) {
    std::uint32_t maxe = 0;
    for (const auto& [e1, c] : coeffs) maxe = std::max(maxe, e1);
    // monomial -> binomial coordinates in x_1
    std::vector<Rat> bin(maxe + 1, Rat(0));
    for (const auto& [e1, c] : coeffs)
      for (std::uint32_t k = 0; k <= e1; ++k) {
        const Int s = stirling2(e1, k);
        if (s != 0) bin[k] += c * s * factorial(k);
      }
    // index shift
    std::vector<Rat> shifted(maxe + 2, Rat(0));
    for (std::uint32_t k = 0; k <= maxe; ++k) {
      if (bin[k] == 0) continue;
      const int nk = static_cast<int>(k) + shift;
      if (nk < 0) continue;
      shifted[static_cast<std::uint32_t>(nk)] += bin[k];
    }
    // binomial -> monomial in x_1 and reassemble
    for (std::uint32_t k = 0; k < shifted.size(); ++k) {
      if (shifted[k] == 0) continue;
      const Rat inv_fact = Rat(1) / Rat(factorial(k));
      for (std::uint32_t i = (k == 0 ? 0 : 1); i <= k; ++i) {
        const Int s = stirling1(k, i);
        if (s == 0) continue;
        ExpVec e = rest;
        e.resize(std::max<std::size_t>(e.size(), 1), 0);
        e[0] = i;
        out.add_term(std::move(e), shifted[k] * s * inv_fact);
      }
    }
  }
  return out;
}

}  // namespace detail

// Discrete derivative in x_1: (d1 f)(a) = f(a + (1)) - f(a).
inline MPoly dder1(const MPoly& f) { return detail::shift_x1(f, -1); }

// Discrete integral in x_1, the two-sided definite sum inverse to d1; the
// result always lies in the ideal generated by x_1.
inline MPoly dint1(const MPoly& f) { return detail::shift_x1(f, +1); }

// f with every variable of index > k set to 0.
inline MPoly restrict_vars(const MPoly& f, std::uint32_t k) {
  MPoly out(f.basis());
  for (const auto& [e, c] : f.terms())
    if (e.size() <= k) out.add_term(e, c);
  return out;
}

namespace detail {

// Composition by recursive variable split: f = sum_k C(x_j,k) f_k with f_k
// free of x_1..x_j, so f(args) = sum_k C(g_j,k) f_k(args). Terms sharing an
// x_j-exponent share one multiplication instead of one per term.
inline MPoly compose_rec(std::vector<std::pair<ExpVec, Rat>>& terms,
                         std::uint32_t j, std::uint32_t nv,
                         const std::vector<std::vector<MPoly>>& table,
                         Basis b) {
  MPoly out(b);
  if (terms.empty()) return out;
  if (j > nv) {
    Rat c = 0;
    for (const auto& [e, q] : terms) c += q;
    out.add_term(ExpVec{}, std::move(c));
    return out;
  }
  std::map<std::uint32_t, std::vector<std::pair<ExpVec, Rat>>> buckets;
  for (auto& [e, c] : terms) {
    std::uint32_t k = 0;
    if (j - 1 < e.size()) {
      k = e[j - 1];
      e[j - 1] = 0;
    }
    buckets[k].emplace_back(std::move(e), std::move(c));
  }
  for (auto& [k, sub] : buckets) {
    MPoly inner = compose_rec(sub, j + 1, nv, table, b);
    if (inner.is_zero()) continue;
    if (k == 0)
      out += inner;
    else
      out += table[j - 1][k] * inner;
  }
  return out;
}

}  // namespace detail

// Substitution: args[j-1] replaces x_j; variables beyond args keep identity.
// Binomial powers of polynomial arguments are built by the exact recurrence
// C(g,k+1) = C(g,k)(g-k)/(k+1).
inline MPoly compose(const MPoly& f, const std::vector<MPoly>& args) {
  const Basis b = f.basis();
  const std::uint32_t nv = f.nvars();

  std::vector<std::uint32_t> max_exp(nv, 0);
  for (const auto& [e, c] : f.terms())
    for (std::size_t j = 0; j < e.size(); ++j)
      max_exp[j] = std::max(max_exp[j], e[j]);

  // table[j][k] = k-th (binomial) power of the j+1-th argument
  std::vector<std::vector<MPoly>> table(nv);
  for (std::uint32_t j = 0; j < nv; ++j) {
    if (max_exp[j] == 0) continue;
    MPoly g = j < args.size() ? args[j] : MPoly::variable(j + 1, b);
    if (g.basis() != b) g = b == Basis::monomial ? to_monomial(g) : to_binomial(g);
    auto& pows = table[j];
    pows.push_back(MPoly::constant(1, b));
    for (std::uint32_t k = 1; k <= max_exp[j]; ++k) {
      if (b == Basis::monomial) {
        pows.push_back(pows.back() * g);
      } else {
        MPoly step = g;
        step.add_term(ExpVec{}, Rat(-(static_cast<int>(k) - 1)));
        pows.push_back((pows.back() * step).scaled(Rat(1, k)));
      }
    }
  }

  std::vector<std::pair<ExpVec, Rat>> terms(f.terms().begin(), f.terms().end());
  return detail::compose_rec(terms, 1, nv, table, b);
}

// Exact evaluation at an integer tuple; missing variables read as 0. The
// binomial basis uses the falling-factorial C(value,k), valid for negative
// arguments.
inline Rat evaluate(const MPoly& f, const IntTuple& a) {
  std::vector<std::vector<Int>> cache;  // cache[j][e]
  auto power_at = [&](std::size_t j, std::uint32_t e) -> const Int& {
    if (cache.size() <= j) cache.resize(j + 1);
    auto& col = cache[j];
    if (col.empty()) col.push_back(1);
    while (col.size() <= e) {
      const Int& v = a.at(j + 1);
      if (f.basis() == Basis::monomial) {
        col.push_back(col.back() * v);
      } else {
        const std::uint32_t k = static_cast<std::uint32_t>(col.size());
        Int next = col.back() * (v - (k - 1));
        next /= k;  // exact: C(v,k-1)(v-k+1) = k C(v,k)
        col.push_back(std::move(next));
      }
    }
    return col[e];
  };

  Rat sum = 0;
  for (const auto& [e, c] : f.terms()) {
    Int prod = 1;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] > 0) prod *= power_at(j, e[j]);
    sum += c * prod;
  }
  return sum;
}

// Evaluation that must land in Z; throws IntegrityError otherwise.
inline Int evaluate_int(const MPoly& f, const IntTuple& a) {
  const Rat v = evaluate(f, a);
  if (rat_den(v) != 1)
    throw IntegrityError("expected integer value, got " + rat_num(v).str() +
                         "/" + rat_den(v).str());
  return rat_num(v);
}

// Strong positivity is read off the binomial-basis coordinates.
inline bool is_strongly_positive(const MPoly& f) {
  const MPoly g = f.basis() == Basis::binomial ? f : to_binomial(f);
  for (const auto& [e, c] : g.terms())
    if (c < 0) return false;
  return true;
}

// Integer-valued iff all binomial-basis coordinates are integers.
inline bool is_integer_binomial(const MPoly& f) {
  const MPoly g = f.basis() == Basis::binomial ? f : to_binomial(f);
  for (const auto& [e, c] : g.terms())
    if (rat_den(c) != 1) return false;
  return true;
}

// lcm of the coefficient denominators of the monomial form.
inline Int denominator_lcm(const MPoly& f) {
  const MPoly g = f.basis() == Basis::monomial ? f : to_monomial(f);
  Int l = 1;
  for (const auto& [e, c] : g.terms())
    l = boost::multiprecision::lcm(l, rat_den(c));
  return l;
}

// ---------------------------------------------------------------------------
// Text serialization. Header line `mpoly basis=<monomial|binomial> nvars=<k>`,
// then one term per line `<numerator>[/<denominator>] : e1 e2 ... ek` in
// graded-lex order; bit-exact round trip.

inline std::string serialize(const MPoly& f) {
  const std::uint32_t nv = f.nvars();
  std::string s = "mpoly basis=";
  s += basis_name(f.basis());
  s += " nvars=" + std::to_string(nv) + "\n";
  for (const auto& [e, c] : f.terms()) {
    s += rat_num(c).str();
    if (rat_den(c) != 1) {
      s += '/';
      s += rat_den(c).str();
    }
    s += " :";
    for (std::uint32_t j = 0; j < nv; ++j) {
      s += ' ';
      s += std::to_string(j < e.size() ? e[j] : 0);
    }
    s += '\n';
  }
  return s;
}

inline MPoly deserialize_mpoly(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty mpoly text", 0);
  Basis basis;
  std::uint32_t nv = 0;
  {
    std::istringstream h(line);
    std::string tag, btok, ntok;
    h >> tag >> btok >> ntok;
    if (tag != "mpoly" || btok.rfind("basis=", 0) != 0 ||
        ntok.rfind("nvars=", 0) != 0)
      throw ParseError("bad mpoly header: " + line, 0);
    const std::string bname = btok.substr(6);
    if (bname == "monomial")
      basis = Basis::monomial;
    else if (bname == "binomial")
      basis = Basis::binomial;
    else
      throw ParseError("unknown basis: " + bname, 0);
    nv = static_cast<std::uint32_t>(std::stoul(ntok.substr(6)));
  }
  MPoly out(basis);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("mpoly term line missing ':': " + line, 0);
    std::string coef = line.substr(0, colon);
    while (!coef.empty() && coef.back() == ' ') coef.pop_back();
    Rat c;
    const std::size_t slash = coef.find('/');
    if (slash == std::string::npos) {
      c = Rat(Int(coef));
    } else {
      c = make_rat(Int(coef.substr(0, slash)), Int(coef.substr(slash + 1)));
    }
    ExpVec e;
    std::istringstream rest(line.substr(colon + 1));
    std::uint64_t v;
    while (rest >> v) e.push_back(static_cast<std::uint32_t>(v));
    if (e.size() != nv)
      throw ParseError("mpoly term has " + std::to_string(e.size()) +
                           " exponents, header says " + std::to_string(nv),
                       0);
    out.add_term(std::move(e), std::move(c));
  }
  return out;
}

// Human-readable rendering: x1*x2*x3 + C(x1,2)*x2 style. C(x,1) prints as x.
// Terms print in descending total degree, lexicographically within a degree.
inline std::string to_pretty_string(const MPoly& f) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<ExpVec, Rat>> terms(f.terms().begin(),
                                            f.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) {
                     const std::uint64_t da = expvec_degree(a.first);
                     const std::uint64_t db = expvec_degree(b.first);
                     if (da != db) return da > db;
                     return GrlexLess{}(a.first, b.first);
                   });
  std::string s;
  for (const auto& [e, c] : terms) {
    Rat ac = c;
    if (s.empty()) {
      if (c < 0) {
        s += "-";
        ac = -c;
      }
    } else {
      s += c < 0 ? " - " : " + ";
      if (c < 0) ac = -c;
    }
    std::string factors;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!factors.empty()) factors += '*';
      const std::string var = "x" + std::to_string(j + 1);
      if (e[j] == 1)
        factors += var;
      else if (f.basis() == Basis::binomial)
        factors += "C(" + var + "," + std::to_string(e[j]) + ")";
      else
        factors += var + "^" + std::to_string(e[j]);
    }
    std::string cs;
    if (ac != 1 || factors.empty()) {
      cs = rat_num(ac).str();
      if (rat_den(ac) != 1) cs += "/" + rat_den(ac).str();
    }
    if (cs.empty())
      s += factors;
    else if (factors.empty())
      s += cs;
    else
      s += cs + "*" + factors;
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const MPoly& f) {
  return os << to_pretty_string(f);
}

}  // namespace golev
