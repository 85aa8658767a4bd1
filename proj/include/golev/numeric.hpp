#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace golev {

// All arithmetic in this library is exact: arbitrary-precision integers and
// rationals throughout. Floating point is never used for results.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Rat from a quotient of integers. The two-argument Rat constructor rejects
// negative denominators for unbounded integer types, so the sign is moved to
// the numerator first.
inline Rat make_rat(Int num, Int den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(std::move(num), std::move(den));
}

// An exact-arithmetic invariant failed. Always an implementation bug, never
// bad input.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A row or expansion would exceed the configured memory budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cache file missing, corrupt, or incompatible.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input rejected; carries the byte offset of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// C(u,k) = u(u-1)...(u-k+1)/k! via the falling factorial, valid for negative
// u. Every intermediate division is exact (C(u,j) is an integer for each j).
inline Int binom(const Int& u, std::uint32_t k) {
  Int r = 1;
  for (std::uint32_t j = 1; j <= k; ++j) {
    r *= u - (j - 1);
    r /= j;
  }
  return r;
}

inline Int factorial(std::uint32_t n) {
  thread_local std::vector<Int> table{1};
  while (table.size() <= n) table.push_back(table.back() * table.size());
  return table[n];
}

// Signed Stirling numbers of the first kind: s(n+1,k) = s(n,k-1) - n*s(n,k).
inline Int stirling1(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  thread_local std::vector<std::vector<Int>> tri{{1}};
  while (tri.size() <= n) {
    const std::uint32_t m = static_cast<std::uint32_t>(tri.size());
    const std::vector<Int>& prev = tri.back();
    std::vector<Int> row(m + 1);
    for (std::uint32_t i = 0; i <= m; ++i) {
      Int v = 0;
      if (i > 0) v += prev[i - 1];
      if (i < m) v -= Int(m - 1) * prev[i];
      row[i] = std::move(v);
    }
    tri.push_back(std::move(row));
  }
  return tri[n][k];
}

// Stirling numbers of the second kind: S(n+1,k) = k*S(n,k) + S(n,k-1).
inline Int stirling2(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  thread_local std::vector<std::vector<Int>> tri{{1}};
  while (tri.size() <= n) {
    const std::uint32_t m = static_cast<std::uint32_t>(tri.size());
    const std::vector<Int>& prev = tri.back();
    std::vector<Int> row(m + 1);
    for (std::uint32_t i = 0; i <= m; ++i) {
      Int v = 0;
      if (i > 0) v += prev[i - 1];
      if (i < m) v += Int(i) * prev[i];
      row[i] = std::move(v);
    }
    tri.push_back(std::move(row));
  }
  return tri[n][k];
}

// Exact decimal rendering of q with `digits` fractional digits, rounding half
// away from zero. Deterministic across platforms.
inline std::string decimal_string(const Rat& q, unsigned digits) {
  Int p = rat_num(q);
  Int d = rat_den(q);
  const bool neg = p < 0;
  if (neg) p = -p;
  const Int scale = boost::multiprecision::pow(Int(10), digits);
  Int quo, rem;
  boost::multiprecision::divide_qr(p * scale, d, quo, rem);
  if (rem * 2 >= d) ++quo;
  const Int ip = quo / scale;
  std::string out = (neg && quo != 0) ? "-" : "";
  out += ip.str();
  if (digits > 0) {
    std::string frac = Int(quo % scale).str();
    out += '.';
    out.append(digits - frac.size(), '0');
    out += frac;
  }
  return out;
}

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string fnv1a64_hex(std::string_view data) {
  static const char* hexdig = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data);
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = hexdig[h & 0xf];
    h >>= 4;
  }
  return s;
}

}  // namespace golev
