#pragma once

#include <golev/numeric.hpp>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace golev {

// One formal power b^m of the free group over the integers.
struct Power {
  Int base;
  Int exponent;
  friend bool operator==(const Power&, const Power&) = default;
};

class WordBuilder;

// Reduced element of F(Z): nonzero exponents, adjacent bases distinct. The
// empty list is the identity (). Immutable after construction.
class Word {
 public:
  Word() = default;

  // Reduces an arbitrary list of formal powers to the unique representative.
  static Word reduce(const std::vector<Power>& raw);

  const std::vector<Power>& powers() const noexcept { return powers_; }
  bool empty() const noexcept { return powers_.empty(); }
  std::size_t size() const noexcept { return powers_.size(); }

  // Asserts the reduced-form invariant; throws IntegrityError on violation.
  void check_reduced() const {
    for (std::size_t i = 0; i < powers_.size(); ++i) {
      if (powers_[i].exponent == 0)
        throw IntegrityError("word invariant broken: zero exponent");
      if (i > 0 && powers_[i].base == powers_[i - 1].base)
        throw IntegrityError("word invariant broken: adjacent equal bases");
    }
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  friend class WordBuilder;
  struct reduced_tag {};
  Word(std::vector<Power> ps, reduced_tag) : powers_(std::move(ps)) {}

  std::vector<Power> powers_;
};

// Accumulates formal powers left to right, melting adjacent equal bases per
// the reduction rules. Appending a reduced word to a reduced prefix yields a
// reduced word, so a full pass over any raw list reduces it.
class WordBuilder {
 public:
  void append(Int base, Int exponent) {
    if (exponent == 0) return;
    if (!ps_.empty() && ps_.back().base == base) {
      ps_.back().exponent += exponent;
      if (ps_.back().exponent == 0) ps_.pop_back();
    } else {
      ps_.push_back(Power{std::move(base), std::move(exponent)});
    }
  }
  void append(const Power& p) { append(p.base, p.exponent); }
  void append(const Word& w) {
    for (const Power& p : w.powers()) append(p);
  }

  std::size_t size() const noexcept { return ps_.size(); }

  Word take() && { return Word(std::move(ps_), Word::reduced_tag{}); }

 private:
  std::vector<Power> ps_;
};

inline Word Word::reduce(const std::vector<Power>& raw) {
  WordBuilder b;
  for (const Power& p : raw) b.append(p);
  return std::move(b).take();
}

inline Word concat(const Word& v, const Word& w) {
  WordBuilder b;
  b.append(v);
  b.append(w);
  return std::move(b).take();
}

inline Word inverse(const Word& w) {
  WordBuilder b;
  const auto& ps = w.powers();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it)
    b.append(it->base, -it->exponent);
  return std::move(b).take();
}

// -w: negates every base. A group automorphism.
inline Word neg(const Word& w) {
  WordBuilder b;
  for (const Power& p : w.powers()) b.append(-p.base, p.exponent);
  return std::move(b).take();
}

// w-bar: negates every exponent. A group automorphism.
inline Word bar(const Word& w) {
  WordBuilder b;
  for (const Power& p : w.powers()) b.append(p.base, -p.exponent);
  return std::move(b).take();
}

// rev w = bar(w)^{-1}: reverses the list of powers. An anti-automorphism.
inline Word rev(const Word& w) {
  WordBuilder b;
  const auto& ps = w.powers();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) b.append(*it);
  return std::move(b).take();
}

// ||w|| = sum of exponents. Group homomorphism to (Z,+), reduction-invariant.
inline Int length(const Word& w) {
  Int s = 0;
  for (const Power& p : w.powers()) s += p.exponent;
  return s;
}

// <w> = sum of base*exponent. Group homomorphism to (Z,+).
inline Int content(const Word& w) {
  Int s = 0;
  for (const Power& p : w.powers()) s += p.base * p.exponent;
  return s;
}

// Finite integer sequence based at index 1. Trailing zeros may be stored but
// are ignored by comparison, length and content.
class IntTuple {
 public:
  IntTuple() = default;
  explicit IntTuple(std::vector<Int> terms) : terms_(std::move(terms)) {}
  IntTuple(std::initializer_list<Int> terms) : terms_(terms) {}

  const std::vector<Int>& terms() const noexcept { return terms_; }
  std::size_t stored_size() const noexcept { return terms_.size(); }

  // 1-based access; indices beyond storage read as 0.
  const Int& at(std::size_t n) const {
    static const Int zero = 0;
    return (n >= 1 && n <= terms_.size()) ? terms_[n - 1] : zero;
  }

  // ||a||: index of the last nonzero term (0 for the zero tuple).
  std::size_t length() const {
    for (std::size_t i = terms_.size(); i > 0; --i)
      if (terms_[i - 1] != 0) return i;
    return 0;
  }

  // <a>: sum of all terms.
  Int content() const {
    Int s = 0;
    for (const Int& t : terms_) s += t;
    return s;
  }

  // Left verschiebung: drops the first m terms.
  IntTuple shifted(std::size_t m) const {
    if (m >= terms_.size()) return IntTuple();
    return IntTuple(std::vector<Int>(terms_.begin() + m, terms_.end()));
  }

  // Tail-sum operator S_-: (S_-a)(n) = sum_{k>=n} a(k).
  IntTuple tail_sum() const {
    std::vector<Int> out(terms_.size());
    Int acc = 0;
    for (std::size_t i = terms_.size(); i > 0; --i) {
      acc += terms_[i - 1];
      out[i - 1] = acc;
    }
    IntTuple t(std::move(out));
    t.trim();
    return t;
  }

  void push_back(Int v) { terms_.push_back(std::move(v)); }

  void trim() {
    while (!terms_.empty() && terms_.back() == 0) terms_.pop_back();
  }

  friend bool operator==(const IntTuple& a, const IntTuple& b) {
    std::size_t n = std::max(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 1; i <= n; ++i)
      if (a.at(i) != b.at(i)) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) s += ",";
      s += terms_[i].str();
    }
    return s + ")";
  }

 private:
  std::vector<Int> terms_;
};

// Z^(N) -> F(Z): lists a(1)..a(||a||) each with exponent 1, then reduces.
// Defined on the tuple up to its last nonzero term, so tuples equal modulo
// trailing zeros embed identically.
inline Word embed(const IntTuple& a) {
  WordBuilder b;
  const std::size_t n = a.length();
  for (std::size_t i = 1; i <= n; ++i) b.append(a.at(i), 1);
  return std::move(b).take();
}

// Inverse of embed on its image: writes each power b^m as m copies of b.
// Requires every exponent positive.
inline IntTuple expand(const Word& w, std::size_t max_terms = 100'000'000) {
  std::vector<Int> out;
  for (const Power& p : w.powers()) {
    if (p.exponent < 0)
      throw std::invalid_argument("not a tuple word: negative exponent " +
                                  p.exponent.str() + " on base " +
                                  p.base.str());
    if (p.exponent > max_terms - out.size())
      throw BudgetError("expand would exceed " + std::to_string(max_terms) +
                        " terms");
    std::size_t reps = p.exponent.convert_to<std::size_t>();
    out.insert(out.end(), reps, p.base);
  }
  IntTuple t(std::move(out));
  t.trim();
  return t;
}

// Word text grammar (ASCII):
//   WORD  := POWER (WS POWER)* | "()"
//   POWER := INT ("^" INT)?
//   INT   := "-"? [0-9]+
//   WS    := one or more spaces
// Optional surrounding parentheses accepted. Integers are arbitrary
// precision. The parsed word is reduced.
inline Word parse_word(std::string_view text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && text[begin] == ' ') ++begin;
  while (end > begin && text[end - 1] == ' ') --end;
  if (begin == end) throw ParseError("empty word text", begin);
  if (text[begin] == '(' && text[end - 1] == ')') {
    ++begin;
    --end;
    while (begin < end && text[begin] == ' ') ++begin;
    while (end > begin && text[end - 1] == ' ') --end;
    if (begin == end) return Word();  // "()" is the identity
  }

  auto parse_int = [&](std::size_t& i) -> Int {
    std::size_t start = i;
    if (i < end && text[i] == '-') ++i;
    std::size_t digits_from = i;
    while (i < end && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == digits_from) throw ParseError("expected integer", start);
    return Int(std::string(text.substr(start, i - start)));
  };

  WordBuilder b;
  std::size_t i = begin;
  while (true) {
    Int base = parse_int(i);
    Int exp = 1;
    if (i < end && text[i] == '^') {
      ++i;
      exp = parse_int(i);
    }
    b.append(std::move(base), std::move(exp));
    if (i == end) break;
    if (text[i] != ' ')
      throw ParseError(std::string("unexpected character '") + text[i] + "'",
                       i);
    while (i < end && text[i] == ' ') ++i;
    if (i == end) break;
  }
  return std::move(b).take();
}

// Emits space-separated powers, "^" omitted for exponent 1, "()" for the
// identity. parse_word(format_word(w)) == w.
inline std::string format_word(const Word& w) {
  if (w.empty()) return "()";
  std::string s;
  for (const Power& p : w.powers()) {
    if (!s.empty()) s += ' ';
    s += p.base.str();
    if (p.exponent != 1) {
      s += '^';
      s += p.exponent.str();
    }
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << format_word(w);
}

inline std::ostream& operator<<(std::ostream& os, const IntTuple& t) {
  return os << t.str();
}

}  // namespace golev
