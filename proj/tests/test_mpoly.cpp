#include <golev/mpoly.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace golev;
using golev_test::Rng;

namespace {

IntTuple T(std::vector<Int> v) { return IntTuple(std::move(v)); }

MPoly rand_poly(Rng& rng, Basis b, int max_vars = 3, int max_terms = 5,
                int max_exp = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_exp);
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 3);
  MPoly p(b);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    ExpVec e;
    for (int j = 0; j < max_vars; ++j)
      e.push_back(static_cast<std::uint32_t>(exp(rng)));
    p.add_term(std::move(e), Rat(num(rng), den(rng)));
  }
  return p;
}

// substitutes v for the first coordinate of a
IntTuple with_a1(const IntTuple& a, Int v) {
  std::vector<Int> t = a.terms();
  if (t.empty()) t.push_back(0);
  t[0] = std::move(v);
  return IntTuple(std::move(t));
}

// the three-case definite-sum definition of the discrete integral, evaluated
// pointwise; independent of the Stirling-shift implementation
Rat dint1_pointwise(const MPoly& f, const IntTuple& a) {
  const Int a1 = a.at(1);
  Rat s = 0;
  if (a1 > 0) {
    for (Int c = 1; c <= a1; ++c) s += evaluate(f, with_a1(a, a1 - c));
  } else if (a1 < 0) {
    for (Int c = 0; c <= -a1 - 1; ++c) s -= evaluate(f, with_a1(a, a1 + c));
  }
  return s;
}

const MPoly x1 = MPoly::variable(1);
const MPoly x2 = MPoly::variable(2);
const MPoly x3 = MPoly::variable(3);

MPoly binom_term(std::initializer_list<std::uint32_t> exps, Rat c = 1) {
  MPoly p(Basis::binomial);
  p.add_term(ExpVec(exps), std::move(c));
  return p;
}

}  // namespace

TEST_CASE("stirling numbers") {
  CHECK(stirling2(3, 2) == 3);
  CHECK(stirling1(3, 2) == -3);
  CHECK(stirling1(4, 2) == 11);
  CHECK(stirling2(4, 2) == 7);
  for (std::uint32_t n = 0; n <= 8; ++n) {
    CHECK(stirling2(n, n) == 1);
    CHECK(stirling1(n, n) == 1);
    CHECK(stirling2(n, n + 1) == 0);
    CHECK(stirling1(n, n + 1) == 0);
  }
}

TEST_CASE("ring operations") {
  MPoly sq = x1 * x1;
  CHECK(sq.coeff(ExpVec{2}) == 1);
  CHECK(sq.term_count() == 1);

  // C(x1,1)^2 = C(x1,1) + 2 C(x1,2) directly in the binomial basis
  MPoly b1 = binom_term({1});
  MPoly prod = b1 * b1;
  CHECK(prod == binom_term({1}) + binom_term({2}, 2));

  Rng rng(1);
  MPoly f = rand_poly(rng, Basis::monomial);
  CHECK(f + MPoly(Basis::monomial) == f);
}

TEST_CASE("basis conversions") {
  CHECK(to_binomial(x1 * x1) == binom_term({1}) + binom_term({2}, 2));
  MPoly c2_mono = to_monomial(binom_term({2}));
  MPoly expected(Basis::monomial);
  expected.add_term(ExpVec{2}, Rat(1, 2));
  expected.add_term(ExpVec{1}, Rat(-1, 2));
  CHECK(c2_mono == expected);

  CHECK(to_binomial(MPoly::constant(1)) == MPoly::constant(1, Basis::binomial));
  CHECK(to_monomial(MPoly::constant(1, Basis::binomial)) == MPoly::constant(1));

  Rng rng(2024);
  for (int trial = 0; trial < 80; ++trial) {
    MPoly f = rand_poly(rng, Basis::monomial);
    CHECK(to_monomial(to_binomial(f)) == f);
    MPoly g = rand_poly(rng, Basis::binomial);
    CHECK(to_binomial(to_monomial(g)) == g);
    // conversions preserve values
    IntTuple a = golev_test::rand_tuple(rng, 3, -6, 6);
    CHECK(evaluate(f, a) == evaluate(to_binomial(f), a));
  }
}

TEST_CASE("discrete calculus on examples") {
  CHECK(dint1(MPoly::constant(1)) == x1);
  CHECK(dint1(MPoly::constant(1, Basis::binomial)) == binom_term({1}));

  // d1(C(x1,2) x2) = x1 x2
  MPoly f = binom_term({2, 1});
  CHECK(to_monomial(dder1(f)) == x1 * x2);

  CHECK(dint1(x2) == x1 * x2);
  CHECK(dder1(x2).is_zero());
  CHECK(dder1(MPoly()).is_zero());
}

TEST_CASE("discrete calculus laws by exact evaluation") {
  Rng rng(314159);
  for (int trial = 0; trial < 60; ++trial) {
    Basis b = trial % 2 ? Basis::monomial : Basis::binomial;
    MPoly f = rand_poly(rng, b);
    MPoly g = rand_poly(rng, b);
    IntTuple a = golev_test::rand_tuple(rng, 3, -8, 8);

    // inverse laws
    CHECK(evaluate(dder1(dint1(f)), a) == evaluate(f, a));
    CHECK(evaluate(dint1(dder1(f)), a) ==
          evaluate(f, a) - evaluate(f, with_a1(a, 0)));

    // linearity
    CHECK(dder1(f + g) == dder1(f) + dder1(g));
    CHECK(dint1(f - g) == dint1(f) - dint1(g));

    // multiplicative laws for x1-free left factors
    MPoly h(b);
    const MPoly hsrc = rand_poly(rng, b);
    for (const auto& [e, c] : hsrc.terms()) {
      ExpVec shifted{0};
      shifted.insert(shifted.end(), e.begin(), e.end());
      h.add_term(std::move(shifted), c);
    }
    REQUIRE(dder1(h).is_zero());
    CHECK(evaluate(dder1(h * g), a) == evaluate(h * dder1(g), a));
    CHECK(evaluate(dint1(h * g), a) == evaluate(h * dint1(g), a));

    // pointwise three-case definition of the integral
    CHECK(evaluate(dint1(f), a) == dint1_pointwise(f, a));

    // the integral lies in the ideal (x1)
    CHECK(evaluate(dint1(f), with_a1(a, 0)) == 0);
    const MPoly int_binomial = to_binomial(dint1(f));
    for (const auto& [e, c] : int_binomial.terms()) {
      REQUIRE_FALSE(e.empty());
      CHECK(e[0] >= 1);
    }
  }
}

TEST_CASE("vandermonde convolution") {
  Rng rng(65537);
  for (int trial = 0; trial < 40; ++trial) {
    Int u = golev_test::rand_int(rng, -9, 9);
    Int v = golev_test::rand_int(rng, -9, 9);
    for (std::uint32_t k = 0; k <= 6; ++k) {
      Int rhs = 0;
      for (std::uint32_t j = 0; j <= k; ++j)
        rhs += binom(u, j) * binom(v, k - j);
      CHECK(binom(u + v, k) == rhs);
    }
  }
}

TEST_CASE("compose") {
  // renaming
  CHECK(compose(x1 * x2, {x2, x3}) == x2 * x3);
  // identity by omission
  MPoly f = x1 * x2 + x3;
  CHECK(compose(f, {}) == f);
  // x1 x2 composed with [x2, x3 + x1]
  CHECK(compose(x1 * x2, {x2, x3 + x1}) == x2 * x3 + x1 * x2);

  Rng rng(112233);
  for (int trial = 0; trial < 60; ++trial) {
    Basis b = trial % 2 ? Basis::monomial : Basis::binomial;
    MPoly g = rand_poly(rng, b, 3, 4, 2);
    std::vector<MPoly> args = {rand_poly(rng, b, 2, 3, 2),
                               rand_poly(rng, b, 2, 3, 2),
                               rand_poly(rng, b, 2, 3, 2)};
    IntTuple a = golev_test::rand_tuple(rng, 3, -5, 5);
    // evaluation commutes with substitution at integer-valued points
    std::vector<Int> argvals;
    bool integral = true;
    for (const auto& arg : args) {
      Rat v = evaluate(arg, a);
      if (rat_den(v) != 1) {
        integral = false;
        break;
      }
      argvals.push_back(rat_num(v));
    }
    if (!integral) continue;
    CHECK(evaluate(compose(g, args), a) == evaluate(g, IntTuple(argvals)));
  }
}

TEST_CASE("restrict") {
  CHECK(restrict_vars(x1 * x2 * x3, 2).is_zero());
  MPoly t3 = to_monomial(binom_term({1, 1, 1}) + binom_term({2, 1}));
  CHECK(restrict_vars(t3, 2) == to_monomial(binom_term({2, 1})));
  MPoly f = x1 * x2 + x3;
  CHECK(restrict_vars(f, 17) == f);
}

TEST_CASE("evaluate") {
  CHECK(evaluate(binom_term({2}), T({-1})) == 1);
  CHECK(evaluate(MPoly(), T({5, 7})) == 0);
  MPoly t3 = binom_term({1, 1, 1}) + binom_term({2, 1});
  CHECK(evaluate(t3, T({1, 2, 3})) == 6);
  CHECK(evaluate_int(t3, T({1, 2, 3})) == 6);
  MPoly half = MPoly::constant(Rat(1, 2));
  CHECK_THROWS_AS(evaluate_int(half, T({})), IntegrityError);
}

TEST_CASE("positivity and integrality predicates") {
  // 1 - x1 + C(x1,2): integer-valued but not strongly positive
  MPoly f =
      MPoly::constant(1, Basis::binomial) - binom_term({1}) + binom_term({2});
  CHECK_FALSE(is_strongly_positive(f));
  CHECK(is_integer_binomial(f));

  MPoly t3 = binom_term({1, 1, 1}) + binom_term({2, 1});
  CHECK(is_strongly_positive(t3));
  CHECK(is_integer_binomial(t3));

  MPoly half = x1.scaled(Rat(1, 2));
  CHECK_FALSE(is_integer_binomial(half));
  CHECK(denominator_lcm(half) == 2);
  CHECK(denominator_lcm(to_monomial(binom_term({2}) + binom_term({3}))) == 6);
  CHECK(denominator_lcm(MPoly()) == 1);
}

TEST_CASE("strong positivity is closed under composition") {
  Rng rng(90210);
  auto rand_pos = [&](int vars) {
    MPoly p(Basis::binomial);
    std::uniform_int_distribution<int> nterms(1, 3), exp(0, 2);
    std::uniform_int_distribution<long> num(1, 4);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
      ExpVec e;
      for (int j = 0; j < vars; ++j)
        e.push_back(static_cast<std::uint32_t>(exp(rng)));
      p.add_term(std::move(e), Rat(num(rng)));
    }
    return p;
  };
  for (int trial = 0; trial < 30; ++trial) {
    MPoly f = rand_pos(3);
    std::vector<MPoly> args = {rand_pos(2), rand_pos(2), rand_pos(2)};
    CHECK(is_strongly_positive(compose(f, args)));
  }
}

TEST_CASE("serialization") {
  MPoly t3 = binom_term({1, 1, 1}) + binom_term({2, 1});
  std::string s = serialize(t3);
  CHECK(s ==
        "mpoly basis=binomial nvars=3\n"
        "1 : 1 1 1\n"
        "1 : 2 1 0\n");
  CHECK(deserialize_mpoly(s) == t3);

  MPoly zero;
  CHECK(serialize(zero) == "mpoly basis=monomial nvars=0\n");
  CHECK(deserialize_mpoly(serialize(zero)) == zero);

  MPoly frac(Basis::monomial);
  frac.add_term(ExpVec{1}, Rat(-3, 7));
  CHECK(serialize(frac) == "mpoly basis=monomial nvars=1\n-3/7 : 1\n");

  Rng rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    MPoly f = rand_poly(rng, trial % 2 ? Basis::monomial : Basis::binomial);
    CHECK(deserialize_mpoly(serialize(f)) == f);
    CHECK(serialize(deserialize_mpoly(serialize(f))) == serialize(f));
  }

  CHECK_THROWS_AS(deserialize_mpoly("mpolly basis=monomial nvars=0\n"),
                  ParseError);
  CHECK_THROWS_AS(deserialize_mpoly("mpoly basis=monomial nvars=2\n1 : 1\n"),
                  ParseError);
}

TEST_CASE("pretty printing") {
  MPoly t3 = binom_term({1, 1, 1}) + binom_term({2, 1});
  CHECK(to_pretty_string(t3) == "x1*x2*x3 + C(x1,2)*x2");
  CHECK(to_pretty_string(MPoly()) == "0");
  MPoly m = x1 * x1 - x2.scaled(Rat(1, 2));
  CHECK(to_pretty_string(m) == "x1^2 - 1/2*x2");
  CHECK(to_pretty_string(MPoly::variable(1) - MPoly::constant(1)) ==
        "x1 - 1");
}
