#include <golev/analysis.hpp>
#include <golev/reference_tables.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace golev;
using golev_test::Rng;

namespace {

const VardiSet& vs5() {
  static const VardiSet vs = VardiSet::generate(5);
  return vs;
}

const VardiSet& vs6() {
  static const VardiSet vs = VardiSet::generate(6);
  return vs;
}

std::vector<Int> oracle_h_even(const Word& w, unsigned window) {
  const unsigned E = even_window(window);
  const IntTuple seq = lev_seq_oracle(w, E);
  std::vector<Int> h;
  for (unsigned i = 2; i <= E; i += 2) h.push_back(seq.at(i));
  return h;
}

}  // namespace

TEST_CASE("homogeneous words") {
  CHECK(is_homogeneous(parse_word("1 2^2")));
  CHECK_FALSE(is_homogeneous(parse_word("-2 3 -1")));
  CHECK_FALSE(is_homogeneous(parse_word("1^-3 2^2")));
  CHECK(is_homogeneous(Word()));
  CHECK(is_homogeneous(parse_word("0^2 1")));
  CHECK(is_homogeneous(parse_word("-1^-2 -3^-1")));
  CHECK(is_homogeneous(parse_word("-2")));
  // homogeneity is preserved by both operators
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    Word w = golev_test::rand_word(rng, 4, 4);
    if (!is_homogeneous(w)) continue;
    CHECK(is_homogeneous(gol(w)));
    CHECK(is_homogeneous(lev(w)));
  }
}

TEST_CASE("ratio report against the published tables") {
  SECTION("levine deviations approach Mallows's constant") {
    std::vector<Int> terms = reference_terms(2);
    terms.resize(14);
    RatioReport r = ratio_report(terms, RatioTarget::mallows);
    REQUIRE(r.rows.back().n == 13);
    CHECK_FALSE(r.rows.back().skipped);
    CHECK(r.rows.back().deviation < Rat(1, 1000));
    CHECK(decimal_string(r.rows.back().ratio, 4) == "0.2788");
  }
  SECTION("golombic deviations approach the golden ratio minus one") {
    std::vector<Int> terms = reference_terms(1);
    terms.resize(15);
    RatioReport r = ratio_report(terms, RatioTarget::golden);
    REQUIRE(r.rows.back().n == 14);
    CHECK(r.rows.back().deviation < Rat(1, 1000));
    CHECK(decimal_string(r.rows.back().ratio, 4) == "0.6180");
  }
  SECTION("constant sequences report a large deviation without error") {
    RatioReport r = ratio_report({Int(1), Int(1), Int(1)}, RatioTarget::golden);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].ratio == 1);
    CHECK(r.rows[0].deviation > Rat(1, 3));
  }
  SECTION("zero denominators are skipped with a note") {
    RatioReport r = ratio_report({Int(1), Int(0), Int(5), Int(7), Int(3)},
                                 RatioTarget::golden);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].skipped);  // n=2 divides by a_2 a_1 = 0
    CHECK(r.rows[1].skipped);  // n=3 divides by a_3 a_2 = 0
    CHECK_FALSE(r.rows[2].skipped);
    CHECK(r.rows[2].ratio == Rat(3, 35));
  }
  SECTION("kappa override is honored") {
    RatioReport r = ratio_report({Int(1), Int(1), Int(1)}, RatioTarget::mallows,
                                 Rat(1, 4));
    CHECK(r.target == Rat(1, 4));
    CHECK(ratio_report({Int(1), Int(1), Int(1)}, RatioTarget::mallows)
              .target == mallows_kappa());
  }
  CHECK_THROWS_AS(ratio_report({Int(1), Int(2)}, RatioTarget::golden),
                  std::invalid_argument);
}

TEST_CASE("symbolic polynomials for one power") {
  // gol_1(b^m) = m
  MPoly p1 = symbolic_seq_polynomial(SeqKind::golombic, 1, 1, vs5());
  CHECK(to_monomial(p1) == MPoly::variable(1));

  // gol_2(b^m) = m b
  MPoly p2 = symbolic_seq_polynomial(SeqKind::golombic, 2, 1, vs5());
  CHECK(to_monomial(p2) == MPoly::variable(1) * MPoly::variable(2));

  // gol_3(b^m) = b m (m+1) / 2
  MPoly p3 = symbolic_seq_polynomial(SeqKind::golombic, 3, 1, vs5());
  MPoly expect(Basis::monomial);
  expect.add_term(ExpVec{2, 1}, Rat(1, 2));
  expect.add_term(ExpVec{1, 1}, Rat(1, 2));
  CHECK(to_monomial(p3) == expect);

  // lev_1(b^m) = m, lev_2(b^m) = m b, lev_3(b^m) = b m (m+1) / 2
  CHECK(to_monomial(symbolic_seq_polynomial(SeqKind::levine, 1, 1, vs5())) ==
        MPoly::variable(1));
  CHECK(to_monomial(symbolic_seq_polynomial(SeqKind::levine, 2, 1, vs5())) ==
        MPoly::variable(1) * MPoly::variable(2));
  CHECK(to_monomial(symbolic_seq_polynomial(SeqKind::levine, 3, 1, vs5())) ==
        expect);
}

TEST_CASE("symbolic polynomials evaluate to the fast-algorithm values") {
  Rng rng(0xde9);
  for (unsigned k = 1; k <= 2; ++k) {
    for (unsigned n = 1; n <= 4; ++n) {
      const MPoly pg = symbolic_seq_polynomial(SeqKind::golombic, n, k, vs5());
      const MPoly pl = symbolic_seq_polynomial(SeqKind::levine, n, k, vs5());
      CHECK(is_integer_binomial(pg));
      CHECK(is_integer_binomial(pl));
      for (int trial = 0; trial < 12; ++trial) {
        std::vector<Int> point;
        std::vector<Power> raw;
        for (unsigned j = 0; j < k; ++j) {
          Int m = golev_test::rand_int(rng, -4, 4);
          Int b = golev_test::rand_int(rng, -4, 4);
          point.push_back(m);
          point.push_back(b);
          raw.push_back(Power{b, m});
        }
        const Word w = Word::reduce(raw);
        const IntTuple at(point);
        INFO("word " << format_word(w) << " n=" << n);
        CHECK(evaluate_int(pg, at) == golombic_numbers(w, vs5())[n - 1]);
        CHECK(evaluate_int(pl, at) ==
              levine_numbers(w, vs5(), oracle_h_even(w, 5))[n - 1]);
      }
    }
  }
}

TEST_CASE("degree check against the Fibonacci pattern") {
  CHECK(fibonacci(0) == 0);
  CHECK(fibonacci(1) == 1);
  CHECK(fibonacci(6) == 8);

  for (unsigned n = 1; n <= 6; ++n) {
    DegreeReport r = degree_check(SeqKind::golombic, n, 1, vs6());
    INFO("n=" << n);
    CHECK(r.all_agree);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].var == 'm');
    CHECK(Int(r.rows[0].degree) == fibonacci(n));
    CHECK(r.rows[1].var == 'b');
    CHECK(Int(r.rows[1].degree) == fibonacci(n - 1));
  }

  // the levine polynomials follow the same pattern on small cases
  for (unsigned n = 1; n <= 4; ++n) {
    DegreeReport r = degree_check(SeqKind::levine, n, 2, vs5());
    CHECK(r.all_agree);
  }

  CHECK_THROWS_AS(degree_check(SeqKind::golombic, 9, 1, vs5()),
                  std::out_of_range);
  CHECK_THROWS_AS(
      symbolic_seq_polynomial(SeqKind::golombic, 5, 1, vs5(), /*budget=*/2),
      BudgetError);
}
