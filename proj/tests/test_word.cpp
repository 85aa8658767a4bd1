#include <golev/word.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace golev;
using golev_test::Rng;

namespace {

Word W(std::string_view text) { return parse_word(text); }
IntTuple T(std::vector<Int> v) { return IntTuple(std::move(v)); }

}  // namespace

TEST_CASE("reduce melts adjacent powers") {
  Word melted = Word::reduce({{1, 2}, {1, 3}});
  CHECK(melted == W("1^5"));
  Word cancelled = Word::reduce({{2, 1}, {2, -1}});
  CHECK(cancelled == Word());
  Word zero_exp = Word::reduce({{7, 0}});
  CHECK(zero_exp == Word());
  Word cascade = Word::reduce({{1, 1}, {2, 1}, {2, -1}, {1, -1}});
  CHECK(cascade == Word());
}

TEST_CASE("concat") {
  CHECK(concat(W("1 2^2"), W("2 3")) == W("1 2^3 3"));
  CHECK(concat(W("1 2^2"), Word()) == W("1 2^2"));
  CHECK(concat(W("1"), W("1^-1")) == Word());
}

TEST_CASE("inverse") {
  CHECK(inverse(W("1 2^2")) == W("2^-2 1^-1"));
  CHECK(inverse(Word()) == Word());
  CHECK(inverse(W("3^-1")) == W("3"));
}

TEST_CASE("involutions on examples") {
  CHECK(neg(W("-2 3")) == W("2 -3"));
  CHECK(bar(W("1 2^2")) == W("1^-1 2^-2"));
  CHECK(rev(W("4 3 2^2 1^3")) == W("1^3 2^2 3 4"));
}

TEST_CASE("length and content") {
  CHECK(length(W("1 2^2")) == 3);
  CHECK(content(W("1 2^2")) == 5);
  CHECK(length(Word()) == 0);
  CHECK(content(Word()) == 0);
  CHECK(length(W("5^-1 -4")) == 0);
  CHECK(content(W("5^-1 -4")) == -9);
}

TEST_CASE("embed and expand") {
  CHECK(embed(T({0, 0, 1})) == W("0^2 1"));
  CHECK(expand(W("1 2^2")) == T({1, 2, 2}));
  CHECK(expand(W("-2")) == T({-2}));
  CHECK_THROWS_AS(expand(W("1^-2")), std::invalid_argument);
  // embedding ignores trailing zeros
  CHECK(embed(T({1, 0})) == embed(T({1})));
  // internal zeros survive the round trip
  CHECK(expand(embed(T({1, 0, 2}))) == T({1, 0, 2}));
}

TEST_CASE("parse and format") {
  Word explicit_exps = Word::reduce({{1, 1}, {2, 2}, {3, 2}});
  CHECK(parse_word("1^1 2^2 3^2") == explicit_exps);
  Word neg_base = Word::reduce({{-2, 1}});
  CHECK(parse_word("-2") == neg_base);
  Word neg_exp = Word::reduce({{1, -3}, {2, 2}});
  CHECK(parse_word("1^-3 2^2") == neg_exp);
  CHECK(parse_word("()") == Word());
  CHECK(parse_word("( 1 2 )") == W("1 2"));
  CHECK(parse_word("1^2 1^3") == W("1^5"));  // parse reduces
  CHECK(format_word(Word()) == "()");
  CHECK(format_word(W("1 2^2")) == "1 2^2");
  CHECK(format_word(W("1^-3 2^2")) == "1^-3 2^2");

  // big integers round trip
  std::string big = "123456789012345678901234567890";
  CHECK(format_word(parse_word(big + "^" + big)) == big + "^" + big);
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(parse_word(""), ParseError);
  try {
    parse_word("1^2 x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  try {
    parse_word("12^");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("shift and tail_sum") {
  CHECK(T({1, 2, 3}).shifted(1) == T({2, 3}));
  CHECK(T({2, 1}).tail_sum() == T({3, 1}));
  CHECK(T({}).tail_sum() == T({}));
}

TEST_CASE("tuple equality ignores trailing zeros") {
  CHECK(T({0, 0, 1, 0}) == T({0, 0, 1}));
  CHECK(T({0, 0}) == T({}));
  CHECK(T({1, 2}).length() == 2);
  CHECK(T({1, 2, 0}).length() == 2);
  CHECK(T({1, 2, 0}).content() == 3);
}

TEST_CASE("homomorphism and involution laws on random words") {
  Rng rng(20250810);
  for (int trial = 0; trial < 200; ++trial) {
    Word v = golev_test::rand_word(rng, 5, 6);
    Word w = golev_test::rand_word(rng, 5, 6);
    Word vw = concat(v, w);
    vw.check_reduced();

    CHECK(length(vw) == length(v) + length(w));
    CHECK(content(vw) == content(v) + content(w));

    CHECK(neg(neg(w)) == w);
    CHECK(bar(bar(w)) == w);
    CHECK(rev(rev(w)) == w);
    CHECK(neg(bar(w)) == bar(neg(w)));
    CHECK(rev(w) == bar(inverse(w)));

    CHECK(neg(vw) == concat(neg(v), neg(w)));
    CHECK(bar(vw) == concat(bar(v), bar(w)));
    CHECK(rev(vw) == concat(rev(w), rev(v)));

    CHECK(length(neg(w)) == length(w));
    CHECK(content(neg(w)) == -content(w));
    CHECK(length(bar(w)) == -length(w));
    CHECK(content(bar(w)) == -content(w));
    CHECK(length(rev(w)) == length(w));
    CHECK(content(rev(w)) == content(w));

    CHECK(concat(w, inverse(w)) == Word());
    CHECK(parse_word(format_word(w)) == w);
  }
}
