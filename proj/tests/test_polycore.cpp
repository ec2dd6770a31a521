#include <doctest.h>

#include <vector>

#include "exactsos/polynomial.hpp"
#include "support.hpp"

using namespace exactsos;
using testsupport::P;
using testsupport::Q;

TEST_CASE("parse: quartic has five terms in grlex order") {
  Polynomial f = P(testsupport::kQuartic, 2);
  CHECK(f.term_count() == 5);
  CHECK(f.degree() == 4);
  CHECK(f.is_homogeneous());
  CHECK(f.coefficient({3, 1}) == 4);
  CHECK(f.coefficient({2, 2}) == -7);
  CHECK(f.coefficient({0, 4}) == 10);
  CHECK(to_string(f) == "4*x1^4 + 4*x1^3*x2 - 7*x1^2*x2^2 - 2*x1*x2^3 + 10*x2^4");
}

TEST_CASE("parse: zero and binomial") {
  Polynomial z = P("0", 3);
  CHECK(z.is_zero());
  CHECK(z.nvars() == 3);
  CHECK(P("(x1+x2)^2", 2) == P("x1^2 + 2*x1*x2 + x2^2", 2));
  CHECK(P("x1/2 - 3/4", 1).coefficient({0}) == Q("-3/4"));
}

TEST_CASE("parse: errors carry a position") {
  CHECK_THROWS_AS(P("x3", 2), ParseError);
  CHECK_THROWS_AS(P("x1^-1", 1), ParseError);
  CHECK_THROWS_AS(P("1/x1", 1), ParseError);
  CHECK_THROWS_AS(P("1/0", 1), ParseError);
  CHECK_THROWS_AS(P("(x1", 1), ParseError);
  try {
    P("x1 + $", 1);
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("arithmetic") {
  CHECK(P("x1+x2", 2) * P("x1-x2", 2) == P("x1^2 - x2^2", 2));
  Polynomial p = P("3*x1*x2 - 1/7", 2);
  CHECK((p - p).is_zero());
  Polynomial s1 = P("2*x1*x2 + x2^2", 2), s2 = P("2*x1^2 + x1*x2 - 3*x2^2", 2);
  CHECK(s1 * s1 + s2 * s2 == P(testsupport::kQuartic, 2));
  CHECK(P("x1+1", 1).pow(0) == P("1", 1));
  CHECK(P("x1+1", 1).pow(3) == P("x1^3 + 3*x1^2 + 3*x1 + 1", 1));
  CHECK_THROWS_AS(P("x1", 1) + P("x1", 2), DimensionError);
}

TEST_CASE("weighted_square_sum") {
  std::vector<Rational> w{1, 1};
  std::vector<Polynomial> s{P("2*x1*x2 + x2^2", 2), P("2*x1^2 + x1*x2 - 3*x2^2", 2)};
  CHECK(weighted_square_sum(w, s, 2) == P(testsupport::kQuartic, 2));
  CHECK(weighted_square_sum({}, {}, 2).is_zero());
  std::vector<Rational> w3{Q("1/3")};
  std::vector<Polynomial> s3{P("x1*x2 - x2^2", 2)};
  CHECK(weighted_square_sum(w3, s3, 2) == P("(x1^2*x2^2 - 2*x1*x2^3 + x2^4)/3", 2));
}

TEST_CASE("bitsize") {
  CHECK(bitsize(P("10*x2^4", 2)).value == 4);
  CHECK(bitsize(P("0", 2)).value == 1);
  CHECK(bitsize(P("x1", 2)).value == 1);
  CHECK(bitsize(P("x1 + 395/1764", 2)).value == 11);
}

TEST_CASE("evaluate") {
  std::vector<Rational> one{1, 1};
  CHECK(P(testsupport::kQuartic, 2).evaluate(one) == 9);
  std::vector<Rational> origin{0, 0};
  CHECK(P("x1*x2 - 5/3", 2).evaluate(origin) == Q("-5/3"));
  std::vector<Rational> pt{Q("3/2"), Q("1/2")};
  CHECK(P("x1^2 + x2^2", 2).evaluate(pt) == Q("10/4"));
}

TEST_CASE("helpers: G_n and even monomials") {
  CHECK(sum_of_squared_variables(3) == P("x1^2 + x2^2 + x3^2", 3));
  std::vector<ExponentVector> b{{2, 0}, {1, 1}, {0, 2}};
  CHECK(sum_of_even_monomials(b, 2) == P("x1^4 + x1^2*x2^2 + x2^4", 2));
}

TEST_CASE("grlex order: higher degree first, then lexicographically larger") {
  GrlexOrder lt;
  CHECK(lt(ExponentVector{2, 0}, ExponentVector{1, 1}));
  CHECK(lt(ExponentVector{1, 1}, ExponentVector{0, 2}));
  CHECK(lt(ExponentVector{0, 3}, ExponentVector{2, 0}));
  CHECK_FALSE(lt(ExponentVector{1, 1}, ExponentVector{1, 1}));
}

TEST_CASE("rational helpers") {
  CHECK(bit_length(Q("-5/8")) == 4);
  CHECK(floor_log2(Q("3/8")) == -2);
  CHECK(pow2(-3) == Q("1/8"));
  CHECK(round_dyadic(Q("1/3"), 4) == Q("5/16"));
  CHECK(to_fraction_string(Rational(3)) == "3/1");
  CHECK(parse_fraction_strict("-3/2") == Q("-3/2"));
  CHECK_THROWS_AS(parse_fraction_strict("-6/4"), Error);
  CHECK_THROWS_AS(parse_fraction_strict("1/0"), Error);
  CHECK_THROWS_AS(parse_fraction_strict("7"), Error);
  CHECK(parse_fraction_strict("7", true) == 7);
}
