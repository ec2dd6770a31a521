#include <doctest.h>

#include "exactsos/numlin.hpp"
#include "support.hpp"

using namespace exactsos;
using testsupport::P;
using testsupport::Q;

TEST_CASE("identity factors exactly") {
  const RationalMatrix i2 = RationalMatrix::identity(2);
  for (long dc : {3, 10, 40}) {
    CholResult c = approx_cholesky(i2, 1, dc);
    CHECK(c.L == i2);
    CHECK(c.L * c.L.transpose() == i2);
  }
}

TEST_CASE("2x2 factor within the rounding bound") {
  const RationalMatrix g{{4, 2}, {2, 2}};
  CholResult c = approx_cholesky(g, Q("1/2"), 30);
  CHECK(c.delta_c_used == 30);
  CHECK(c.L == RationalMatrix{{2, 0}, {1, 1}});
  CHECK(within_cholesky_error_bound(g, c.L, 30));

  const RationalMatrix h{{3, 1}, {1, 3}};
  CholResult d = approx_cholesky(h, 2, 12);
  CHECK(d.L(0, 1) == 0);
  CHECK(d.L * d.L.transpose() != h);  // sqrt(3) is irrational
  CHECK(within_cholesky_error_bound(h, d.L, d.delta_c_used));
}

TEST_CASE("precision is raised to the nonsingularity threshold") {
  // 2^-dc < (1/4) / (9 + 3 + 2/4) = 1/50  ->  dc = 6
  CHECK(cholesky_precision_for(3, Q("1/4"), 1) == 6);
  CHECK(cholesky_precision_for(3, Q("1/4"), 9) == 9);
  const RationalMatrix g{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(approx_cholesky(g, Q("1/4"), 1).delta_c_used == 6);
  CHECK_THROWS_AS(approx_cholesky(g, 0, 10), Error);
}

TEST_CASE("indefinite input") {
  const RationalMatrix g{{1, 2}, {2, 1}};
  CHECK_FALSE(is_positive_definite(g));
  CHECK_THROWS_AS(approx_cholesky(g, Q("1/8"), 10), NotPositiveDefinite);
}

TEST_CASE("positive definiteness") {
  CHECK(is_positive_definite(RationalMatrix{{2, 1}, {1, 2}}));
  CHECK_FALSE(is_positive_definite(RationalMatrix{{1, 1}, {1, 1}}));
  CHECK(is_positive_definite(RationalMatrix{{Q("1/1000000")}}));
  CHECK_FALSE(is_positive_definite(RationalMatrix{{0}}));
}

TEST_CASE("certified smallest eigenvalue bound") {
  Rational a = min_eig_lower_bound(RationalMatrix{{1, 0}, {0, 4}}, 20);
  CHECK(a > Q("1/2"));
  CHECK(a <= 1);
  CHECK(min_eig_lower_bound(RationalMatrix{{1, 1}, {1, 1}}, 20) == 0);
  Rational b = min_eig_lower_bound(RationalMatrix{{2, 1}, {1, 2}}, 20);
  CHECK(b > Q("1/2"));
  CHECK(b <= 1);
}

TEST_CASE("rows to polynomials") {
  const HalfBasis lin = full_basis(2, 1);  // {(1,0),(0,1),(0,0)}
  RationalMatrix id3 = RationalMatrix::identity(3);
  auto s = rows_to_polys(id3, lin);
  CHECK(s[0] == P("x1", 2));
  CHECK(s[1] == P("x2", 2));

  HalfBasis b;
  b.points = {{2, 0}, {0, 2}};
  const RationalMatrix l{{2, 0}, {1, 1}};
  auto t = rows_to_polys(l, b);
  CHECK(t[0] == P("2*x1^2", 2));
  CHECK(t[1] == P("x1^2 + x2^2", 2));
  CHECK(t[0] * t[0] + t[1] * t[1] == P("5*x1^4 + 2*x1^2*x2^2 + x2^4", 2));
}
