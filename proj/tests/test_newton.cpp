#include <doctest.h>

#include <algorithm>
#include <vector>

#include "exactsos/newton.hpp"
#include "support.hpp"

using namespace exactsos;
using testsupport::P;

namespace {

std::vector<ExponentVector> sorted(std::vector<ExponentVector> v) {
  std::sort(v.begin(), v.end(), GrlexOrder{});
  return v;
}

}  // namespace

TEST_CASE("vertices") {
  CHECK(sorted(newton_polytope(P(testsupport::kQuartic, 2)).vertices) ==
        std::vector<ExponentVector>{{4, 0}, {0, 4}});
  CHECK(newton_polytope(P("x1^2*x2^2", 2)).vertices == std::vector<ExponentVector>{{2, 2}});
  CHECK(sorted(newton_polytope(P("x1^2 + x2^2 + 1", 2)).vertices) ==
        std::vector<ExponentVector>{{2, 0}, {0, 2}, {0, 0}});
  // interior and edge points are dropped
  CHECK(sorted(newton_polytope(P("x1^4 + x2^4 + x1^2*x2^2 + x1^2 + 1", 2)).vertices) ==
        std::vector<ExponentVector>{{4, 0}, {0, 4}, {0, 0}});
  CHECK_THROWS_AS(newton_polytope(P("0", 2)), Error);
}

TEST_CASE("half lattice points") {
  HalfBasis q = half_lattice_points(newton_polytope(P(testsupport::kQuartic, 2)));
  CHECK(q.points == std::vector<ExponentVector>{{2, 0}, {1, 1}, {0, 2}});
  CHECK(q.index_of({1, 1}) == 1);
  CHECK(q.index_of({3, 0}) == q.size());

  CHECK(half_lattice_points(newton_polytope(P("x1^2*x2^2", 2))).points == std::vector<ExponentVector>{{1, 1}});
  // odd vertex: no half point at all
  CHECK(half_lattice_points(newton_polytope(P("x1^3", 1))).size() == 0);
}

// Frozen from an independent LP-membership enumeration over N^3_3 and N^3_4.
TEST_CASE("half lattice points: Motzkin and Motzkin times G_3") {
  const Polynomial m = P(testsupport::kMotzkin, 3);
  CHECK(sorted(half_lattice_points(newton_polytope(m)).points) ==
        sorted({{0, 0, 3}, {1, 1, 1}, {1, 2, 0}, {2, 1, 0}}));
  const Polynomial mg = m * sum_of_squared_variables(3);
  CHECK(sorted(half_lattice_points(newton_polytope(mg)).points) ==
        sorted({{0, 0, 4}, {0, 1, 3}, {1, 0, 3}, {1, 1, 2}, {1, 2, 1}, {1, 3, 0}, {2, 1, 1}, {2, 2, 0}, {3, 1, 0}}));
}

TEST_CASE("half lattice points agree with brute-force membership") {
  for (const char* text : {"x1^6 + x2^6 + x3^6 + x1^2*x2^2*x3^2 + 1", "x1^4*x2^2 + x2^4 + x1^2 + x3^2*x1^2",
                           "x1^8 + x2^2 + x1^2*x2^4*x3^2"}) {
    const Polynomial f = P(text, 3);
    const Polytope poly = newton_polytope(f);
    const HalfBasis hb = half_lattice_points(poly);
    std::vector<ExponentVector> brute;
    for (const ExponentVector& a : full_basis(3, static_cast<std::uint32_t>(f.degree() / 2)).points)
      if (contains(poly, a, true)) brute.push_back(a);
    CHECK(sorted(hb.points) == sorted(brute));
  }
}

TEST_CASE("contains") {
  const Polytope seg = newton_polytope(P("x1^4 + x2^4", 2));
  CHECK(contains(seg, {2, 2}));
  CHECK_FALSE(contains(seg, {3, 0}));
  CHECK(contains(seg, {4, 0}));
  CHECK(contains(seg, {1, 1}, true));
  CHECK_FALSE(contains(seg, {1, 0}, true));
}

TEST_CASE("full basis") {
  CHECK(full_basis(2, 1).points == std::vector<ExponentVector>{{1, 0}, {0, 1}, {0, 0}});
  CHECK(full_basis(3, 2).size() == 10);
  CHECK(full_basis(2, 0).points == std::vector<ExponentVector>{{0, 0}});
}
