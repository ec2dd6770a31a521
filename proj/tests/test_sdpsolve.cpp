#include <doctest.h>

#include <cmath>
#include <string>

#include "exactsos/sdp.hpp"
#include "exactsos/sdpa.hpp"
#include "support.hpp"

using namespace exactsos;
using testsupport::P;
using testsupport::Q;

namespace {

HalfBasis quartic_basis() { return half_lattice_points(newton_polytope(P(testsupport::kQuartic, 2))); }

Polynomial minus_eps_t(const Polynomial& f, const HalfBasis& b, const Rational& eps) {
  return f - eps * sum_of_even_monomials(b.points, f.nvars());
}

}  // namespace

TEST_CASE("gram problem for the quartic") {
  const HalfBasis b = quartic_basis();
  GramProblem gp = build_gram_problem(P(testsupport::kQuartic, 2), b);
  CHECK(gp.basis.size() == 3);
  // pair sums of {(2,0),(1,1),(0,2)}: (4,0),(3,1),(2,2),(1,3),(0,4)
  CHECK(gp.target.size() == 5);
  CHECK(gp.pair_index.at({2, 2}) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 1}});
  CHECK(gp.pair_index.at({4, 0}) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
  CHECK(gp.target.at({2, 2}) == -7);
}

TEST_CASE("gram problem: single monomial and uncoverable input") {
  HalfBasis b;
  b.points = {{1, 0}};
  GramProblem gp = build_gram_problem(P("x1^2", 2), b);
  CHECK(gp.basis.size() == 1);
  CHECK(gp.target.size() == 1);
  CHECK(gp.target.at({2, 0}) == 1);
  CHECK_THROWS_AS(build_gram_problem(P("x1^2 + x2", 2), b), Error);
}

TEST_CASE("putinar block structure") {
  const std::vector<Polynomial> g{P("1 - x1^2", 2), P("1 - x2^2", 2)};
  BlockGramProblem bp = build_putinar_problem(P(testsupport::kBoxTarget, 2), g, 1);
  REQUIRE(bp.blocks.size() == 3);
  CHECK(bp.blocks[0].basis.size() == 3);
  CHECK(bp.blocks[1].basis.size() == 1);
  CHECK(bp.blocks[2].basis.size() == 1);
  CHECK(bp.blocks[1].multiplier == g[0]);
  CHECK(bp.aux_constraints == std::vector<ExponentVector>{{1, 0}, {0, 1}});
  CHECK(bp.degree() == 2);
  CHECK(bp.target.size() == 6);

  BlockGramProblem none = build_putinar_problem(P("x1^2 + 1", 1), {}, 1);
  CHECK(none.blocks.size() == 1);
  CHECK(none.blocks[0].basis.size() == 2);

  BlockGramProblem cubic = build_putinar_problem(P("1", 2), {P("1 - x1^3", 2)}, 2);
  CHECK(cubic.blocks[1].basis.points == std::vector<ExponentVector>{{0, 0}});
}

TEST_CASE("solve: perturbed quartic meets the contract") {
  const HalfBasis b = quartic_basis();
  GramProblem gp = build_gram_problem(minus_eps_t(P(testsupport::kQuartic, 2), b, Q("1/4")), b);
  const Rational r = pow2(60);
  SolverOutput out = solve(gp, 60, r);
  REQUIRE(out.gram_blocks.size() == 1);
  CHECK(out.gram_blocks[0].dim() == 3);
  CHECK(out.gram_blocks[0].is_symmetric());
  CHECK(out.eig_bounds[0] > pow2(-60));
  SolutionCheck ck = check_solution(gp, out, 60, r);
  CHECK(ck.ok());
  CHECK(ck.max_violation <= pow2(-60));
}

TEST_CASE("solve: diagonal target gives the identity") {
  HalfBasis b;
  b.points = {{1, 0}, {0, 1}};
  GramProblem gp = build_gram_problem(P("x1^2 + x2^2", 2), b);
  SolverOutput out = solve(gp, 40, pow2(60));
  const RationalMatrix& g = out.gram_blocks[0];
  CHECK(abs(g(0, 0) - 1) <= pow2(-40));
  CHECK(abs(g(1, 1) - 1) <= pow2(-40));
  CHECK(abs(g(0, 1)) <= pow2(-20));
  CHECK(out.margin_estimate == doctest::Approx(1).epsilon(1e-3));
}

TEST_CASE("solve: indefinite form is infeasible") {
  HalfBasis b;
  b.points = {{1, 0}, {0, 1}};
  GramProblem gp = build_gram_problem(P("x1^2 - x2^2", 2), b);
  try {
    solve(gp, 60, pow2(60));
    FAIL("expected Infeasible");
  } catch (const SolveError& e) {
    CHECK(e.kind() == SolveError::Kind::Infeasible);
  }
}

TEST_CASE("solve: unperturbed quartic minus the full budget is infeasible") {
  const HalfBasis b = quartic_basis();
  GramProblem gp = build_gram_problem(minus_eps_t(P(testsupport::kQuartic, 2), b, 1), b);
  CHECK_THROWS_AS(solve(gp, 60, pow2(60)), SolveError);
}

TEST_CASE("solve: block problem") {
  const std::vector<Polynomial> g{P("1 - x1^2", 2), P("1 - x2^2", 2)};
  const HalfBasis b = full_basis(2, 1);
  BlockGramProblem bp = build_putinar_problem(minus_eps_t(P(testsupport::kBoxTarget, 2), b, Q("1/8")), g, 1);
  SolverOutput out = solve(bp, 60, pow2(60));
  CHECK(out.gram_blocks.size() == 3);
  CHECK(out.aux_weights.size() == 2);
  for (const auto& [a, w] : out.aux_weights) CHECK(w >= pow2(-60));
  CHECK(check_solution(bp, out, 60, pow2(60)).ok());
}

TEST_CASE("solve: frobenius bound too small") {
  HalfBasis b;
  b.points = {{1, 0}, {0, 1}};
  GramProblem gp = build_gram_problem(P("100*x1^2 + 100*x2^2", 2), b);
  CHECK_THROWS_AS(solve(gp, 30, 4), SolveError);
}

TEST_CASE("check_solution rejects tampering") {
  HalfBasis b;
  b.points = {{1, 0}, {0, 1}};
  GramProblem gp = build_gram_problem(P("x1^2 + x2^2", 2), b);
  SolverOutput out = solve(gp, 40, pow2(60));
  out.gram_blocks[0](0, 0) += pow2(-30);
  CHECK_FALSE(check_solution(gp, out, 40, pow2(60)).constraints_ok);
  out.gram_blocks[0](0, 0) = 0;
  out.gram_blocks[0](1, 1) = 2;
  CHECK_FALSE(check_solution(gp, out, 40, pow2(60)).interior_ok);
}

TEST_CASE("sdpa export: smallest case") {
  HalfBasis b;
  b.points = {{1, 0}};
  const std::string text = export_sdpa(build_gram_problem(P("x1^2", 2), b));
  CHECK(text.find("1 = mDIM\n") != std::string::npos);
  CHECK(text.find("1 = nBLOCK\n") != std::string::npos);
  CHECK(text.find("1 = bLOCKsTRUCT\n") != std::string::npos);
  CHECK(text.find("{1}\n") != std::string::npos);
  CHECK(text.find("0 1 1 1 -1\n") != std::string::npos);
  CHECK(text.find("1 1 1 1 1\n") != std::string::npos);
}

TEST_CASE("sdpa export: quartic and block problem") {
  const std::string q = export_sdpa(build_gram_problem(P(testsupport::kQuartic, 2), quartic_basis()));
  CHECK(q.find("5 = mDIM\n") != std::string::npos);
  CHECK(q.find("3 = bLOCKsTRUCT\n") != std::string::npos);
  const std::vector<Polynomial> g{P("1 - x1^2", 2), P("1 - x2^2", 2)};
  const std::string p = export_sdpa(build_putinar_problem(P(testsupport::kBoxTarget, 2), g, 1));
  CHECK(p.find("6 = mDIM\n") != std::string::npos);
  CHECK(p.find("4 = nBLOCK\n") != std::string::npos);
  CHECK(p.find("3 1 1 -2 = bLOCKsTRUCT\n") != std::string::npos);
}

TEST_CASE("sdpa solution round trip and external finalize") {
  const HalfBasis b = quartic_basis();
  GramProblem gp = build_gram_problem(minus_eps_t(P(testsupport::kQuartic, 2), b, Q("1/4")), b);
  SolverOutput out = solve(gp, 60, pow2(60));
  SdpaSolution s = to_sdpa_solution(out);
  s.primal_objective = -1.5;
  s.x = {0.25, -1e-300, 3.0};
  SdpaSolution back = import_solution(write_solution(s));
  CHECK(back.x == s.x);
  CHECK(back.primal_objective == s.primal_objective);
  REQUIRE(back.y_blocks.size() == 1);
  CHECK(back.y_blocks == s.y_blocks);

  SolverOutput ext = finalize_external(gp, back.y_blocks, 60, pow2(60));
  CHECK(check_solution(gp, ext, 60, pow2(60)).ok());
}

TEST_CASE("sdpa import: format errors") {
  CHECK_THROWS_AS(import_solution("objValPrimal = 1\n"), SdpaFormatError);
  CHECK_THROWS_AS(import_solution("xVec = \n{1,2\nyMat = \n{ {1} }\n"), SdpaFormatError);
}
