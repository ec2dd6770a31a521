#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "exactsos/newton.hpp"
#include "exactsos/numlin.hpp"
#include "exactsos/polynomial.hpp"

namespace exactsos {

using ExponentMap = std::map<ExponentVector, Rational, GrlexOrder>;

/// Gram SDP for f = v^T G v over a half basis: one equality per gamma,
/// sum_{basis[i]+basis[j]=gamma} G_ij = f_gamma.
struct GramProblem {
  HalfBasis basis;
  /// Every pair sum gamma, with f_gamma (possibly zero).
  ExponentMap target;
  /// gamma -> index pairs (i <= j) with basis[i] + basis[j] = gamma.
  std::map<ExponentVector, std::vector<std::pair<std::size_t, std::size_t>>, GrlexOrder> pair_index;
};

/// One Gram block of a quadratic-module SDP: sigma_j * multiplier with
/// sigma_j = v^T G_j v over `basis`.
struct GramBlock {
  Polynomial multiplier;
  HalfBasis basis;
};

/// SDP for f = sum_j g_j sigma_j + sum_alpha c_alpha (1 - X^(2 alpha)) with
/// g_0 = 1, truncated at degree 2k.
struct BlockGramProblem {
  std::vector<GramBlock> blocks;
  std::vector<ExponentVector> aux_constraints;
  /// f_gamma for every |gamma| <= 2k.
  ExponentMap target;
  std::uint32_t k = 0;
  std::uint32_t degree() const { return 2 * k; }
};

/// Rounded solution of a Gram SDP.
struct SolverOutput {
  std::vector<RationalMatrix> gram_blocks;
  /// Certified: gram_blocks[j] - eig_bounds[j] I is positive semidefinite.
  std::vector<Rational> eig_bounds;
  std::map<ExponentVector, Rational, GrlexOrder> aux_weights;
  long achieved_delta = 0;
  /// Floating estimate of the smallest eigenvalue margin reached by the solver.
  double margin_estimate = 0;
  int iterations = 0;
  long mantissa_bits = 0;
};

struct SolveOptions {
  /// Working mantissa for the multiprecision phase; 0 selects
  /// 4 delta + log2(R) + 64.
  long mantissa_bits = 0;
  /// Requests above this mantissa fail with PrecisionExhausted.
  long mantissa_cap = 1L << 16;
  int max_iterations = 250;
  /// Bits of the dyadic grid used to certify eigenvalue bounds beyond delta.
  long eig_extra_bits = 8;
};

class SolveError : public Error {
 public:
  enum class Kind { Infeasible, PrecisionExhausted };
  SolveError(Kind kind, const std::string& message, std::optional<double> margin_upper = {})
      : Error(message), kind_(kind), margin_upper_(margin_upper) {}
  Kind kind() const { return kind_; }
  /// Floating upper estimate of the best achievable eigenvalue margin, when the
  /// solver obtained one.
  std::optional<double> margin_upper() const { return margin_upper_; }

 private:
  Kind kind_;
  std::optional<double> margin_upper_;
};

/// Throws UncoverableExponent-like Error when an exponent of f_eps is not a sum
/// of two basis points.
GramProblem build_gram_problem(const Polynomial& f_eps, const HalfBasis& basis);

/// Blocks: g_0 = 1 over N^n_k and g_j over N^n_{k - ceil(deg g_j / 2)};
/// aux constraints 1 - X^(2 alpha) for 0 < |alpha| <= k.
BlockGramProblem build_putinar_problem(const Polynomial& f_eps, const std::vector<Polynomial>& g_list,
                                       std::uint32_t k);

/// Solves the margin problem max lambda s.t. G_j - lambda I >= 0, aux weights
/// >= lambda, constraints met, sum of traces <= R, and returns rounded
/// blocks with: every constraint violated by at most 2^-delta (exact check),
/// G_j - 2^-delta I positive definite (exact check), Frobenius norm <= R.
SolverOutput solve(const GramProblem& problem, long delta, const Rational& r_bound,
                   const SolveOptions& options = {});
SolverOutput solve(const BlockGramProblem& problem, long delta, const Rational& r_bound,
                   const SolveOptions& options = {});

/// Contract checks on a solution, all in exact arithmetic.
struct SolutionCheck {
  bool constraints_ok = false;
  bool interior_ok = false;
  bool frobenius_ok = false;
  Rational max_violation;
  bool ok() const { return constraints_ok && interior_ok && frobenius_ok; }
};
SolutionCheck check_solution(const GramProblem& problem, const SolverOutput& out, long delta,
                             const Rational& r_bound);
SolutionCheck check_solution(const BlockGramProblem& problem, const SolverOutput& out, long delta,
                             const Rational& r_bound);

/// Rounds externally computed floating blocks (e.g. read back from an SDPA
/// solution file) and certifies them exactly like the built-in backend.
SolverOutput finalize_external(const GramProblem& problem,
                               const std::vector<std::vector<std::vector<double>>>& blocks,
                               long delta, const Rational& r_bound, const SolveOptions& options = {});

}  // namespace exactsos
