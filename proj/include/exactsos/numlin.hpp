#pragma once

#include <cstddef>
#include <vector>

#include "exactsos/newton.hpp"
#include "exactsos/polynomial.hpp"

namespace exactsos {

/// Dense square matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  bool is_symmetric() const;
  RationalMatrix transpose() const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> a_;
};

/// Lower-triangular factor with positive diagonal and the working precision
/// that produced it.
struct CholResult {
  RationalMatrix L;
  long delta_c_used = 0;
};

/// A pivot became nonpositive during the rounded factorization.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Smallest delta_c' >= delta_c with 2^-delta_c' < lambda / (r^2 + r + (r-1) lambda).
long cholesky_precision_for(std::size_t r, const Rational& lambda_lb, long delta_c);

/// Cholesky factorization in which every computed entry is rounded to
/// delta_c significant bits (floating-point unit roundoff 2^-delta_c). The
/// working precision is raised first when needed so that a nonsingular factor
/// is guaranteed for lambda_lb <= lambda_min(G). Throws Error if
/// lambda_lb <= 0 and NotPositiveDefinite if a pivot is not positive.
CholResult approx_cholesky(const RationalMatrix& g, const Rational& lambda_lb, long delta_c);

/// Upper bound from the rounding analysis on |(L L^T - G)_ij| is
/// (r+1)u sqrt(G_ii G_jj) / (1 - (r+1)u), u = 2^-delta_c. Checked exactly.
bool within_cholesky_error_bound(const RationalMatrix& g, const RationalMatrix& l, long delta_c);

/// Exact test of positive definiteness (fraction-free elimination, all
/// leading principal minors positive).
bool is_positive_definite(const RationalMatrix& g);

/// Largest mu = j 2^-p, p <= max_bits, with G - mu I positive definite;
/// 0 when even 2^-max_bits fails. Certified: G - mu I is PSD exactly.
Rational min_eig_lower_bound(const RationalMatrix& g, long max_bits);

/// s_i = sum_j M[i][j] X^basis[j]; sum_i s_i^2 = v^T M^T M v.
std::vector<Polynomial> rows_to_polys(const RationalMatrix& m, const HalfBasis& basis);

}  // namespace exactsos
