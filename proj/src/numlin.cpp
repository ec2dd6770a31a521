#include "exactsos/numlin.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace exactsos {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : dim_(rows.size()), a_() {
  a_.reserve(dim_ * dim_);
  for (const auto& r : rows) {
    if (r.size() != dim_) throw DimensionError("RationalMatrix must be square");
    for (const auto& v : r) a_.push_back(v);
  }
}

RationalMatrix RationalMatrix::identity(std::size_t dim) {
  RationalMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix product dimension mismatch");
  RationalMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix difference dimension mismatch");
  RationalMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

long cholesky_precision_for(std::size_t r, const Rational& lambda_lb, long delta_c) {
  if (lambda_lb <= 0) throw Error("cholesky: eigenvalue lower bound must be positive");
  const Rational rr(static_cast<long>(r));
  const Rational threshold = lambda_lb / (rr * rr + rr + (rr - 1) * lambda_lb);
  long d = std::max(delta_c, 1L);
  while (!(pow2(-d) < threshold)) ++d;
  return d;
}

CholResult approx_cholesky(const RationalMatrix& g, const Rational& lambda_lb, long delta_c) {
  if (!g.is_symmetric()) throw Error("cholesky: matrix is not symmetric");
  const std::size_t r = g.dim();
  const long prec = cholesky_precision_for(r, lambda_lb, delta_c);
  RationalMatrix l(r);
  for (std::size_t j = 0; j < r; ++j) {
    Rational d = g(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0)
      throw NotPositiveDefinite("cholesky: nonpositive pivot at column " + std::to_string(j));
    l(j, j) = sqrt_significant(d, prec);
    if (l(j, j) <= 0)
      throw NotPositiveDefinite("cholesky: pivot rounded to zero at column " + std::to_string(j));
    for (std::size_t i = j + 1; i < r; ++i) {
      Rational s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = round_significant(s / l(j, j), prec);
    }
  }
  return CholResult{std::move(l), prec};
}

bool within_cholesky_error_bound(const RationalMatrix& g, const RationalMatrix& l, long delta_c) {
  const std::size_t r = g.dim();
  const Rational u = pow2(-delta_c);
  const Rational ru = Rational(static_cast<long>(r + 1)) * u;
  if (ru >= 1) return false;
  RationalMatrix e = l * l.transpose() - g;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      // |E_ij| (1 - (r+1)u) <= (r+1)u sqrt(G_ii G_jj), squared.
      Rational lhs = abs(e(i, j)) * (1 - ru);
      Rational rhs2 = ru * ru * abs(g(i, i) * g(j, j));
      if (lhs * lhs > rhs2) return false;
    }
  return true;
}

bool is_positive_definite(const RationalMatrix& g) {
  const std::size_t r = g.dim();
  if (r == 0) return true;
  Integer den_lcm(1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), g(i, j).get_den_mpz_t());
  // upper triangle of the integer matrix den_lcm * G
  std::vector<Integer> a(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Rational v = g(i, j) * den_lcm;
      a[i * r + j] = v.get_num();
    }
  auto at = [&](std::size_t i, std::size_t j) -> Integer& {
    return i <= j ? a[i * r + j] : a[j * r + i];
  };
  Integer prev(1);
  Integer tmp;
  for (std::size_t k = 0; k < r; ++k) {
    const Integer pivot = at(k, k);
    if (pivot <= 0) return false;
    for (std::size_t i = k + 1; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        tmp = at(i, j) * pivot - at(k, i) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
    prev = pivot;
  }
  return true;
}

namespace {

bool shifted_pd(const RationalMatrix& g, const Rational& mu) {
  RationalMatrix s = g;
  for (std::size_t i = 0; i < g.dim(); ++i) s(i, i) -= mu;
  return is_positive_definite(s);
}

double approx_min_eigenvalue(const RationalMatrix& g) {
  const auto r = static_cast<Eigen::Index>(g.dim());
  Eigen::MatrixXd m(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) m(i, j) = g(i, j).get_d();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

Rational min_eig_lower_bound(const RationalMatrix& g, long max_bits) {
  if (!g.is_symmetric()) throw Error("min_eig_lower_bound: matrix is not symmetric");
  if (g.dim() == 0) return Rational(0);
  const Rational unit = pow2(-max_bits);
  Rational min_diag = g(0, 0);
  for (std::size_t i = 1; i < g.dim(); ++i) min_diag = std::min(min_diag, g(i, i));
  if (min_diag <= 0) return Rational(0);

  // Search integer j in [lo, hi] with lo feasible (j = 0 means "none"), hi + 1 infeasible.
  auto to_j = [&](const Rational& x) {
    Rational s = x / unit;
    Integer j;
    mpz_fdiv_q(j.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return j;
  };
  Integer lo(0);
  Integer hi = to_j(min_diag);
  // lambda_min < min diag unless G is diagonal-dominated, so the exact bracket
  // is valid; tighten it with a floating estimate when that estimate checks out.
  double est = approx_min_eigenvalue(g);
  if (std::isfinite(est) && est > 0) {
    Rational e(est);
    Integer jl = to_j(e * Rational(1 - 1e-9));
    Integer jh = to_j(e * Rational(1 + 1e-9)) + 1;
    if (jl > lo && jl <= hi && shifted_pd(g, Rational(jl) * unit)) lo = jl;
    if (jh >= lo && jh < hi && !shifted_pd(g, Rational(jh) * unit)) hi = jh - 1;
  }
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    if (shifted_pd(g, Rational(mid) * unit))
      lo = mid;
    else
      hi = mid - 1;
  }
  if (lo == 0) return Rational(0);
  Rational mu = Rational(lo) * unit;
  mu.canonicalize();
  return mu;
}

std::vector<Polynomial> rows_to_polys(const RationalMatrix& m, const HalfBasis& basis) {
  if (m.dim() != basis.size()) throw DimensionError("rows_to_polys: basis size mismatch");
  const std::size_t nvars = basis.size() ? basis.points[0].size() : 0;
  std::vector<Polynomial> out;
  out.reserve(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Polynomial s(nvars);
    for (std::size_t j = 0; j < m.dim(); ++j) s.add_term(basis.points[j], m(i, j));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace exactsos
