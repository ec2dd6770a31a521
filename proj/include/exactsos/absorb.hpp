#pragma once

#include <map>
#include <vector>

#include "exactsos/newton.hpp"
#include "exactsos/polynomial.hpp"

namespace exactsos {

/// Remaining perturbation budget eps_alpha per half-basis point. Entries may be
/// negative after a failed round; that is what budget_ok reports.
using Budget = std::map<ExponentVector, Rational, GrlexOrder>;

/// Weighted squares collected so far: sum weights[i] * polys[i]^2.
struct CertAccumulator {
  std::vector<Rational> weights;
  std::vector<Polynomial> polys;

  void append(Rational w, Polynomial s) {
    weights.push_back(std::move(w));
    polys.push_back(std::move(s));
  }
  std::size_t size() const { return weights.size(); }
};

/// eps_alpha := eps for every alpha in the basis.
Budget uniform_budget(const HalfBasis& basis, const Rational& eps);

/// Coefficients of u that cannot be written as X^(alpha+beta) over the basis.
class UncoverableExponent : public Error {
 public:
  using Error::Error;
};

/// Rewrites eps*t + u, t = sum X^(2 alpha), as new weighted squares plus
/// sum eps_alpha X^(2 alpha). Even exponents gamma with gamma/2 in the basis go
/// straight into the budget; every other gamma is split as alpha + beta with
/// alpha the first basis point (grlex) for which gamma - alpha is a different
/// basis point, and |u_gamma|/2 (X^alpha + sgn(u_gamma) X^beta)^2 is appended.
void absorb(const Polynomial& u, const HalfBasis& basis, Budget& budget, CertAccumulator& acc);

/// min eps_alpha >= 0 (true for an empty budget).
bool budget_ok(const Budget& budget);

}  // namespace exactsos
