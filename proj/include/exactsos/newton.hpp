#pragma once

#include <vector>

#include "exactsos/polynomial.hpp"

namespace exactsos {

/// Convex hull of a finite exponent set, kept as its extreme points.
struct Polytope {
  std::size_t n = 0;
  std::vector<ExponentVector> vertices;
};

/// Lattice points alpha with 2 alpha in a Newton polytope; grlex sorted,
/// duplicate free. Indexes the rows and columns of a Gram matrix.
struct HalfBasis {
  std::vector<ExponentVector> points;

  std::size_t size() const { return points.size(); }
  /// Position of alpha in points, or size() when absent.
  std::size_t index_of(const ExponentVector& alpha) const;
};

/// Extreme points of conv(spt f). Throws Error for the zero polynomial.
Polytope newton_polytope(const Polynomial& f);

/// True iff point (or 2*point when scaled_by_two) lies in conv(P.vertices).
/// Decided by an exact Phase-I simplex.
bool contains(const Polytope& p, const ExponentVector& point, bool scaled_by_two = false);

/// {alpha in N^n : 2 alpha in P}.
HalfBasis half_lattice_points(const Polytope& p);

/// Dense basis N^n_k, used where no Newton polytope reduction applies.
HalfBasis full_basis(std::size_t n, std::uint32_t k);

}  // namespace exactsos
