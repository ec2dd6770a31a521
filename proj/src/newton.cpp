#include "exactsos/newton.hpp"

#include <algorithm>

#include "exact_lp.hpp"

namespace exactsos {

std::size_t HalfBasis::index_of(const ExponentVector& alpha) const {
  auto it = std::lower_bound(points.begin(), points.end(), alpha, GrlexOrder{});
  if (it != points.end() && *it == alpha) return static_cast<std::size_t>(it - points.begin());
  return points.size();
}

namespace {

// Is target a convex combination of pts?
bool in_hull(const std::vector<ExponentVector>& pts, const ExponentVector& target,
             std::uint32_t target_scale) {
  if (pts.empty()) return false;
  const std::size_t n = target.size();
  std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(pts.size()));
  std::vector<Rational> b(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) a[i][j] = pts[j][i];
    b[i] = Rational(target[i]) * target_scale;
  }
  for (std::size_t j = 0; j < pts.size(); ++j) a[n][j] = 1;
  b[n] = 1;
  return detail::lp_feasible(a, b);
}

}  // namespace

Polytope newton_polytope(const Polynomial& f) {
  if (f.is_zero()) throw Error("Newton polytope of the zero polynomial");
  Polytope p;
  p.n = f.nvars();
  auto support = f.support();
  for (std::size_t i = 0; i < support.size(); ++i) {
    std::vector<ExponentVector> others;
    others.reserve(support.size() - 1);
    for (std::size_t j = 0; j < support.size(); ++j)
      if (j != i) others.push_back(support[j]);
    if (!in_hull(others, support[i], 1)) p.vertices.push_back(support[i]);
  }
  return p;
}

bool contains(const Polytope& p, const ExponentVector& point, bool scaled_by_two) {
  if (point.size() != p.n) throw DimensionError("contains: dimension mismatch");
  return in_hull(p.vertices, point, scaled_by_two ? 2 : 1);
}

HalfBasis half_lattice_points(const Polytope& p) {
  HalfBasis basis;
  if (p.vertices.empty()) return basis;
  std::vector<std::uint32_t> upper(p.n, 0);
  for (const auto& v : p.vertices)
    for (std::size_t i = 0; i < p.n; ++i) upper[i] = std::max(upper[i], (v[i] + 1) / 2);

  ExponentVector cur(p.n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == p.n) {
      if (contains(p, cur, true)) basis.points.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= upper[i]; ++v) {
      cur[i] = v;
      self(self, i + 1);
    }
    cur[i] = 0;
  };
  rec(rec, 0);
  std::sort(basis.points.begin(), basis.points.end(), GrlexOrder{});
  return basis;
}

HalfBasis full_basis(std::size_t n, std::uint32_t k) {
  return HalfBasis{exponents_up_to_degree(n, k)};
}

}  // namespace exactsos
