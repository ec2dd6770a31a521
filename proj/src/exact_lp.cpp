#include "exact_lp.hpp"

namespace exactsos::detail {

bool lp_feasible(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
  const std::size_t rows = b.size();
  if (a.size() != rows) throw DimensionError("lp_feasible: row count mismatch");
  const std::size_t cols = rows ? a[0].size() : 0;
  if (rows == 0) return true;

  // Tableau columns: [structural | artificial | rhs]; one artificial per row.
  const std::size_t width = cols + rows + 1;
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(width));
  std::vector<std::size_t> basic(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != cols) throw DimensionError("lp_feasible: ragged matrix");
    int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = sign * a[i][j];
    t[i][cols + i] = 1;
    t[i][width - 1] = sign * b[i];
    basic[i] = cols + i;
  }
  // Reduced costs of the Phase-I objective sum(artificials), expressed in the
  // nonbasic columns: cost_j = -sum_i t[i][j].
  std::vector<Rational> cost(width);
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= cols && j < cols + rows) continue;
    for (std::size_t i = 0; i < rows; ++i) cost[j] -= t[i][j];
  }

  for (;;) {
    // Bland: lowest index with negative reduced cost enters.
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase-I objective is bounded below by zero, so a pivot row exists.
    if (leave == rows) break;

    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    Rational f = cost[enter];
    for (std::size_t j = 0; j < width; ++j)
      if (t[leave][j] != 0) cost[j] -= f * t[leave][j];
    basic[leave] = enter;
  }
  // Objective value = -cost[rhs].
  return cost[width - 1] == 0;
}

}  // namespace exactsos::detail
