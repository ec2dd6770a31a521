#pragma once

#include <vector>

#include "exactsos/rational.hpp"

namespace exactsos::detail {

/// Decides whether {x >= 0 : A x = b} is nonempty with a Phase-I simplex over
/// Q (dense tableau, Bland's rule, so it always terminates). `a` is row-major
/// with rows.size() == b.size().
bool lp_feasible(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b);

}  // namespace exactsos::detail
