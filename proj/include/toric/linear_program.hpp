#pragma once

#include <vector>

#include "toric/rational_matrix.hpp"

namespace toric {

/// Exact feasibility of { x >= 0 : A x = b } by the phase-one simplex
/// method with Bland's rule. Returns a feasible point when one exists.
std::optional<std::vector<Rational>> nonnegative_solution(const RatMatrix& a, const std::vector<Rational>& b);

}  // namespace toric
