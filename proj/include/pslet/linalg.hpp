#pragma once

#include <optional>
#include <vector>

#include "pslet/real.hpp"

namespace pslet {

using Matrix = std::vector<std::vector<real>>;

// Gaussian elimination with full pivoting for the small dense systems the
// expansion produces (tens of unknowns at most). A may have more rows than
// columns; the extra rows are not consumed here, callers check them through
// the returned solution's residual. Returns nullopt when some pivot falls
// below rel_tol times the largest initial entry (rank deficiency).
std::optional<std::vector<real>> solve_least_pivot(Matrix A, std::vector<real> b,
                                                   const real& rel_tol);

// max_i |A x - b|_i for diagnostics
real linear_residual(const Matrix& A, const std::vector<real>& x, const std::vector<real>& b);

}  // namespace pslet
