#include "pslet/linalg.hpp"

#include <utility>

namespace pslet {

std::optional<std::vector<real>> solve_least_pivot(Matrix A, std::vector<real> b,
                                                   const real& rel_tol) {
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    if (cols == 0) return std::vector<real>{};

    std::vector<size_t> col_of(cols);  // col_of[k]: original column eliminated at step k
    for (size_t k = 0; k < cols; ++k) col_of[k] = k;

    real scale(0);
    for (const auto& row : A)
        for (const auto& v : row)
            if (abs(v) > scale) scale = abs(v);
    if (scale == 0) return std::nullopt;
    const real threshold = rel_tol * scale;

    for (size_t k = 0; k < cols; ++k) {
        size_t pr = k, pc = k;
        real best(-1);
        for (size_t i = k; i < rows; ++i)
            for (size_t j = k; j < cols; ++j)
                if (abs(A[i][j]) > best) { best = abs(A[i][j]); pr = i; pc = j; }
        if (best <= threshold) return std::nullopt;

        std::swap(A[k], A[pr]);
        std::swap(b[k], b[pr]);
        if (pc != k) {
            for (size_t i = 0; i < rows; ++i) std::swap(A[i][k], A[i][pc]);
            std::swap(col_of[k], col_of[pc]);
        }

        for (size_t i = k + 1; i < rows; ++i) {
            if (A[i][k] == 0) continue;
            real f = A[i][k] / A[k][k];
            A[i][k] = real(0);
            for (size_t j = k + 1; j < cols; ++j) A[i][j] -= f * A[k][j];
            b[i] -= f * b[k];
        }
    }

    std::vector<real> y(cols);
    for (size_t k = cols; k-- > 0;) {
        real acc = b[k];
        for (size_t j = k + 1; j < cols; ++j) acc -= A[k][j] * y[j];
        y[k] = acc / A[k][k];
    }

    std::vector<real> x(cols);
    for (size_t k = 0; k < cols; ++k) x[col_of[k]] = y[k];
    return x;
}

real linear_residual(const Matrix& A, const std::vector<real>& x, const std::vector<real>& b) {
    real worst(0);
    for (size_t i = 0; i < A.size(); ++i) {
        real acc = -b[i];
        for (size_t j = 0; j < x.size(); ++j) acc += A[i][j] * x[j];
        if (abs(acc) > worst) worst = abs(acc);
    }
    return worst;
}

}  // namespace pslet
