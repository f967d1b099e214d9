#pragma once

#include <cmath>

#include "tgideal/coarsening.hpp"
#include "tgideal/dense.hpp"
#include "tgideal/ideal.hpp"
#include "tgideal/matrix.hpp"

namespace tgideal::testing {

/// The worked 3x3 instance used throughout the test suite:
/// A with eigenvalues {1, 1, 4}, X = diag(A), coarse point = last variable,
/// P = R^T = e3 and the unique zero-residual ideal P* = (-1/3, 1/3, 1)^T.
struct Example21 {
    SpdMatrix a;
    SpdMatrix x;
    Decomposition d;
    Prolongation p;
    Prolongation p_star;

    Example21()
        : a(DenseMatrix::from_rows({{2, -1, 1}, {-1, 2, -1}, {1, -1, 2}})),
          x(DenseMatrix::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})),
          d(Decomposition::cf_splitting(3, {2})),
          p(DenseMatrix::column({0, 0, 1}), d),
          p_star(ideal_p0_direct(a, d)) {}
};

inline double rel_diff(const DenseMatrix& a, const DenseMatrix& b) {
    const double scale = std::max(frobenius_norm(a), 1e-300);
    return frobenius_norm(a - b) / scale;
}

inline bool approx_eq(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace tgideal::testing
