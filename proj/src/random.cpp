#include "tgideal/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tgideal/errors.hpp"
#include "tgideal/ideal.hpp"

namespace tgideal::rnd {

DenseMatrix gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> dist;
    DenseMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = dist(rng);
    return m;
}

Vector gaussian_vector(Rng& rng, std::size_t n) {
    std::normal_distribution<double> dist;
    Vector v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

SpdMatrix spd(Rng& rng, std::size_t n, double cond) {
    const DenseMatrix g = symmetrized(gaussian(rng, n, n));
    const EigenDecomposition eig = sym_eig(g);
    std::uniform_real_distribution<double> expo(0.0, std::log(std::max(cond, 1.0)));
    Vector lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = std::exp(expo(rng));
    // Pin the extremes so the condition number is exactly cond.
    if (n >= 2) {
        lam[0] = 1.0;
        lam[1] = std::max(cond, 1.0);
    }
    const DenseMatrix a =
        eig.vectors * DenseMatrix::diagonal(lam) * eig.vectors.transposed();
    return SpdMatrix(symmetrized(a));
}

Decomposition splitting(Rng& rng, std::size_t n, std::size_t n_c) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(n_c);
    return Decomposition::cf_splitting(n, idx);
}

Decomposition splitting(Rng& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> pick(1, n - 1);
    return splitting(rng, n, pick(rng));
}

Prolongation valid_p(Rng& rng, const SpdMatrix& a, const Decomposition& d) {
    return general_p(a, d, gaussian(rng, d.n(), d.n_coarse()));
}

Prolongation perturbed_ideal_p(Rng& rng, const SpdMatrix& a, const Decomposition& d,
                               double scale) {
    const Prolongation ideal = ideal_p0_direct(a, d);
    const DenseMatrix z = gaussian(rng, d.n_s(), d.n_coarse());
    return Prolongation(ideal.matrix() + scale * (d.s() * z), d);
}

Smoother a_convergent_smoother(Rng& rng, const SpdMatrix& a) {
    const std::size_t n = a.order();
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        DenseMatrix m(n, n);
        switch (kind(rng)) {
            case 0: {  // weighted Jacobi
                const double weight = 0.5 + 0.45 * unit(rng);
                for (std::size_t i = 0; i < n; ++i) m(i, i) = a.matrix()(i, i) / weight;
                break;
            }
            case 1: {  // Gauss-Seidel: M + M^T - A = diag(A), always SPD
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t i = j; i < n; ++i) m(i, j) = a.matrix()(i, j);
                break;
            }
            default: {  // nonsymmetric splitting A/2 + beta I + antisymmetric
                const EigenDecomposition eig = sym_eig(a.matrix());
                const double beta = (0.1 + 0.9 * unit(rng)) * eig.values.back();
                DenseMatrix g = gaussian(rng, n, n);
                const DenseMatrix skew = 0.5 * (g - g.transposed());
                m = 0.5 * a.matrix() + (0.2 * beta) * skew;
                for (std::size_t i = 0; i < n; ++i) m(i, i) += beta;
                break;
            }
        }
        Smoother s(std::move(m), a);
        if (s.a_convergent()) return s;
    }
    throw InternalInconsistencyError("a_convergent_smoother: failed to draw a smoother");
}

}  // namespace tgideal::rnd
