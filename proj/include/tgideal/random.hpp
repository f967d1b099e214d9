#pragma once

#include <cstdint>
#include <random>

#include "tgideal/coarsening.hpp"
#include "tgideal/dense.hpp"
#include "tgideal/measures.hpp"

namespace tgideal::rnd {

using Rng = std::mt19937_64;

DenseMatrix gaussian(Rng& rng, std::size_t rows, std::size_t cols);
Vector gaussian_vector(Rng& rng, std::size_t n);

/// Random SPD matrix with eigenvalues log-uniform in [1, cond], assembled
/// from a random orthogonal eigenbasis.
SpdMatrix spd(Rng& rng, std::size_t n, double cond = 100.0);

/// Random C/F splitting with 1 <= n_c <= n - 1 coarse points.
Decomposition splitting(Rng& rng, std::size_t n);
Decomposition splitting(Rng& rng, std::size_t n, std::size_t n_c);

/// Random interpolation with RP = I (general parameterization, random Y).
Prolongation valid_p(Rng& rng, const SpdMatrix& a, const Decomposition& d);

/// Ideal interpolation perturbed inside the RP = I manifold:
/// P* + scale * S Z with Gaussian Z.
Prolongation perturbed_ideal_p(Rng& rng, const SpdMatrix& a, const Decomposition& d,
                               double scale);

/// Random A-convergent smoother; cycles through weighted Jacobi,
/// Gauss-Seidel and a nonsymmetric splitting until the A-convergence flag
/// holds.
Smoother a_convergent_smoother(Rng& rng, const SpdMatrix& a);

}  // namespace tgideal::rnd
