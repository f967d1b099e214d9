#pragma once

#include <cstddef>
#include <vector>

#include "tgideal/dense.hpp"
#include "tgideal/matrix.hpp"

namespace tgideal {

/// The (R, S) pair of a two-grid decomposition: R maps fine to coarse,
/// S embeds the n_s = n - n_c complementary degrees of freedom, RS = 0,
/// S has full column rank and (S R^T) is nonsingular. Immutable after
/// construction.
class Decomposition {
public:
    Decomposition(DenseMatrix r, DenseMatrix s);

    /// Classical C/F splitting: R selects the coarse rows, S embeds the
    /// fine (complement) coordinates. Indices are 0-based.
    static Decomposition cf_splitting(std::size_t n, std::vector<std::size_t> coarse_indices);

    std::size_t n() const noexcept { return s_.rows(); }
    std::size_t n_coarse() const noexcept { return r_.rows(); }
    std::size_t n_s() const noexcept { return s_.cols(); }

    const DenseMatrix& r() const noexcept { return r_; }
    const DenseMatrix& s() const noexcept { return s_; }

private:
    DenseMatrix r_;  // n_c x n
    DenseMatrix s_;  // n x n_s
};

/// A full-column-rank n x n_c interpolation P paired with the decomposition
/// it satisfies RP = I against.
class Prolongation {
public:
    Prolongation(DenseMatrix p, Decomposition d);

    const DenseMatrix& matrix() const noexcept { return p_; }
    const Decomposition& decomposition() const noexcept { return decomp_; }

    /// Q = P R, the coarse-space projection.
    DenseMatrix coarse_projector() const { return p_ * decomp_.r(); }

private:
    DenseMatrix p_;
    Decomposition decomp_;
};

/// Inverse of the n x n matrix (S P), assembled from the block expression
/// [(S^T A S)^{-1} S^T A (I - Q); R].
DenseMatrix block_inverse_sp(const SpdMatrix& a, const Decomposition& d, const Prolongation& p);

/// Inverse of (S R^T): [(S^T A S)^{-1} S^T A (I - R^T (R R^T)^{-1} R); (R R^T)^{-1} R].
DenseMatrix block_inverse_sr(const SpdMatrix& a, const Decomposition& d);

/// General parameterization of all interpolations with RP = I:
/// P = R^T (R R^T)^{-1} + S (S^T A S)^{-1} S^T A Y.
Prolongation general_p(const SpdMatrix& a, const Decomposition& d, const DenseMatrix& y);

/// Shared validation: throws ConditionCViolatedError unless a, d (and p, when
/// given) have consistent orders and RP = I holds.
void require_condition_c(const SpdMatrix& a, const Decomposition& d);
void require_condition_c(const SpdMatrix& a, const Decomposition& d, const DenseMatrix& p);

}  // namespace tgideal
