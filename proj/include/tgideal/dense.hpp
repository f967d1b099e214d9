#pragma once

#include <cstddef>
#include <vector>

#include "tgideal/errors.hpp"
#include "tgideal/matrix.hpp"
#include "tgideal/tolerances.hpp"

namespace tgideal {

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
/// Throws NotSpdError if a pivot falls below pivot_rel * max diagonal entry.
DenseMatrix cholesky(const DenseMatrix& a, double pivot_rel = tol::kPivotRel);

/// Square dense matrix certified symmetric positive definite at
/// construction: the symmetry defect must stay below tau_sym * max|a_ij| and
/// the Cholesky factorization must succeed. The stored matrix is the
/// symmetrized input; the factor is cached for solves.
class SpdMatrix {
public:
    explicit SpdMatrix(DenseMatrix a, double tau_sym = tol::kSym);

    const DenseMatrix& matrix() const noexcept { return mat_; }
    const DenseMatrix& cholesky_lower() const noexcept { return chol_; }
    double symmetry_defect() const noexcept { return defect_; }
    std::size_t order() const noexcept { return mat_.rows(); }

    Vector solve(const Vector& rhs) const;
    DenseMatrix solve(const DenseMatrix& rhs) const;

private:
    DenseMatrix mat_;
    DenseMatrix chol_;
    double defect_ = 0.0;
};

/// Full real spectral decomposition; values ascending, vectors orthonormal
/// columns (B-orthonormal for the generalized problem).
struct EigenDecomposition {
    Vector values;
    DenseMatrix vectors;
};

/// Cyclic Jacobi eigensolver for symmetric matrices (capped at 100 sweeps).
EigenDecomposition sym_eig(const DenseMatrix& a);

/// Generalized symmetric-definite eigenproblem a v = lambda b v, reduced via
/// the Cholesky factor of b. The matrix a only needs to be symmetric; the
/// returned vectors are b-orthonormal.
EigenDecomposition gen_eig_spd(const DenseMatrix& a, const SpdMatrix& b);

/// Orthonormal basis of a subspace of R^ambient; zero columns encode the
/// trivial subspace.
struct SubspaceBasis {
    std::size_t ambient = 0;
    DenseMatrix basis;

    std::size_t dim() const noexcept { return basis.cols(); }
};

/// Orthonormal basis of {v : ||m v|| <= tol * sigma_max(m) * ||v||}. A zero
/// matrix yields the full ambient basis.
SubspaceBasis null_space(const DenseMatrix& m, double tol = tol::kRank);

/// Orthonormal basis of the column space, singular values above
/// tol * sigma_max retained.
SubspaceBasis range_space(const DenseMatrix& m, double tol = tol::kRank);

std::size_t numerical_rank(const DenseMatrix& m, double tol = tol::kRank);

/// dim(u) + dim(v) - rank([u v]); decides whether two subspaces meet
/// nontrivially.
std::size_t subspace_intersection_dim(const SubspaceBasis& u, const SubspaceBasis& v,
                                      double tol = tol::kRank);

/// Principal angles between two nonempty subspaces, ascending, in [0, pi/2].
/// Small angles are computed through the sine route so that near-identical
/// subspaces report angles at roundoff level rather than sqrt(eps).
std::vector<double> principal_angles(const SubspaceBasis& u, const SubspaceBasis& v);

/// Singular values, ascending (via the Gram matrix of the smaller side).
Vector singular_values(const DenseMatrix& m);
double spectral_norm(const DenseMatrix& m);

/// Energy norm of an operator: sigma_max(A^{1/2} E A^{-1/2}).
double a_norm(const DenseMatrix& e, const SpdMatrix& a);

SpdMatrix sqrt_spd(const SpdMatrix& a);
SpdMatrix inv_sqrt_spd(const SpdMatrix& a);

/// LU factorization with partial pivoting for general nonsingular matrices.
class LuFactor {
public:
    explicit LuFactor(const DenseMatrix& m);

    Vector solve(const Vector& rhs, bool transpose = false) const;
    DenseMatrix solve(const DenseMatrix& rhs, bool transpose = false) const;
    std::size_t order() const noexcept { return lu_.rows(); }

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

DenseMatrix inverse(const DenseMatrix& m);

/// Triangular solves with the lower factor L: L X = B and L^T X = B.
DenseMatrix solve_lower(const DenseMatrix& l, DenseMatrix b);
DenseMatrix solve_lower_transposed(const DenseMatrix& l, DenseMatrix b);

}  // namespace tgideal
