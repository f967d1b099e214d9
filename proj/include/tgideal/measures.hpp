#pragma once

#include <optional>
#include <vector>

#include "tgideal/coarsening.hpp"
#include "tgideal/dense.hpp"
#include "tgideal/matrix.hpp"

namespace tgideal {

/// A relaxation operator M bound to a system matrix A. Caches the symmetric
/// part M_s = (M + M^T)/2, the A-convergence flag (equivalent to
/// M + M^T - A being SPD) and, when A-convergent, the symmetrized smoother
/// M~ = M^T (M + M^T - A)^{-1} M. All caches are computed at construction so
/// values can be shared freely across threads.
class Smoother {
public:
    Smoother(DenseMatrix m, const SpdMatrix& a);

    const DenseMatrix& matrix() const noexcept { return m_; }
    const DenseMatrix& symmetric_part() const noexcept { return m_s_; }
    bool a_convergent() const noexcept { return m_tilde_.has_value(); }

    /// Throws SmootherNotAConvergentError when M + M^T - A is not SPD.
    const SpdMatrix& m_tilde() const;

    Vector apply_inverse(const Vector& r, bool transpose = false) const;
    DenseMatrix apply_inverse(const DenseMatrix& r, bool transpose = false) const;

    std::size_t order() const noexcept { return m_.rows(); }

private:
    DenseMatrix m_;
    LuFactor lu_;
    DenseMatrix m_s_;
    std::optional<SpdMatrix> m_tilde_;
};

/// Quality measure mu_X(Q, e) = (X (I-Q) e, (I-Q) e) / (A e, e).
double mu_x(const SpdMatrix& a, const SpdMatrix& x, const DenseMatrix& q, const Vector& e);

/// The reduced operators of the classification theory:
///   A_X = (S^T X S)^{-1/2} S^T A S (S^T X S)^{-1/2}
///   B_X = (S^T X S)^{-1/2} (S^T A S - S^T A P (P^T A P)^{-1} P^T A S) (S^T X S)^{-1/2}
///   B   = A - A P (P^T A P)^{-1} P^T A
struct AxBx {
    SpdMatrix a_x;
    DenseMatrix b_x;
    DenseMatrix b;
};
AxBx build_ax_bx(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d,
                 const Prolongation& p);

/// Optimal worst-case measure mu_X^* = 1 / lambda_min((S^T X S)^{-1} S^T A S).
double mu_star(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d);

/// max_e mu_X(PR, e) = 1 / lambda_min(B_X) for a concrete interpolation.
double worst_case_mu(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d,
                     const Prolongation& p);

/// K = sup_e mu_M~(Q, e), as lambda_max of the pencil ((I-Q)^T M~ (I-Q), A).
double k_measure(const SpdMatrix& a, const Smoother& m, const DenseMatrix& q);

/// K_TG = sup_e ||(I - Pi_M~) e||_M~^2 / ||e||_A^2; satisfies
/// ||E_TG||_A = 1 - 1/K_TG.
double k_tg(const SpdMatrix& a, const Smoother& m, const DenseMatrix& p);
double k_tg(const SpdMatrix& a, const Smoother& m, const Prolongation& p);

/// M~-orthogonal projection Pi_M~ = P (P^T M~ P)^{-1} P^T M~.
DenseMatrix pi_m_tilde(const DenseMatrix& p, const SpdMatrix& m_tilde);
DenseMatrix pi_m_tilde(const Prolongation& p, const SpdMatrix& m_tilde);

/// P# = M~^{-1} R^T (R M~^{-1} R^T)^{-1}, the interpolation with angle zero.
Prolongation p_sharp(const SpdMatrix& m_tilde, const Decomposition& d);

/// Principal angles between Null(P^T M~^{1/2}) and Null(R M~^{-1/2}).
/// The smallest angle matches the two-dimensional picture; "P = P#" is
/// detected by the largest angle being zero, so both are reported.
struct AngleReport {
    double min_angle = 0.0;
    double max_angle = 0.0;
    std::vector<double> all;
};
AngleReport theta_angle(const Prolongation& p, const SpdMatrix& m_tilde);

/// Delta = sigma_max(M_s^{-1/2} M M_s^{-1/2}) >= 1 and
/// omega = lambda_max(M_s^{-1} A); 0 < omega < 2 for A-convergent smoothers.
struct SmootherConstants {
    double delta = 1.0;
    double omega = 0.0;
};
SmootherConstants smoother_constants(const SpdMatrix& a, const Smoother& m);

/// Spectral equivalence constants of the pencil (M~, X):
/// c1 e^T X e <= e^T M~ e <= c2 e^T X e.
struct SpectralEquiv {
    double c1 = 0.0;
    double c2 = 0.0;
};
SpectralEquiv spectral_equiv_constants(const SpdMatrix& x, const SpdMatrix& m_tilde);

/// Aggregated scalar quantities for reporting. Optional fields are present
/// only when a smoother was supplied and is A-convergent.
struct MeasureReport {
    double mu_star = 0.0;
    double worst_case = 0.0;
    double lambda_min_ax = 0.0;
    double lambda_min_bx = 0.0;
    std::optional<double> k;
    std::optional<double> k_tg;
    std::optional<double> e_tg_a_norm;
    std::optional<double> theta_min;
    std::optional<double> theta_max;
    std::optional<double> delta;
    std::optional<double> omega;

    /// Cross-checks the internal identities (worst_case >= mu_star,
    /// K >= K_TG >= 1, ||E_TG||_A = 1 - 1/K_TG). Throws
    /// InternalInconsistencyError when violated.
    void validate() const;
};

}  // namespace tgideal
