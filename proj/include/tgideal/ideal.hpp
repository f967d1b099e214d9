#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "tgideal/coarsening.hpp"
#include "tgideal/dense.hpp"
#include "tgideal/measures.hpp"

namespace tgideal {

/// Membership of an interpolation in the nested characterization sets,
/// together with the spectral quantities that justify the verdicts.
/// The implications in_p0 => in_p2, in_p2 <=> in_pstar and
/// in_pstar => in_p1 are enforced; a disagreement between the eigenspace
/// intersection test and the lambda_min equality raises
/// InternalInconsistencyError.
struct ClassificationReport {
    bool in_p0 = false;
    bool in_p1 = false;
    bool in_p2 = false;
    bool in_pstar = false;
    double lambda_min_ax = 0.0;
    double lambda_min_bx = 0.0;
    std::size_t ax_eigenspace_dim = 0;
    std::size_t bx_eigenspace_dim = 0;
    std::size_t nullspace_dim = 0;
    std::size_t p1_intersection_dim = 0;
    std::size_t p2_intersection_dim = 0;
    double tol = 0.0;
    double rank_tol = 0.0;
};

ClassificationReport classify(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d,
                              const Prolongation& p, double tol = tol::kMembership);

/// The unique interpolation with P^T A S = 0: P* = A^{-1} R^T (R A^{-1} R^T)^{-1}.
Prolongation ideal_p0_direct(const SpdMatrix& a, const Decomposition& d);

/// Same interpolation through the S-based expression
/// P* = (I - S (S^T A S)^{-1} S^T A) R^T (R R^T)^{-1}.
Prolongation ideal_p0_via_s(const SpdMatrix& a, const Decomposition& d);

/// Sufficient condition for P = R^T to be ideal: R A S not of full column
/// rank and S^T X S proportional to the reduced Schur complement
/// S^T A S - S^T A R^T (R A R^T)^{-1} R A S. The scalar alpha is recovered by
/// a least-squares fit and reported when the proportionality holds.
struct RtIdealCheck {
    bool condition_holds = false;
    bool rank_condition = false;
    bool proportionality = false;
    std::optional<double> alpha;
    double proportionality_residual = 0.0;
};
RtIdealCheck check_rt_ideal(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d);

/// The four block smoothers built from the Schur complement
/// A_ff - A_fc A_cc^{-1} A_cf of a 2x2 partition with the coarse variables
/// last (n_s fine rows first, n_c coarse rows after). Requires n_s > n_c.
std::array<Smoother, 4> schur_smoothers(const SpdMatrix& a, std::size_t n_c,
                                        const std::array<double, 4>& alphas);

/// M = (1/2 + eps) D + (1 + 2 eps) L for A = D + L + L^T. Satisfies
/// M + M^T - A = 2 eps A exactly, so the smoother is always A-convergent and
/// S^T X S = (1/2 + eps) S^T A S for X = (M + M^T)/2 and every S.
Smoother epsilon_smoother(const SpdMatrix& a, double eps);

/// Three independent tests of P^T A S = 0: the residual itself, the operator
/// identity R = (P^T A P)^{-1} P^T A, and the subspace equality
/// Range(A P) = Range(R^T). Returns their common verdict; a disagreement
/// raises InternalInconsistencyError.
bool range_equiv_p0(const SpdMatrix& a, const Decomposition& d, const Prolongation& p,
                    double tol = tol::kMembership);

/// Smallest singular values of A^{1/2} (I - P (P^T A P)^{-1} P^T A) S (S^T X S)^{-1/2}
/// and A^{1/2} S (S^T X S)^{-1/2}; their squares equal lambda_min(B_X) and
/// lambda_min(A_X).
struct SigmaMinForm {
    double sigma_with_p = 0.0;
    double sigma_without_p = 0.0;
};
SigmaMinForm sigma_min_form(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d,
                            const Prolongation& p);

}  // namespace tgideal
