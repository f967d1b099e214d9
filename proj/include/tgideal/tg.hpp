#pragma once

#include <cstddef>
#include <vector>

#include "tgideal/dense.hpp"
#include "tgideal/matrix.hpp"
#include "tgideal/measures.hpp"

namespace tgideal {

/// Immutable bundle for the symmetrized two-grid iteration: the system
/// matrix, the smoother and the interpolation, with the Galerkin coarse
/// operator A_c = P^T A P factored once at construction. Concurrent solves
/// against one setup are safe.
class TgSetup {
public:
    TgSetup(SpdMatrix a, Smoother m, DenseMatrix p);
    TgSetup(SpdMatrix a, Smoother m, const Prolongation& p);

    const SpdMatrix& a() const noexcept { return a_; }
    const Smoother& smoother() const noexcept { return m_; }
    const DenseMatrix& p() const noexcept { return p_; }
    const SpdMatrix& coarse_matrix() const noexcept { return a_c_; }
    std::size_t n() const noexcept { return a_.order(); }

private:
    SpdMatrix a_;
    Smoother m_;
    DenseMatrix p_;
    SpdMatrix a_c_;
};

/// Convergence history of a two-grid solve. residual_norms holds the
/// Euclidean residual of every iterate including the initial guess, so its
/// length is iterations + 1. converged is false when the iteration cap was
/// reached first.
struct SolveTrace {
    std::size_t iterations = 0;
    std::vector<double> residual_norms;
    Vector final_u;
    bool converged = false;
};

/// How the solve stopping threshold is scaled: against the initial residual
/// norm (reduction * ||f - A u0||) or as an absolute bound (reduction alone).
enum class StopRule { relative, absolute };

/// One relaxation sweep u + M^{-1}(f - A u); the transpose flag applies
/// M^{-T} instead (postsmoothing).
Vector smoother_step(const Smoother& m, const SpdMatrix& a, const Vector& u, const Vector& f,
                     bool transpose = false);

/// One full pass of presmoothing, restriction, exact coarse correction,
/// prolongation and transposed postsmoothing.
Vector tg_cycle(const TgSetup& setup, Vector u, const Vector& f);

/// Iteration matrix E_TG = (I - M^{-T} A)(I - P A_c^{-1} P^T A)(I - M^{-1} A).
DenseMatrix build_e_tg(const TgSetup& setup);

/// Run tg_cycle until the Euclidean residual falls below the threshold or
/// max_iters is reached; the trace is returned either way.
SolveTrace solve(const TgSetup& setup, const Vector& f, const Vector& u0, double reduction,
                 std::size_t max_iters, StopRule rule = StopRule::relative);

/// Both sides of the relaxation identity
/// ||(I - M^{-1}A) e||_A^2 = (A e, e) - ((M + M^T - A) M^{-1} A e, M^{-1} A e),
/// evaluated independently.
struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};
IdentityCheck smoother_identity_check(const SpdMatrix& a, const Smoother& m, const Vector& e);

}  // namespace tgideal
