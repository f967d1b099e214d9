#include "tgideal/tg.hpp"

#include <cmath>
#include <utility>

#include "tgideal/errors.hpp"

namespace tgideal {

namespace {

SpdMatrix galerkin_coarse(const SpdMatrix& a, const DenseMatrix& p) {
    if (p.rows() != a.order() || p.cols() == 0 || p.cols() > p.rows()) {
        throw DimensionMismatchError("tg setup: P must be n x n_c with 1 <= n_c <= n");
    }
    try {
        return SpdMatrix(symmetrized(p.transposed() * a.matrix() * p));
    } catch (const NotSpdError& e) {
        throw ConditionCViolatedError(std::string("tg setup: P^T A P not SPD: ") + e.what());
    }
}

}  // namespace

TgSetup::TgSetup(SpdMatrix a, Smoother m, DenseMatrix p)
    : a_(std::move(a)), m_(std::move(m)), p_(std::move(p)), a_c_(galerkin_coarse(a_, p_)) {
    if (m_.order() != a_.order()) {
        throw DimensionMismatchError("tg setup: smoother order differs from A");
    }
}

TgSetup::TgSetup(SpdMatrix a, Smoother m, const Prolongation& p)
    : TgSetup(std::move(a), std::move(m), p.matrix()) {}

Vector smoother_step(const Smoother& m, const SpdMatrix& a, const Vector& u, const Vector& f,
                     bool transpose) {
    if (u.size() != a.order() || f.size() != a.order() || m.order() != a.order()) {
        throw DimensionMismatchError("smoother_step: dimensions disagree");
    }
    const Vector r = sub(f, a.matrix() * u);
    return add(u, m.apply_inverse(r, transpose));
}

Vector tg_cycle(const TgSetup& setup, Vector u, const Vector& f) {
    const SpdMatrix& a = setup.a();
    const DenseMatrix& p = setup.p();
    u = smoother_step(setup.smoother(), a, u, f);                 // presmoothing
    Vector rc = p.transposed() * sub(f, a.matrix() * u);          // restriction
    Vector ec = setup.coarse_matrix().solve(rc);                  // exact coarse solve
    u = add(u, p * ec);                                           // prolongation
    return smoother_step(setup.smoother(), a, u, f, true);        // postsmoothing, M^T
}

DenseMatrix build_e_tg(const TgSetup& setup) {
    const std::size_t n = setup.n();
    const DenseMatrix eye = DenseMatrix::identity(n);
    const DenseMatrix& am = setup.a().matrix();
    const DenseMatrix& p = setup.p();
    const DenseMatrix pre = eye - setup.smoother().apply_inverse(am);
    const DenseMatrix post = eye - setup.smoother().apply_inverse(am, true);
    const DenseMatrix cgc = eye - p * setup.coarse_matrix().solve(p.transposed() * am);
    return post * cgc * pre;
}

SolveTrace solve(const TgSetup& setup, const Vector& f, const Vector& u0, double reduction,
                 std::size_t max_iters, StopRule rule) {
    if (!(reduction > 0.0) || (rule == StopRule::relative && reduction >= 1.0)) {
        throw InvalidArgumentError("solve: reduction must lie in (0, 1)");
    }
    if (max_iters == 0) throw InvalidArgumentError("solve: max_iters must be at least 1");
    if (f.size() != setup.n() || u0.size() != setup.n()) {
        throw DimensionMismatchError("solve: vector length differs from system order");
    }

    SolveTrace trace;
    trace.final_u = u0;
    double r0 = norm2(sub(f, setup.a().matrix() * trace.final_u));
    trace.residual_norms.push_back(r0);
    const double target = rule == StopRule::relative ? reduction * r0 : reduction;
    if (r0 <= target) {
        trace.converged = true;
        return trace;
    }
    for (std::size_t k = 1; k <= max_iters; ++k) {
        trace.final_u = tg_cycle(setup, std::move(trace.final_u), f);
        const double r = norm2(sub(f, setup.a().matrix() * trace.final_u));
        trace.residual_norms.push_back(r);
        trace.iterations = k;
        if (r <= target) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

IdentityCheck smoother_identity_check(const SpdMatrix& a, const Smoother& m, const Vector& e) {
    if (norm2(e) == 0.0) throw ZeroVectorError("smoother_identity_check: e must be nonzero");
    if (e.size() != a.order() || m.order() != a.order()) {
        throw DimensionMismatchError("smoother_identity_check: dimensions disagree");
    }
    IdentityCheck out;
    const Vector ae = a.matrix() * e;
    const Vector g = sub(e, m.apply_inverse(ae));  // (I - M^{-1} A) e
    out.lhs = dot(a.matrix() * g, g);
    const Vector w = m.apply_inverse(ae);          // M^{-1} A e
    const DenseMatrix sym = m.matrix() + m.matrix().transposed() - a.matrix();
    out.rhs = dot(ae, e) - dot(sym * w, w);
    return out;
}

}  // namespace tgideal
