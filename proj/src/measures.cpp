#include "tgideal/measures.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tgideal/errors.hpp"
#include "tgideal/tolerances.hpp"

namespace tgideal {

Smoother::Smoother(DenseMatrix m, const SpdMatrix& a) : m_(std::move(m)), lu_([&]() -> LuFactor {
    if (!m_.is_square() || m_.rows() != a.order()) {
        throw DimensionMismatchError("smoother: M must be square with the order of A");
    }
    try {
        return LuFactor(m_);
    } catch (const SingularMatrixError& e) {
        throw SingularSmootherError(e.what());
    }
}()) {
    m_s_ = symmetrized(m_);
    DenseMatrix w = m_ + m_.transposed() - a.matrix();
    try {
        SpdMatrix w_spd(symmetrized(w));
        // M~ = M^T (M + M^T - A)^{-1} M, SPD whenever the iteration is
        // A-convergent.
        DenseMatrix mt = m_.transposed() * w_spd.solve(m_);
        m_tilde_.emplace(symmetrized(mt));
    } catch (const NotSpdError&) {
        m_tilde_.reset();
    }
}

const SpdMatrix& Smoother::m_tilde() const {
    if (!m_tilde_) {
        throw SmootherNotAConvergentError("smoother: M + M^T - A is not SPD");
    }
    return *m_tilde_;
}

Vector Smoother::apply_inverse(const Vector& r, bool transpose) const {
    return lu_.solve(r, transpose);
}

DenseMatrix Smoother::apply_inverse(const DenseMatrix& r, bool transpose) const {
    return lu_.solve(r, transpose);
}

double mu_x(const SpdMatrix& a, const SpdMatrix& x, const DenseMatrix& q, const Vector& e) {
    if (norm2(e) == 0.0) throw ZeroVectorError("mu_x: e must be nonzero");
    if (q.rows() != a.order() || q.cols() != a.order() || e.size() != a.order() ||
        x.order() != a.order()) {
        throw DimensionMismatchError("mu_x: dimensions disagree");
    }
    const Vector r = sub(e, q * e);
    const double num = dot(x.matrix() * r, r);
    const double den = dot(a.matrix() * e, e);
    return num / den;
}

AxBx build_ax_bx(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d,
                 const Prolongation& p) {
    require_condition_c(a, d, p.matrix());
    if (x.order() != a.order()) throw DimensionMismatchError("build_ax_bx: X has wrong order");
    const DenseMatrix& s = d.s();
    const DenseMatrix& pm = p.matrix();

    const SpdMatrix sxs(s.transposed() * x.matrix() * s);
    const SpdMatrix w = inv_sqrt_spd(sxs);
    const DenseMatrix sas = symmetrized(s.transposed() * a.matrix() * s);

    const SpdMatrix pap(pm.transposed() * a.matrix() * pm);
    const DenseMatrix sap = s.transposed() * a.matrix() * pm;  // n_s x n_c
    const DenseMatrix corr = sap * pap.solve(sap.transposed());

    AxBx out{SpdMatrix(symmetrized(w.matrix() * sas * w.matrix())),
             symmetrized(w.matrix() * (sas - corr) * w.matrix()),
             symmetrized(a.matrix() - a.matrix() * pm * pap.solve(pm.transposed() * a.matrix()))};
    return out;
}

double mu_star(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d) {
    require_condition_c(a, d);
    if (x.order() != a.order()) throw DimensionMismatchError("mu_star: X has wrong order");
    const DenseMatrix& s = d.s();
    const SpdMatrix sxs(s.transposed() * x.matrix() * s);
    const DenseMatrix sas = symmetrized(s.transposed() * a.matrix() * s);
    const double lam = gen_eig_spd(sas, sxs).values.front();
    if (lam <= 0.0) {
        throw ConditionCViolatedError("mu_star: S^T A S is not positive definite");
    }
    return 1.0 / lam;
}

double worst_case_mu(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d,
                     const Prolongation& p) {
    const AxBx ops = build_ax_bx(a, x, d, p);
    const double lam = sym_eig(ops.b_x).values.front();
    if (lam <= 0.0) {
        throw ConditionCViolatedError("worst_case_mu: B_X is not positive definite");
    }
    return 1.0 / lam;
}

double k_measure(const SpdMatrix& a, const Smoother& m, const DenseMatrix& q) {
    const SpdMatrix& mt = m.m_tilde();
    if (q.rows() != a.order() || q.cols() != a.order()) {
        throw DimensionMismatchError("k_measure: Q must be n x n");
    }
    const DenseMatrix iq = DenseMatrix::identity(a.order()) - q;
    const DenseMatrix num = symmetrized(iq.transposed() * mt.matrix() * iq);
    return gen_eig_spd(num, a).values.back();
}

DenseMatrix pi_m_tilde(const DenseMatrix& p, const SpdMatrix& m_tilde) {
    if (p.rows() != m_tilde.order()) throw DimensionMismatchError("pi_m_tilde: size mismatch");
    const SpdMatrix g(symmetrized(p.transposed() * m_tilde.matrix() * p));
    return p * g.solve(p.transposed() * m_tilde.matrix());
}

DenseMatrix pi_m_tilde(const Prolongation& p, const SpdMatrix& m_tilde) {
    return pi_m_tilde(p.matrix(), m_tilde);
}

double k_tg(const SpdMatrix& a, const Smoother& m, const DenseMatrix& p) {
    const SpdMatrix& mt = m.m_tilde();
    const DenseMatrix pi = pi_m_tilde(p, mt);
    const DenseMatrix ipi = DenseMatrix::identity(a.order()) - pi;
    const DenseMatrix num = symmetrized(ipi.transposed() * mt.matrix() * ipi);
    const double lam = gen_eig_spd(num, a).values.back();
    // A square nonsingular P gives an exact coarse solve: the supremum
    // degenerates to 0 while the convergence identity pins K_TG = 1.
    return std::max(1.0, lam);
}

double k_tg(const SpdMatrix& a, const Smoother& m, const Prolongation& p) {
    return k_tg(a, m, p.matrix());
}

Prolongation p_sharp(const SpdMatrix& m_tilde, const Decomposition& d) {
    if (m_tilde.order() != d.n()) throw DimensionMismatchError("p_sharp: size mismatch");
    const DenseMatrix& r = d.r();
    const DenseMatrix z = m_tilde.solve(r.transposed());  // M~^{-1} R^T
    const SpdMatrix g(symmetrized(r * z));
    return Prolongation(g.solve(z.transposed()).transposed(), d);
}

AngleReport theta_angle(const Prolongation& p, const SpdMatrix& m_tilde) {
    if (m_tilde.order() != p.matrix().rows()) {
        throw DimensionMismatchError("theta_angle: size mismatch");
    }
    const SpdMatrix root = sqrt_spd(m_tilde);
    const SpdMatrix inv_root = inv_sqrt_spd(m_tilde);
    const SubspaceBasis n1 = null_space(p.matrix().transposed() * root.matrix());
    const SubspaceBasis n2 = null_space(p.decomposition().r() * inv_root.matrix());
    AngleReport rep;
    rep.all = principal_angles(n1, n2);
    rep.min_angle = rep.all.front();
    rep.max_angle = rep.all.back();
    return rep;
}

SmootherConstants smoother_constants(const SpdMatrix& a, const Smoother& m) {
    SpdMatrix ms = [&]() {
        try {
            return SpdMatrix(m.symmetric_part());
        } catch (const NotSpdError& e) {
            throw MsNotSpdError(std::string("smoother_constants: ") + e.what());
        }
    }();
    const SpdMatrix w = inv_sqrt_spd(ms);
    SmootherConstants out;
    out.delta = spectral_norm(w.matrix() * m.matrix() * w.matrix());
    out.omega = gen_eig_spd(a.matrix(), ms).values.back();
    if (m.a_convergent() && (out.omega <= 0.0 || out.omega >= 2.0)) {
        throw InternalInconsistencyError(
            "smoother_constants: omega = " + std::to_string(out.omega) +
            " outside (0, 2) for an A-convergent smoother");
    }
    return out;
}

SpectralEquiv spectral_equiv_constants(const SpdMatrix& x, const SpdMatrix& m_tilde) {
    if (x.order() != m_tilde.order()) {
        throw DimensionMismatchError("spectral_equiv_constants: order mismatch");
    }
    const EigenDecomposition eig = gen_eig_spd(m_tilde.matrix(), x);
    return {eig.values.front(), eig.values.back()};
}

void MeasureReport::validate() const {
    if (worst_case < mu_star * (1.0 - 1e-10)) {
        throw InternalInconsistencyError("measure report: worst_case < mu_star");
    }
    if (lambda_min_bx > lambda_min_ax * (1.0 + 1e-10)) {
        throw InternalInconsistencyError("measure report: lambda_min(B_X) > lambda_min(A_X)");
    }
    if (k && k_tg) {
        if (*k_tg < 1.0 || *k < *k_tg * (1.0 - 1e-10)) {
            throw InternalInconsistencyError("measure report: K >= K_TG >= 1 violated");
        }
    }
    if (k_tg && e_tg_a_norm) {
        const double expected = 1.0 - 1.0 / *k_tg;
        if (std::abs(*e_tg_a_norm - expected) > 1e-8 * std::max(1.0, expected)) {
            throw InternalInconsistencyError(
                "measure report: ||E_TG||_A differs from 1 - 1/K_TG");
        }
    }
}

}  // namespace tgideal
