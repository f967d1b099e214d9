#include "tgideal/ideal.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "tgideal/errors.hpp"

namespace tgideal {

namespace {

/// Columns of eig.vectors whose eigenvalue lies within cluster_tol *
/// lambda_max of lambda_min.
SubspaceBasis min_eigenspace(const EigenDecomposition& eig, double cluster_tol) {
    const std::size_t n = eig.values.size();
    const double lam_min = eig.values.front();
    const double lam_max = eig.values.back();
    const double width = cluster_tol * std::max(std::abs(lam_max), 1e-300);
    std::size_t count = 0;
    while (count < n && eig.values[count] - lam_min <= width) ++count;
    DenseMatrix basis(n, count);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = eig.vectors(i, j);
    return {n, std::move(basis)};
}

}  // namespace

ClassificationReport classify(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d,
                              const Prolongation& p, double tol) {
    const AxBx ops = build_ax_bx(a, x, d, p);
    const EigenDecomposition eig_ax = sym_eig(ops.a_x.matrix());
    const EigenDecomposition eig_bx = sym_eig(ops.b_x);

    ClassificationReport rep;
    rep.tol = tol;
    rep.rank_tol = tol::kRank;
    rep.lambda_min_ax = eig_ax.values.front();
    rep.lambda_min_bx = eig_bx.values.front();
    if (rep.lambda_min_bx <= 0.0) {
        throw ConditionCViolatedError("classify: B_X is not positive definite");
    }

    rep.in_pstar =
        std::abs(rep.lambda_min_bx - rep.lambda_min_ax) <= tol * rep.lambda_min_ax;

    const DenseMatrix& s = d.s();
    const DenseMatrix pas = p.matrix().transposed() * a.matrix() * s;
    rep.in_p0 = frobenius_norm(pas) <= tol * frobenius_norm(a.matrix());

    SubspaceBasis null_basis;
    if (rep.in_p0) {
        null_basis = {d.n_s(), DenseMatrix::identity(d.n_s())};
    } else {
        const SpdMatrix sxs(s.transposed() * x.matrix() * s);
        const SpdMatrix w = inv_sqrt_spd(sxs);
        null_basis = null_space(pas * w.matrix(), tol::kRank);
    }
    rep.nullspace_dim = null_basis.dim();

    const SubspaceBasis espace_ax = min_eigenspace(eig_ax, tol::kEigCluster);
    const SubspaceBasis espace_bx = min_eigenspace(eig_bx, tol::kEigCluster);
    rep.ax_eigenspace_dim = espace_ax.dim();
    rep.bx_eigenspace_dim = espace_bx.dim();

    rep.p1_intersection_dim = subspace_intersection_dim(null_basis, espace_ax, tol::kRank);
    rep.p2_intersection_dim = subspace_intersection_dim(null_basis, espace_bx, tol::kRank);
    rep.in_p1 = rep.p1_intersection_dim > 0;
    rep.in_p2 = rep.p2_intersection_dim > 0;

    if (rep.in_p2 != rep.in_pstar) {
        throw InternalInconsistencyError(
            "classify: eigenspace intersection test (in_p2 = " + std::to_string(rep.in_p2) +
            ") disagrees with the lambda_min equality (in_pstar = " +
            std::to_string(rep.in_pstar) + "); lambda_min(A_X) = " +
            std::to_string(rep.lambda_min_ax) + ", lambda_min(B_X) = " +
            std::to_string(rep.lambda_min_bx));
    }
    if (rep.in_pstar && !rep.in_p1) {
        throw InternalInconsistencyError(
            "classify: ideal interpolation missed the lambda_min(A_X) eigenspace");
    }
    return rep;
}

Prolongation ideal_p0_direct(const SpdMatrix& a, const Decomposition& d) {
    require_condition_c(a, d);
    const DenseMatrix z = a.solve(d.r().transposed());  // A^{-1} R^T
    const SpdMatrix g(symmetrized(d.r() * z));          // R A^{-1} R^T
    return Prolongation(g.solve(z.transposed()).transposed(), d);
}

Prolongation ideal_p0_via_s(const SpdMatrix& a, const Decomposition& d) {
    require_condition_c(a, d);
    const DenseMatrix& s = d.s();
    const DenseMatrix& r = d.r();
    const SpdMatrix sas(s.transposed() * a.matrix() * s);
    const SpdMatrix rrt(r * r.transposed());
    const DenseMatrix base = rrt.solve(r).transposed();  // R^T (R R^T)^{-1}
    const DenseMatrix p = base - s * sas.solve(s.transposed() * (a.matrix() * base));
    return Prolongation(p, d);
}

RtIdealCheck check_rt_ideal(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d) {
    require_condition_c(a, d);
    if (x.order() != a.order()) throw DimensionMismatchError("check_rt_ideal: X has wrong order");
    const DenseMatrix& r = d.r();
    const DenseMatrix& s = d.s();
    // P = R^T can only satisfy RP = I when the rows of R are orthonormal.
    if (max_abs(r * r.transposed() - DenseMatrix::identity(d.n_coarse())) > tol::kOrth) {
        throw ConditionCViolatedError("check_rt_ideal: R R^T != I, so P = R^T is inadmissible");
    }

    RtIdealCheck out;
    const DenseMatrix ras = r * a.matrix() * s;
    out.rank_condition = numerical_rank(ras) < d.n_s();

    const SpdMatrix rart(symmetrized(r * a.matrix() * r.transposed()));
    const DenseMatrix sas = symmetrized(s.transposed() * a.matrix() * s);
    const DenseMatrix schur = symmetrized(sas - ras.transposed() * rart.solve(ras));
    const DenseMatrix sxs = symmetrized(s.transposed() * x.matrix() * s);

    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < schur.entries().size(); ++k) {
        num += sxs.entries()[k] * schur.entries()[k];
        den += schur.entries()[k] * schur.entries()[k];
    }
    if (den > 0.0) {
        const double alpha = num / den;
        out.proportionality_residual =
            frobenius_norm(sxs - alpha * schur) / frobenius_norm(sxs);
        out.proportionality = alpha > 0.0 && out.proportionality_residual <= tol::kMembership;
        if (out.proportionality) out.alpha = alpha;
    }
    out.condition_holds = out.rank_condition && out.proportionality;
    return out;
}

std::array<Smoother, 4> schur_smoothers(const SpdMatrix& a, std::size_t n_c,
                                        const std::array<double, 4>& alphas) {
    const std::size_t n = a.order();
    if (n_c == 0 || n_c >= n) {
        throw PartitionInvalidError("schur_smoothers: need 1 <= n_c < n");
    }
    const std::size_t ns = n - n_c;
    if (ns <= n_c) {
        throw PartitionInvalidError("schur_smoothers: the construction needs n_s > n_c");
    }
    const DenseMatrix aff = a.matrix().block(0, 0, ns, ns);
    const DenseMatrix afc = a.matrix().block(0, ns, ns, n_c);
    const DenseMatrix acf = a.matrix().block(ns, 0, n_c, ns);
    const DenseMatrix acc = a.matrix().block(ns, ns, n_c, n_c);
    const SpdMatrix acc_spd = [&]() {
        try {
            return SpdMatrix(acc);
        } catch (const NotSpdError& e) {
            throw SingularAccError(std::string("schur_smoothers: A_cc not invertible: ") +
                                   e.what());
        }
    }();
    const DenseMatrix schur = symmetrized(aff - afc * acc_spd.solve(acf));
    DenseMatrix acc_diag(n_c, n_c);
    for (std::size_t i = 0; i < n_c; ++i) acc_diag(i, i) = acc(i, i);

    auto assemble = [&](double alpha, const DenseMatrix& lower_left,
                        const DenseMatrix& cc_block) {
        DenseMatrix m(n, n);
        for (std::size_t j = 0; j < ns; ++j)
            for (std::size_t i = 0; i < ns; ++i) m(i, j) = alpha * schur(i, j);
        for (std::size_t j = 0; j < ns; ++j)
            for (std::size_t i = 0; i < n_c; ++i) m(ns + i, j) = lower_left(i, j);
        for (std::size_t j = 0; j < n_c; ++j)
            for (std::size_t i = 0; i < n_c; ++i) m(ns + i, ns + j) = alpha * cc_block(i, j);
        return Smoother(std::move(m), a);
    };

    const DenseMatrix zero_cf(n_c, ns);
    return {assemble(alphas[0], zero_cf, acc_diag), assemble(alphas[1], zero_cf, acc),
            assemble(alphas[2], acf, acc_diag), assemble(alphas[3], acf, acc)};
}

Smoother epsilon_smoother(const SpdMatrix& a, double eps) {
    if (!(eps > 0.0)) throw NonPositiveEpsError("epsilon_smoother: eps must be positive");
    const std::size_t n = a.order();
    DenseMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        m(j, j) = (0.5 + eps) * a.matrix()(j, j);
        for (std::size_t i = j + 1; i < n; ++i) m(i, j) = (1.0 + 2.0 * eps) * a.matrix()(i, j);
    }
    return Smoother(std::move(m), a);
}

bool range_equiv_p0(const SpdMatrix& a, const Decomposition& d, const Prolongation& p,
                    double tol) {
    require_condition_c(a, d, p.matrix());
    const DenseMatrix& pm = p.matrix();
    const DenseMatrix& r = d.r();

    const DenseMatrix pas = pm.transposed() * a.matrix() * d.s();
    const bool direct = frobenius_norm(pas) <= tol * frobenius_norm(a.matrix());

    const SpdMatrix pap(symmetrized(pm.transposed() * a.matrix() * pm));
    const DenseMatrix r_hat = pap.solve(pm.transposed() * a.matrix());
    const bool operator_identity = frobenius_norm(r_hat - r) <= tol * frobenius_norm(r);

    const SubspaceBasis range_ap = range_space(a.matrix() * pm, tol::kRank);
    const SubspaceBasis range_rt = range_space(r.transposed(), tol::kRank);
    const bool subspace_equal =
        range_ap.dim() == d.n_coarse() && range_rt.dim() == d.n_coarse() &&
        subspace_intersection_dim(range_ap, range_rt, tol::kRank) == d.n_coarse();

    if (direct != operator_identity || direct != subspace_equal) {
        throw InternalInconsistencyError(
            "range_equiv_p0: the three equivalent tests disagree (residual " +
            std::to_string(direct) + ", operator " + std::to_string(operator_identity) +
            ", subspace " + std::to_string(subspace_equal) + ")");
    }
    return direct;
}

SigmaMinForm sigma_min_form(const SpdMatrix& a, const SpdMatrix& x, const Decomposition& d,
                            const Prolongation& p) {
    require_condition_c(a, d, p.matrix());
    if (x.order() != a.order()) throw DimensionMismatchError("sigma_min_form: X has wrong order");
    const DenseMatrix& s = d.s();
    const DenseMatrix& pm = p.matrix();
    const SpdMatrix root = sqrt_spd(a);
    const SpdMatrix sxs(s.transposed() * x.matrix() * s);
    const SpdMatrix w = inv_sqrt_spd(sxs);

    const DenseMatrix plain = root.matrix() * s * w.matrix();
    const SpdMatrix pap(symmetrized(pm.transposed() * a.matrix() * pm));
    const DenseMatrix proj =
        DenseMatrix::identity(d.n()) - pm * pap.solve(pm.transposed() * a.matrix());
    const DenseMatrix reduced = root.matrix() * proj * s * w.matrix();

    SigmaMinForm out;
    out.sigma_with_p = singular_values(reduced).front();
    out.sigma_without_p = singular_values(plain).front();
    return out;
}

}  // namespace tgideal
