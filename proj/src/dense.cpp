#include "tgideal/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace tgideal {

namespace {

void require_square(const DenseMatrix& m, const char* who) {
    if (!m.is_square()) {
        throw DimensionMismatchError(std::string(who) + ": matrix is " +
                                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_symmetric(const DenseMatrix& m, const char* who) {
    require_square(m, who);
    const double scale = max_abs(m);
    if (symmetry_defect(m) > tol::kSym * scale && scale > 0.0) {
        throw NotSymmetricError(std::string(who) + ": symmetry defect " +
                                std::to_string(symmetry_defect(m)) + " exceeds tolerance");
    }
}

}  // namespace

DenseMatrix cholesky(const DenseMatrix& a, double pivot_rel) {
    require_square(a, "cholesky");
    const std::size_t n = a.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
    if (n > 0 && max_diag <= 0.0) throw NotSpdError("cholesky: nonpositive diagonal");
    const double pivot_floor = pivot_rel * max_diag;

    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= pivot_floor) {
            throw NotSpdError("cholesky: pivot " + std::to_string(d) + " at index " +
                              std::to_string(j) + " is not positive");
        }
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

DenseMatrix solve_lower(const DenseMatrix& l, DenseMatrix b) {
    const std::size_t n = l.rows();
    if (b.rows() != n) throw DimensionMismatchError("solve_lower: size mismatch");
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = b(i, j);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b(k, j);
            b(i, j) = s / l(i, i);
        }
    }
    return b;
}

DenseMatrix solve_lower_transposed(const DenseMatrix& l, DenseMatrix b) {
    const std::size_t n = l.rows();
    if (b.rows() != n) throw DimensionMismatchError("solve_lower_transposed: size mismatch");
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t ii = n; ii-- > 0;) {
            double s = b(ii, j);
            for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * b(k, j);
            b(ii, j) = s / l(ii, ii);
        }
    }
    return b;
}

SpdMatrix::SpdMatrix(DenseMatrix a, double tau_sym) {
    require_square(a, "SpdMatrix");
    defect_ = tgideal::symmetry_defect(a);
    const double scale = max_abs(a);
    if (scale > 0.0 && defect_ > tau_sym * scale) {
        throw NotSymmetricError("SpdMatrix: symmetry defect " + std::to_string(defect_) +
                                " exceeds " + std::to_string(tau_sym * scale));
    }
    mat_ = symmetrized(a);
    chol_ = cholesky(mat_);
}

Vector SpdMatrix::solve(const Vector& rhs) const {
    DenseMatrix x = solve(DenseMatrix::column(rhs));
    return x.col(0);
}

DenseMatrix SpdMatrix::solve(const DenseMatrix& rhs) const {
    return solve_lower_transposed(chol_, solve_lower(chol_, rhs));
}

EigenDecomposition sym_eig(const DenseMatrix& a) {
    require_symmetric(a, "sym_eig");
    const std::size_t n = a.rows();
    DenseMatrix w = symmetrized(a);
    const DenseMatrix w0 = w;
    DenseMatrix v = DenseMatrix::identity(n);
    const double total = frobenius_norm(w);

    auto offdiag_norm = [&]() {
        double s = 0.0;
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t p = 0; p < q; ++p) s += 2.0 * w(p, q) * w(p, q);
        return std::sqrt(s);
    };

    const double stop = 1e-15 * total;
    constexpr int kMaxSweeps = 100;
    bool converged = total == 0.0;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (offdiag_norm() <= stop) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = w(p, q);
                if (apq == 0.0) continue;
                const double theta = 0.5 * (w(q, q) - w(p, p)) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double h = t * apq;
                w(p, p) -= h;
                w(q, q) += h;
                w(p, q) = 0.0;
                auto rotate = [&](double& x, double& y) {
                    const double g = x;
                    const double hh = y;
                    x = g - s * (hh + g * tau);
                    y = hh + s * (g - hh * tau);
                };
                for (std::size_t k = 0; k < p; ++k) rotate(w(k, p), w(k, q));
                for (std::size_t k = p + 1; k < q; ++k) rotate(w(p, k), w(k, q));
                for (std::size_t k = q + 1; k < n; ++k) rotate(w(p, k), w(q, k));
                for (std::size_t k = 0; k < n; ++k) rotate(v(k, p), v(k, q));
            }
        }
    }
    if (!converged && offdiag_norm() > stop) {
        throw NoConvergenceError("sym_eig: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return w(i, i) < w(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = w(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }

    // Certify the decomposition: orthonormal vectors, small residuals.
    const DenseMatrix vtv = out.vectors.transposed() * out.vectors;
    if (max_abs(vtv - DenseMatrix::identity(n)) > tol::kOrth) {
        throw InternalInconsistencyError("sym_eig: eigenvectors lost orthonormality");
    }
    const DenseMatrix resid = w0 * out.vectors - out.vectors * DenseMatrix::diagonal(out.values);
    if (max_abs(resid) > tol::kResid * std::max(total, 1e-300)) {
        throw InternalInconsistencyError("sym_eig: eigenpair residual too large");
    }
    return out;
}

EigenDecomposition gen_eig_spd(const DenseMatrix& a, const SpdMatrix& b) {
    require_symmetric(a, "gen_eig_spd");
    if (a.rows() != b.order()) throw DimensionMismatchError("gen_eig_spd: order mismatch");
    const DenseMatrix& l = b.cholesky_lower();
    // C = L^{-1} a L^{-T}, kept symmetric explicitly.
    DenseMatrix c = solve_lower(l, symmetrized(a));
    c = solve_lower(l, c.transposed());
    c = symmetrized(c);
    EigenDecomposition reduced = sym_eig(c);
    EigenDecomposition out;
    out.values = std::move(reduced.values);
    out.vectors = solve_lower_transposed(l, reduced.vectors);
    return out;
}

namespace {

// Singular values (ascending) together with the right singular vectors of m,
// obtained from the spectral decomposition of m^T m.
std::pair<Vector, DenseMatrix> right_singular(const DenseMatrix& m) {
    EigenDecomposition eig = sym_eig(m.transposed() * m);
    Vector sigma(eig.values.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = std::sqrt(std::max(eig.values[i], 0.0));
    return {std::move(sigma), std::move(eig.vectors)};
}

}  // namespace

SubspaceBasis null_space(const DenseMatrix& m, double tol) {
    const std::size_t nc = m.cols();
    if (m.rows() == 0 || nc == 0) {
        return {nc, DenseMatrix::identity(nc)};
    }
    auto [sigma, vecs] = right_singular(m);
    (void)sigma;
    // Judge each candidate by the directly evaluated residual ||m v||; the
    // Gram route alone would square the conditioning and blur the threshold.
    Vector resid(nc);
    double smax = 0.0;
    for (std::size_t j = 0; j < nc; ++j) {
        resid[j] = norm2(m * vecs.col(j));
        smax = std::max(smax, resid[j]);
    }
    if (smax == 0.0) {
        return {nc, DenseMatrix::identity(nc)};
    }
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < nc; ++j) {
        if (resid[j] <= tol * smax) keep.push_back(j);
    }
    DenseMatrix basis(nc, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < nc; ++i) basis(i, j) = vecs(i, keep[j]);
    return {nc, std::move(basis)};
}

SubspaceBasis range_space(const DenseMatrix& m, double tol) {
    const std::size_t nr = m.rows();
    if (nr == 0 || m.cols() == 0) return {nr, DenseMatrix(nr, 0)};
    // Left singular vectors = right singular vectors of m^T; keep those with
    // a directly evaluated residual ||m^T v|| above the threshold.
    auto [sigma, vecs] = right_singular(m.transposed());
    (void)sigma;
    Vector resid(nr);
    double smax = 0.0;
    for (std::size_t j = 0; j < nr; ++j) {
        resid[j] = norm2(m.transposed() * vecs.col(j));
        smax = std::max(smax, resid[j]);
    }
    if (smax == 0.0) return {nr, DenseMatrix(nr, 0)};
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < nr; ++j) {
        if (resid[j] > tol * smax) keep.push_back(j);
    }
    DenseMatrix basis(nr, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < nr; ++i) basis(i, j) = vecs(i, keep[j]);
    return {nr, std::move(basis)};
}

Vector singular_values(const DenseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    const DenseMatrix gram =
        m.cols() <= m.rows() ? m.transposed() * m : m * m.transposed();
    EigenDecomposition eig = sym_eig(gram);
    Vector sigma(eig.values.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = std::sqrt(std::max(eig.values[i], 0.0));
    return sigma;
}

double spectral_norm(const DenseMatrix& m) {
    Vector sigma = singular_values(m);
    return sigma.empty() ? 0.0 : sigma.back();
}

std::size_t numerical_rank(const DenseMatrix& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    // Direct residual per right singular vector, for the same reason as in
    // null_space.
    auto [sigma, vecs] = right_singular(m);
    (void)sigma;
    Vector resid(m.cols());
    double smax = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        resid[j] = norm2(m * vecs.col(j));
        smax = std::max(smax, resid[j]);
    }
    if (smax == 0.0) return 0;
    std::size_t r = 0;
    for (double s : resid)
        if (s > tol * smax) ++r;
    return r;
}

std::size_t subspace_intersection_dim(const SubspaceBasis& u, const SubspaceBasis& v, double tol) {
    if (u.ambient != v.ambient) {
        throw DimensionMismatchError("subspace_intersection_dim: ambient dimensions differ");
    }
    if (u.dim() == 0 || v.dim() == 0) return 0;
    // dim(u) + dim(v) - rank([u v]) equals the number of zero principal
    // angles; counting vanishing principal sines resolves the rank of the
    // concatenated basis far below the sqrt(eps) floor of a Gram-based rank.
    const DenseMatrix& big = u.dim() >= v.dim() ? u.basis : v.basis;
    const DenseMatrix& small_side = u.dim() >= v.dim() ? v.basis : u.basis;
    const DenseMatrix proj = small_side - big * (big.transposed() * small_side);
    std::size_t meet = 0;
    for (double s : singular_values(proj)) {
        if (s <= tol) ++meet;
    }
    return meet;
}

std::vector<double> principal_angles(const SubspaceBasis& u, const SubspaceBasis& v) {
    if (u.ambient != v.ambient) {
        throw DimensionMismatchError("principal_angles: ambient dimensions differ");
    }
    if (u.dim() == 0 || v.dim() == 0) {
        throw EmptySubspaceError("principal_angles: empty subspace");
    }
    // Work with the smaller basis on the right so both routes produce
    // min(dim u, dim v) angles; the angle set is symmetric in the arguments.
    const DenseMatrix& big = u.dim() >= v.dim() ? u.basis : v.basis;
    const DenseMatrix& small = u.dim() >= v.dim() ? v.basis : u.basis;

    Vector cosines = singular_values(big.transposed() * small);  // ascending
    // Sine route: singular values of (I - UU^T)V are the sines, ascending.
    const DenseMatrix proj = small - big * (big.transposed() * small);
    Vector sines = singular_values(proj);  // ascending

    const std::size_t k = cosines.size();
    std::vector<double> angles(k);
    for (std::size_t i = 0; i < k; ++i) {
        // cosines ascending and sines ascending pair up in opposite order.
        const double c = std::clamp(cosines[k - 1 - i], -1.0, 1.0);
        const double s = std::clamp(sines[i], 0.0, 1.0);
        angles[i] = c * c > 0.5 ? std::asin(s) : std::acos(c);
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

double a_norm(const DenseMatrix& e, const SpdMatrix& a) {
    if (!e.is_square() || e.rows() != a.order()) {
        throw DimensionMismatchError("a_norm: operator must be square with the order of a");
    }
    const SpdMatrix root = sqrt_spd(a);
    const SpdMatrix inv_root = inv_sqrt_spd(a);
    return spectral_norm(root.matrix() * e * inv_root.matrix());
}

SpdMatrix sqrt_spd(const SpdMatrix& a) {
    EigenDecomposition eig = sym_eig(a.matrix());
    if (eig.values.front() <= 0.0) throw NotSpdError("sqrt_spd: nonpositive eigenvalue");
    Vector d(eig.values.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::sqrt(eig.values[i]);
    DenseMatrix b = eig.vectors * DenseMatrix::diagonal(d) * eig.vectors.transposed();
    return SpdMatrix(symmetrized(b));
}

SpdMatrix inv_sqrt_spd(const SpdMatrix& a) {
    EigenDecomposition eig = sym_eig(a.matrix());
    if (eig.values.front() <= 0.0) throw NotSpdError("inv_sqrt_spd: nonpositive eigenvalue");
    Vector d(eig.values.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = 1.0 / std::sqrt(eig.values[i]);
    DenseMatrix b = eig.vectors * DenseMatrix::diagonal(d) * eig.vectors.transposed();
    return SpdMatrix(symmetrized(b));
}

LuFactor::LuFactor(const DenseMatrix& m) : lu_(m), perm_(m.rows()) {
    require_square(m, "LuFactor");
    const std::size_t n = m.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                piv = i;
            }
        }
        if (best < std::numeric_limits<double>::min()) {
            throw SingularMatrixError("LuFactor: singular matrix at column " + std::to_string(k));
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            lu_(i, k) /= lu_(k, k);
            const double f = lu_(i, k);
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

Vector LuFactor::solve(const Vector& rhs, bool transpose) const {
    return solve(DenseMatrix::column(rhs), transpose).col(0);
}

DenseMatrix LuFactor::solve(const DenseMatrix& rhs, bool transpose) const {
    const std::size_t n = lu_.rows();
    if (rhs.rows() != n) throw DimensionMismatchError("LuFactor::solve: size mismatch");
    DenseMatrix x(n, rhs.cols());
    if (!transpose) {
        // P A = L U, so A x = b  =>  L y = P b, U x = y.
        for (std::size_t j = 0; j < rhs.cols(); ++j) {
            for (std::size_t i = 0; i < n; ++i) x(i, j) = rhs(perm_[i], j);
            for (std::size_t i = 0; i < n; ++i) {
                double s = x(i, j);
                for (std::size_t k = 0; k < i; ++k) s -= lu_(i, k) * x(k, j);
                x(i, j) = s;  // L has unit diagonal
            }
            for (std::size_t ii = n; ii-- > 0;) {
                double s = x(ii, j);
                for (std::size_t k = ii + 1; k < n; ++k) s -= lu_(ii, k) * x(k, j);
                x(ii, j) = s / lu_(ii, ii);
            }
        }
    } else {
        // A^T x = b  =>  U^T z = b, L^T w = z, x = P^T w.
        DenseMatrix w(n, rhs.cols());
        for (std::size_t j = 0; j < rhs.cols(); ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                double s = rhs(i, j);
                for (std::size_t k = 0; k < i; ++k) s -= lu_(k, i) * w(k, j);
                w(i, j) = s / lu_(i, i);
            }
            for (std::size_t ii = n; ii-- > 0;) {
                double s = w(ii, j);
                for (std::size_t k = ii + 1; k < n; ++k) s -= lu_(k, ii) * w(k, j);
                w(ii, j) = s;
            }
            for (std::size_t i = 0; i < n; ++i) x(perm_[i], j) = w(i, j);
        }
    }
    return x;
}

DenseMatrix inverse(const DenseMatrix& m) {
    LuFactor lu(m);
    return lu.solve(DenseMatrix::identity(m.rows()));
}

}  // namespace tgideal
