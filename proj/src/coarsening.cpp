#include "tgideal/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tgideal/errors.hpp"
#include "tgideal/tolerances.hpp"

namespace tgideal {

Decomposition::Decomposition(DenseMatrix r, DenseMatrix s) : r_(std::move(r)), s_(std::move(s)) {
    const std::size_t n = s_.rows();
    const std::size_t nc = r_.rows();
    const std::size_t ns = s_.cols();
    if (r_.cols() != n) {
        throw ConditionCViolatedError("decomposition: R has " + std::to_string(r_.cols()) +
                                      " columns but S has " + std::to_string(n) + " rows");
    }
    if (nc == 0) throw EmptyCoarseSetError("decomposition: R has no rows");
    if (ns == 0) throw CoarseSetIsAllError("decomposition: S has no columns (n_s = 0)");
    if (nc + ns != n) {
        throw ConditionCViolatedError("decomposition: n_c + n_s = " + std::to_string(nc + ns) +
                                      " differs from n = " + std::to_string(n));
    }
    const double scale = frobenius_norm(r_) * frobenius_norm(s_);
    if (frobenius_norm(r_ * s_) > tol::kOrth * scale) {
        throw ConditionCViolatedError("decomposition: RS != 0");
    }
    if (numerical_rank(s_) != ns) {
        throw ConditionCViolatedError("decomposition: S is rank deficient");
    }
    if (numerical_rank(hstack(s_, r_.transposed())) != n) {
        throw ConditionCViolatedError("decomposition: (S R^T) is singular");
    }
}

Decomposition Decomposition::cf_splitting(std::size_t n, std::vector<std::size_t> coarse) {
    std::sort(coarse.begin(), coarse.end());
    coarse.erase(std::unique(coarse.begin(), coarse.end()), coarse.end());
    if (coarse.empty()) throw EmptyCoarseSetError("cf_splitting: empty coarse set");
    if (!coarse.empty() && coarse.back() >= n) {
        throw InvalidArgumentError("cf_splitting: coarse index " + std::to_string(coarse.back()) +
                                   " out of range for n = " + std::to_string(n));
    }
    if (coarse.size() >= n) {
        throw CoarseSetIsAllError("cf_splitting: coarse set covers every variable");
    }
    const std::size_t nc = coarse.size();
    const std::size_t ns = n - nc;
    DenseMatrix r(nc, n);
    DenseMatrix s(n, ns);
    for (std::size_t k = 0; k < nc; ++k) r(k, coarse[k]) = 1.0;
    std::size_t j = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (next < nc && coarse[next] == i) {
            ++next;
            continue;
        }
        s(i, j++) = 1.0;
    }
    return Decomposition(std::move(r), std::move(s));
}

Prolongation::Prolongation(DenseMatrix p, Decomposition d)
    : p_(std::move(p)), decomp_(std::move(d)) {
    if (p_.rows() != decomp_.n() || p_.cols() != decomp_.n_coarse()) {
        throw ConditionCViolatedError("prolongation: P is " + std::to_string(p_.rows()) + "x" +
                                      std::to_string(p_.cols()) + ", expected " +
                                      std::to_string(decomp_.n()) + "x" +
                                      std::to_string(decomp_.n_coarse()));
    }
    const DenseMatrix rp = decomp_.r() * p_;
    if (max_abs(rp - DenseMatrix::identity(decomp_.n_coarse())) > tol::kOrth) {
        throw ConditionCViolatedError("prolongation: RP != I");
    }
    if (numerical_rank(p_) != p_.cols()) {
        throw ConditionCViolatedError("prolongation: P is rank deficient");
    }
}

void require_condition_c(const SpdMatrix& a, const Decomposition& d) {
    if (a.order() != d.n()) {
        throw ConditionCViolatedError("condition (C): A has order " + std::to_string(a.order()) +
                                      " but decomposition has n = " + std::to_string(d.n()));
    }
}

void require_condition_c(const SpdMatrix& a, const Decomposition& d, const DenseMatrix& p) {
    require_condition_c(a, d);
    if (p.rows() != d.n() || p.cols() != d.n_coarse()) {
        throw ConditionCViolatedError("condition (C): P has wrong shape");
    }
    const DenseMatrix rp = d.r() * p;
    if (max_abs(rp - DenseMatrix::identity(d.n_coarse())) > tol::kOrth) {
        throw ConditionCViolatedError("condition (C): RP != I for the supplied decomposition");
    }
}

DenseMatrix block_inverse_sp(const SpdMatrix& a, const Decomposition& d, const Prolongation& p) {
    require_condition_c(a, d, p.matrix());
    const DenseMatrix& s = d.s();
    const DenseMatrix q = p.matrix() * d.r();
    const SpdMatrix sas(s.transposed() * a.matrix() * s);
    const DenseMatrix iq = DenseMatrix::identity(d.n()) - q;
    const DenseMatrix top = sas.solve(s.transposed() * a.matrix() * iq);
    return vstack(top, d.r());
}

DenseMatrix block_inverse_sr(const SpdMatrix& a, const Decomposition& d) {
    require_condition_c(a, d);
    const DenseMatrix& s = d.s();
    const DenseMatrix& r = d.r();
    const SpdMatrix sas(s.transposed() * a.matrix() * s);
    const SpdMatrix rrt(r * r.transposed());
    const DenseMatrix rinv = rrt.solve(r);  // (R R^T)^{-1} R
    const DenseMatrix proj = DenseMatrix::identity(d.n()) - r.transposed() * rinv;
    const DenseMatrix top = sas.solve(s.transposed() * a.matrix() * proj);
    return vstack(top, rinv);
}

Prolongation general_p(const SpdMatrix& a, const Decomposition& d, const DenseMatrix& y) {
    require_condition_c(a, d);
    if (y.rows() != d.n() || y.cols() != d.n_coarse()) {
        throw DimensionMismatchError("general_p: Y must be n x n_c");
    }
    const DenseMatrix& s = d.s();
    const DenseMatrix& r = d.r();
    const SpdMatrix rrt(r * r.transposed());
    const SpdMatrix sas(s.transposed() * a.matrix() * s);
    const DenseMatrix base = rrt.solve(r).transposed();  // R^T (R R^T)^{-1}
    const DenseMatrix corr = s * sas.solve(s.transposed() * a.matrix() * y);
    return Prolongation(base + corr, d);
}

}  // namespace tgideal
