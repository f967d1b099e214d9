#include <doctest.h>

#include "support.hpp"
#include "tgideal/coarsening.hpp"
#include "tgideal/random.hpp"

using namespace tgideal;

TEST_CASE("cf_splitting builds selection operators") {
    const Decomposition d = Decomposition::cf_splitting(3, {2});
    CHECK(d.n() == 3);
    CHECK(d.n_coarse() == 1);
    CHECK(testing::rel_diff(d.r(), DenseMatrix::from_rows({{0, 0, 1}})) == 0.0);
    CHECK(testing::rel_diff(d.s(), DenseMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}})) == 0.0);

    const Decomposition d4 = Decomposition::cf_splitting(4, {1, 3});
    CHECK(testing::rel_diff(d4.r(), DenseMatrix::from_rows({{0, 1, 0, 0}, {0, 0, 0, 1}})) == 0.0);
    CHECK(testing::rel_diff(d4.s(),
                            DenseMatrix::from_rows({{1, 0}, {0, 0}, {0, 1}, {0, 0}})) == 0.0);
    CHECK(max_abs(d4.r() * d4.s()) == 0.0);
}

TEST_CASE("cf_splitting rejects degenerate sets") {
    CHECK_THROWS_AS(Decomposition::cf_splitting(2, {0, 1}), CoarseSetIsAllError);
    CHECK_THROWS_AS(Decomposition::cf_splitting(3, {}), EmptyCoarseSetError);
    CHECK_THROWS_AS(Decomposition::cf_splitting(3, {5}), InvalidArgumentError);
}

TEST_CASE("decomposition validates its invariants") {
    // RS != 0.
    CHECK_THROWS_AS(Decomposition(DenseMatrix::from_rows({{1, 0, 0}}),
                                  DenseMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}})),
                    ConditionCViolatedError);
    // S rank deficient.
    CHECK_THROWS_AS(Decomposition(DenseMatrix::from_rows({{0, 0, 1}}),
                                  DenseMatrix::from_rows({{1, 1}, {1, 1}, {0, 0}})),
                    ConditionCViolatedError);
}

TEST_CASE("every vector splits as S e_s + R^T e_c") {
    rnd::Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 3 + rep % 7;
        const SpdMatrix a = rnd::spd(rng, n, 60.0);
        const Decomposition d = rnd::splitting(rng, n);
        const DenseMatrix inv = block_inverse_sr(a, d);
        const Vector e = rnd::gaussian_vector(rng, n);
        const Vector coeff = inv * e;
        const Vector es(coeff.begin(), coeff.begin() + d.n_s());
        const Vector ec(coeff.begin() + d.n_s(), coeff.end());
        const Vector rebuilt = add(d.s() * es, d.r().transposed() * ec);
        CHECK(norm2(sub(rebuilt, e)) <= 1e-10 * norm2(e));
    }
}

TEST_CASE("block_inverse_sp matches a direct inversion oracle") {
    const testing::Example21 ex;
    const DenseMatrix inv = block_inverse_sp(ex.a, ex.d, ex.p);
    const DenseMatrix sp = hstack(ex.d.s(), ex.p.matrix());
    CHECK(max_abs(inv * sp - DenseMatrix::identity(3)) < 1e-12);
    CHECK(testing::rel_diff(inv, inverse(sp)) < 1e-12);

    // A = I with orthonormal R rows and P = R^T: the top block reduces to S^T.
    const Decomposition d = Decomposition::cf_splitting(4, {0, 2});
    const SpdMatrix eye(DenseMatrix::identity(4));
    const Prolongation p(d.r().transposed(), d);
    const DenseMatrix blocks = block_inverse_sp(eye, d, p);
    CHECK(testing::rel_diff(blocks, vstack(d.s().transposed(), d.r())) < 1e-12);

    rnd::Rng rng(12);
    const SpdMatrix a = rnd::spd(rng, 5, 40.0);
    const Decomposition rd = rnd::splitting(rng, 5, 2);
    const Prolongation rp = rnd::valid_p(rng, a, rd);
    const DenseMatrix rsp = hstack(rd.s(), rp.matrix());
    CHECK(testing::rel_diff(block_inverse_sp(a, rd, rp), inverse(rsp)) < 1e-9);
}

TEST_CASE("block_inverse_sr matches a direct inversion oracle") {
    const testing::Example21 ex;
    const DenseMatrix inv = block_inverse_sr(ex.a, ex.d);
    const DenseMatrix sr = hstack(ex.d.s(), ex.d.r().transposed());
    CHECK(max_abs(inv * sr - DenseMatrix::identity(3)) < 1e-12);

    const Decomposition d = Decomposition::cf_splitting(4, {1});
    const SpdMatrix eye(DenseMatrix::identity(4));
    CHECK(testing::rel_diff(block_inverse_sr(eye, d), vstack(d.s().transposed(), d.r())) <
          1e-12);

    rnd::Rng rng(13);
    const SpdMatrix a = rnd::spd(rng, 6, 40.0);
    const Decomposition rd = rnd::splitting(rng, 6, 3);
    CHECK(testing::rel_diff(block_inverse_sr(a, rd),
                            inverse(hstack(rd.s(), rd.r().transposed()))) < 1e-9);
}

TEST_CASE("general_p reproduces the least-squares right inverse and P*") {
    const testing::Example21 ex;
    const Prolongation base = general_p(ex.a, ex.d, DenseMatrix(3, 1));
    CHECK(testing::rel_diff(base.matrix(), DenseMatrix::column({0, 0, 1})) < 1e-14);

    // Y = -R^T (R R^T)^{-1} lands exactly on the zero-residual ideal.
    const DenseMatrix y_star = -1.0 * DenseMatrix::column({0, 0, 1});
    const Prolongation star = general_p(ex.a, ex.d, y_star);
    CHECK(testing::rel_diff(star.matrix(), ex.p_star.matrix()) < 1e-12);
}

TEST_CASE("general_p always satisfies RP = I and spans every valid P") {
    rnd::Rng rng(14);
    for (int rep = 0; rep < 15; ++rep) {
        const std::size_t n = 3 + rep % 7;
        const SpdMatrix a = rnd::spd(rng, n, 60.0);
        const Decomposition d = rnd::splitting(rng, n);
        const DenseMatrix y = rnd::gaussian(rng, n, d.n_coarse());
        const Prolongation p = general_p(a, d, y);
        CHECK(max_abs(d.r() * p.matrix() - DenseMatrix::identity(d.n_coarse())) < 1e-11);

        // Recover Y from Lemma-style algebra and re-substitute.
        const SpdMatrix rrt(d.r() * d.r().transposed());
        const DenseMatrix base = rrt.solve(d.r()).transposed();
        const SpdMatrix sts(d.s().transposed() * d.s());
        const DenseMatrix z = sts.solve(d.s().transposed() * (p.matrix() - base));
        const Prolongation again = general_p(a, d, d.s() * z);
        CHECK(testing::rel_diff(again.matrix(), p.matrix()) < 1e-9);
    }
}

TEST_CASE("projector complement identities") {
    // I - S(S^T A S)^{-1} S^T A equals itself composed with Q and with
    // R^T (R R^T)^{-1} R.
    rnd::Rng rng(15);
    for (int rep = 0; rep < 15; ++rep) {
        const std::size_t n = 3 + rep % 7;
        const SpdMatrix a = rnd::spd(rng, n, 60.0);
        const Decomposition d = rnd::splitting(rng, n);
        const Prolongation p = rnd::valid_p(rng, a, d);

        const SpdMatrix sas(d.s().transposed() * a.matrix() * d.s());
        const DenseMatrix t = DenseMatrix::identity(n) -
                              d.s() * sas.solve(d.s().transposed() * a.matrix());
        const DenseMatrix q = p.coarse_projector();
        const SpdMatrix rrt(d.r() * d.r().transposed());
        const DenseMatrix rproj = d.r().transposed() * rrt.solve(d.r());

        CHECK(testing::rel_diff(t, t * q) < 1e-10);
        CHECK(testing::rel_diff(t, t * rproj) < 1e-10);
    }
}
