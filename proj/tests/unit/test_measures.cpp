#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tgideal/measures.hpp"
#include "tgideal/random.hpp"

using namespace tgideal;

namespace {

Smoother jacobi25(const testing::Example21& ex) {
    return Smoother(2.5 * DenseMatrix::identity(3), ex.a);
}

}  // namespace

TEST_CASE("smoother caches and the A-convergence flag") {
    const testing::Example21 ex;
    const Smoother m = jacobi25(ex);
    CHECK(m.a_convergent());
    CHECK(testing::rel_diff(m.symmetric_part(), 2.5 * DenseMatrix::identity(3)) == 0.0);
    // M~ = 6.25 (5I - A)^{-1}: check by multiplying back.
    const DenseMatrix w = 5.0 * DenseMatrix::identity(3) - ex.a.matrix();
    CHECK(testing::rel_diff(m.m_tilde().matrix() * w, 6.25 * DenseMatrix::identity(3)) < 1e-12);

    const Smoother weak(0.1 * DenseMatrix::identity(3), ex.a);
    CHECK(!weak.a_convergent());
    CHECK_THROWS_AS(weak.m_tilde(), SmootherNotAConvergentError);

    CHECK_THROWS_AS(Smoother(DenseMatrix(3, 3), ex.a), SingularSmootherError);
}

TEST_CASE("mu_x hand values") {
    const testing::Example21 ex;
    const DenseMatrix q = ex.p.coarse_projector();
    CHECK(mu_x(ex.a, ex.x, q, {1, 1, 0}) == doctest::Approx(2.0).epsilon(1e-14));
    // e in Range(P) is reproduced exactly.
    CHECK(mu_x(ex.a, ex.x, q, {0, 0, 1}) == doctest::Approx(0.0).scale(1).epsilon(1e-15));
    // X = A with Q = 0 gives the constant 1.
    CHECK(mu_x(ex.a, ex.a, DenseMatrix(3, 3), {0.3, -2.0, 1.4}) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(mu_x(ex.a, ex.x, q, {0, 0, 0}), ZeroVectorError);
}

TEST_CASE("build_ax_bx reproduces the hand computation") {
    const testing::Example21 ex;
    const AxBx ops = build_ax_bx(ex.a, ex.x, ex.d, ex.p);
    CHECK(testing::rel_diff(ops.a_x.matrix(),
                            DenseMatrix::from_rows({{1, -0.5}, {-0.5, 1}})) < 1e-14);
    CHECK(testing::rel_diff(ops.b_x, DenseMatrix::from_rows({{0.75, -0.25}, {-0.25, 0.75}})) <
          1e-14);

    // P^T A S = 0 makes the correction vanish.
    const AxBx star = build_ax_bx(ex.a, ex.x, ex.d, ex.p_star);
    CHECK(testing::rel_diff(star.b_x, star.a_x.matrix()) < 1e-12);

    // X = A with P^T A S = 0 gives A_X = I.
    const AxBx unit = build_ax_bx(ex.a, ex.a, ex.d, ex.p_star);
    CHECK(max_abs(unit.a_x.matrix() - DenseMatrix::identity(2)) < 1e-12);
}

TEST_CASE("mu_star golden and trivial values") {
    const testing::Example21 ex;
    CHECK(mu_star(ex.a, ex.x, ex.d) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(mu_star(ex.a, ex.a, ex.d) == doctest::Approx(1.0).epsilon(1e-13));

    const SpdMatrix diag(DenseMatrix::diagonal({1, 4, 2}));
    const SpdMatrix eye(DenseMatrix::identity(3));
    const Decomposition d = Decomposition::cf_splitting(3, {2});
    CHECK(mu_star(diag, eye, d) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("worst_case_mu equals the full-space pencil oracle") {
    const testing::Example21 ex;
    CHECK(worst_case_mu(ex.a, ex.x, ex.d, ex.p) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(worst_case_mu(ex.a, ex.x, ex.d, ex.p_star) == doctest::Approx(2.0).epsilon(1e-12));

    rnd::Rng rng(21);
    for (int rep = 0; rep < 15; ++rep) {
        const std::size_t n = 3 + rep % 7;
        const SpdMatrix a = rnd::spd(rng, n, 50.0);
        const SpdMatrix x = rnd::spd(rng, n, 50.0);
        const Decomposition d = rnd::splitting(rng, n);
        const Prolongation p = rnd::valid_p(rng, a, d);

        const double reduced = worst_case_mu(a, x, d, p);
        // Independent route: lambda_max of the pencil ((I-Q)^T X (I-Q), A).
        const DenseMatrix iq = DenseMatrix::identity(n) - p.coarse_projector();
        const DenseMatrix num = symmetrized(iq.transposed() * x.matrix() * iq);
        const double full = gen_eig_spd(num, a).values.back();
        CHECK(reduced == doctest::Approx(full).epsilon(1e-9));
        CHECK(reduced >= mu_star(a, x, d) * (1.0 - 1e-10));
    }
}

TEST_CASE("k_measure golden value and positivity") {
    const testing::Example21 ex;
    const Smoother m = jacobi25(ex);
    // 75/32, cross-checked against an independent dense eigensolver.
    CHECK(k_measure(ex.a, m, ex.p.coarse_projector()) ==
          doctest::Approx(2.34375).epsilon(1e-12));
    CHECK(k_measure(ex.a, m, ex.p_star.coarse_projector()) ==
          doctest::Approx(1.5625).epsilon(1e-12));

    const Smoother weak(0.1 * DenseMatrix::identity(3), ex.a);
    CHECK_THROWS_AS(k_measure(ex.a, weak, ex.p.coarse_projector()),
                    SmootherNotAConvergentError);
}

TEST_CASE("k_tg, the convergence identity and K >= K_TG") {
    const testing::Example21 ex;
    const Smoother m = jacobi25(ex);
    const double ktg = k_tg(ex.a, m, ex.p);
    CHECK(ktg == doctest::Approx(1.5625).epsilon(1e-12));

    // Square nonsingular P: exact coarse correction.
    rnd::Rng rng(22);
    const DenseMatrix psq = rnd::gaussian(rng, 3, 3);
    CHECK(k_tg(ex.a, m, psq) == doctest::Approx(1.0).epsilon(1e-12));

    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 3 + rep % 6;
        const SpdMatrix a = rnd::spd(rng, n, 50.0);
        const Decomposition d = rnd::splitting(rng, n);
        const Prolongation p = rnd::valid_p(rng, a, d);
        const Smoother sm = rnd::a_convergent_smoother(rng, a);
        const double k = k_measure(a, sm, p.coarse_projector());
        const double kt = k_tg(a, sm, p);
        CHECK(kt >= 1.0);
        CHECK(k >= kt * (1.0 - 1e-10));
    }
}

TEST_CASE("pi_m_tilde projections") {
    const testing::Example21 ex;
    // M~ = I reduces to the orthogonal projector onto Range(P).
    rnd::Rng rng(23);
    const DenseMatrix p = rnd::gaussian(rng, 4, 2);
    const SpdMatrix eye(DenseMatrix::identity(4));
    const DenseMatrix pi = pi_m_tilde(p, eye);
    const SpdMatrix ptp(symmetrized(p.transposed() * p));
    CHECK(testing::rel_diff(pi, p * ptp.solve(p.transposed())) < 1e-12);
    CHECK(testing::rel_diff(pi * pi, pi) < 1e-10);

    // Scalar M~ with P = e3.
    const SpdMatrix scalar(2.0 * DenseMatrix::identity(3));
    const DenseMatrix pi3 = pi_m_tilde(ex.p.matrix(), scalar);
    CHECK(testing::rel_diff(pi3, DenseMatrix::diagonal({0, 0, 1})) < 1e-14);
}

TEST_CASE("p_sharp construction") {
    const testing::Example21 ex;
    // Scalar M~: P# collapses to R^T (R R^T)^{-1} = e3.
    const SpdMatrix scalar(2.0 * DenseMatrix::identity(3));
    CHECK(testing::rel_diff(p_sharp(scalar, ex.d).matrix(), ex.p.matrix()) < 1e-13);

    // Orthonormal R rows with M~ = I: P# = R^T.
    const Decomposition d = Decomposition::cf_splitting(4, {0, 3});
    const SpdMatrix eye(DenseMatrix::identity(4));
    CHECK(testing::rel_diff(p_sharp(eye, d).matrix(), d.r().transposed()) < 1e-13);

    rnd::Rng rng(24);
    const SpdMatrix mt = rnd::spd(rng, 4, 30.0);
    const Prolongation ps = p_sharp(mt, d);
    CHECK(max_abs(d.r() * ps.matrix() - DenseMatrix::identity(2)) < 1e-11);

    // Beyond two dimensions P# still closes the angle and the K gap.
    for (int rep = 0; rep < 5; ++rep) {
        const std::size_t n = 5 + rep;
        const SpdMatrix a = rnd::spd(rng, n, 50.0);
        const Decomposition rd = rnd::splitting(rng, n);
        const Smoother sm = rnd::a_convergent_smoother(rng, a);
        const Prolongation sharp = p_sharp(sm.m_tilde(), rd);
        CHECK(theta_angle(sharp, sm.m_tilde()).max_angle <= 1e-8);
        const double k = k_measure(a, sm, sharp.coarse_projector());
        const double kt = k_tg(a, sm, sharp);
        CHECK(std::abs(k - kt) <= 1e-8 * k);
    }
}

TEST_CASE("theta_angle analytic two-dimensional values") {
    // With M~ = I, R = (0 1) and P = (t, 1)^T the angle is atan(t).
    for (double t : {0.5, 1.0, 2.0}) {
        const Decomposition d = Decomposition::cf_splitting(2, {1});
        const SpdMatrix eye(DenseMatrix::identity(2));
        const Prolongation p(DenseMatrix::column({t, 1.0}), d);
        const AngleReport rep = theta_angle(p, eye);
        CHECK(rep.max_angle == doctest::Approx(std::atan(t)).epsilon(1e-12));
        CHECK(rep.min_angle == doctest::Approx(std::atan(t)).epsilon(1e-12));
    }

    // P = P# has every angle at zero.
    const testing::Example21 ex;
    const Smoother m = jacobi25(ex);
    const Prolongation sharp = p_sharp(m.m_tilde(), ex.d);
    CHECK(theta_angle(sharp, m.m_tilde()).max_angle <= 1e-10);

    // Scalar M~ with P = e3: P equals P#, so both angles vanish.
    const SpdMatrix scalar(2.0 * DenseMatrix::identity(3));
    CHECK(theta_angle(ex.p, scalar).max_angle <= 1e-10);

    // For the Jacobi smoother on this instance P* happens to equal P#, while
    // P = e3 sits at cos^2(theta) = 2/3.
    CHECK(theta_angle(ex.p_star, m.m_tilde()).max_angle <= 1e-8);
    const double theta = theta_angle(ex.p, m.m_tilde()).max_angle;
    CHECK(std::cos(theta) * std::cos(theta) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("smoother_constants") {
    const testing::Example21 ex;
    const Smoother m = jacobi25(ex);
    const SmootherConstants sc = smoother_constants(ex.a, m);
    CHECK(sc.delta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sc.omega == doctest::Approx(1.6).epsilon(1e-12));

    const Smoother exact(ex.a.matrix(), ex.a);
    CHECK(smoother_constants(ex.a, exact).omega == doctest::Approx(1.0).epsilon(1e-12));

    // Nonsymmetric smoothers have Delta > 1.
    rnd::Rng rng(25);
    const SpdMatrix a = rnd::spd(rng, 4, 30.0);
    const DenseMatrix g = rnd::gaussian(rng, 4, 4);
    DenseMatrix m2 = 2.0 * a.matrix() + 0.5 * (g - g.transposed());
    const SmootherConstants sc2 = smoother_constants(a, Smoother(m2, a));
    CHECK(sc2.delta > 1.0);

    const SpdMatrix eye(DenseMatrix::identity(2));
    const Smoother indef(DenseMatrix::diagonal({1.0, -1.0}), eye);
    CHECK_THROWS_AS(smoother_constants(eye, indef), MsNotSpdError);
}

TEST_CASE("spectral equivalence constants") {
    rnd::Rng rng(26);
    const SpdMatrix mt = rnd::spd(rng, 4, 30.0);
    const SpectralEquiv same = spectral_equiv_constants(mt, mt);
    CHECK(same.c1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.c2 == doctest::Approx(1.0).epsilon(1e-12));

    const SpdMatrix twice(2.0 * mt.matrix());
    const SpectralEquiv hal = spectral_equiv_constants(twice, mt);
    CHECK(hal.c1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hal.c2 == doctest::Approx(0.5).epsilon(1e-12));

    const SpdMatrix x = rnd::spd(rng, 4, 30.0);
    const SpectralEquiv se = spectral_equiv_constants(x, mt);
    CHECK(se.c1 <= se.c2);
    for (int k = 0; k < 200; ++k) {
        const Vector e = rnd::gaussian_vector(rng, 4);
        const double quot = dot(mt.matrix() * e, e) / dot(x.matrix() * e, e);
        CHECK(quot >= se.c1 * (1.0 - 1e-10));
        CHECK(quot <= se.c2 * (1.0 + 1e-10));
    }
}

TEST_CASE("pointwise smoother bounds on a random instance") {
    rnd::Rng rng(27);
    const std::size_t n = 6;
    const SpdMatrix a = rnd::spd(rng, n, 40.0);
    const Decomposition d = rnd::splitting(rng, n);
    const Prolongation p = rnd::valid_p(rng, a, d);
    const Smoother m = rnd::a_convergent_smoother(rng, a);
    const SmootherConstants sc = smoother_constants(a, m);
    const double factor = sc.delta * sc.delta / (2.0 - sc.omega);
    const SpdMatrix ms(m.symmetric_part());
    const DenseMatrix q = p.coarse_projector();
    const DenseMatrix pi = pi_m_tilde(p, m.m_tilde());
    for (int k = 0; k < 200; ++k) {
        const Vector e = rnd::gaussian_vector(rng, n);
        CHECK(mu_x(a, m.m_tilde(), q, e) <= factor * mu_x(a, ms, q, e) + 1e-12);

        const Vector r1 = sub(e, pi * e);
        const Vector r2 = sub(e, q * e);
        CHECK(dot(m.m_tilde().matrix() * r1, r1) <=
              dot(m.m_tilde().matrix() * r2, r2) * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("measure report validation") {
    MeasureReport rep;
    rep.mu_star = 2.0;
    rep.worst_case = 2.0;
    rep.lambda_min_ax = 0.5;
    rep.lambda_min_bx = 0.5;
    rep.k = 2.34375;
    rep.k_tg = 1.5625;
    rep.e_tg_a_norm = 0.36;
    CHECK_NOTHROW(rep.validate());

    rep.worst_case = 1.0;  // below the optimum
    CHECK_THROWS_AS(rep.validate(), InternalInconsistencyError);
    rep.worst_case = 2.0;
    rep.e_tg_a_norm = 0.5;  // breaks the identity
    CHECK_THROWS_AS(rep.validate(), InternalInconsistencyError);
}
