#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <utility>

#include "tgideal/cli.hpp"
#include "tgideal/errors.hpp"
#include "tgideal/ideal.hpp"
#include "tgideal/matrix_market.hpp"
#include "tgideal/tg.hpp"
#include "tgideal/verify.hpp"

namespace py = pybind11;
using namespace tgideal;

namespace {

using NumpyArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

DenseMatrix to_matrix(const NumpyArray& arr) {
    if (arr.ndim() == 1) {
        DenseMatrix m(static_cast<std::size_t>(arr.shape(0)), 1);
        for (py::ssize_t i = 0; i < arr.shape(0); ++i) m(i, 0) = arr.at(i);
        return m;
    }
    if (arr.ndim() != 2) throw InvalidArgumentError("expected a 1-D or 2-D array");
    DenseMatrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    for (py::ssize_t i = 0; i < arr.shape(0); ++i)
        for (py::ssize_t j = 0; j < arr.shape(1); ++j) m(i, j) = arr.at(i, j);
    return m;
}

Vector to_vector(const NumpyArray& arr) {
    if (arr.ndim() != 1) throw InvalidArgumentError("expected a 1-D array");
    Vector v(static_cast<std::size_t>(arr.shape(0)));
    for (py::ssize_t i = 0; i < arr.shape(0); ++i) v[i] = arr.at(i);
    return v;
}

py::array_t<double> from_matrix(const DenseMatrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    auto buf = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
    return out;
}

py::array_t<double> from_vector(const Vector& v) {
    py::array_t<double> out(v.size());
    auto buf = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) buf(i) = v[i];
    return out;
}

SpdMatrix to_spd(const NumpyArray& arr) { return SpdMatrix(to_matrix(arr)); }

Prolongation make_p(const NumpyArray& p, const Decomposition& d) {
    return Prolongation(to_matrix(p), d);
}

Smoother make_smoother(const NumpyArray& a, const NumpyArray& m) {
    const SpdMatrix spd = to_spd(a);
    return Smoother(to_matrix(m), spd);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Two-grid ideal interpolation analysis: quality measures, set "
                "classification, explicit constructions and the symmetrized "
                "two-grid iteration.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            if (e.kind() == Error::Kind::input) {
                PyErr_SetString(PyExc_ValueError, e.what());
            } else {
                PyErr_SetString(PyExc_RuntimeError, e.what());
            }
        }
    });

    py::class_<Decomposition>(mod, "Decomposition",
                              "The (R, S) pair with RS = 0 and S of full column rank.")
        .def(py::init([](const NumpyArray& r, const NumpyArray& s) {
                 return Decomposition(to_matrix(r), to_matrix(s));
             }),
             py::arg("r"), py::arg("s"))
        .def_static(
            "cf_splitting",
            [](std::size_t n, std::vector<std::size_t> coarse) {
                return Decomposition::cf_splitting(n, std::move(coarse));
            },
            py::arg("n"), py::arg("coarse_indices"),
            "Classical C/F splitting from 0-based coarse indices.")
        .def_property_readonly("n", &Decomposition::n)
        .def_property_readonly("n_coarse", &Decomposition::n_coarse)
        .def_property_readonly("n_s", &Decomposition::n_s)
        .def_property_readonly("r", [](const Decomposition& d) { return from_matrix(d.r()); })
        .def_property_readonly("s", [](const Decomposition& d) { return from_matrix(d.s()); });

    py::class_<ClassificationReport>(mod, "Classification")
        .def_readonly("in_p0", &ClassificationReport::in_p0)
        .def_readonly("in_p1", &ClassificationReport::in_p1)
        .def_readonly("in_p2", &ClassificationReport::in_p2)
        .def_readonly("in_pstar", &ClassificationReport::in_pstar)
        .def_readonly("lambda_min_ax", &ClassificationReport::lambda_min_ax)
        .def_readonly("lambda_min_bx", &ClassificationReport::lambda_min_bx)
        .def_readonly("nullspace_dim", &ClassificationReport::nullspace_dim)
        .def("__repr__", [](const ClassificationReport& r) {
            auto b = [](bool v) { return v ? "True" : "False"; };
            return std::string("Classification(in_p0=") + b(r.in_p0) + ", in_p1=" + b(r.in_p1) +
                   ", in_p2=" + b(r.in_p2) + ", in_pstar=" + b(r.in_pstar) + ")";
        });

    py::class_<SolveTrace>(mod, "SolveTrace")
        .def_readonly("iterations", &SolveTrace::iterations)
        .def_readonly("converged", &SolveTrace::converged)
        .def_property_readonly(
            "residual_norms",
            [](const SolveTrace& t) { return from_vector(t.residual_norms); })
        .def_property_readonly("u", [](const SolveTrace& t) { return from_vector(t.final_u); });

    mod.def(
        "mu_x",
        [](const NumpyArray& a, const NumpyArray& x, const NumpyArray& q, const NumpyArray& e) {
            return mu_x(to_spd(a), to_spd(x), to_matrix(q), to_vector(e));
        },
        py::arg("a"), py::arg("x"), py::arg("q"), py::arg("e"),
        "Quality measure (X (I-Q) e, (I-Q) e) / (A e, e).");

    mod.def(
        "mu_star",
        [](const NumpyArray& a, const NumpyArray& x, const Decomposition& d) {
            return mu_star(to_spd(a), to_spd(x), d);
        },
        py::arg("a"), py::arg("x"), py::arg("d"),
        "Optimal worst-case measure 1 / lambda_min((S^T X S)^{-1} S^T A S).");

    mod.def(
        "worst_case_mu",
        [](const NumpyArray& a, const NumpyArray& x, const Decomposition& d,
           const NumpyArray& p) {
            return worst_case_mu(to_spd(a), to_spd(x), d, make_p(p, d));
        },
        py::arg("a"), py::arg("x"), py::arg("d"), py::arg("p"),
        "Worst-case measure of a concrete interpolation, 1 / lambda_min(B_X).");

    mod.def(
        "classify",
        [](const NumpyArray& a, const NumpyArray& x, const Decomposition& d, const NumpyArray& p,
           double tol) { return classify(to_spd(a), to_spd(x), d, make_p(p, d), tol); },
        py::arg("a"), py::arg("x"), py::arg("d"), py::arg("p"),
        py::arg("tol") = tol::kMembership,
        "Membership of P in the characterization sets P0, P1, P2 and P*.");

    mod.def(
        "ideal_interpolation",
        [](const NumpyArray& a, const Decomposition& d, const std::string& method) {
            const SpdMatrix spd = to_spd(a);
            if (method == "direct") return from_matrix(ideal_p0_direct(spd, d).matrix());
            if (method == "via_s") return from_matrix(ideal_p0_via_s(spd, d).matrix());
            throw InvalidArgumentError("method must be 'direct' or 'via_s'");
        },
        py::arg("a"), py::arg("d"), py::arg("method") = "direct",
        "The unique interpolation with P^T A S = 0, by either explicit formula.");

    mod.def(
        "range_equiv_p0",
        [](const NumpyArray& a, const Decomposition& d, const NumpyArray& p, double tol) {
            return range_equiv_p0(to_spd(a), d, make_p(p, d), tol);
        },
        py::arg("a"), py::arg("d"), py::arg("p"), py::arg("tol") = tol::kMembership);

    mod.def(
        "k_measure",
        [](const NumpyArray& a, const NumpyArray& m, const NumpyArray& q) {
            return k_measure(to_spd(a), make_smoother(a, m), to_matrix(q));
        },
        py::arg("a"), py::arg("m"), py::arg("q"),
        "K = sup_e mu_Mtilde(Q, e) for an A-convergent smoother.");

    mod.def(
        "k_tg",
        [](const NumpyArray& a, const NumpyArray& m, const NumpyArray& p) {
            return k_tg(to_spd(a), make_smoother(a, m), to_matrix(p));
        },
        py::arg("a"), py::arg("m"), py::arg("p"),
        "Two-grid constant with ||E_TG||_A = 1 - 1/K_TG.");

    mod.def(
        "e_tg",
        [](const NumpyArray& a, const NumpyArray& m, const NumpyArray& p) {
            const SpdMatrix spd = to_spd(a);
            TgSetup setup(spd, Smoother(to_matrix(m), spd), to_matrix(p));
            return from_matrix(build_e_tg(setup));
        },
        py::arg("a"), py::arg("m"), py::arg("p"), "The two-grid iteration matrix.");

    mod.def(
        "a_norm",
        [](const NumpyArray& e, const NumpyArray& a) { return a_norm(to_matrix(e), to_spd(a)); },
        py::arg("e"), py::arg("a"), "Energy norm sigma_max(A^{1/2} E A^{-1/2}).");

    mod.def(
        "theta_angle",
        [](const NumpyArray& a, const NumpyArray& m, const Decomposition& d,
           const NumpyArray& p) {
            const Smoother smoother = make_smoother(a, m);
            const AngleReport rep = theta_angle(make_p(p, d), smoother.m_tilde());
            return std::make_pair(rep.min_angle, rep.max_angle);
        },
        py::arg("a"), py::arg("m"), py::arg("d"), py::arg("p"),
        "Smallest and largest principal angle between Null(P^T Mt^{1/2}) and "
        "Null(R Mt^{-1/2}).");

    mod.def(
        "p_sharp",
        [](const NumpyArray& a, const NumpyArray& m, const Decomposition& d) {
            const Smoother smoother = make_smoother(a, m);
            return from_matrix(p_sharp(smoother.m_tilde(), d).matrix());
        },
        py::arg("a"), py::arg("m"), py::arg("d"),
        "The zero-angle interpolation Mt^{-1} R^T (R Mt^{-1} R^T)^{-1}.");

    mod.def(
        "smoother_constants",
        [](const NumpyArray& a, const NumpyArray& m) {
            const SpdMatrix spd = to_spd(a);
            const SmootherConstants sc = smoother_constants(spd, Smoother(to_matrix(m), spd));
            return std::make_pair(sc.delta, sc.omega);
        },
        py::arg("a"), py::arg("m"), "(Delta, omega) of the smoother against A.");

    mod.def(
        "epsilon_smoother",
        [](const NumpyArray& a, double eps) {
            return from_matrix(epsilon_smoother(to_spd(a), eps).matrix());
        },
        py::arg("a"), py::arg("eps"),
        "M = (1/2 + eps) D + (1 + 2 eps) L with M + M^T - A = 2 eps A.");

    mod.def(
        "schur_smoothers",
        [](const NumpyArray& a, std::size_t n_c, const std::array<double, 4>& alphas) {
            const SpdMatrix spd = to_spd(a);
            py::list out;
            for (const Smoother& s : schur_smoothers(spd, n_c, alphas)) {
                out.append(py::make_tuple(from_matrix(s.matrix()), s.a_convergent()));
            }
            return out;
        },
        py::arg("a"), py::arg("n_c"), py::arg("alphas"),
        "The four Schur-complement block smoothers and their A-convergence flags.");

    mod.def(
        "tg_solve",
        [](const NumpyArray& a, const NumpyArray& m, const NumpyArray& p, const NumpyArray& f,
           py::object u0, double reduction, std::size_t max_iters, bool absolute) {
            const SpdMatrix spd = to_spd(a);
            TgSetup setup(spd, Smoother(to_matrix(m), spd), to_matrix(p));
            Vector rhs = to_vector(f);
            Vector start(rhs.size(), 0.0);
            if (!u0.is_none()) start = to_vector(u0.cast<NumpyArray>());
            return solve(setup, rhs, start, reduction, max_iters,
                         absolute ? StopRule::absolute : StopRule::relative);
        },
        py::arg("a"), py::arg("m"), py::arg("p"), py::arg("f"), py::arg("u0") = py::none(),
        py::arg("reduction") = 1e-6, py::arg("max_iters") = 100, py::arg("absolute") = false,
        "Run the symmetrized two-grid iteration and return its trace.");

    mod.def(
        "read_matrix_market",
        [](const std::string& path) { return from_matrix(read_matrix_market(path)); },
        py::arg("path"));

    mod.def(
        "write_matrix_market",
        [](const std::string& path, const NumpyArray& m) {
            write_matrix_market(path, to_matrix(m));
        },
        py::arg("path"), py::arg("matrix"));

    mod.def(
        "run_suite",
        [](const std::string& name, std::uint64_t seed) {
            const SuiteResult res = run_suite(name, seed);
            py::list checks;
            for (const CheckResult& c : res.checks) {
                checks.append(py::make_tuple(c.name, c.pass, c.details));
            }
            return checks;
        },
        py::arg("name"), py::arg("seed") = 42,
        "Run a built-in verification suite; returns (name, pass, details) tuples.");

    mod.def("suite_names", &suite_names);

    mod.def(
        "cli_main",
        [](const std::vector<std::string>& args) { return cli_dispatch(args); },
        py::arg("args"), "Invoke the command-line interface programmatically.");

    mod.attr("__version__") = "0.1.0";
}
