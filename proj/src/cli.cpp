#include "tgideal/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tgideal/errors.hpp"
#include "tgideal/ideal.hpp"
#include "tgideal/matrix_market.hpp"
#include "tgideal/report.hpp"
#include "tgideal/tg.hpp"
#include "tgideal/verify.hpp"

namespace tgideal {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct CommonOpts {
    std::string matrix_path;
    std::string x_path;
    std::string m_path;
    std::string p_path;
    std::string r_path;
    std::string s_path;
    std::string coarse_spec;
    std::string json_path;
    double tol = tol::kMembership;
};

void add_matrix_opts(CLI::App* cmd, CommonOpts& o, bool need_matrix = true) {
    auto* m = cmd->add_option("--matrix", o.matrix_path, "system matrix A (MatrixMarket)");
    if (need_matrix) m->required();
    cmd->add_option("--x", o.x_path, "measure matrix X (default: diag(A))");
    auto* coarse =
        cmd->add_option("--coarse", o.coarse_spec, "1-based coarse indices, e.g. 2,4");
    auto* r = cmd->add_option("--r", o.r_path, "restriction R (MatrixMarket)");
    auto* s = cmd->add_option("--s", o.s_path, "complement operator S (default: null basis of R)");
    coarse->excludes(r);
    coarse->excludes(s);
    s->needs(r);
    cmd->add_option("--tol", o.tol, "membership / verdict tolerance");
    cmd->add_option("--json", o.json_path, "write a JSON report to this path");
}

std::vector<std::size_t> parse_coarse(const std::string& spec) {
    std::vector<std::size_t> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw InvalidArgumentError("--coarse: cannot parse index '" + tok + "'");
        }
        if (used != tok.size() || v < 1) {
            throw InvalidArgumentError("--coarse: indices are 1-based integers, got '" + tok +
                                       "'");
        }
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    if (out.empty()) throw EmptyCoarseSetError("--coarse: no indices given");
    return out;
}

SpdMatrix load_spd(const std::string& path, const char* what) {
    try {
        return SpdMatrix(read_matrix_market(path));
    } catch (const NotSymmetricError& e) {
        throw NotSymmetricError(std::string(what) + " (" + path + "): " + e.what());
    } catch (const NotSpdError& e) {
        throw NotSpdError(std::string(what) + " (" + path + "): " + e.what());
    }
}

SpdMatrix default_x(const SpdMatrix& a) {
    Vector d(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) d[i] = a.matrix()(i, i);
    return SpdMatrix(DenseMatrix::diagonal(d));
}

DenseMatrix default_m(const SpdMatrix& a) {
    // Weighted Jacobi diag(A)/0.8.
    Vector d(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) d[i] = a.matrix()(i, i) / 0.8;
    return DenseMatrix::diagonal(d);
}

Decomposition build_decomposition(const CommonOpts& o, std::size_t n) {
    if (!o.coarse_spec.empty()) {
        return Decomposition::cf_splitting(n, parse_coarse(o.coarse_spec));
    }
    if (!o.r_path.empty()) {
        DenseMatrix r = read_matrix_market(o.r_path);
        DenseMatrix s = o.s_path.empty() ? null_space(r).basis : read_matrix_market(o.s_path);
        return Decomposition(std::move(r), std::move(s));
    }
    throw InvalidArgumentError("a decomposition is required: pass --coarse or --r");
}

Vector load_vector(const std::string& path, std::size_t n, const char* what) {
    DenseMatrix m = read_matrix_market(path);
    if (m.cols() != 1 || m.rows() != n) {
        throw DimensionMismatchError(std::string(what) + ": expected a " + std::to_string(n) +
                                     "x1 matrix in " + path);
    }
    return m.col(0);
}

void add_common_inputs(ReportDocument& doc, const CommonOpts& o) {
    if (!o.matrix_path.empty()) doc.add_input_digest("matrix", o.matrix_path);
    if (!o.x_path.empty()) doc.add_input_digest("x", o.x_path);
    if (!o.m_path.empty()) doc.add_input_digest("m", o.m_path);
    if (!o.p_path.empty()) doc.add_input_digest("p", o.p_path);
    if (!o.r_path.empty()) doc.add_input_digest("r", o.r_path);
    if (!o.s_path.empty()) doc.add_input_digest("s", o.s_path);
}

int run_measure(const CommonOpts& o) {
    const SpdMatrix a = load_spd(o.matrix_path, "--matrix");
    const SpdMatrix x = o.x_path.empty() ? default_x(a) : load_spd(o.x_path, "--x");
    const Decomposition d = build_decomposition(o, a.order());
    const DenseMatrix m_mat = o.m_path.empty() ? default_m(a) : read_matrix_market(o.m_path);
    const Smoother m(m_mat, a);

    MeasureReport rep;
    rep.mu_star = mu_star(a, x, d);
    rep.lambda_min_ax = 1.0 / rep.mu_star;

    std::optional<Prolongation> p;
    if (!o.p_path.empty()) {
        p.emplace(read_matrix_market(o.p_path), d);
        rep.worst_case = worst_case_mu(a, x, d, *p);
        rep.lambda_min_bx = 1.0 / rep.worst_case;
    } else {
        rep.worst_case = rep.mu_star;  // the optimum itself
        rep.lambda_min_bx = rep.lambda_min_ax;
    }

    if (m.a_convergent() && p) {
        rep.k = k_measure(a, m, p->coarse_projector());
        rep.k_tg = k_tg(a, m, *p);
        TgSetup setup(a, m, *p);
        rep.e_tg_a_norm = a_norm(build_e_tg(setup), a);
        const AngleReport angles = theta_angle(*p, m.m_tilde());
        rep.theta_min = angles.min_angle;
        rep.theta_max = angles.max_angle;
    }
    try {
        const SmootherConstants sc = smoother_constants(a, m);
        rep.delta = sc.delta;
        rep.omega = sc.omega;
    } catch (const MsNotSpdError&) {
        // Delta and omega are undefined without an SPD symmetric part.
    }
    rep.validate();

    std::cout << "mu_star          = " << fmt(rep.mu_star) << "\n";
    std::cout << "lambda_min(A_X)  = " << fmt(rep.lambda_min_ax) << "\n";
    if (p) {
        std::cout << "worst_case_mu    = " << fmt(rep.worst_case) << "\n";
        std::cout << "lambda_min(B_X)  = " << fmt(rep.lambda_min_bx) << "\n";
    }
    if (rep.k) std::cout << "K                = " << fmt(*rep.k) << "\n";
    if (rep.k_tg) std::cout << "K_TG             = " << fmt(*rep.k_tg) << "\n";
    if (rep.e_tg_a_norm) std::cout << "||E_TG||_A       = " << fmt(*rep.e_tg_a_norm) << "\n";
    if (rep.theta_min) {
        std::cout << "theta(min,max)   = (" << fmt(*rep.theta_min) << ", " << fmt(*rep.theta_max)
                  << ")\n";
    }
    if (rep.delta) std::cout << "Delta            = " << fmt(*rep.delta) << "\n";
    if (rep.omega) std::cout << "omega            = " << fmt(*rep.omega) << "\n";
    if (!m.a_convergent()) {
        std::cout << "note: smoother is not A-convergent; K, K_TG, ||E_TG||_A and theta "
                     "are omitted\n";
    }

    if (!o.json_path.empty()) {
        ReportDocument doc;
        doc.set_command("measure");
        add_common_inputs(doc, o);
        doc.set_tolerance("tol", o.tol);
        nlohmann::json section = to_json(rep);
        if (!p) {
            // Without a concrete P the worst case is the optimum itself;
            // drop the per-P fields rather than echo the duplicates.
            section.erase("worst_case_mu");
            section.erase("lambda_min_bx");
        }
        section["smoother_a_convergent"] = m.a_convergent();
        doc.root()["measure"] = section;
        doc.write(o.json_path);
    }
    return 0;
}

int run_classify(const CommonOpts& o) {
    const SpdMatrix a = load_spd(o.matrix_path, "--matrix");
    const SpdMatrix x = o.x_path.empty() ? default_x(a) : load_spd(o.x_path, "--x");
    const Decomposition d = build_decomposition(o, a.order());
    if (o.p_path.empty()) throw InvalidArgumentError("classify: --p is required");
    const Prolongation p(read_matrix_market(o.p_path), d);

    const ClassificationReport rep = classify(a, x, d, p, o.tol);
    auto flag = [](bool b) { return b ? "true" : "false"; };
    std::cout << "in_p0    = " << flag(rep.in_p0) << "\n";
    std::cout << "in_p1    = " << flag(rep.in_p1) << "\n";
    std::cout << "in_p2    = " << flag(rep.in_p2) << "\n";
    std::cout << "in_pstar = " << flag(rep.in_pstar) << "\n";
    std::cout << "lambda_min(A_X) = " << fmt(rep.lambda_min_ax) << "\n";
    std::cout << "lambda_min(B_X) = " << fmt(rep.lambda_min_bx) << "\n";

    if (!o.json_path.empty()) {
        ReportDocument doc;
        doc.set_command("classify");
        add_common_inputs(doc, o);
        doc.set_tolerance("tol", o.tol);
        doc.set_tolerance("rank_tol", rep.rank_tol);
        doc.root()["classification"] = to_json(rep);
        doc.write(o.json_path);
    }
    return 0;
}

int run_ideal(const CommonOpts& o, const std::string& out_path) {
    const SpdMatrix a = load_spd(o.matrix_path, "--matrix");
    const Decomposition d = build_decomposition(o, a.order());

    const Prolongation direct = ideal_p0_direct(a, d);
    const Prolongation via_s = ideal_p0_via_s(a, d);
    const double agreement = frobenius_norm(direct.matrix() - via_s.matrix()) /
                             frobenius_norm(direct.matrix());

    std::cout << "ideal interpolation (direct formula):\n";
    for (std::size_t i = 0; i < direct.matrix().rows(); ++i) {
        std::cout << " ";
        for (std::size_t j = 0; j < direct.matrix().cols(); ++j) {
            std::cout << " " << fmt(direct.matrix()(i, j));
        }
        std::cout << "\n";
    }
    std::cout << "formula agreement residual = " << fmt(agreement) << "\n";
    if (!out_path.empty()) {
        write_matrix_market(out_path, direct.matrix());
        std::cout << "wrote " << out_path << "\n";
    }

    if (!o.json_path.empty()) {
        ReportDocument doc;
        doc.set_command("ideal");
        add_common_inputs(doc, o);
        doc.set_tolerance("tol", o.tol);
        nlohmann::json entries = nlohmann::json::array();
        for (std::size_t i = 0; i < direct.matrix().rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < direct.matrix().cols(); ++j) {
                row.push_back(direct.matrix()(i, j));
            }
            entries.push_back(row);
        }
        doc.root()["ideal"] = {{"p_star", entries}, {"formula_agreement", agreement}};
        doc.add_verdict("formulas_agree", agreement <= 1e-10);
        doc.write(o.json_path);
    }
    return 0;
}

int run_solve(const CommonOpts& o, const std::string& f_path, const std::string& u0_path,
              double reduction, std::size_t max_iters, bool absolute) {
    const SpdMatrix a = load_spd(o.matrix_path, "--matrix");
    const Decomposition d = build_decomposition(o, a.order());
    const Prolongation p = o.p_path.empty()
                               ? ideal_p0_direct(a, d)
                               : Prolongation(read_matrix_market(o.p_path), d);
    const DenseMatrix m_mat = o.m_path.empty() ? default_m(a) : read_matrix_market(o.m_path);
    const Smoother m(m_mat, a);

    const std::size_t n = a.order();
    const Vector f = f_path.empty() ? Vector(n, 1.0) : load_vector(f_path, n, "--f");
    const Vector u0 = u0_path.empty() ? Vector(n, 0.0) : load_vector(u0_path, n, "--u0");

    TgSetup setup(a, m, p);
    const SolveTrace trace = solve(setup, f, u0, reduction, max_iters,
                                   absolute ? StopRule::absolute : StopRule::relative);

    std::cout << "iterations = " << trace.iterations << "\n";
    std::cout << "converged  = " << (trace.converged ? "true" : "false") << "\n";
    std::cout << "residual   = " << fmt(trace.residual_norms.back()) << " (initial "
              << fmt(trace.residual_norms.front()) << ")\n";
    if (!trace.converged) {
        std::cout << "note: iteration cap " << max_iters << " reached before the target\n";
    }

    if (!o.json_path.empty()) {
        ReportDocument doc;
        doc.set_command("solve");
        add_common_inputs(doc, o);
        if (!f_path.empty()) doc.add_input_digest("f", f_path);
        if (!u0_path.empty()) doc.add_input_digest("u0", u0_path);
        doc.set_tolerance("reduction", reduction);
        doc.root()["solve"] = to_json(trace);
        doc.root()["solve"]["stop_rule"] = absolute ? "absolute" : "relative";
        doc.add_verdict("converged", trace.converged);
        doc.write(o.json_path);
    }
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& json_path) {
    std::vector<SuiteResult> results;
    if (suite == "all") {
        for (const std::string& name : suite_names()) results.push_back(run_suite(name, seed));
    } else {
        results.push_back(run_suite(suite, seed));
    }

    bool all_pass = true;
    for (const SuiteResult& res : results) {
        for (const CheckResult& check : res.checks) {
            std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << res.suite << "/" << check.name
                      << ": " << check.details << "\n";
            all_pass = all_pass && check.pass;
        }
    }
    std::cout << (all_pass ? "verification passed" : "verification FAILED") << "\n";

    if (!json_path.empty()) {
        ReportDocument doc;
        doc.set_command("verify");
        doc.root()["seed"] = seed;
        nlohmann::json suites = nlohmann::json::object();
        for (const SuiteResult& res : results) {
            nlohmann::json checks = nlohmann::json::object();
            for (const CheckResult& check : res.checks) {
                checks[check.name] = {{"pass", check.pass}, {"details", check.details}};
                doc.add_verdict(res.suite + "/" + check.name, check.pass);
            }
            suites[res.suite] = checks;
        }
        doc.root()["suites"] = suites;
        doc.write(json_path);
    }
    return all_pass ? 0 : 3;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Two-grid ideal interpolation toolkit"};
    app.require_subcommand(1);

    CommonOpts measure_opts;
    auto* measure_cmd =
        app.add_subcommand("measure", "coarse-space quality and convergence measures");
    add_matrix_opts(measure_cmd, measure_opts);
    measure_cmd->add_option("--m", measure_opts.m_path, "smoother M (default: diag(A)/0.8)");
    measure_cmd->add_option("--p", measure_opts.p_path, "interpolation P (MatrixMarket)");

    CommonOpts classify_opts;
    auto* classify_cmd =
        app.add_subcommand("classify", "membership of P in the ideal-interpolation sets");
    add_matrix_opts(classify_cmd, classify_opts);
    classify_cmd->add_option("--p", classify_opts.p_path, "interpolation P (MatrixMarket)")
        ->required();

    CommonOpts ideal_opts;
    std::string ideal_out;
    auto* ideal_cmd =
        app.add_subcommand("ideal", "construct the ideal interpolation by both formulas");
    add_matrix_opts(ideal_cmd, ideal_opts);
    ideal_cmd->add_option("--out", ideal_out, "write P* to this MatrixMarket file");

    CommonOpts solve_opts;
    std::string f_path;
    std::string u0_path;
    double reduction = 1e-6;
    std::size_t max_iters = 100;
    bool absolute = false;
    auto* solve_cmd = app.add_subcommand("solve", "run the symmetrized two-grid iteration");
    add_matrix_opts(solve_cmd, solve_opts);
    solve_cmd->add_option("--m", solve_opts.m_path, "smoother M (default: diag(A)/0.8)");
    solve_cmd->add_option("--p", solve_opts.p_path, "interpolation P (default: ideal)");
    solve_cmd->add_option("--f", f_path, "right-hand side (default: ones)");
    solve_cmd->add_option("--u0", u0_path, "initial guess (default: zeros)");
    solve_cmd->add_option("--reduction", reduction, "residual threshold (default 1e-6)");
    solve_cmd->add_option("--max-iters", max_iters, "iteration cap (default 100)");
    solve_cmd->add_flag("--absolute-residual", absolute,
                        "stop on ||r|| <= reduction instead of ||r|| <= reduction * ||r0||");

    std::string suite;
    std::uint64_t seed = 42;
    std::string verify_json;
    auto* verify_cmd = app.add_subcommand("verify", "run a built-in verification suite");
    verify_cmd->add_option("--suite", suite, "one of: example21, theorem35, theorem38, theorem41, bounds, angles2d, all")
        ->required();
    verify_cmd->add_option("--seed", seed, "seed for randomized suites (default 42)");
    verify_cmd->add_option("--json", verify_json, "write a JSON report to this path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (measure_cmd->parsed()) return run_measure(measure_opts);
        if (classify_cmd->parsed()) return run_classify(classify_opts);
        if (ideal_cmd->parsed()) return run_ideal(ideal_opts, ideal_out);
        if (solve_cmd->parsed()) {
            return run_solve(solve_opts, f_path, u0_path, reduction, max_iters, absolute);
        }
        if (verify_cmd->parsed()) return run_verify(suite, seed, verify_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == Error::Kind::input ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace tgideal
