#include "tgideal/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tgideal/errors.hpp"

namespace tgideal {

namespace {

constexpr int kSchemaVersion = 1;

double finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw InvalidArgumentError(std::string("report: non-finite value for ") + what);
    }
    return v;
}

void check_tree_finite(const nlohmann::json& j, const std::string& path) {
    if (j.is_number_float() && !std::isfinite(j.get<double>())) {
        throw InvalidArgumentError("report: non-finite number at " + path);
    }
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) check_tree_finite(value, path + "/" + key);
    } else if (j.is_array()) {
        std::size_t idx = 0;
        for (const auto& value : j) check_tree_finite(value, path + "/" + std::to_string(idx++));
    }
}

}  // namespace

ReportDocument::ReportDocument() {
    doc_["schema_version"] = kSchemaVersion;
    doc_["inputs"] = nlohmann::json::object();
    doc_["tolerances"] = nlohmann::json::object();
    doc_["verdicts"] = nlohmann::json::object();
}

void ReportDocument::set_command(const std::string& subcommand) { doc_["command"] = subcommand; }

void ReportDocument::add_input_digest(const std::string& name, const std::string& path) {
    doc_["inputs"][name] = {{"path", path}, {"fnv1a64", digest_file(path)}};
}

void ReportDocument::set_tolerance(const std::string& name, double value) {
    doc_["tolerances"][name] = finite(value, name.c_str());
}

void ReportDocument::add_verdict(const std::string& name, bool pass) {
    doc_["verdicts"][name] = pass;
}

bool ReportDocument::all_verdicts_pass() const {
    for (const auto& [key, value] : doc_["verdicts"].items()) {
        (void)key;
        if (!value.get<bool>()) return false;
    }
    return true;
}

std::string ReportDocument::dump() const {
    check_tree_finite(doc_, "");
    return doc_.dump(2) + "\n";
}

void ReportDocument::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << dump();
    if (!out) throw IoError("failed writing '" + path + "'");
}

ReportDocument ReportDocument::read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    ReportDocument doc;
    try {
        doc.doc_ = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("malformed report '" + path + "': " + e.what());
    }
    return doc;
}

nlohmann::json to_json(const MeasureReport& rep) {
    nlohmann::json j;
    j["mu_star"] = finite(rep.mu_star, "mu_star");
    j["worst_case_mu"] = finite(rep.worst_case, "worst_case_mu");
    j["lambda_min_ax"] = finite(rep.lambda_min_ax, "lambda_min_ax");
    j["lambda_min_bx"] = finite(rep.lambda_min_bx, "lambda_min_bx");
    if (rep.k) j["k"] = finite(*rep.k, "k");
    if (rep.k_tg) j["k_tg"] = finite(*rep.k_tg, "k_tg");
    if (rep.e_tg_a_norm) j["e_tg_a_norm"] = finite(*rep.e_tg_a_norm, "e_tg_a_norm");
    if (rep.theta_min) j["theta_min"] = finite(*rep.theta_min, "theta_min");
    if (rep.theta_max) j["theta_max"] = finite(*rep.theta_max, "theta_max");
    if (rep.delta) j["delta"] = finite(*rep.delta, "delta");
    if (rep.omega) j["omega"] = finite(*rep.omega, "omega");
    return j;
}

nlohmann::json to_json(const ClassificationReport& rep) {
    nlohmann::json j;
    j["in_p0"] = rep.in_p0;
    j["in_p1"] = rep.in_p1;
    j["in_p2"] = rep.in_p2;
    j["in_pstar"] = rep.in_pstar;
    j["lambda_min_ax"] = finite(rep.lambda_min_ax, "lambda_min_ax");
    j["lambda_min_bx"] = finite(rep.lambda_min_bx, "lambda_min_bx");
    j["ax_eigenspace_dim"] = rep.ax_eigenspace_dim;
    j["bx_eigenspace_dim"] = rep.bx_eigenspace_dim;
    j["nullspace_dim"] = rep.nullspace_dim;
    j["p1_intersection_dim"] = rep.p1_intersection_dim;
    j["p2_intersection_dim"] = rep.p2_intersection_dim;
    j["tol"] = finite(rep.tol, "tol");
    j["rank_tol"] = finite(rep.rank_tol, "rank_tol");
    return j;
}

nlohmann::json to_json(const SolveTrace& trace) {
    nlohmann::json j;
    j["iterations"] = trace.iterations;
    j["converged"] = trace.converged;
    nlohmann::json norms = nlohmann::json::array();
    for (double r : trace.residual_norms) norms.push_back(finite(r, "residual_norm"));
    j["residual_norms"] = norms;
    nlohmann::json u = nlohmann::json::array();
    for (double v : trace.final_u) u.push_back(finite(v, "final_u"));
    j["final_u"] = u;
    return j;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for digest");
    std::uint64_t hash = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace tgideal
