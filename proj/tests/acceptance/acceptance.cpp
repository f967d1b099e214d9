// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Each criterion aggregates named checks from the built-in verification
// suites and enforces its runtime budget.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "tgideal/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    std::string label;
    bool pass = true;
    double seconds = 0.0;
    std::string details;
};

double elapsed(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Criterion from_checks(const std::string& label, const tgideal::SuiteResult& suite,
                      const std::vector<std::string>& names, double seconds, double budget) {
    Criterion c;
    c.label = label;
    c.seconds = seconds;
    for (const std::string& name : names) {
        const tgideal::CheckResult* check = suite.find(name);
        if (check == nullptr) {
            c.pass = false;
            c.details += name + ": missing; ";
            continue;
        }
        if (!check->pass) c.pass = false;
        c.details += check->name + ": " + check->details + "; ";
    }
    if (seconds >= budget) {
        c.pass = false;
        c.details += "runtime budget exceeded; ";
    }
    return c;
}

}  // namespace

int main() {
    constexpr std::uint64_t kSeed = 42;
    std::vector<Criterion> results;

    {
        const auto t0 = Clock::now();
        const tgideal::SuiteResult ex = tgideal::verify_example21();
        const double dt = elapsed(t0);
        results.push_back(from_checks(
            "criterion 1: worked-example golden values",
            ex, {"mu_star", "worst_case_p", "worst_case_pstar", "ideal_p0_direct", "classify_p",
                 "classify_pstar"},
            dt, 1.0));
        results.push_back(from_checks("criterion 2: fifteen-iteration experiment", ex,
                                      {"solve_p", "solve_pstar"}, dt, 1.0));
    }
    {
        const auto t0 = Clock::now();
        const tgideal::SuiteResult r = tgideal::verify_theorem35(kSeed);
        results.push_back(from_checks("criterion 3: set-relation property suite", r,
                                      {"implications", "ideal_positive"}, elapsed(t0), 30.0));
    }
    {
        const auto t0 = Clock::now();
        const tgideal::SuiteResult r = tgideal::verify_theorem41(kSeed);
        results.push_back(from_checks("criterion 4: explicit-formula agreement and uniqueness",
                                      r, {"formula_agreement", "range_equiv", "uniqueness"},
                                      elapsed(t0), 30.0));
    }
    {
        const auto t0 = Clock::now();
        const tgideal::SuiteResult r = tgideal::verify_theorem38(kSeed);
        results.push_back(from_checks("criterion 5: proportional-X equivalence suite", r,
                                      {"pstar_iff_p0"}, elapsed(t0), 15.0));
    }
    {
        const auto t0 = Clock::now();
        const tgideal::SuiteResult r = tgideal::verify_bounds(kSeed);
        const double dt = elapsed(t0);
        results.push_back(from_checks("criterion 6: convergence-identity suite", r,
                                      {"etg_identity", "etg_k_bound"}, dt, 10.0));
        results.push_back(from_checks("criterion 7: pointwise bound suite", r,
                                      {"mu_bound", "projection_bound"}, dt, 10.0));
        results.push_back(from_checks("criterion 8: unit-norm projection suite", r,
                                      {"qstar_norm", "q_norm_lower"}, dt, 10.0));
    }
    {
        const auto t0 = Clock::now();
        const tgideal::SuiteResult r = tgideal::verify_angles2d(kSeed);
        results.push_back(from_checks("criterion 9: two-dimensional angle identity", r,
                                      {"angle_identity", "p_sharp_angle", "p_sharp_k"},
                                      elapsed(t0), 5.0));
    }

    int failures = 0;
    for (const Criterion& c : results) {
        if (!c.pass) ++failures;
        std::printf("[%s] %s (%.2f s) %s\n", c.pass ? "PASS" : "FAIL", c.label.c_str(),
                    c.seconds, c.details.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
