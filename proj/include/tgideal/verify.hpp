#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tgideal {

/// Outcome of one named check inside a verification suite.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

std::vector<std::string> suite_names();

/// Runs one of the built-in verification suites. The seed drives every
/// randomized instance, so results are reproducible.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

SuiteResult verify_example21();
SuiteResult verify_theorem35(std::uint64_t seed);
SuiteResult verify_theorem38(std::uint64_t seed);
SuiteResult verify_theorem41(std::uint64_t seed);
SuiteResult verify_bounds(std::uint64_t seed);
SuiteResult verify_angles2d(std::uint64_t seed);

}  // namespace tgideal
