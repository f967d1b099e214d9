#pragma once

#include <string>

#include <json.hpp>

#include "tgideal/ideal.hpp"
#include "tgideal/measures.hpp"
#include "tgideal/tg.hpp"

namespace tgideal {

/// Structured result document written by the CLI: schema-versioned JSON with
/// lexicographically sorted keys, LF line endings and finite numbers only.
/// Verdict entries are plain booleans derived from the numeric fields.
class ReportDocument {
public:
    ReportDocument();

    nlohmann::json& root() noexcept { return doc_; }
    const nlohmann::json& root() const noexcept { return doc_; }

    void set_command(const std::string& subcommand);
    void add_input_digest(const std::string& name, const std::string& path);
    void set_tolerance(const std::string& name, double value);
    void add_verdict(const std::string& name, bool pass);
    bool all_verdicts_pass() const;

    /// Serialized form (sorted keys, two-space indent, trailing newline).
    std::string dump() const;
    void write(const std::string& path) const;

    static ReportDocument read(const std::string& path);

private:
    nlohmann::json doc_;
};

/// JSON conversions for the report sections. All throw
/// InvalidArgumentError on non-finite values.
nlohmann::json to_json(const MeasureReport& rep);
nlohmann::json to_json(const ClassificationReport& rep);
nlohmann::json to_json(const SolveTrace& trace);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string digest_file(const std::string& path);

}  // namespace tgideal
