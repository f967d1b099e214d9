#pragma once

#include <stdexcept>
#include <string>

namespace tgideal {

/// Base class for all library errors. The kind distinguishes failures caused
/// by user-supplied data (CLI exit code 2) from numerical or logic faults
/// inside the library (CLI exit code 1).
class Error : public std::runtime_error {
public:
    enum class Kind { input, internal };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

struct NotSpdError : Error {
    explicit NotSpdError(const std::string& w) : Error(Kind::input, w) {}
};
struct NotSymmetricError : Error {
    explicit NotSymmetricError(const std::string& w) : Error(Kind::input, w) {}
};
struct NoConvergenceError : Error {
    explicit NoConvergenceError(const std::string& w) : Error(Kind::internal, w) {}
};
struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& w) : Error(Kind::input, w) {}
};
struct EmptySubspaceError : Error {
    explicit EmptySubspaceError(const std::string& w) : Error(Kind::input, w) {}
};
struct SingularMatrixError : Error {
    explicit SingularMatrixError(const std::string& w) : Error(Kind::input, w) {}
};
struct ConditionCViolatedError : Error {
    explicit ConditionCViolatedError(const std::string& w) : Error(Kind::input, w) {}
};
struct EmptyCoarseSetError : Error {
    explicit EmptyCoarseSetError(const std::string& w) : Error(Kind::input, w) {}
};
struct CoarseSetIsAllError : Error {
    explicit CoarseSetIsAllError(const std::string& w) : Error(Kind::input, w) {}
};
struct InvalidArgumentError : Error {
    explicit InvalidArgumentError(const std::string& w) : Error(Kind::input, w) {}
};
struct SmootherNotAConvergentError : Error {
    explicit SmootherNotAConvergentError(const std::string& w) : Error(Kind::input, w) {}
};
struct MsNotSpdError : Error {
    explicit MsNotSpdError(const std::string& w) : Error(Kind::input, w) {}
};
struct ZeroVectorError : Error {
    explicit ZeroVectorError(const std::string& w) : Error(Kind::input, w) {}
};
struct SingularSmootherError : Error {
    explicit SingularSmootherError(const std::string& w) : Error(Kind::input, w) {}
};
struct PartitionInvalidError : Error {
    explicit PartitionInvalidError(const std::string& w) : Error(Kind::input, w) {}
};
struct SingularAccError : Error {
    explicit SingularAccError(const std::string& w) : Error(Kind::input, w) {}
};
struct NonPositiveEpsError : Error {
    explicit NonPositiveEpsError(const std::string& w) : Error(Kind::input, w) {}
};
struct InternalInconsistencyError : Error {
    explicit InternalInconsistencyError(const std::string& w) : Error(Kind::internal, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(Kind::input, w) {}
};
struct UnsupportedFieldError : Error {
    explicit UnsupportedFieldError(const std::string& w) : Error(Kind::input, w) {}
};

/// Matrix Market parsing failure; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& w)
        : Error(Kind::input, "line " + std::to_string(line) + ": " + w), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace tgideal
