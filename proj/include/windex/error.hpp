#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace windex {

// One code per failure mode. The CLI maps each code to its own exit status
// (see exit_code()).
enum class ErrorCode {
    InvalidInput = 1,
    DegenerateCurve,
    AtCorner,
    OverlapDetected,
    NotTangential,
    OnCurve,
    NoRegularPoint,
    IndexNotConstant,
    NotEmbedded,
    UnboundedNegative,
    RegularLeftmost,
    BadSingularity,
    BadSector,
    ProbeFailed,
    IllOrientedCut,
    MaxIterExceeded,
    InvariantViolated,
    FieldBlowup,
    OutOfRange,
    HypothesisViolated,
    SyntaxError,
    DomainError,
    ConstructionFailed,
};

std::string_view error_name(ErrorCode code);

// Process exit status used by the CLI for an error code.
constexpr int exit_code(ErrorCode code) { return 10 + static_cast<int>(code); }

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised by the field expression parser.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& what);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Raised when an expression evaluates outside its domain. The span is the
// byte range of the offending subexpression in the source text.
class DomainError : public Error {
public:
    DomainError(std::size_t begin, std::size_t end, const std::string& what);

    std::size_t span_begin() const noexcept { return begin_; }
    std::size_t span_end() const noexcept { return end_; }

private:
    std::size_t begin_;
    std::size_t end_;
};

}  // namespace windex
