#include "windex/error.hpp"

namespace windex {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::AtCorner: return "AtCorner";
        case ErrorCode::OverlapDetected: return "OverlapDetected";
        case ErrorCode::NotTangential: return "NotTangential";
        case ErrorCode::OnCurve: return "OnCurve";
        case ErrorCode::NoRegularPoint: return "NoRegularPoint";
        case ErrorCode::IndexNotConstant: return "IndexNotConstant";
        case ErrorCode::NotEmbedded: return "NotEmbedded";
        case ErrorCode::UnboundedNegative: return "UnboundedNegative";
        case ErrorCode::RegularLeftmost: return "RegularLeftmost";
        case ErrorCode::BadSingularity: return "BadSingularity";
        case ErrorCode::BadSector: return "BadSector";
        case ErrorCode::ProbeFailed: return "ProbeFailed";
        case ErrorCode::IllOrientedCut: return "IllOrientedCut";
        case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
        case ErrorCode::InvariantViolated: return "InvariantViolated";
        case ErrorCode::FieldBlowup: return "FieldBlowup";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
    : Error(ErrorCode::SyntaxError, what), offset_(offset), expected_(std::move(expected)) {}

DomainError::DomainError(std::size_t begin, std::size_t end, const std::string& what)
    : Error(ErrorCode::DomainError, what), begin_(begin), end_(end) {}

}  // namespace windex
