#include "cubesplit/error.hpp"

namespace cubesplit {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidSymbol: return "InvalidSymbol";
    case ErrorCode::EmptyPattern: return "EmptyPattern";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::AmbientTooLarge: return "AmbientTooLarge";
    case ErrorCode::CanonicalizationBudgetExceeded: return "CanonicalizationBudgetExceeded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InputNotAntipodalSplitting: return "InputNotAntipodalSplitting";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::MixedBlockSize: return "MixedBlockSize";
    case ErrorCode::SupportTooLarge: return "SupportTooLarge";
    case ErrorCode::ParameterTooLarge: return "ParameterTooLarge";
    case ErrorCode::SpanTooLarge: return "SpanTooLarge";
    case ErrorCode::NotAntipodalPair: return "NotAntipodalPair";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::MissingPhiEntry: return "MissingPhiEntry";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what) :
    std::runtime_error(std::string(to_string(code)) + ": " + what),
    code_(code)
{
}

} // namespace cubesplit
