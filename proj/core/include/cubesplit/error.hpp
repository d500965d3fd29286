#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubesplit {

enum class ErrorCode {
    InvalidSymbol,
    EmptyPattern,
    DimensionMismatch,
    NotAPermutation,
    AmbientTooLarge,
    CanonicalizationBudgetExceeded,
    OutOfRange,
    InputNotAntipodalSplitting,
    ParameterOutOfRange,
    MixedBlockSize,
    SupportTooLarge,
    ParameterTooLarge,
    SpanTooLarge,
    NotAntipodalPair,
    DuplicateEdge,
    MissingPhiEntry,
    BudgetExceeded,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map them to exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace cubesplit
