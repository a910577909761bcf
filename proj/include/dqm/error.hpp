#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dqm {

enum class ErrorCode {
    DimensionMismatch,
    NotSquare,
    NotHermitian,
    Singular,
    NotRepresentable,
    NegativeArgument,
    ConvergenceFailure,
    IllConditionedGap,
    PreconditionViolated,
    BadK,
    EmptyMatrix,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch on the kind of failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dqm
