#include "dqm/error.hpp"

namespace dqm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::NegativeArgument: return "NegativeArgument";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::IllConditionedGap: return "IllConditionedGap";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::BadK: return "BadK";
        case ErrorCode::EmptyMatrix: return "EmptyMatrix";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace dqm
