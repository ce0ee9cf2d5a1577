#include "admesh/error.hpp"

namespace admesh {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorCode::DegenerateNodes: return "DegenerateNodes";
        case ErrorCode::NonpositiveG: return "NonpositiveG";
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::UnknownProblem: return "UnknownProblem";
        case ErrorCode::BadParam: return "BadParam";
        case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
        case ErrorCode::MissingDerivative: return "MissingDerivative";
        case ErrorCode::LevelBracketFail: return "LevelBracketFail";
        case ErrorCode::UnknownFormat: return "UnknownFormat";
    }
    return "Unknown";
}

}  // namespace admesh
