#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rtm {

enum class ErrorCode {
    InvalidArgument,
    InvalidN,
    RetryLimitExceeded,
    TooLarge,
    UnknownFace,
    OddEulerCharacteristic,
    OrientationInconsistency,
    SizeLimitExceeded,
    DisconnectedGraph,
    NoConvergence,
    IoError,
    InsufficientData,
    ConservationViolation,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidN: return "invalid-n";
    case ErrorCode::RetryLimitExceeded: return "retry-limit-exceeded";
    case ErrorCode::TooLarge: return "too-large";
    case ErrorCode::UnknownFace: return "unknown-face";
    case ErrorCode::OddEulerCharacteristic: return "odd-euler-characteristic";
    case ErrorCode::OrientationInconsistency: return "orientation-inconsistency";
    case ErrorCode::SizeLimitExceeded: return "size-limit-exceeded";
    case ErrorCode::DisconnectedGraph: return "disconnected-graph";
    case ErrorCode::NoConvergence: return "no-convergence";
    case ErrorCode::IoError: return "io-error";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::ConservationViolation: return "conservation-violation";
    }
    return "unknown";
}

} // namespace rtm
