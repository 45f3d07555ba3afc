#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhc {

enum class ErrorCode {
    BadInput,
    NotSymmetric,
    SingularMatrix,
    UnknownInput,
    BadParams,
    IncompatibleBlocks,
    AmbiguousKernel,
    SingularC,
    SingularProjection,
    SingularT,
    NoRealRoot,
    DegenerateKernel,
    NoConvergence,
    ValidationFailed,
    QrsDegenerate,
    NoInterval,
    SingularGreen,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
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
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::UnknownInput: return "UnknownInput";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::IncompatibleBlocks: return "IncompatibleBlocks";
    case ErrorCode::AmbiguousKernel: return "AmbiguousKernel";
    case ErrorCode::SingularC: return "SingularC";
    case ErrorCode::SingularProjection: return "SingularProjection";
    case ErrorCode::SingularT: return "SingularT";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::QrsDegenerate: return "QrsDegenerate";
    case ErrorCode::NoInterval: return "NoInterval";
    case ErrorCode::SingularGreen: return "SingularGreen";
    }
    return "Unknown";
}

} // namespace qhc
