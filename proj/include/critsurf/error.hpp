#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace critsurf {

enum class ErrorCode {
    ParseError,
    EulerMismatch,
    NotSimple,
    NotNormal,
    DanglingReference,
    RingFace,
    NotACycle,
    NotSimpleCurve,
    PropertyViolated,
    ImproperPrecoloring,
    PrecoloringExtends,
    DomainError,
    NotCritical,
    HypothesisViolated,
    NotA4Face,
    RingBound,
    Adjacent,
    PreconditionFailed,
    NoNonExtendingPrecoloring,
    NotFlippable,
    CatalogIncomplete,
    HasTriangle,
    ColoringFailed,
    Unsupported,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace critsurf
