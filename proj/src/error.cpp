#include <critsurf/error.hpp>

namespace critsurf {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EulerMismatch: return "EulerMismatch";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::RingFace: return "RingFace";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NotSimpleCurve: return "NotSimpleCurve";
    case ErrorCode::PropertyViolated: return "PropertyViolated";
    case ErrorCode::ImproperPrecoloring: return "ImproperPrecoloring";
    case ErrorCode::PrecoloringExtends: return "PrecoloringExtends";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotA4Face: return "NotA4Face";
    case ErrorCode::RingBound: return "RingBound";
    case ErrorCode::Adjacent: return "Adjacent";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NoNonExtendingPrecoloring: return "NoNonExtendingPrecoloring";
    case ErrorCode::NotFlippable: return "NotFlippable";
    case ErrorCode::CatalogIncomplete: return "CatalogIncomplete";
    case ErrorCode::HasTriangle: return "HasTriangle";
    case ErrorCode::ColoringFailed: return "ColoringFailed";
    case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

} // namespace critsurf
