#include "casimir/error.hpp"

namespace casimir {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZeroSeries: return "DivisionByZeroSeries";
        case ErrorCode::ZeroScale: return "ZeroScale";
        case ErrorCode::SingularComposition: return "SingularComposition";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NonPositiveEpsilon: return "NonPositiveEpsilon";
        case ErrorCode::CutoffDomain: return "CutoffDomain";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::InvalidMode: return "InvalidMode";
        case ErrorCode::FitSingular: return "FitSingular";
        case ErrorCode::NonPositiveSeparation: return "NonPositiveSeparation";
        case ErrorCode::CothPole: return "CothPole";
        case ErrorCode::LightlikeSeparation: return "LightlikeSeparation";
        case ErrorCode::WallContact: return "WallContact";
        case ErrorCode::InvalidSeparation: return "InvalidSeparation";
        case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    }
    return "UnknownError";
}

bool is_domain_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotConverged:
        case ErrorCode::FitSingular:
        case ErrorCode::DivisionByZeroSeries:
        case ErrorCode::SingularComposition:
        case ErrorCode::OutOfRange:
            return false;
        default:
            return true;
    }
}

}  // namespace casimir
