#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace casimir {

enum class ErrorCode {
    // laurent-series
    DivisionByZeroSeries,
    ZeroScale,
    SingularComposition,
    OutOfRange,
    // mode-sum / energy-expansion
    NonPositiveEpsilon,
    CutoffDomain,
    NotConverged,
    InvalidMode,
    FitSingular,
    // stress-tensor
    NonPositiveSeparation,
    CothPole,
    LightlikeSeparation,
    WallContact,
    // minkowski-core
    InvalidSeparation,
    InvalidGeometry,
};

std::string_view to_string(ErrorCode code);

/// True for failures caused by parameters outside the physical domain
/// (as opposed to convergence or internal failures).
bool is_domain_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace casimir
