#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace casimir {

/// Extended-precision real used by every module. Precision is a runtime
/// setting (decimal digits) applied to newly created values.
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 50;

/// Sets the working precision for the calling thread.
inline void set_working_digits(unsigned digits) { Real::default_precision(digits); }

inline unsigned working_digits() { return Real::default_precision(); }

/// Restores the previous working precision on scope exit.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits) : saved_(working_digits()) { set_working_digits(digits); }
    ~PrecisionGuard() { set_working_digits(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

/// pi at the current working precision.
Real pi();

/// Parses a decimal literal at the current working precision (exact up to rounding,
/// unlike a round trip through double).
inline Real real_from_string(const std::string& text) { return Real(text); }

/// Scientific-notation rendering with the given number of significant digits.
std::string to_string(const Real& value, unsigned significant_digits);

}  // namespace casimir
