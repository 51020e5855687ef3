#pragma once

#include "casimir/real.hpp"

#include <vector>

namespace casimir {

/// Truncated Laurent series  sum_{k = min_degree}^{truncation_order - 1} c_k eps^k.
///
/// Powers at or above truncation_order are unknown, not zero. Every operation
/// returns the tightest truncation order that the inputs justify, using the
/// valuation (first nonzero stored coefficient) of each operand.
class LaurentSeries {
public:
    /// Throws OutOfRange if coeffs is empty.
    LaurentSeries(int min_degree, std::vector<Real> coeffs);

    /// c * eps^power, known up to (but excluding) truncation_order.
    static LaurentSeries monomial(const Real& c, int power, int truncation_order);
    static LaurentSeries constant(const Real& c, int truncation_order);
    static LaurentSeries zero(int min_degree, int truncation_order);

    int min_degree() const { return min_degree_; }
    int truncation_order() const { return min_degree_ + static_cast<int>(coeffs_.size()); }
    const std::vector<Real>& coefficients() const { return coeffs_; }

    /// Lowest power with a nonzero coefficient; truncation_order() if all vanish.
    int valuation() const;

    /// Stored coefficient of eps^power; throws OutOfRange outside
    /// [min_degree, truncation_order).
    const Real& coefficient(int power) const;

    /// Coefficient of eps^power, zero below min_degree; throws OutOfRange at or
    /// above truncation_order.
    Real coefficient_or_zero(int power) const;

    /// Sum of the retained terms at a numeric eps.
    Real evaluate(const Real& eps) const;

    /// Drops terms at or above the given order (never extends).
    LaurentSeries truncated(int truncation_order) const;

    LaurentSeries operator-() const;

private:
    int min_degree_;
    std::vector<Real> coeffs_;
};

LaurentSeries series_add(const LaurentSeries& x, const LaurentSeries& y);
LaurentSeries series_sub(const LaurentSeries& x, const LaurentSeries& y);
LaurentSeries series_mul(const LaurentSeries& x, const LaurentSeries& y);
LaurentSeries series_scale(const LaurentSeries& x, const Real& factor);

/// Throws DivisionByZeroSeries if every retained coefficient of y vanishes.
LaurentSeries series_div(const LaurentSeries& x, const LaurentSeries& y);

/// Term-wise d/d(eps); the truncation order drops by one.
LaurentSeries series_differentiate(const LaurentSeries& x);

/// Substitutes eps -> c * eps. Throws ZeroScale for c == 0.
LaurentSeries series_scale_arg(const LaurentSeries& x, const Real& c);

/// coth(x) = 1/x + x/3 - x^3/45 + ..., known through x^{truncation_order - 1},
/// obtained by dividing the cosh series by the sinh series. Requires
/// truncation_order >= 1.
LaurentSeries series_coth(int truncation_order);

/// exp composed with x. A constant term c is factored out as e^c; negative
/// powers with nonzero coefficients throw SingularComposition.
LaurentSeries series_exp(const LaurentSeries& x);

inline Real extract_coefficient(const LaurentSeries& x, int power) { return x.coefficient(power); }

inline LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y) { return series_add(x, y); }
inline LaurentSeries operator-(const LaurentSeries& x, const LaurentSeries& y) { return series_sub(x, y); }
inline LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y) { return series_mul(x, y); }
inline LaurentSeries operator*(const LaurentSeries& x, const Real& s) { return series_scale(x, s); }
inline LaurentSeries operator*(const Real& s, const LaurentSeries& x) { return series_scale(x, s); }
inline LaurentSeries operator/(const LaurentSeries& x, const LaurentSeries& y) { return series_div(x, y); }

}  // namespace casimir
