#pragma once

#include "casimir/laurent.hpp"
#include "casimir/mode_sum.hpp"

#include <vector>

namespace casimir {

inline constexpr int kDefaultEnergyOrder = 5;  // powers eps^-4 .. eps^4

/// a-dependence of one Laurent coefficient, c(a) = p0 + p1 a + q1/a + q3/a^3.
struct CoefficientFit {
    int power;
    Real p0;
    Real p1;
    Real q1;
    Real q3;
};

/// Small-eps expansion of the regularized energy per unit area.
struct EnergyExpansion {
    LaurentSeries series;
    Real a;
    Real lambda;
    FieldKind field;
    int order;
    bool subtracted = false;
    /// Filled by subtract_outer, one entry per retained power.
    std::vector<CoefficientFit> fits;
};

/// Laurent expansion of energy_closed_form around eps = 0, known below `order`.
/// The scalar field gives (EM - halved n = 0 term) / 2.
EnergyExpansion energy_laurent(const Real& a, const Real& lambda, int order = kDefaultEnergyOrder,
                               FieldKind field = FieldKind::em);

/// Adds the outer region a -> L - a (L >> a) and drops a-independent terms.
///
/// Each coefficient of eps^k, k <= 0, is fitted exactly on the grid
/// a * {1, 2, 4, 8} to p0 + p1 a + q1/a + q3/a^3 and replaced by q1/a + q3/a^3;
/// p1 a cancels against the outer region and p0 is a-independent. The fit is
/// checked at 16a and throws FitSingular if the ansatz does not hold. Positive
/// powers vanish as eps -> 0 and are dropped.
EnergyExpansion subtract_outer(const EnergyExpansion& e);

struct ReferenceCoefficients {
    Real c_minus2;
    Real c_0;
};

/// Directly coded EM values: c_-2 = -lambda/(12a),
/// c_0 = -(1 - lambda) pi^2/(720 a^3) + lambda (lambda^2 - 1) pi^2/(720 a^3).
ReferenceCoefficients reference_coefficients(const Real& a, const Real& lambda);

struct CasimirPressure {
    /// -d c_0/da; negative is attractive.
    Real finite_part;
    /// -d c_-2/da, the coefficient of 1/eps^2. Never folded into finite_part.
    Real divergent_coeff;
};

CasimirPressure casimir_pressure(const Real& a, const Real& lambda, FieldKind field);

}  // namespace casimir
