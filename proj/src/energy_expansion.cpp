#include "casimir/energy_expansion.hpp"

#include "casimir/error.hpp"
#include "detail/linear_solve.hpp"

#include <array>
#include <string>

namespace casimir {

namespace mp = boost::multiprecision;

namespace {

// Known far enough that products with coth-derived series never hit it.
LaurentSeries exact_monomial(const Real& c, int power, int order) { return LaurentSeries::monomial(c, power, order + 16); }

std::vector<Real> fit_basis(const Real& a) { return {Real(1), a, 1 / a, 1 / (a * a * a)}; }

}  // namespace

EnergyExpansion energy_laurent(const Real& a, const Real& lambda, int order, FieldKind field) {
    require_lambda_domain(lambda);
    const PlateGeometry geom(a);
    if (order < 1) throw Error(ErrorCode::OutOfRange, "energy expansion needs order >= 1 to reach eps^0");

    const Real kappa = pi() / (2 * geom.a);
    const Real scale = (1 - lambda) * kappa;
    const Real four_pi = 4 * pi();

    // E = g'' h + 2 kappa g' h' + kappa^2 g h'' with g = 1/(4 pi eps), h = coth at
    // x = (eps - lambda eps') kappa, evaluated at eps' = eps where x = scale * eps.
    // Each product loses three orders against the coth truncation.
    const LaurentSeries coth = series_coth(order + 3);
    const LaurentSeries dcoth = series_differentiate(coth);
    const LaurentSeries d2coth = series_differentiate(dcoth);
    const LaurentSeries h0 = series_scale_arg(coth, scale);
    const LaurentSeries h1 = series_scale_arg(dcoth, scale);
    const LaurentSeries h2 = series_scale_arg(d2coth, scale);

    const LaurentSeries g0 = exact_monomial(1 / four_pi, -1, order);
    const LaurentSeries g1 = exact_monomial(-1 / four_pi, -2, order);
    const LaurentSeries g2 = exact_monomial(2 / four_pi, -3, order);

    LaurentSeries energy = g2 * h0 + (2 * kappa) * (g1 * h1) + (kappa * kappa) * (g0 * h2);
    energy = energy.truncated(order);
    if (field == FieldKind::scalar) {
        // The n = 0 EM term, 1/2 * transverse_integral(0, eps) = 1/(2 pi eps^3), is removed.
        energy = Real(0.5) * (energy - exact_monomial(1 / (2 * pi()), -3, order));
        energy = energy.truncated(order);
    }
    return EnergyExpansion{std::move(energy), geom.a, lambda, field, order, false, {}};
}

EnergyExpansion subtract_outer(const EnergyExpansion& e) {
    if (e.subtracted) return e;

    const std::array<Real, 5> multipliers{Real(1), Real(2), Real(4), Real(8), Real(16)};
    std::array<LaurentSeries, 5> grid_series{e.series, e.series, e.series, e.series, e.series};
    for (std::size_t i = 1; i < multipliers.size(); ++i) {
        grid_series[i] = energy_laurent(e.a * multipliers[i], e.lambda, e.order, e.field).series;
    }

    std::vector<std::vector<Real>> basis;
    for (std::size_t i = 0; i < 4; ++i) basis.push_back(fit_basis(e.a * multipliers[i]));
    const auto check_basis = fit_basis(e.a * multipliers[4]);

    const int lo = e.series.min_degree();
    const int hi = std::min(e.series.truncation_order(), 1);
    std::vector<Real> kept;
    std::vector<CoefficientFit> fits;
    for (int k = lo; k < hi; ++k) {
        std::vector<Real> rhs;
        for (std::size_t i = 0; i < 4; ++i) rhs.push_back(grid_series[i].coefficient(k));
        const auto p = detail::solve_linear(basis, rhs);

        Real predicted = 0;
        for (std::size_t j = 0; j < 4; ++j) predicted += p[j] * check_basis[j];
        const Real actual = grid_series[4].coefficient(k);
        const Real scale = mp::max(mp::abs(actual), mp::max(mp::abs(rhs[0]), Real(1)));
        const Real tolerance = mp::pow(Real(10), -static_cast<int>(working_digits()) + 10) * scale;
        if (mp::abs(predicted - actual) > tolerance) {
            throw Error(ErrorCode::FitSingular, "coefficient of eps^" + std::to_string(k) +
                                                    " is not of the form p0 + p1 a + q1/a + q3/a^3");
        }
        kept.push_back(p[2] / e.a + p[3] / (e.a * e.a * e.a));
        fits.push_back({k, p[0], p[1], p[2], p[3]});
    }

    EnergyExpansion out{LaurentSeries(lo, std::move(kept)), e.a, e.lambda, e.field, e.order, true, std::move(fits)};
    return out;
}

ReferenceCoefficients reference_coefficients(const Real& a, const Real& lambda) {
    require_lambda_domain(lambda);
    const Real pi2 = pi() * pi();
    const Real a3 = a * a * a;
    return {-lambda / (12 * a), -(1 - lambda) * pi2 / (720 * a3) + pi2 / (720 * a3) * lambda * (lambda * lambda - 1)};
}

CasimirPressure casimir_pressure(const Real& a, const Real& lambda, FieldKind field) {
    const EnergyExpansion sub = subtract_outer(energy_laurent(a, lambda, kDefaultEnergyOrder, field));
    auto pressure_of = [&](int power) -> Real {
        for (const auto& f : sub.fits) {
            if (f.power == power) return f.q1 / (a * a) + 3 * f.q3 / (a * a * a * a);
        }
        throw Error(ErrorCode::OutOfRange, "subtracted expansion lacks eps^" + std::to_string(power));
    };
    return {pressure_of(0), pressure_of(-2)};
}

}  // namespace casimir
