#include "casimir/stress_tensor.hpp"

#include "casimir/error.hpp"
#include "detail/linear_solve.hpp"

#include <array>
#include <string>
#include <vector>

namespace casimir {

namespace mp = boost::multiprecision;

RadialKernel propagator_kernel(const Real& mass, const Real& s) {
    if (!(s > 0)) throw Error(ErrorCode::NonPositiveSeparation, "separation must be > 0");
    const Real d = mp::exp(-s * mass) / (4 * pi() * s);
    const Real g = mass + 1 / s;  // -D'/D
    return {s, d, -d * g, d * (g * g + 1 / (s * s))};
}

RadialKernel generating_function(const Real& s, const Real& s_frozen, const Real& lambda, const Real& a) {
    if (!(s > 0)) throw Error(ErrorCode::NonPositiveSeparation, "separation must be > 0");
    const Real kappa = pi() / (2 * a);
    const Real x = (s - lambda * s_frozen) * kappa;
    if (!(x > 0)) throw Error(ErrorCode::CothPole, "coth argument (s - lambda s') pi/2a must be > 0");

    const Real g0 = 1 / (4 * pi() * a * s);
    const Real g1 = -g0 / s;
    const Real g2 = 2 * g0 / (s * s);
    const Real coth = 1 / mp::tanh(x);
    const Real csch2 = coth * coth - 1;
    const Real h1 = -csch2;
    const Real h2 = 2 * coth * csch2;
    return {s, g0 * coth, g1 * coth + kappa * g0 * h1, g2 * coth + 2 * kappa * g1 * h1 + kappa * kappa * g0 * h2};
}

RadialKernel continuum_kernel(const Real& s, const Real& s_frozen, const Real& lambda) {
    if (!(s > 0)) throw Error(ErrorCode::NonPositiveSeparation, "separation must be > 0");
    const Real u = s - lambda * s_frozen;
    if (!(u > 0)) throw Error(ErrorCode::CothPole, "s - lambda s' must be > 0");
    const Real c = 1 / (2 * pi() * pi());
    const Real is = 1 / s;
    const Real iu = 1 / u;
    return {s, c * is * iu, -c * (is * is * iu + is * iu * iu),
            2 * c * (is * is * is * iu + is * is * iu * iu + is * iu * iu * iu)};
}

namespace {

// (t, x, y) block of the metric.
SymTensor4 subspace_metric() {
    SymTensor4 h = SymTensor4::metric();
    h(axis::z, axis::z) = 0;
    return h;
}

SymTensor4 zz() { return SymTensor4::outer(z_hat(), z_hat()); }

void require_kernel_at(const RadialKernel& kernel, const SeparationVector& eps) {
    const Real rel = mp::abs(kernel.s - eps.length()) / eps.length();
    if (rel > mp::pow(Real(10), -static_cast<int>(working_digits()) / 2)) {
        throw Error(ErrorCode::InvalidSeparation, "kernel evaluated at a different separation");
    }
}

}  // namespace

SymTensor4 second_derivative_tensor(const RadialKernel& kernel, const SeparationVector& eps) {
    require_kernel_at(kernel, eps);
    const Real& s = eps.length();
    const SymTensor4 ee = SymTensor4::outer(eps.vector(), eps.vector());
    const Real s2 = s * s;
    return ee * ((kernel.second - kernel.first / s) / s2) + subspace_metric() * (kernel.first / s);
}

SymTensor4 point_split_operator(const RadialKernel& kernel, const SeparationVector& eps) {
    return second_derivative_tensor(kernel, eps) * Real(-1) + zz() * kernel.laplacian();
}

SymTensor4 structure_s1() { return SymTensor4::metric() * Real(0.25) - zz(); }

SymTensor4 structure_s2(const SeparationVector& eps) {
    const SymTensor4 ee = SymTensor4::outer(eps.vector(), eps.vector());
    return SymTensor4::metric() - ee * (Real(3) / eps.length_squared()) - zz();
}

SymTensor4 StressDecomposition::assemble() const {
    return structure_s1() * A + structure_s2(direction) * B_total();
}

StressSeries em_stress_series(const Real& a, const Real& lambda, int order) {
    require_lambda_domain(lambda);
    const PlateGeometry geom(a);
    if (order < 1) throw Error(ErrorCode::OutOfRange, "stress series needs order >= 1 to reach s^0");

    const Real kappa = pi() / (2 * geom.a);
    const Real scale = (1 - lambda) * kappa;
    const int far = order + 16;

    // Subtracted kernel F - F_inf = g(s) (coth x - 1/x), g = 1/(4 pi a s).
    const int coth_order = order + 3;
    const LaurentSeries k0x = series_coth(coth_order) - LaurentSeries::monomial(Real(1), -1, coth_order);
    const LaurentSeries k1x = series_differentiate(k0x);
    const LaurentSeries k2x = series_differentiate(k1x);
    const LaurentSeries k0 = series_scale_arg(k0x, scale);
    const LaurentSeries k1 = series_scale_arg(k1x, scale);
    const LaurentSeries k2 = series_scale_arg(k2x, scale);

    const Real c = 1 / (4 * pi() * geom.a);
    const LaurentSeries g0 = LaurentSeries::monomial(c, -1, far);
    const LaurentSeries g1 = LaurentSeries::monomial(-c, -2, far);
    const LaurentSeries g2 = LaurentSeries::monomial(2 * c, -3, far);
    const LaurentSeries inv_s = LaurentSeries::monomial(Real(1), -1, far);

    const LaurentSeries f1 = g1 * k0 + kappa * (g0 * k1);
    const LaurentSeries f2 = g2 * k0 + (2 * kappa) * (g1 * k1) + (kappa * kappa) * (g0 * k2);
    const LaurentSeries f1_over_s = f1 * inv_s;

    // Radial operator (-dd + zz box) f = alpha S1 + beta S2 with
    // alpha = -(4/3)(f'' + 2 f'/s), beta = (f'' - f'/s)/3.
    LaurentSeries alpha = Real(-4) / 3 * (f2 + Real(2) * f1_over_s);
    LaurentSeries beta = (f2 - f1_over_s) * (Real(1) / 3);
    return {alpha.truncated(order), beta.truncated(order)};
}

Real brown_maclay_coefficient(const Real& a) {
    const Real p = pi();
    return (1 / (2 * p * p * a * a * a * a)) * (p * p * p * p / 90);
}

Real stress_normalization() {
    const StressSeries raw = em_stress_series(Real(1), Real(0));
    return brown_maclay_coefficient(Real(1)) / raw.alpha.coefficient_or_zero(0);
}

StressDecomposition em_stress(const PlateGeometry& geom, const Real& lambda, const SeparationVector& eps) {
    const StressSeries series = em_stress_series(geom.a, lambda);
    const Real norm = stress_normalization();
    return StressDecomposition{norm * series.alpha.coefficient_or_zero(0),
                               norm * series.beta.coefficient_or_zero(0),
                               norm * series.beta.coefficient_or_zero(-2),
                               eps.unit(),
                               eps.length(),
                               FieldKind::em,
                               std::nullopt};
}

namespace {

void require_interior(const PlateGeometry& geom, const Real& z) {
    if (!(z > 0 && z < geom.a)) {
        throw Error(ErrorCode::WallContact, "z must lie strictly between the plates, got " + to_string(z, 6));
    }
}

}  // namespace

StressDecomposition scalar_stress(const PlateGeometry& geom, const Real& lambda, const SeparationVector& eps,
                                  const Real& z) {
    require_lambda_domain(lambda);
    require_interior(geom, z);
    const Real& a = geom.a;
    const Real p2 = pi() * pi();
    const Real a2 = a * a;
    const Real sn = mp::sin(pi() * z / a);
    const Real sigma = sn * sn;
    const Real prefactor = lambda / 48;

    const Real A = (1 - lambda) * p2 / (360 * a2 * a2);
    const Real B_div = prefactor * (3 / sigma - 1) / a2;
    const Real B_fin = prefactor * (p2 / (4 * a2 * a2)) * (1 - lambda * lambda) * ((3 - 2 * sigma) / (sigma * sigma) - Real(1) / 15);
    return StressDecomposition{A, B_fin, B_div, eps.unit(), eps.length(), FieldKind::scalar, z};
}

namespace {

struct ScalarModeSums {
    RadialKernel plain;     // (2/a) sum_{n>=1} e^{lambda s m} D_m(s)
    RadialKernel weighted;  // same with sin^2(n pi z/a)
};

// Tail of sum_{n>=N} q^n P(m_n) for log-concave P.
Real geometric_tail(const Real& q, const Real& p_now, const Real& p_next, const Real& qn) {
    const Real rho = q * p_next / p_now;
    if (rho >= 1) return std::numeric_limits<Real>::infinity();
    return qn * p_now / (1 - rho);
}

ScalarModeSums scalar_mode_sums(const PlateGeometry& geom, const Real& lambda, const Real& s, const Real& z) {
    const Real& a = geom.a;
    const Real step = pi() / a;
    const Real q = mp::exp(-(1 - lambda) * s * step);
    const Real inv_s = 1 / s;
    const Real c = 1 / (4 * pi() * s);
    const Real theta = pi() * z / a;
    const Real cos_t = mp::cos(theta);
    const Real sin_t = mp::sin(theta);
    const Real tolerance = mp::pow(Real(10), -static_cast<int>(working_digits()) + 3);

    std::array<Real, 3> plain{Real(0), Real(0), Real(0)};
    std::array<Real, 3> weighted{Real(0), Real(0), Real(0)};
    Real qn = q;
    Real sn = sin_t;
    Real cn = cos_t;
    auto poly = [&](const Real& m, int j) -> Real {
        const Real g = m + inv_s;
        if (j == 0) return Real(1);
        if (j == 1) return g;
        return g * g + inv_s * inv_s;
    };
    for (int n = 1;; ++n) {
        const Real m = Real(n) * step;
        const Real g = m + inv_s;
        const Real d0 = c * qn;
        const std::array<Real, 3> term{d0, -d0 * g, d0 * (g * g + inv_s * inv_s)};
        const Real w = sn * sn;
        for (std::size_t j = 0; j < 3; ++j) {
            plain[j] += term[j];
            weighted[j] += w * term[j];
        }

        if (n % 64 == 0) {
            // Resynchronize the rotation recurrence.
            sn = mp::sin(Real(n) * theta);
            cn = mp::cos(Real(n) * theta);
        }
        const Real next_s = sn * cos_t + cn * sin_t;
        cn = cn * cos_t - sn * sin_t;
        sn = next_s;
        qn *= q;

        bool done = true;
        const Real m1 = Real(n + 1) * step;
        const Real m2 = Real(n + 2) * step;
        for (int j = 0; j < 3 && done; ++j) {
            const Real tail = c * geometric_tail(q, poly(m1, j), poly(m2, j), qn);
            done = tail <= tolerance * mp::abs(plain[j]);
        }
        if (done) break;
        if (n > 50'000'000) throw Error(ErrorCode::NotConverged, "scalar mode sum did not converge");
    }
    const Real pref = 2 / a;
    return {RadialKernel{s, pref * plain[0], pref * plain[1], pref * plain[2]},
            RadialKernel{s, pref * weighted[0], pref * weighted[1], pref * weighted[2]}};
}

// Polynomial through (t_i, y_i); returns its coefficients, lowest first.
std::vector<Real> interpolate(const std::vector<Real>& t, const std::vector<Real>& y) {
    std::vector<std::vector<Real>> v(t.size(), std::vector<Real>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
        Real p = 1;
        for (std::size_t j = 0; j < t.size(); ++j) {
            v[i][j] = p;
            p *= t[i];
        }
    }
    return detail::solve_linear(std::move(v), y);
}

}  // namespace

StressDecomposition scalar_stress_from_modes(const PlateGeometry& geom, const Real& lambda,
                                             const SeparationVector& eps, const Real& z) {
    require_lambda_domain(lambda);
    require_interior(geom, z);
    const SeparationVector unit = eps.unit();
    const Real norm = stress_normalization();
    const SymTensor4 s1 = structure_s1();
    const SymTensor4 h_over_3 = subspace_metric() * (Real(1) / 3);

    // Stay well inside the radius of convergence of the small-s expansion,
    // which is set by the distance to the nearer wall.
    const Real wall = mp::min(z, geom.a - z);
    const Real s0 = wall / 10;
    constexpr int kPoints = 5;

    std::vector<Real> t, a_values, b_values;
    for (int k = 0; k < kPoints; ++k) {
        const Real s = s0 / mp::pow(Real(2), k);
        const SeparationVector sep(unit.vector() * s);
        const ScalarModeSums sums = scalar_mode_sums(geom, lambda, s, z);
        const RadialKernel cont = continuum_kernel(s, s, lambda);
        const RadialKernel plain = sums.plain - cont;
        const RadialKernel weighted = sums.weighted - cont * Real(0.5);

        // Mode bracket with k^mu k^nu -> -d^mu d^nu and k^2 -> -box:
        // (2/3) S1 k^2 + (k k - g k^2/3 + zz k^2/3) sin^2.
        const SymTensor4 t_mode = s1 * (Real(-2) / 3 * plain.laplacian()) +
                                  second_derivative_tensor(weighted, sep) * Real(-1) + h_over_3 * weighted.laplacian();
        const SymTensor4 tensor = t_mode * norm;

        const SymTensor4 s2 = structure_s2(sep);
        t.push_back(s * s);
        a_values.push_back(tensor.contract(s1) / s1.contract(s1));
        b_values.push_back(s * s * tensor.contract(s2) / s2.contract(s2));
    }
    const auto a_fit = interpolate(t, a_values);
    const auto b_fit = interpolate(t, b_values);
    return StressDecomposition{a_fit[0], b_fit[1], b_fit[0], unit, eps.length(), FieldKind::scalar, z};
}

StressDecomposition stress(FieldKind field, const PlateGeometry& geom, const Real& lambda, const SeparationVector& eps,
                           const std::optional<Real>& z) {
    if (field == FieldKind::em) return em_stress(geom, lambda, eps);
    if (!z) throw Error(ErrorCode::WallContact, "scalar stress needs a height z between the plates");
    return scalar_stress(geom, lambda, eps, *z);
}

Real covariance_check(FieldKind field, const PlateGeometry& geom, const Real& lambda, const SeparationVector& eps,
                      const LorentzTransform& l, const std::optional<Real>& z) {
    const SymTensor4 direct = stress(field, geom, lambda, eps, z).assemble();
    const SeparationVector pulled(l.inverse().apply(eps.vector()));
    const SymTensor4 pushed = transform_tensor(l, stress(field, geom, lambda, pulled, z).assemble());
    return max_abs_difference(pushed, direct);
}

SymTensor4 angular_average(const StressDecomposition& d) {
    const SymTensor4 s2_avg = SymTensor4::metric() - subspace_metric() - zz();
    return structure_s1() * d.A + s2_avg * d.B_total();
}

SymTensor4 spatial_circle_average(const StressDecomposition& d) {
    SymTensor4 ee_avg;
    ee_avg(axis::x, axis::x) = Real(0.5);
    ee_avg(axis::y, axis::y) = Real(0.5);
    const SymTensor4 s2_avg = SymTensor4::metric() - ee_avg * Real(3) - zz();
    return structure_s1() * d.A + s2_avg * d.B_total();
}

}  // namespace casimir
