#include "casimir/mode_sum.hpp"

#include "casimir/error.hpp"

#include <limits>
#include <string>

namespace casimir {

namespace mp = boost::multiprecision;

CutoffParams::CutoffParams(Real eps, Real lam) : epsilon(std::move(eps)), lambda(std::move(lam)) {
    if (!(epsilon > 0)) throw Error(ErrorCode::CutoffDomain, "epsilon must be > 0, got " + to_string(epsilon, 6));
    require_lambda_domain(lambda);
}

void require_lambda_domain(const Real& lambda) {
    if (!(lambda >= 0 && lambda < 1)) {
        throw Error(ErrorCode::CutoffDomain, "lambda must lie in [0, 1), got " + to_string(lambda, 6));
    }
}

PlateGeometry::PlateGeometry(Real sep) : a(std::move(sep)) {
    if (!(a > 0)) throw Error(ErrorCode::InvalidGeometry, "plate separation must be > 0, got " + to_string(a, 6));
}

Real mode_mass(int n, const PlateGeometry& geom) { return Real(n) * pi() / geom.a; }

Real transverse_integral(const Real& mass, const Real& epsilon) {
    if (!(epsilon > 0)) throw Error(ErrorCode::NonPositiveEpsilon, "epsilon must be > 0");
    const Real inv = 1 / epsilon;
    return mp::exp(-epsilon * mass) * (mass * mass * inv + 2 * mass * inv * inv + 2 * inv * inv * inv) / (2 * pi());
}

namespace {

// m^2/eps + 2m/eps^2 + 2/eps^3: log-concave in m, so P(m + d)/P(m) decreases with m.
Real transverse_polynomial(const Real& m, const Real& eps) {
    return m * m / eps + 2 * m / (eps * eps) + 2 / (eps * eps * eps);
}

Real field_weight(FieldKind field, int n) {
    if (field == FieldKind::em) return n == 0 ? Real(0.5) : Real(1);
    return n == 0 ? Real(0) : Real(0.5);
}

// Running mode sum with the tail bound evaluated after each accepted term.
class ModeSummer {
public:
    ModeSummer(const PlateGeometry& geom, const CutoffParams& cutoff, FieldKind field)
        : eps_(cutoff.epsilon), field_(field) {
        step_ = pi() / geom.a;
        // e^{lambda eps m} e^{-eps m} per unit n.
        ratio_ = mp::exp(-(1 - cutoff.lambda) * eps_ * step_);
        damping_ = 1;
    }

    void add_next() {
        const Real m = Real(n_next_) * step_;
        sum_ += field_weight(field_, n_next_) * damping_ * transverse_polynomial(m, eps_) / (2 * pi());
        damping_ *= ratio_;
        ++n_next_;
    }

    int n_max() const { return n_next_ - 1; }
    const Real& sum() const { return sum_; }

    // Bound on sum_{n >= n_next} of the remaining terms.
    Real tail_bound() const {
        const Real m1 = Real(n_next_) * step_;
        const Real m2 = Real(n_next_ + 1) * step_;
        const Real p1 = transverse_polynomial(m1, eps_);
        const Real rho = ratio_ * transverse_polynomial(m2, eps_) / p1;
        if (rho >= 1) return std::numeric_limits<Real>::infinity();
        const Real w = mp::max(field_weight(field_, n_next_), field_weight(field_, n_next_ + 1));
        return w * damping_ * p1 / (2 * pi()) / (1 - rho);
    }

private:
    Real eps_;
    FieldKind field_;
    Real step_;
    Real ratio_;
    Real damping_;
    Real sum_ = 0;
    int n_next_ = 0;
};

}  // namespace

EnergySum energy_mode_sum(const PlateGeometry& geom, const CutoffParams& cutoff, FieldKind field, int n_max,
                          std::optional<Real> relative_tolerance) {
    if (n_max < 0) throw Error(ErrorCode::OutOfRange, "n_max must be >= 0");
    ModeSummer summer(geom, cutoff, field);
    for (int n = 0; n <= n_max; ++n) summer.add_next();
    EnergySum result{summer.sum(), summer.tail_bound(), n_max};
    if (relative_tolerance && !(result.remainder_bound <= *relative_tolerance * mp::abs(result.energy))) {
        throw Error(ErrorCode::NotConverged, "remainder bound " + to_string(result.remainder_bound, 6) +
                                                 " exceeds tolerance at n_max = " + std::to_string(n_max));
    }
    return result;
}

EnergySum energy_mode_sum_converged(const PlateGeometry& geom, const CutoffParams& cutoff, FieldKind field,
                                    const Real& relative_tolerance, int max_terms) {
    ModeSummer summer(geom, cutoff, field);
    summer.add_next();
    for (int terms = 1; terms < max_terms; ++terms) {
        summer.add_next();
        const Real bound = summer.tail_bound();
        if (bound <= relative_tolerance * mp::abs(summer.sum())) return {summer.sum(), bound, summer.n_max()};
    }
    throw Error(ErrorCode::NotConverged, "mode sum did not reach the requested tolerance within " +
                                             std::to_string(max_terms) + " terms");
}

Real energy_closed_form(const PlateGeometry& geom, const CutoffParams& cutoff) {
    const Real& eps = cutoff.epsilon;
    const Real kappa = pi() / (2 * geom.a);
    const Real x = (1 - cutoff.lambda) * eps * kappa;

    // g(eps) = 1/(4 pi eps), h(x) = coth x, x = (eps - lambda eps') kappa.
    const Real g0 = 1 / (4 * pi() * eps);
    const Real g1 = -g0 / eps;
    const Real g2 = 2 * g0 / (eps * eps);
    const Real coth = 1 / mp::tanh(x);
    const Real csch2 = coth * coth - 1;
    const Real h1 = -csch2;
    const Real h2 = 2 * coth * csch2;
    return g2 * coth + 2 * kappa * g1 * h1 + kappa * kappa * g0 * h2;
}

ModeVector eigenmode(const ModeIndex& idx, const PlateGeometry& geom, const Real& z) {
    if (idx.n < 0) throw Error(ErrorCode::InvalidMode, "mode number must be >= 0");
    if (idx.polarization != 1 && idx.polarization != 2) {
        throw Error(ErrorCode::InvalidMode, "polarization must be 1 or 2");
    }
    if (idx.n == 0 && idx.polarization == 1) {
        throw Error(ErrorCode::InvalidMode, "the n = 0 EM mode exists only for polarization 2");
    }
    const Real k2 = idx.kx * idx.kx + idx.ky * idx.ky;
    if (!(k2 > 0)) throw Error(ErrorCode::InvalidMode, "transverse wave vector must be nonzero");
    const Real k = mp::sqrt(k2);

    const Real m = mode_mass(idx.n, geom);
    const Real arg = m * z;
    const Real norm = mp::sqrt(2 / geom.a);
    ModeVector v{{Real(0), Real(0), Real(0)}, {Real(0), Real(0), Real(0)}};

    if (idx.polarization == 1) {
        // kbar_x = k_y, kbar_y = -k_x.
        const Real s = norm * mp::sin(arg) / k;
        v.re[0] = idx.ky * s;
        v.re[1] = -idx.kx * s;
        return v;
    }

    // zhat.grad grad^i on e^{ik.x} cos(m z): transverse i -> -i k_i m sin(m z),
    // i = z -> -m^2 cos(m z).
    const Real omega = mp::sqrt(k2 + m * m);
    Real scale = norm / (k * omega);
    if (idx.n == 0) scale /= mp::sqrt(Real(2));
    const Real sn = mp::sin(arg);
    const Real cs = mp::cos(arg);
    v.im[0] = -scale * idx.kx * m * sn;
    v.im[1] = -scale * idx.ky * m * sn;
    v.re[2] = scale * (omega * omega - m * m) * cs;
    return v;
}

Real check_boundary_conditions(const ModeIndex& idx, const PlateGeometry& geom) {
    Real worst = 0;
    for (const Real& z : {Real(0), geom.a}) {
        const ModeVector v = eigenmode(idx, geom, z);
        // Tangential components (x, y).
        for (std::size_t i = 0; i < 2; ++i) worst = mp::max(worst, mp::max(mp::abs(v.re[i]), mp::abs(v.im[i])));
        // zhat.curl A = i (k_x A_y - k_y A_x).
        const Real curl_re = idx.kx * v.re[1] - idx.ky * v.re[0];
        const Real curl_im = idx.kx * v.im[1] - idx.ky * v.im[0];
        worst = mp::max(worst, mp::sqrt(curl_re * curl_re + curl_im * curl_im));
    }
    return worst;
}

}  // namespace casimir
