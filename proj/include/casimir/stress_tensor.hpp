#pragma once

// Point-split vacuum stress between the plates. All phases are folded into real
// kernels: Re(-2i/a) times i D_m becomes (2/a) D_m with
// D_m(s) = e^{-m s}/(4 pi s), s = sqrt(eps . eps) > 0.

#include "casimir/laurent.hpp"
#include "casimir/minkowski.hpp"
#include "casimir/mode_sum.hpp"

#include <optional>

namespace casimir {

/// A radial function f(s) and its first two s-derivatives at one separation.
struct RadialKernel {
    Real s;
    Real value;
    Real first;
    Real second;

    RadialKernel operator+(const RadialKernel& o) const { return {s, value + o.value, first + o.first, second + o.second}; }
    RadialKernel operator-(const RadialKernel& o) const { return {s, value - o.value, first - o.first, second - o.second}; }
    RadialKernel operator*(const Real& c) const { return {s, value * c, first * c, second * c}; }

    /// f'' + (2/s) f', the radial Laplacian of the (t, x, y) subspace.
    Real laplacian() const { return second + 2 * first / s; }
};

/// D_m(s) = e^{-s m}/(4 pi s). Throws NonPositiveSeparation for s <= 0.
RadialKernel propagator_kernel(const Real& mass, const Real& s);

/// F(s, s', lambda) = (1/(4 pi a s)) coth((s - lambda s') pi/(2a)) with derivatives
/// in s at fixed s' = s_frozen. Throws CothPole if s - lambda s_frozen <= 0.
RadialKernel generating_function(const Real& s, const Real& s_frozen, const Real& lambda, const Real& a);

/// The a -> infinity limit of F, 1/(2 pi^2 s (s - lambda s')), with s-derivatives at fixed s'.
RadialKernel continuum_kernel(const Real& s, const Real& s_frozen, const Real& lambda);

/// d^2 f / d eps_mu d eps_nu for radial f:
/// f'' eps^mu eps^nu/s^2 + f' (h^{mu nu}/s - eps^mu eps^nu/s^3), h the (t, x, y) metric.
/// The kernel must have been evaluated at s = |eps|.
SymTensor4 second_derivative_tensor(const RadialKernel& kernel, const SeparationVector& eps);

/// (-d^mu d^nu + zhat^mu zhat^nu d^a d_a) f, the point-split stress operator.
SymTensor4 point_split_operator(const RadialKernel& kernel, const SeparationVector& eps);

/// S1 = g/4 - zhat zhat.
SymTensor4 structure_s1();
/// S2 = g - 3 eps eps/eps^2 - zhat zhat.
SymTensor4 structure_s2(const SeparationVector& eps);

/// T = A S1 + (B_finite + B_divergent_eps2 / |eps|^2) S2(eps).
struct StressDecomposition {
    Real A;
    Real B_finite;
    Real B_divergent_eps2;
    SeparationVector direction;  // unit
    Real length;                 // |eps|
    FieldKind field;
    std::optional<Real> z;  // scalar field only

    Real B_total() const { return B_finite + B_divergent_eps2 / (length * length); }
    SymTensor4 assemble() const;
};

/// Coefficient series of the EM stress in s = |eps| after the kernel-level
/// a -> infinity subtraction: alpha multiplies S1 and beta multiplies S2.
struct StressSeries {
    LaurentSeries alpha;
    LaurentSeries beta;
};

StressSeries em_stress_series(const Real& a, const Real& lambda, int order = 3);

/// Real normalization of the assembled stress: the ratio of the Brown-Maclay
/// coefficient (1/(2 pi^2 a^4)) sum n^-4 to the lambda = 0 engine coefficient.
Real stress_normalization();

/// (1/(2 pi^2 a^4)) pi^4/90.
Real brown_maclay_coefficient(const Real& a);

/// Once-subtracted EM stress in the eps -> 0 limit:
/// A = (1 - lambda) pi^2/(180 a^4), B_divergent_eps2 = -lambda/(24 a^2),
/// B_finite = lambda (lambda^2 - 1) pi^2/(1440 a^4), read off the Laurent engine.
StressDecomposition em_stress(const PlateGeometry& geom, const Real& lambda, const SeparationVector& eps);

/// Once-subtracted Dirichlet-scalar stress at height z, 0 < z < a (WallContact otherwise).
StressDecomposition scalar_stress(const PlateGeometry& geom, const Real& lambda, const SeparationVector& eps,
                                  const Real& z);

/// The scalar stress rebuilt from the mode-level stress-tensor form, summing
/// the n >= 1 modes numerically at finite separations and extrapolating the
/// eps^2 series to eps -> 0. Moderate precision; cross-validates scalar_stress.
StressDecomposition scalar_stress_from_modes(const PlateGeometry& geom, const Real& lambda,
                                             const SeparationVector& eps, const Real& z);

/// Unsubtracted-in-eps assembled tensor at the given field and separation.
StressDecomposition stress(FieldKind field, const PlateGeometry& geom, const Real& lambda, const SeparationVector& eps,
                           const std::optional<Real>& z);

/// max |l T(l^{-1} eps) l^T - T(eps)|.
Real covariance_check(FieldKind field, const PlateGeometry& geom, const Real& lambda, const SeparationVector& eps,
                      const LorentzTransform& l, const std::optional<Real>& z = std::nullopt);

/// Direction average by the O(2,1)-invariant replacement eps eps/eps^2 -> h/3,
/// which annihilates S2 and leaves A S1.
SymTensor4 angular_average(const StressDecomposition& d);

/// Average of eps eps/eps^2 over the spatial (x, y) circle only. This is frame
/// dependent and does not annihilate S2.
SymTensor4 spatial_circle_average(const StressDecomposition& d);

}  // namespace casimir
