#pragma once

// Regularized vacuum energy per unit plate area between conducting plates at
// z = 0 and z = a, with the two-parameter cutoff exp[lambda eps n pi / a] exp[-eps omega].

#include "casimir/real.hpp"

#include <array>
#include <optional>

namespace casimir {

enum class FieldKind { em, scalar };

/// Cutoff scale eps > 0 and shape parameter 0 <= lambda < 1.
/// Derivatives in eps act with the lambda*eps' occurrence frozen; eps' is set
/// equal to eps afterwards.
struct CutoffParams {
    Real epsilon;
    Real lambda;

    /// Throws CutoffDomain unless epsilon > 0 and 0 <= lambda < 1.
    CutoffParams(Real epsilon, Real lambda);
};

/// Throws CutoffDomain unless 0 <= lambda < 1.
void require_lambda_domain(const Real& lambda);

/// Plate separation a > 0. The outer wall at L >> a enters only through the
/// a -> L - a subtraction performed in the energy-expansion module.
struct PlateGeometry {
    Real a;

    /// Throws InvalidGeometry unless a > 0.
    explicit PlateGeometry(Real a);
};

/// Mode label (n, polarization) with transverse wave vector k = (kx, ky).
/// EM modes with n = 0 only exist for polarization 2.
struct ModeIndex {
    int n;
    int polarization;
    Real kx;
    Real ky;
};

/// Mode mass n pi / a.
Real mode_mass(int n, const PlateGeometry& geom);

/// int d^2k/(2pi)^2 omega exp(-eps omega) with omega^2 = k^2 + m^2, in closed form
/// (1/2pi) e^{-eps m} (m^2/eps + 2m/eps^2 + 2/eps^3).
/// Throws NonPositiveEpsilon for eps <= 0.
Real transverse_integral(const Real& mass, const Real& epsilon);

struct EnergySum {
    Real energy;
    /// Certified bound on the omitted tail n > n_max.
    Real remainder_bound;
    int n_max;
};

/// Partial mode sum over n = 0..n_max. EM weights the n = 0 term by 1/2; the
/// Dirichlet scalar drops n = 0 and carries weight 1/2 per n >= 1.
/// When relative_tolerance is set, throws NotConverged if
/// remainder_bound > relative_tolerance * |energy|.
EnergySum energy_mode_sum(const PlateGeometry& geom, const CutoffParams& cutoff, FieldKind field, int n_max,
                          std::optional<Real> relative_tolerance = std::nullopt);

/// Smallest n_max whose certified remainder is below relative_tolerance * |energy|.
/// Throws NotConverged if max_terms is reached first.
EnergySum energy_mode_sum_converged(const PlateGeometry& geom, const CutoffParams& cutoff, FieldKind field,
                                    const Real& relative_tolerance, int max_terms = 10'000'000);

/// d^2/deps^2 [ (1/4 pi eps) coth((eps - lambda eps') pi / 2a) ] at eps' = eps,
/// the n -> infinity limit of the EM mode sum.
Real energy_closed_form(const PlateGeometry& geom, const CutoffParams& cutoff);

/// Complex spatial vector; the plane-wave factor e^{i k.x} is stripped.
struct ModeVector {
    std::array<Real, 3> re;
    std::array<Real, 3> im;
};

/// Radiation-gauge eigenfunction A^i_{n, pol}(k, z).
/// Polarization 1: (kbar_i/|k|) sqrt(2/a) sin(n pi z/a), kbar_i = eps^{ij} k_j.
/// Polarization 2: (1/(|k| omega)) (zhat^i omega^2 + zhat.grad grad^i) sqrt(2/a) cos(n pi z/a),
/// with an extra 2^{-1/2} when n = 0.
/// Throws InvalidMode for (n = 0, pol 1), negative n, unknown polarization or k = 0.
ModeVector eigenmode(const ModeIndex& idx, const PlateGeometry& geom, const Real& z);

/// Largest of |tangential A| (proportional to zhat x E) and |zhat . curl A|
/// (proportional to zhat . B) at z = 0 and z = a.
Real check_boundary_conditions(const ModeIndex& idx, const PlateGeometry& geom);

}  // namespace casimir
