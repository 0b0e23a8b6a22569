#pragma once

#include <vector>

#include "pwe/env.hpp"
#include "pwe/spectral.hpp"
#include "pwe/types.hpp"

namespace pwe {

/// Propagating normal modes of the depth waveguide at one range.
/// kappa is sorted descending; psi columns are the mode functions on the full
/// grid (zero endpoints), normalized so that dz * sum_n psi^2 = 1.
struct ModeSet {
  RealVector kappa;
  RealMatrix psi;

  int count() const { return int(kappa.size()); }
};

/// Solves psi'' + (k^2(z) - kappa^2) psi = 0 with Dirichlet walls via central
/// differences; the symmetric tridiagonal eigenproblem is solved by bisection
/// plus inverse iteration. Modes with kappa^2 > 0 are retained.
/// Throws NoPropagatingModes when none qualify.
ModeSet solve_modes(const EnvironmentModel& env, const DepthGrid& grid, double r);

/// Keeps modes whose phase speed omega/kappa is at most c_phase_max.
ModeSet restrict_phase_speed(const ModeSet& modes, double omega, double c_phase_max);

/// Point-source starter u(z) = sqrt(2*pi) sum_m psi_m(z_s) psi_m(z) / sqrt(kappa_m);
/// psi_m(z_s) is linearly interpolated between grid nodes.
ComplexField modal_starter(const ModeSet& modes, double z_s, const DepthGrid& grid);

/// Analytic wide-angle point-source surrogate
/// sqrt(k0) [1.4467 - 0.4201 k0^2 (z-z_s)^2] exp(-k0^2 (z-z_s)^2 / 3.0512),
/// endpoint-zeroed for Dirichlet plans.
ComplexField greene_starter(double k0, double z_s, const DepthGrid& grid);

/// Exact range-independent field u(r,z) = sqrt(2*pi) sum_m psi_m(z_s) psi_m(z)
/// e^{i kappa_m r} / sqrt(kappa_m); column j holds the field at ranges[j].
/// Throws RangeDependentEnvironment when env carries an eddy.
ComplexMatrix reference_field(const EnvironmentModel& env, const ModeSet& modes,
                              double z_s, const std::vector<double>& ranges,
                              const DepthGrid& grid);

}  // namespace pwe
