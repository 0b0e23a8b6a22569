#pragma once

#include <numbers>
#include <optional>

#include "pwe/errors.hpp"
#include "pwe/types.hpp"

namespace pwe {

/// Equidistant vertical grid over [0, H]: N intervals, points z_n = n*dz.
struct DepthGrid {
  double H = 0.0;
  int N = 0;
  double dz = 0.0;

  DepthGrid() = default;
  DepthGrid(double depth, int intervals);

  double z(int n) const { return n == N ? H : n * dz; }
  int points() const { return N + 1; }
};

/// Range march: `steps` steps of size h, r_n = n*h.
struct RangeGrid {
  double h = 0.0;
  int steps = 0;

  RangeGrid() = default;
  RangeGrid(double step, int count);

  double r(int n) const { return n * h; }
};

/// Canonical deep-water sound-speed profile with a minimum at z_axis.
struct MunkProfile {
  double c_ref = 1500.0;
  double eps = 0.00737;
  double z_axis = 1300.0;
};

/// Gaussian synoptic-eddy perturbation; the track runs along x with y fixed at y_0.
struct EddyModel {
  double beta = 0.0;
  double r_x = 0.0;
  double r_y = 0.0;
  double r_z = 0.0;
  double x_0 = 0.0;
  double y_0 = 0.0;
  double z_0 = 0.0;
  double c_m = 0.0;
};

struct EnvironmentModel {
  MunkProfile munk;
  std::optional<EddyModel> eddy;
  double frequency = 100.0;
  double c0 = 1500.0;

  double omega() const { return 2.0 * std::numbers::pi * frequency; }
  double k0() const { return omega() / c0; }
  bool range_dependent() const { return eddy.has_value(); }
  double sound_speed(double r, double z) const;

  /// Constant-speed medium: Munk profile with the correction switched off.
  static EnvironmentModel isovelocity(double c, double f);
};

double munk_speed(double z, const MunkProfile& profile);

/// Sound-speed perturbation of the eddy at track coordinate r and depth z.
double eddy_speed(double r, double z, const EddyModel& eddy);

/// delta k^2(z_n) = (omega/c(r, z_n))^2 - k0^2 over the full grid.
RealVector wavenumber_perturbation(const EnvironmentModel& env,
                                   const DepthGrid& grid, double r);

}  // namespace pwe
