#include "pwe/env.hpp"

#include <cmath>
#include <stdexcept>

namespace pwe {

DepthGrid::DepthGrid(double depth, int intervals)
    : H(depth), N(intervals), dz(depth / intervals) {
  if (!(depth > 0.0)) throw std::invalid_argument("DepthGrid: H must be positive");
  if (intervals < 2) throw std::invalid_argument("DepthGrid: N must be >= 2");
}

RangeGrid::RangeGrid(double step, int count) : h(step), steps(count) {
  if (!(step > 0.0)) throw std::invalid_argument("RangeGrid: h must be positive");
  if (count < 1) throw std::invalid_argument("RangeGrid: steps must be >= 1");
}

double EnvironmentModel::sound_speed(double r, double z) const {
  double c = munk_speed(z, munk);
  if (eddy) c += eddy_speed(r, z, *eddy);
  return c;
}

EnvironmentModel EnvironmentModel::isovelocity(double c, double f) {
  EnvironmentModel env;
  env.munk = MunkProfile{c, 0.0, 1300.0};
  env.frequency = f;
  env.c0 = c;
  return env;
}

double munk_speed(double z, const MunkProfile& profile) {
  const double eta = 2.0 * (z - profile.z_axis) / profile.z_axis;
  return profile.c_ref * (1.0 + profile.eps * (eta + std::exp(-eta) - 1.0));
}

double eddy_speed(double r, double z, const EddyModel& eddy) {
  const double x = r;              // propagation track: x := r, y := y_0
  const double zeta = (z - eddy.z_0) / eddy.r_z;
  const double gx = std::exp(-(x - eddy.x_0) * (x - eddy.x_0) / (eddy.r_x * eddy.r_x));
  return -eddy.c_m * gx * zeta * std::exp(-eddy.beta * zeta * zeta);
}

RealVector wavenumber_perturbation(const EnvironmentModel& env,
                                   const DepthGrid& grid, double r) {
  const double om = env.omega();
  const double k0sq = env.k0() * env.k0();
  RealVector dk2(grid.points());
  for (int n = 0; n <= grid.N; ++n) {
    const double c = env.sound_speed(r, grid.z(n));
    dk2[n] = (om / c) * (om / c) - k0sq;
  }
  return dk2;
}

}  // namespace pwe
