#include "pwe/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pwe {

namespace {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) below x,
// by the Sturm sequence of the shifted LDL^T recurrence.
int count_below(const RealVector& diag, const RealVector& off, double x,
                double pivmin) {
  const Eigen::Index n = diag.size();
  int count = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++count;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    q = diag[i] - x - off[i - 1] * off[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// Eigenvalue with ascending index idx (0-based) by bisection on [lo, hi].
double bisect_eigenvalue(const RealVector& diag, const RealVector& off, int idx,
                         double lo, double hi, double pivmin) {
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double tol = 2.0 * std::numeric_limits<double>::epsilon() * scale;
  for (int it = 0; it < 120 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(diag, off, mid, pivmin) > idx)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Inverse iteration for the eigenvector at the given eigenvalue. The shifted
// tridiagonal is factored once with partial pivoting (band LU with one extra
// superdiagonal), then a few solves refine a deterministic random seed.
RealVector inverse_iteration(const RealVector& diag, const RealVector& off,
                             double eigenvalue, std::uint64_t seed) {
  const Eigen::Index n = diag.size();
  RealVector d(n), u1(n), u2(n), l(n);
  Eigen::VectorXi piv(n);

  double norm_scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    norm_scale = std::max(norm_scale, std::abs(diag[i] - eigenvalue));
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    norm_scale = std::max(norm_scale, std::abs(off[i]));
  const double eps_shift = norm_scale * std::numeric_limits<double>::epsilon();

  // rows of (T - lambda I): l (sub), d (diag), u1/u2 (super, super^2)
  for (Eigen::Index i = 0; i < n; ++i) {
    d[i] = diag[i] - eigenvalue;
    u1[i] = i + 1 < n ? off[i] : 0.0;
    u2[i] = 0.0;
    l[i] = i + 1 < n ? off[i] : 0.0;
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(l[i]) > std::abs(d[i])) {
      piv[i] = 1;
      std::swap(d[i], l[i]);
      std::swap(u1[i], d[i + 1]);
      std::swap(u2[i], u1[i + 1]);
    } else {
      piv[i] = 0;
    }
    if (d[i] == 0.0) d[i] = eps_shift > 0.0 ? eps_shift : 1e-300;
    const double m = l[i] / d[i];
    l[i] = m;  // store the multiplier
    d[i + 1] -= m * u1[i];
    u1[i + 1] -= m * u2[i];
  }
  if (d[n - 1] == 0.0) d[n - 1] = eps_shift > 0.0 ? eps_shift : 1e-300;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  RealVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uni(rng);
  v.normalize();

  for (int pass = 0; pass < 3; ++pass) {
    // forward substitution with the recorded swaps
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (piv[i]) std::swap(v[i], v[i + 1]);
      v[i + 1] -= l[i] * v[i];
    }
    // back substitution through the three stored bands
    v[n - 1] /= d[n - 1];
    if (n > 1) v[n - 2] = (v[n - 2] - u1[n - 2] * v[n - 1]) / d[n - 2];
    for (Eigen::Index i = n - 3; i >= 0; --i)
      v[i] = (v[i] - u1[i] * v[i + 1] - u2[i] * v[i + 2]) / d[i];
    const double nrm = v.norm();
    if (!(nrm > 0.0) || !v.allFinite()) {
      for (Eigen::Index i = 0; i < n; ++i) v[i] = uni(rng);
    }
    v.normalize();
  }
  return v;
}

}  // namespace

ModeSet solve_modes(const EnvironmentModel& env, const DepthGrid& grid, double r) {
  if (grid.N < 16)
    throw std::invalid_argument("solve_modes: grid too coarse (N < 16)");
  const Eigen::Index n = grid.N - 1;
  const double inv_dz2 = 1.0 / (grid.dz * grid.dz);
  const double om = env.omega();

  RealVector diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = env.sound_speed(r, grid.z(int(i) + 1));
    diag[i] = (om / c) * (om / c) - 2.0 * inv_dz2;
  }
  RealVector off = RealVector::Constant(n - 1, inv_dz2);

  // Gershgorin bounds
  double lo = diag[0], hi = diag[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < n) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  const double pivmin =
      std::numeric_limits<double>::min() *
      std::max(1.0, inv_dz2 * inv_dz2);

  const int below_zero = count_below(diag, off, 0.0, pivmin);
  const int total = int(n);
  const int propagating = total - below_zero;
  if (propagating <= 0)
    throw NoPropagatingModes("solve_modes: no eigenvalue kappa^2 > 0");

  ModeSet modes;
  modes.kappa.resize(propagating);
  modes.psi = RealMatrix::Zero(grid.points(), propagating);

  RealMatrix interior(n, propagating);
  for (int m = 0; m < propagating; ++m) {
    const int idx = total - 1 - m;  // ascending index of the m-th largest
    const double lambda = bisect_eigenvalue(diag, off, idx, lo, hi, pivmin);
    modes.kappa[m] = std::sqrt(std::max(lambda, 0.0));
    interior.col(m) = inverse_iteration(diag, off, lambda, 0x9e3779b9ull + m);
  }

  // modified Gram-Schmidt keeps near-degenerate eigenvectors orthogonal
  for (int m = 0; m < propagating; ++m) {
    for (int j = 0; j < m; ++j)
      interior.col(m) -= interior.col(j).dot(interior.col(m)) * interior.col(j);
    const double nrm = interior.col(m).norm();
    if (nrm > 0.0) interior.col(m) /= nrm;
  }

  // trapezoid normalization dz * sum psi^2 = 1 (endpoints are zero)
  const double scale = 1.0 / std::sqrt(grid.dz);
  for (int m = 0; m < propagating; ++m)
    modes.psi.col(m).segment(1, n) = scale * interior.col(m);
  return modes;
}

ModeSet restrict_phase_speed(const ModeSet& modes, double omega, double c_phase_max) {
  const double kappa_min = omega / c_phase_max;
  int keep = 0;
  while (keep < modes.count() && modes.kappa[keep] >= kappa_min) ++keep;
  if (keep == 0)
    throw NoPropagatingModes("restrict_phase_speed: no mode within the window");
  ModeSet out;
  out.kappa = modes.kappa.head(keep);
  out.psi = modes.psi.leftCols(keep);
  return out;
}

namespace {

RealVector psi_at_depth(const ModeSet& modes, double z_s, const DepthGrid& grid) {
  const double t = z_s / grid.dz;
  const int i = std::clamp(int(std::floor(t)), 0, grid.N - 1);
  const double frac = t - i;
  return (1.0 - frac) * modes.psi.row(i).transpose() +
         frac * modes.psi.row(i + 1).transpose();
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

ComplexField modal_starter(const ModeSet& modes, double z_s, const DepthGrid& grid) {
  if (!(z_s > 0.0 && z_s < grid.H))
    throw std::invalid_argument("modal_starter: z_s must lie inside (0, H)");
  if (modes.count() == 0)
    throw NoPropagatingModes("modal_starter: empty mode set");
  const RealVector psi_s = psi_at_depth(modes, z_s, grid);
  const RealVector amp =
      std::sqrt(kTwoPi) * psi_s.cwiseQuotient(modes.kappa.cwiseSqrt());
  RealVector u = modes.psi * amp;
  ComplexField out = ComplexField::zero(grid);
  out.values = u.cast<Complex>();
  return out;
}

ComplexField greene_starter(double k0, double z_s, const DepthGrid& grid) {
  if (!(z_s > 0.0 && z_s < grid.H))
    throw std::invalid_argument("greene_starter: z_s must lie inside (0, H)");
  ComplexField out = ComplexField::zero(grid);
  const double root_k0 = std::sqrt(k0);
  for (int n = 1; n < grid.N; ++n) {
    const double q = k0 * k0 * (grid.z(n) - z_s) * (grid.z(n) - z_s);
    out.values[n] = root_k0 * (1.4467 - 0.4201 * q) * std::exp(-q / 3.0512);
  }
  return out;
}

ComplexMatrix reference_field(const EnvironmentModel& env, const ModeSet& modes,
                              double z_s, const std::vector<double>& ranges,
                              const DepthGrid& grid) {
  if (env.range_dependent())
    throw RangeDependentEnvironment(
        "reference_field: normal-mode reference requires a range-independent environment");
  const RealVector psi_s = psi_at_depth(modes, z_s, grid);
  const RealVector amp =
      std::sqrt(kTwoPi) * psi_s.cwiseQuotient(modes.kappa.cwiseSqrt());
  ComplexMatrix out(grid.points(), Eigen::Index(ranges.size()));
  ComplexVector weights(modes.count());
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (int m = 0; m < modes.count(); ++m)
      weights[m] = amp[m] * std::exp(Complex{0.0, modes.kappa[m] * ranges[j]});
    out.col(j) = modes.psi * weights;
  }
  return out;
}

}  // namespace pwe
