#include "pwe/propagators.hpp"

#include <cmath>
#include <stdexcept>

namespace pwe {

ComplexVector apply_sponge(const RealVector& dk2, const SpongeConfig& sponge,
                           const DepthGrid& grid, double k0) {
  if (!(sponge.thickness < grid.H / 2.0))
    throw std::invalid_argument("apply_sponge: thickness must be < H/2");
  ComplexVector out = dk2.cast<Complex>();
  if (sponge.s_max == 0.0 || sponge.thickness <= 0.0) return out;
  const double t = sponge.thickness;
  for (int n = 0; n <= grid.N; ++n) {
    const double z = grid.z(n);
    double s = 0.0;
    if (z < t) {
      const double x = (t - z) / t;
      s = sponge.s_max * x * x;
    } else if (z > grid.H - t) {
      const double x = (z - (grid.H - t)) / t;
      s = sponge.s_max * x * x;
    }
    // +i makes the marched field decay under the e^{+i kappa r} convention
    out[n] += Complex{0.0, s * k0 * k0};
  }
  return out;
}

ComplexVector step_perturbation(const EnvironmentModel& env, const DepthGrid& grid,
                                double r, const std::optional<SpongeConfig>& sponge) {
  RealVector dk2 = wavenumber_perturbation(env, grid, r);
  if (sponge) return apply_sponge(dk2, *sponge, grid, env.k0());
  return dk2.cast<Complex>();
}

ComplexField neumann_solve(const TransformPlan& plan, Complex b_tilde,
                           const ComplexVector& dk2, const ComplexField& u,
                           int cutoff) {
  if (dk2.size() != u.values.size())
    throw SizeMismatch("neumann_solve: dk2 length does not match the field");
  ComplexField term = isovelocity_inverse(plan, b_tilde, u);
  ComplexField acc = term;
  for (int m = 1; m <= cutoff; ++m) {
    ComplexField rhs{u.grid, dk2.cwiseProduct(term.values)};
    term = isovelocity_inverse(plan, b_tilde, rhs);
    term.values *= -b_tilde;
    acc.values += term.values;
  }
  return acc;
}

ComplexVector solve_tridiagonal(const ComplexVector& lower, const ComplexVector& diag,
                                const ComplexVector& upper, const ComplexVector& rhs) {
  const Eigen::Index n = diag.size();
  if (lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
    throw SizeMismatch("solve_tridiagonal: inconsistent band sizes");
  ComplexVector c(n - 1), d(n);
  Complex pivot = diag[0];
  if (std::abs(pivot) < 1e-300)
    throw TridiagonalBreakdown("solve_tridiagonal: zero pivot");
  if (n > 1) c[0] = upper[0] / pivot;
  d[0] = rhs[0] / pivot;
  for (Eigen::Index i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i - 1] * c[i - 1];
    if (std::abs(pivot) < 1e-300)
      throw TridiagonalBreakdown("solve_tridiagonal: zero pivot");
    if (i < n - 1) c[i] = upper[i] / pivot;
    d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
  }
  ComplexVector x(n);
  x[n - 1] = d[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

namespace {

ComplexVector scaled_poles(const PadeCoefficients& coeffs, double k0) {
  return coeffs.b / (k0 * k0);
}

void enforce_boundary(const TransformPlan& plan, ComplexVector& values) {
  const int N = plan.grid().N;
  switch (plan.kind()) {
    case BoundaryKind::Sine:
      values[0] = Complex{0.0, 0.0};
      values[N] = Complex{0.0, 0.0};
      break;
    case BoundaryKind::Periodic:
      values[N] = values[0];
      break;
    case BoundaryKind::Cosine:
      break;
  }
}

}  // namespace

SsspStepper::SsspStepper(PadeCoefficients coeffs, const TransformPlan& plan,
                         const EnvironmentModel& env, double range_step, int cutoff,
                         std::optional<SpongeConfig> sponge, bool midpoint_sampling)
    : coeffs_(std::move(coeffs)),
      plan_(&plan),
      env_(env),
      h_(range_step),
      cutoff_(cutoff),
      sponge_(sponge),
      midpoint_(midpoint_sampling),
      b_tilde_(scaled_poles(coeffs_, env.k0())),
      phase_(std::exp(Complex{0.0, env.k0() * range_step})) {
  if (cutoff < 0) throw std::invalid_argument("SsspStepper: cutoff must be >= 0");
  if (!env_.range_dependent())
    cached_dk2_ = step_perturbation(env_, plan.grid(), 0.0, sponge_);
}

ComplexField SsspStepper::step(const ComplexField& u, double r) const {
  ComplexVector fresh;
  if (env_.range_dependent())
    fresh = step_perturbation(env_, plan_->grid(), midpoint_ ? r + 0.5 * h_ : r,
                              sponge_);
  const ComplexVector& dk2 = env_.range_dependent() ? fresh : cached_dk2_;
  ComplexVector acc = coeffs_.d0 * u.values;
  for (int j = 0; j < coeffs_.p; ++j) {
    ComplexField wj = neumann_solve(*plan_, b_tilde_[j], dk2, u, cutoff_);
    acc += coeffs_.d[j] * wj.values;
  }
  acc *= phase_;
  enforce_boundary(*plan_, acc);
  return ComplexField{u.grid, std::move(acc)};
}

FdSspStepper::FdSspStepper(PadeCoefficients coeffs, const DepthGrid& grid,
                           const EnvironmentModel& env, double range_step,
                           std::optional<SpongeConfig> sponge, bool midpoint_sampling)
    : coeffs_(std::move(coeffs)),
      grid_(grid),
      env_(env),
      h_(range_step),
      sponge_(sponge),
      midpoint_(midpoint_sampling),
      b_tilde_(scaled_poles(coeffs_, env.k0())),
      phase_(std::exp(Complex{0.0, env.k0() * range_step})) {
  if (!env_.range_dependent())
    cached_dk2_ = step_perturbation(env_, grid_, 0.0, sponge_);
}

ComplexField FdSspStepper::step(const ComplexField& u, double r) const {
  if (u.values.size() != grid_.points())
    throw SizeMismatch("FdSspStepper: field length does not match the grid");
  ComplexVector fresh;
  if (env_.range_dependent())
    fresh = step_perturbation(env_, grid_, midpoint_ ? r + 0.5 * h_ : r, sponge_);
  const ComplexVector& dk2 = env_.range_dependent() ? fresh : cached_dk2_;
  const int n = grid_.N - 1;
  const double inv_dz2 = 1.0 / (grid_.dz * grid_.dz);
  const ComplexVector rhs = u.values.segment(1, n);
  ComplexVector acc = coeffs_.d0 * u.values;
  for (int j = 0; j < coeffs_.p; ++j) {
    const Complex bt = b_tilde_[j];
    ComplexVector diag(n), off(n - 1);
    for (int i = 0; i < n; ++i)
      diag[i] = 1.0 + bt * (-2.0 * inv_dz2 + dk2[i + 1]);
    off.setConstant(bt * inv_dz2);
    acc.segment(1, n) += coeffs_.d[j] * solve_tridiagonal(off, diag, off, rhs);
  }
  acc *= phase_;
  acc[0] = Complex{0.0, 0.0};
  acc[grid_.N] = Complex{0.0, 0.0};
  return ComplexField{u.grid, std::move(acc)};
}

ComplexField sssp_step(const SsspStepper& stepper, const ComplexField& u, double r) {
  return stepper.step(u, r);
}

ComplexField fd_ssp_step(const FdSspStepper& stepper, const ComplexField& u, double r) {
  return stepper.step(u, r);
}

}  // namespace pwe
