#pragma once

#include <functional>
#include <optional>

#include "pwe/env.hpp"
#include "pwe/pade.hpp"
#include "pwe/spectral.hpp"

namespace pwe {

/// Absorbing layer near both boundaries: adds i*s(z)*k0^2 to delta k^2,
/// where s ramps quadratically from 0 at the inner edge to s_max at the wall.
struct SpongeConfig {
  double thickness = 0.0;
  double s_max = 0.0;
};

ComplexVector apply_sponge(const RealVector& dk2, const SpongeConfig& sponge,
                           const DepthGrid& grid, double k0);

/// delta k^2 for one march step, with the sponge folded in when configured.
ComplexVector step_perturbation(const EnvironmentModel& env, const DepthGrid& grid,
                                double r, const std::optional<SpongeConfig>& sponge);

/// Truncated Neumann series for (1 + b_tilde*(d^2/dz^2 + dk2)) w = u:
///   w = sum_{m=0}^{cutoff} (-b_tilde L^-1 dk2)^m L^-1 u,
/// computed iteratively; term m costs one forward/inverse transform pair.
ComplexField neumann_solve(const TransformPlan& plan, Complex b_tilde,
                           const ComplexVector& dk2, const ComplexField& u,
                           int cutoff);

/// Complex Thomas solve of a tridiagonal system (no pivoting).
/// lower/upper have length n-1. Throws TridiagonalBreakdown when a pivot
/// magnitude drops below 1e-300.
ComplexVector solve_tridiagonal(const ComplexVector& lower, const ComplexVector& diag,
                                const ComplexVector& upper, const ComplexVector& rhs);

/// One-step marcher using exact spectral inverses plus the Neumann series.
class SsspStepper {
 public:
  SsspStepper(PadeCoefficients coeffs, const TransformPlan& plan,
              const EnvironmentModel& env, double range_step, int cutoff,
              std::optional<SpongeConfig> sponge = {},
              bool midpoint_sampling = false);

  ComplexField step(const ComplexField& u, double r) const;

  int cutoff() const { return cutoff_; }
  const PadeCoefficients& coeffs() const { return coeffs_; }
  const ComplexVector& b_tilde() const { return b_tilde_; }

 private:
  PadeCoefficients coeffs_;
  const TransformPlan* plan_;
  EnvironmentModel env_;
  double h_;
  int cutoff_;
  std::optional<SpongeConfig> sponge_;
  bool midpoint_;
  ComplexVector b_tilde_;
  Complex phase_;
  ComplexVector cached_dk2_;  // range-independent environments only
};

/// One-step marcher solving each Pade term with second-order central
/// differences on the interior points (Dirichlet closure).
class FdSspStepper {
 public:
  FdSspStepper(PadeCoefficients coeffs, const DepthGrid& grid,
               const EnvironmentModel& env, double range_step,
               std::optional<SpongeConfig> sponge = {},
               bool midpoint_sampling = false);

  ComplexField step(const ComplexField& u, double r) const;

  const PadeCoefficients& coeffs() const { return coeffs_; }
  const ComplexVector& b_tilde() const { return b_tilde_; }

 private:
  PadeCoefficients coeffs_;
  DepthGrid grid_;
  EnvironmentModel env_;
  double h_;
  std::optional<SpongeConfig> sponge_;
  bool midpoint_;
  ComplexVector b_tilde_;
  Complex phase_;
  ComplexVector cached_dk2_;
};

ComplexField sssp_step(const SsspStepper& stepper, const ComplexField& u, double r);
ComplexField fd_ssp_step(const FdSspStepper& stepper, const ComplexField& u, double r);

using StepRecorder = std::function<void(int step, double r, const ComplexField& u)>;

/// March `range.steps` steps from u0; the recorder sees u0 as step 0 and the
/// field after every step. delta k^2 is sampled at each step's starting range.
template <class Stepper>
void propagate(const Stepper& stepper, const ComplexField& u0,
               const RangeGrid& range, const StepRecorder& recorder) {
  ComplexField u = u0;
  recorder(0, 0.0, u);
  for (int n = 1; n <= range.steps; ++n) {
    u = stepper.step(u, range.r(n - 1));
    recorder(n, range.r(n), u);
  }
}

/// Field history as a matrix: column n holds the field at range r_n.
template <class Stepper>
ComplexMatrix propagate_history(const Stepper& stepper, const ComplexField& u0,
                                const RangeGrid& range) {
  ComplexMatrix history(u0.values.size(), range.steps + 1);
  propagate(stepper, u0, range,
            [&](int n, double, const ComplexField& u) { history.col(n) = u.values; });
  return history;
}

}  // namespace pwe
