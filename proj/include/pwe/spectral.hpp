#pragma once

#include <memory>

#include "pwe/env.hpp"
#include "pwe/errors.hpp"
#include "pwe/types.hpp"

namespace pwe {

enum class BoundaryKind { Sine, Cosine, Periodic };

/// Complex acoustic field sampled on a depth grid (N+1 values).
/// Sine (Dirichlet) plans require zero endpoints.
struct ComplexField {
  DepthGrid grid;
  ComplexVector values;

  static ComplexField zero(const DepthGrid& grid);
  /// sin(l*pi*z/H) sampled on the grid (unit amplitude, zero endpoints).
  static ComplexField sine_mode(const DepthGrid& grid, int l);
};

/// Depth transform for one boundary condition, with the continuous
/// eigenvalues of d^2/dz^2 attached to each transform index. Immutable and
/// shareable; executions are safe to run concurrently on distinct fields.
class TransformPlan {
 public:
  TransformPlan(BoundaryKind kind, const DepthGrid& grid);
  ~TransformPlan();
  TransformPlan(TransformPlan&&) noexcept;
  TransformPlan& operator=(TransformPlan&&) noexcept;
  TransformPlan(const TransformPlan&) = delete;
  TransformPlan& operator=(const TransformPlan&) = delete;

  BoundaryKind kind() const;
  const DepthGrid& grid() const;
  /// Number of spectral coefficients (N-1 Sine, N+1 Cosine, N Periodic).
  int size() const;
  /// lambda_l in coefficient storage order (1/m^2), all real.
  const RealVector& eigenvalues() const;

  /// In-place unscaled transform kernel on interleaved complex data.
  void execute(Complex* data) const;
  void execute_inverse_kernel(Complex* data) const;  // Periodic only

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Analysis: field samples -> spectral coefficients.
ComplexVector forward(const TransformPlan& plan, const ComplexField& field);

/// Synthesis: spectral coefficients -> field samples (inverse of forward).
ComplexField inverse(const TransformPlan& plan, const ComplexVector& coeffs);

/// Exact solve of (1 + b_tilde d^2/dz^2) w = field under the plan's boundary
/// conditions: divide each coefficient by (1 + b_tilde*lambda_l).
/// Throws SpectralPole when a multiplier is within 1e-14 of zero.
ComplexField isovelocity_inverse(const TransformPlan& plan, Complex b_tilde,
                                 const ComplexField& field);

}  // namespace pwe
