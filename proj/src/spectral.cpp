#include "pwe/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

namespace pwe {

namespace {

// FFTW plan creation is not thread-safe; executions are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

ComplexField ComplexField::zero(const DepthGrid& grid) {
  return ComplexField{grid, ComplexVector::Zero(grid.points())};
}

ComplexField ComplexField::sine_mode(const DepthGrid& grid, int l) {
  ComplexField f = zero(grid);
  for (int n = 1; n < grid.N; ++n)
    f.values[n] = std::sin(std::numbers::pi * l * n / grid.N);
  return f;
}

struct TransformPlan::Impl {
  BoundaryKind kind;
  DepthGrid grid;
  int n = 0;  // transform length
  RealVector eigs;
  fftw_plan r2r = nullptr;       // Sine/Cosine: two interleaved real transforms
  fftw_plan dft_fwd = nullptr;   // Periodic
  fftw_plan dft_bwd = nullptr;
  std::vector<Complex> planning_buf;

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (r2r) fftw_destroy_plan(r2r);
    if (dft_fwd) fftw_destroy_plan(dft_fwd);
    if (dft_bwd) fftw_destroy_plan(dft_bwd);
  }
};

TransformPlan::TransformPlan(BoundaryKind kind, const DepthGrid& grid)
    : impl_(std::make_unique<Impl>()) {
  impl_->kind = kind;
  impl_->grid = grid;
  const double H = grid.H;
  const int N = grid.N;
  const double pi = std::numbers::pi;

  switch (kind) {
    case BoundaryKind::Sine: {
      impl_->n = N - 1;
      impl_->eigs.resize(N - 1);
      for (int l = 1; l <= N - 1; ++l) {
        const double w = l * pi / H;
        impl_->eigs[l - 1] = -w * w;
      }
      break;
    }
    case BoundaryKind::Cosine: {
      impl_->n = N + 1;
      impl_->eigs.resize(N + 1);
      for (int l = 0; l <= N; ++l) {
        const double w = l * pi / H;
        impl_->eigs[l] = -w * w;
      }
      break;
    }
    case BoundaryKind::Periodic: {
      impl_->n = N;
      impl_->eigs.resize(N);
      for (int l = 0; l < N; ++l) {
        const int signed_l = l <= N / 2 ? l : l - N;
        const double w = 2.0 * pi * signed_l / H;
        impl_->eigs[l] = -w * w;
      }
      break;
    }
  }

  impl_->planning_buf.resize(impl_->n);
  auto* buf = reinterpret_cast<double*>(impl_->planning_buf.data());
  auto* cbuf = reinterpret_cast<fftw_complex*>(impl_->planning_buf.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (kind == BoundaryKind::Periodic) {
    impl_->dft_fwd = fftw_plan_dft_1d(impl_->n, cbuf, cbuf, FFTW_FORWARD, flags);
    impl_->dft_bwd = fftw_plan_dft_1d(impl_->n, cbuf, cbuf, FFTW_BACKWARD, flags);
  } else {
    fftw_r2r_kind rkind =
        kind == BoundaryKind::Sine ? FFTW_RODFT00 : FFTW_REDFT00;
    int nn = impl_->n;
    impl_->r2r = fftw_plan_many_r2r(1, &nn, 2, buf, nullptr, 2, 1, buf, nullptr,
                                    2, 1, &rkind, flags);
  }
}

TransformPlan::~TransformPlan() = default;
TransformPlan::TransformPlan(TransformPlan&&) noexcept = default;
TransformPlan& TransformPlan::operator=(TransformPlan&&) noexcept = default;

BoundaryKind TransformPlan::kind() const { return impl_->kind; }
const DepthGrid& TransformPlan::grid() const { return impl_->grid; }
int TransformPlan::size() const { return impl_->n; }
const RealVector& TransformPlan::eigenvalues() const { return impl_->eigs; }

void TransformPlan::execute(Complex* data) const {
  if (impl_->kind == BoundaryKind::Periodic) {
    auto* c = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(impl_->dft_fwd, c, c);
  } else {
    auto* d = reinterpret_cast<double*>(data);
    fftw_execute_r2r(impl_->r2r, d, d);
  }
}

void TransformPlan::execute_inverse_kernel(Complex* data) const {
  auto* c = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(impl_->dft_bwd, c, c);
}

namespace {

void check_field(const TransformPlan& plan, const ComplexField& field) {
  if (field.values.size() != plan.grid().points())
    throw SizeMismatch("spectral: field length does not match the plan's grid");
}

}  // namespace

ComplexVector forward(const TransformPlan& plan, const ComplexField& field) {
  check_field(plan, field);
  const int N = plan.grid().N;
  ComplexVector buf(plan.size());
  switch (plan.kind()) {
    case BoundaryKind::Sine:
      buf = field.values.segment(1, N - 1);
      break;
    case BoundaryKind::Cosine:
      buf = field.values;
      break;
    case BoundaryKind::Periodic:
      buf = field.values.head(N);
      break;
  }
  plan.execute(buf.data());
  buf *= 1.0 / N;  // forward scale; round trip is the identity
  return buf;
}

ComplexField inverse(const TransformPlan& plan, const ComplexVector& coeffs) {
  if (coeffs.size() != plan.size())
    throw SizeMismatch("spectral: coefficient length does not match the plan");
  const int N = plan.grid().N;
  ComplexField out = ComplexField::zero(plan.grid());
  ComplexVector buf = coeffs;
  switch (plan.kind()) {
    case BoundaryKind::Sine:
      plan.execute(buf.data());
      out.values.segment(1, N - 1) = 0.5 * buf;
      break;
    case BoundaryKind::Cosine:
      plan.execute(buf.data());
      out.values = 0.5 * buf;
      break;
    case BoundaryKind::Periodic:
      plan.execute_inverse_kernel(buf.data());
      out.values.head(N) = buf;
      out.values[N] = buf[0];
      break;
  }
  return out;
}

ComplexField isovelocity_inverse(const TransformPlan& plan, Complex b_tilde,
                                 const ComplexField& field) {
  ComplexVector coeffs = forward(plan, field);
  const RealVector& eigs = plan.eigenvalues();
  for (Eigen::Index l = 0; l < coeffs.size(); ++l) {
    const Complex mult = 1.0 + b_tilde * eigs[l];
    if (std::abs(mult) < 1e-14)
      throw SpectralPole("isovelocity_inverse: resonant b_tilde, |1 + b*lambda| < 1e-14");
    coeffs[l] /= mult;
  }
  return inverse(plan, coeffs);
}

}  // namespace pwe
