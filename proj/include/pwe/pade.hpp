#pragma once

#include <vector>

#include "pwe/errors.hpp"
#include "pwe/types.hpp"

namespace pwe {

/// Partial-fraction form of the [p/p] rational approximant of the one-step
/// propagator symbol f(X) = exp(i*sigma*(sqrt(1+X) - 1)), sigma = k0*h:
///   f(X) ~ d0 + sum_j d_j / (1 + b_j X).
struct PadeCoefficients {
  int p = 0;
  double sigma = 0.0;
  Complex d0{1.0, 0.0};
  ComplexVector d;
  ComplexVector b;
};

/// Maclaurin coefficients a_0..a_order of f(X) = exp(i*sigma*(sqrt(1+X) - 1)).
std::vector<Complex> propagator_taylor(double sigma, int order);

/// Exact symbol value; principal branch of the square root.
Complex propagator_symbol(double sigma, Complex X);

/// [p/p] approximant of the propagator symbol in partial-fraction form.
/// Throws SingularPadeSystem for degenerate (sigma, p) combinations and
/// RepeatedPoles when the denominator has a multiple root.
PadeCoefficients pade_coefficients(double sigma, int p);

/// d0 + sum_j d_j / (1 + b_j X). Throws PoleHit within 1e-14 of a pole.
Complex evaluate_rational(const PadeCoefficients& coeffs, Complex X);

/// Partial fractions of P(X)/Q(X), coefficients low order first, Q(0) != 0,
/// deg P <= deg Q, simple roots. Exposed separately so the conversion can be
/// exercised on crafted polynomials.
PadeCoefficients partial_fractions(const ComplexVector& P, const ComplexVector& Q);

}  // namespace pwe
