#include "pwe/pade.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace pwe {

namespace {

// Horner evaluation, coefficients low order first.
Complex polyval(const ComplexVector& c, Complex x) {
  Complex acc{0.0, 0.0};
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

ComplexVector polyder(const ComplexVector& c) {
  if (c.size() <= 1) return ComplexVector::Zero(1);
  ComplexVector d(c.size() - 1);
  for (Eigen::Index i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
  return d;
}

// Roots via the companion matrix of the monic polynomial.
ComplexVector polyroots(const ComplexVector& c) {
  Eigen::Index deg = c.size() - 1;
  while (deg > 0 && c[deg] == Complex{0.0, 0.0}) --deg;
  if (deg < 1) throw SingularPadeSystem("pade: zero-degree denominator");
  ComplexMatrix comp = ComplexMatrix::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<ComplexMatrix> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw SingularPadeSystem("pade: companion eigensolve failed");
  return es.eigenvalues();
}

}  // namespace

std::vector<Complex> propagator_taylor(double sigma, int order) {
  if (order < 0) throw std::invalid_argument("propagator_taylor: order < 0");
  // Inner series s(X) = sqrt(1+X) - 1: binomial coefficients C(1/2, k).
  std::vector<Complex> s(order + 1, Complex{0.0, 0.0});
  double binom = 1.0;
  for (int k = 1; k <= order; ++k) {
    binom *= (0.5 - (k - 1)) / k;
    s[k] = binom;
  }
  // g = exp(i*sigma*s) via g' = i*sigma*s'*g.
  const Complex isig{0.0, sigma};
  std::vector<Complex> g(order + 1, Complex{0.0, 0.0});
  g[0] = 1.0;
  for (int n = 1; n <= order; ++n) {
    Complex acc{0.0, 0.0};
    for (int k = 1; k <= n; ++k) acc += double(k) * isig * s[k] * g[n - k];
    g[n] = acc / double(n);
  }
  return g;
}

Complex propagator_symbol(double sigma, Complex X) {
  return std::exp(Complex{0.0, sigma} * (std::sqrt(Complex{1.0, 0.0} + X) - 1.0));
}

PadeCoefficients partial_fractions(const ComplexVector& P, const ComplexVector& Q) {
  const Eigen::Index p = Q.size() - 1;
  if (P.size() > Q.size())
    throw std::invalid_argument("partial_fractions: deg P > deg Q");
  ComplexVector roots = polyroots(Q);
  for (Eigen::Index i = 0; i < roots.size(); ++i)
    for (Eigen::Index j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-8)
        throw RepeatedPoles("partial_fractions: denominator root of multiplicity > 1");

  PadeCoefficients out;
  out.p = int(p);
  out.d0 = (P.size() == Q.size() ? P[p] : Complex{0.0, 0.0}) / Q[p];
  out.d.resize(p);
  out.b.resize(p);
  const ComplexVector Qp = polyder(Q);
  for (Eigen::Index j = 0; j < p; ++j) {
    const Complex Xj = roots[j];
    if (std::abs(Xj) < 1e-300)
      throw SingularPadeSystem("partial_fractions: pole at the origin");
    out.b[j] = -1.0 / Xj;
    // residue of P/Q at Xj is P(Xj)/Q'(Xj); c/(X - Xj) = (-c/Xj)/(1 + b X)
    out.d[j] = -polyval(P, Xj) / (Xj * polyval(Qp, Xj));
  }
  return out;
}

PadeCoefficients pade_coefficients(double sigma, int p) {
  if (p < 1) throw std::invalid_argument("pade_coefficients: p must be >= 1");
  if (!std::isfinite(sigma))
    throw std::invalid_argument("pade_coefficients: sigma must be finite");

  if (sigma == 0.0) {
    // f == 1; the rational reduces to the constant 1.
    PadeCoefficients out;
    out.p = p;
    out.sigma = 0.0;
    out.d0 = 1.0;
    out.d = ComplexVector::Zero(p);
    out.b = ComplexVector::Ones(p);
    return out;
  }

  const std::vector<Complex> a = propagator_taylor(sigma, 2 * p);

  // Denominator from the Hankel system sum_k q_k a_{p+m-k} = -a_{p+m}.
  ComplexMatrix A(p, p);
  ComplexVector rhs(p);
  for (int m = 1; m <= p; ++m) {
    for (int k = 1; k <= p; ++k) {
      const int idx = p + m - k;
      A(m - 1, k - 1) = idx >= 0 ? a[idx] : Complex{0.0, 0.0};
    }
    rhs[m - 1] = -a[p + m];
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(A);
  ComplexVector q = lu.solve(rhs);
  const double resid = (A * q - rhs).norm();
  if (!q.allFinite() || resid > 1e-8 * (1.0 + rhs.norm()))
    throw SingularPadeSystem("pade_coefficients: Hankel system numerically singular");

  ComplexVector Q(p + 1);
  Q[0] = 1.0;
  for (int k = 1; k <= p; ++k) Q[k] = q[k - 1];
  ComplexVector P(p + 1);
  for (int n = 0; n <= p; ++n) {
    Complex acc{0.0, 0.0};
    for (int k = 0; k <= n; ++k) acc += Q[k] * a[n - k];
    P[n] = acc;
  }

  PadeCoefficients out = partial_fractions(P, Q);
  out.sigma = sigma;

  // f(0) = 1 must be reproduced, and poles must stay away from the origin.
  const Complex at0 = out.d0 + out.d.sum();
  if (std::abs(at0 - 1.0) > 1e-10)
    throw SingularPadeSystem("pade_coefficients: normalization d0 + sum d != 1");
  for (int j = 0; j < p; ++j)
    if (1.0 / std::abs(out.b[j]) <= 0.01)
      throw SingularPadeSystem("pade_coefficients: pole inside |X| = 0.01");
  return out;
}

Complex evaluate_rational(const PadeCoefficients& coeffs, Complex X) {
  Complex acc = coeffs.d0;
  for (Eigen::Index j = 0; j < coeffs.d.size(); ++j) {
    const Complex den = 1.0 + coeffs.b[j] * X;
    if (std::abs(den) < 1e-14)
      throw PoleHit("evaluate_rational: X within 1e-14 of a pole");
    acc += coeffs.d[j] / den;
  }
  return acc;
}

}  // namespace pwe
