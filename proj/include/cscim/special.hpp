#pragma once

namespace cscim::special {

struct FresnelPair {
  double c;  ///< C(x) = ∫_0^x cos(πt²/2) dt
  double s;  ///< S(x) = ∫_0^x sin(πt²/2) dt
};

/// Fresnel integrals, absolute error below 1e-14 over the real line.
/// Power series for |x| ≤ 1.5, continued fraction for the complementary
/// error function beyond that.
FresnelPair fresnel(double x);

/// Bessel function of the first kind for integer order (negative orders via
/// J_{-k}(x) = (-1)^k J_k(x)).
double bessel_j(int order, double x);

}  // namespace cscim::special
