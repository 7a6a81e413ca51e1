#include "cscim/special.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cscim::special {

FresnelPair fresnel(double x) {
  constexpr double kEps = 1e-16;
  constexpr double kTiny = std::numeric_limits<double>::min();
  constexpr double kSeriesLimit = 1.5;
  constexpr int kMaxIter = 500;
  constexpr double kPi = std::numbers::pi;

  const double ax = std::abs(x);
  double c = 0.0;
  double s = 0.0;

  if (ax < std::sqrt(kTiny)) {
    c = ax;
  } else if (ax <= kSeriesLimit) {
    // C and S series are interleaved: odd powers of (πx²/2) feed S.
    const double fact = 0.5 * kPi * ax * ax;
    double sum = 0.0;
    double sum_s = 0.0;
    double sum_c = ax;
    double sign = 1.0;
    double term = ax;
    bool odd = true;
    int n = 3;
    int k = 1;
    for (; k <= kMaxIter; ++k) {
      term *= fact / k;
      sum += sign * term / n;
      const double test = std::abs(sum) * kEps;
      if (odd) {
        sign = -sign;
        sum_s = sum;
        sum = sum_c;
      } else {
        sum_c = sum;
        sum = sum_s;
      }
      if (term < test) break;
      odd = !odd;
      n += 2;
    }
    if (k > kMaxIter) throw std::runtime_error("fresnel: series did not converge");
    c = sum_c;
    s = sum_s;
  } else {
    // Modified Lentz evaluation of the erfc continued fraction.
    using C = std::complex<double>;
    const double pix2 = kPi * ax * ax;
    C b(1.0, -pix2);
    C cc = 1.0 / kTiny;
    C d = 1.0 / b;
    C h = d;
    int n = -1;
    int k = 2;
    for (; k <= kMaxIter; ++k) {
      n += 2;
      const double a = -static_cast<double>(n * (n + 1));
      b += 4.0;
      d = 1.0 / (a * d + b);
      cc = b + a / cc;
      const C del = cc * d;
      h *= del;
      if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    if (k > kMaxIter) throw std::runtime_error("fresnel: continued fraction did not converge");
    h *= C(ax, -ax);
    const C cs = C(0.5, 0.5) * (1.0 - C(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
    c = cs.real();
    s = cs.imag();
  }
  if (x < 0.0) {
    c = -c;
    s = -s;
  }
  return {c, s};
}

double bessel_j(int order, double x) {
  const int n = std::abs(order);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const double sign_x = (x < 0.0 && (n % 2) == 1) ? -1.0 : 1.0;
  const double value = std::cyl_bessel_j(static_cast<double>(n), std::abs(x));
  const double sign_order = (order < 0 && (n % 2) == 1) ? -1.0 : 1.0;
  return sign_x * sign_order * value;
}

}  // namespace cscim::special
