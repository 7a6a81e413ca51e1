#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace cscim {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Random engine used by every stochastic routine; callers own the stream.
using Rng = std::mt19937_64;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;

inline constexpr cplx kJ{0.0, 1.0};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Unit phasor e^{j·phase}.
inline cplx phasor(double phase) { return {std::cos(phase), std::sin(phase)}; }

/// Residue of k modulo n in [0, n).
inline int wrap_index(int k, int n) {
  const int r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace cscim
