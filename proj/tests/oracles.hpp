// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's numerical code.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre nodes by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[static_cast<std::size_t>(i)] = x;
    r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// ∫_0^1 f(u) du, composite Gauss-Legendre.
inline cplx integrate(const std::function<cplx(double)>& f, int panels, const Rule& rule) {
  cplx acc{};
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
      acc += rule.w[i] * f(a + 0.5 * h * (rule.x[i] + 1.0));
  }
  return acc * (0.5 * h);
}

// Fourier coefficient of the periodic linear chirp, φ(u) = πD(u² − u).
inline cplx linear_chirp_coeff(double d, int k, const Rule& rule) {
  const int panels = static_cast<int>(d + std::abs(k)) + 16;
  return integrate(
      [&](double u) { return std::polar(1.0, pi * d * (u * u - u) - 2.0 * pi * k * u); }, panels,
      rule);
}

// Sinusoidal chirp, φ(u) = (D/2) sin(2πu). The integrand is smooth and
// periodic, so the P-point trapezoid rule converges geometrically.
inline cplx sinusoidal_chirp_coeff(double d, int k) {
  const int p = 4 * (static_cast<int>(d) + std::abs(k)) + 256;
  cplx acc{};
  for (int i = 0; i < p; ++i) {
    const double u = static_cast<double>(i) / p;
    acc += std::polar(1.0, 0.5 * d * std::sin(2.0 * pi * u) - 2.0 * pi * k * u);
  }
  return acc / static_cast<double>(p);
}

// Every L-subset of [0, M) whose cyclic gaps are all ≥ Δ, in lexicographic order.
inline std::vector<std::vector<int>> separated_subsets(int m, int l, int delta) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(l));
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == l) {
      for (int q = 0; q < l; ++q) {
        const int gap = q + 1 < l ? idx[static_cast<std::size_t>(q + 1)] - idx[static_cast<std::size_t>(q)] - 1
                                  : m - 1 - idx[static_cast<std::size_t>(l - 1)] + idx[0];
        if (gap < delta) return;
      }
      out.push_back(idx);
      return;
    }
    for (int v = start; v < m; ++v) {
      idx[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
  return out;
}

// Every (s_1..s_L) with Σ = Z and each part ≥ Δ.
inline std::vector<std::vector<int>> compositions(int l, int delta, int z) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(l));
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == l - 1) {
      if (left >= delta) {
        s[static_cast<std::size_t>(pos)] = left;
        out.push_back(s);
      }
      return;
    }
    for (int v = delta; v <= left; ++v) {
      s[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  if (l >= 1) rec(0, z);
  return out;
}

}  // namespace oracle
