#include "cscim/golay.hpp"

#include <cstdlib>
#include <stdexcept>

namespace cscim::golay {

cplx apac(std::span<const cplx> a, int l) {
  const int m = static_cast<int>(a.size());
  if (l < 0) return std::conj(apac(a, -l));
  if (l >= m) return {};
  cplx acc{};
  for (int i = 0; i + l < m; ++i)
    acc += std::conj(a[static_cast<std::size_t>(i)]) * a[static_cast<std::size_t>(i + l)];
  return acc;
}

GcpReport is_gcp(std::span<const cplx> a, std::span<const cplx> b, double tol) {
  if (a.size() != b.size()) throw std::invalid_argument("is_gcp: sequence lengths differ");
  const int m = static_cast<int>(a.size());
  const double energy = std::real(apac(a, 0) + apac(b, 0));
  GcpReport report;
  if (!(energy > 0.0)) return report;
  // ρ(−l) is the conjugate of ρ(l), so positive lags suffice.
  for (int l = 1; l < m; ++l) {
    const double v = std::abs(apac(a, l) + apac(b, l)) / energy;
    if (v > report.max_violation) {
      report.max_violation = v;
      report.worst_lag = l;
    }
  }
  report.is_pair = report.max_violation <= tol;
  return report;
}

std::pair<cvec, cvec> gcp_from_chirps(std::span<const cplx> fdss_raw, int first_bin,
                                      int shift_p, int shift_r, cplx x_p, cplx x_r) {
  if (shift_p == shift_r) throw std::invalid_argument("gcp_from_chirps: shifts must differ");
  if (std::abs(std::abs(x_p) - 1.0) > 1e-9 || std::abs(std::abs(x_r) - 1.0) > 1e-9)
    throw std::invalid_argument("gcp_from_chirps: x_p and x_r must be unimodular");
  const int m = static_cast<int>(fdss_raw.size());
  cvec a(fdss_raw.size()), b(fdss_raw.size());
  for (int i = 0; i < m; ++i) {
    const int k = first_bin + i;
    const cplx f = fdss_raw[static_cast<std::size_t>(i)];
    // Reduce k·shift mod M before scaling so the phase stays exact.
    const cplx p = x_p * f * phasor(-kTwoPi * wrap_index(k * shift_p, m) / m);
    const cplx r = x_r * f * phasor(-kTwoPi * wrap_index(k * shift_r, m) / m);
    a[static_cast<std::size_t>(i)] = p + r;
    b[static_cast<std::size_t>(i)] = p - r;
  }
  return {std::move(a), std::move(b)};
}

}  // namespace cscim::golay
