#pragma once

#include <span>
#include <utility>

#include "cscim/common.hpp"

namespace cscim::golay {

/// Aperiodic autocorrelation ρ_a(l) = Σ_i a_i* a_{i+l}; ρ_a(−l) = ρ_a(l)*;
/// zero for |l| ≥ len(a).
cplx apac(std::span<const cplx> a, int l);

struct GcpReport {
  bool is_pair = false;
  double max_violation = 0.0;  ///< max_{l≠0} |ρ_a(l)+ρ_b(l)| / (ρ_a(0)+ρ_b(0))
  int worst_lag = 0;
};

/// Checks complementarity of (a, b) against a relative tolerance.
/// Throws std::invalid_argument on a length mismatch.
GcpReport is_gcp(std::span<const cplx> a, std::span<const cplx> b, double tol);

/// Pair built from two circularly shifted copies of one chirp:
///   a_k = x_p f_k e^{−j2πk·shift_p/M} + x_r f_k e^{−j2πk·shift_r/M},
///   b_k = x_p f_k e^{−j2πk·shift_p/M} − x_r f_k e^{−j2πk·shift_r/M},
/// for k = first_bin .. first_bin+M−1 (only the phase of k matters, so the
/// returned sequences are indexed from 0).
std::pair<cvec, cvec> gcp_from_chirps(std::span<const cplx> fdss_raw, int first_bin,
                                      int shift_p, int shift_r, cplx x_p, cplx x_r);

}  // namespace cscim::golay
