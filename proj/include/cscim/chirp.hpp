#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "cscim/common.hpp"

namespace cscim::chirp {

enum class Family { Linear, Sinusoidal };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

/// One periodic chirp family sampled on the subcarrier band [lowest_bin, highest_bin].
///
/// `deviation` is the dimensionless D: the instantaneous frequency swings by
/// ±D/(2·T_s) Hz around the carrier. Phase conventions (u = t/T_s):
///   linear:     φ(u) = πD(u² − u)
///   sinusoidal: φ(u) = (D/2)·sin(2πu)
struct ChirpSpec {
  Family family = Family::Linear;
  double deviation = 0.0;
  int lowest_bin = -1;
  int highest_bin = 1;
  double symbol_time = 1.0;

  /// Number of occupied bins M = L_u − L_d + 1.
  int bins() const { return highest_bin - lowest_bin + 1; }
  /// Chirp bandwidth B = D / T_s in Hz.
  double bandwidth() const { return deviation / symbol_time; }

  /// Throws std::invalid_argument unless L_d < 0 < L_u, D ≥ 0 and M > D.
  void validate() const;
};

/// Normalized spectral-shaping coefficients on bins first_bin .. first_bin+M−1.
struct FdssProfile {
  int first_bin = 0;
  cvec g;    ///< normalized so that Σ|g_k|² = M
  cvec raw;  ///< the unnormalized Fourier coefficients the profile was built from

  int bins() const { return static_cast<int>(g.size()); }
  int last_bin() const { return first_bin + bins() - 1; }
  cplx at(int k) const { return g[static_cast<std::size_t>(k - first_bin)]; }
};

/// Time-domain frame: N_cp cyclic-prefix samples followed by the N-sample body.
struct FrameSignal {
  cvec samples;
  int n = 0;
  int n_cp = 0;
  double sample_rate = 0.0;
  /// Ensemble mean power per body sample for this configuration; the PMEPR
  /// denominator. Equals Σ|g_k|²·‖d‖²/M for shaped frames.
  double reference_power = 0.0;

  std::span<const cplx> body() const {
    return std::span<const cplx>(samples).subspan(static_cast<std::size_t>(n_cp));
  }
};

/// Fourier-series coefficients of the linear chirp via Fresnel integrals.
/// D = 0 yields the pure tone δ_{k,0}.
cvec fourier_coeffs_linear(const ChirpSpec& spec);

/// Fourier-series coefficients of the sinusoidal chirp, f_k = J_k(D/2).
cvec fourier_coeffs_sinusoidal(const ChirpSpec& spec);

/// Dispatches on spec.family.
cvec fourier_coeffs(const ChirpSpec& spec);

/// g = √M · raw / ‖raw‖. Throws std::invalid_argument on an all-zero input.
FdssProfile normalize_fdss(std::span<const cplx> raw, int first_bin);

/// Fourier coefficients followed by normalization.
FdssProfile make_fdss(const ChirpSpec& spec);

/// The all-ones profile (plain DFT-s-OFDM).
FdssProfile flat_fdss(int first_bin, int bins);

/// Normalized M-point DFT evaluated on bins k = first_bin .. first_bin+M−1:
///   D_k = (1/√M) Σ_m d_m e^{−j2πkm/M}.
cvec spread(std::span<const cplx> d, int first_bin);

/// Inverse of `spread`: d_m = (1/√M) Σ_k D_k e^{+j2πkm/M}.
cvec despread(std::span<const cplx> bins, int first_bin);

/// Places per-bin symbols X_k (k = first_bin..) on an N-point IDFT grid, bin k
/// at position k mod N, and prepends the cyclic prefix.
FrameSignal synthesize_bins(std::span<const cplx> bins, int first_bin, int n, int n_cp,
                            double sample_rate = 0.0);

/// DFT-s-OFDM synthesis with spectral shaping: spread, multiply by g, IDFT, CP.
/// Throws std::invalid_argument if N ≤ M or sizes disagree.
FrameSignal synthesize(std::span<const cplx> d, const FdssProfile& fdss, int n, int n_cp,
                       double sample_rate = 0.0);

/// Receiver front end: drops the CP, N-point DFT, returns bins first_bin..+count−1
/// scaled so that demodulate(synthesize_bins(X)) == X.
cvec demodulate(const FrameSignal& frame, int first_bin, int count);

/// Peak-to-mean envelope power ratio in dB, measured on the body after
/// zero-padding its spectrum by `oversample`.
///
/// The mean is frame.reference_power unless `use_frame_mean` is set, in which
/// case the frame's own average body power is used.
double measure_pmepr(const FrameSignal& frame, int oversample = 8, bool use_frame_mean = false);

/// Smallest window of bins, symmetric around the profile's energy centroid,
/// holding at least `fraction` of Σ|g_k|². Returns the window width in bins.
int occupied_bandwidth(const FdssProfile& fdss, double fraction);

}  // namespace cscim::chirp
