#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cscim/common.hpp"

namespace cscim::channel {

struct Target {
  double range = 0.0;  ///< metres
  double alpha = 1.0;  ///< real reflection coefficient
};

struct RadarScene {
  std::vector<Target> targets;
  double carrier = 0.0;      ///< f_c in Hz
  double symbol_time = 1.0;  ///< T_s
  double cp_time = 0.0;      ///< T_CP, the largest admissible round-trip delay

  static double delay_of(double range) { return 2.0 * range / kSpeedOfLight; }
  static double range_of(double delay) { return 0.5 * delay * kSpeedOfLight; }

  /// Sorts targets by range and throws std::invalid_argument on a zero
  /// coefficient, a non-positive range or a delay beyond T_CP.
  void validate();
};

/// H_k = Σ_s α_s e^{−j2πf_cτ_s} e^{−j2πkτ_s/T_s} for k = first_bin .. first_bin+count−1.
cvec radar_cfr(const RadarScene& scene, int first_bin, int count);

struct Tap {
  double delay = 0.0;     ///< seconds
  double power_db = 0.0;  ///< mean power before normalization
  double rician_k = 0.0;  ///< linear K factor; 0 is Rayleigh
};

/// The communication profile used for the fading results: taps at 0, 10 and
/// 20 ns with 0, −10, −20 dB and K = 10, 0, 0. `delay_scale` stretches the
/// delays for numerologies with a shorter CP.
std::vector<Tap> default_pdp(double delay_scale = 1.0);

struct CommChannel {
  std::vector<Tap> pdp;  ///< normalized so the linear mean powers sum to one
  cvec gains;            ///< one complex gain per tap for this realization

  /// H_c,k = Σ_p a_p e^{−j2πkτ_p/T_s}, fractional delays applied exactly.
  cvec cfr(int first_bin, int count, double symbol_time) const;
};

/// Normalizes the PDP powers and draws each tap as
/// √P (√(K/(K+1)) e^{jθ} + √(1/(K+1)) CN(0,1)). θ is uniform unless pinned.
CommChannel rician_realize(std::span<const Tap> pdp, Rng& rng,
                           std::optional<double> los_phase = std::nullopt);

/// Adds i.i.d. circular complex Gaussian noise with variance `noise_var` per sample.
cvec add_awgn(std::span<const cplx> x, double noise_var, Rng& rng);
void add_awgn_inplace(std::span<cplx> x, double noise_var, Rng& rng);

}  // namespace cscim::channel
