#pragma once

#include <span>
#include <vector>

#include "cscim/channel.hpp"
#include "cscim/common.hpp"

namespace cscim::radar {

/// Frequency-domain radar return b_k = w_k H_k + n_k on k = first_bin ..
struct RadarObservation {
  cvec b;
  cvec w;  ///< known transmitted bins, W = diag(w)
  int first_bin = 0;
  double noise_var = 0.0;
  double carrier = 0.0;
  double symbol_time = 1.0;
  double cp_time = 0.0;
  double bandwidth = 1.0;  ///< B in Hz; sets the coarse grid step 1/(2B)
};

/// c(τ)_k = e^{−j2πf_cτ} e^{−j2πkτ/T_s}.
cvec steering(const RadarObservation& obs, double tau);

enum class Estimator { MatchedFilter, Lmmse };

struct SearchOptions {
  Estimator estimator = Estimator::MatchedFilter;
  int zoom = 64;           ///< points per current grid step in each refinement stage
  int refine_stages = 3;
  int update_passes = 2;
  int max_targets = 16;
};

struct Estimate {
  double delay = 0.0;
  double alpha = 0.0;
  double range = 0.0;
};

struct EstimateSet {
  std::vector<Estimate> targets;  ///< sorted by range
  double coarse_step = 0.0;
  int zoom = 0;
  int refine_stages = 0;
  int update_passes = 0;
};

struct Objective {
  double metric = 0.0;  ///< |Re{c(τ)^H v}|
  double alpha = 0.0;
};

/// Per-bin LMMSE channel estimate h̃_k = w_k* b_k / (|w_k|² + σ²).
cvec lmmse_channel(const RadarObservation& obs);

/// Matched-filter objective at one delay: metric |Re{c^H W^H b}|, α̂ = Re{c^H W^H b}/(w^H w).
Objective mf_objective(double tau, const RadarObservation& obs);

/// Single-target search: envelope grid over [0, T_CP), then chirp-Z zoom stages on |Re{·}|.
EstimateSet estimate_single(const RadarObservation& obs, const SearchOptions& opt = {});

/// R targets: successive cancellation followed by `update_passes` re-estimation
/// passes of each target against the others' reconstructions.
EstimateSet estimate_multi(const RadarObservation& obs, int targets,
                           const SearchOptions& opt = {});

/// The same search run on the per-bin LMMSE channel estimate h̃_k = w_k* b_k/(|w_k|²+σ²).
EstimateSet estimate_lmmse(const RadarObservation& obs, int targets, SearchOptions opt = {});

/// Diagonal Fisher information, 2R×2R row-major. `power` holds |w_k|² (or
/// |g_k|² for the expectation) on k = first_bin ..
std::vector<double> fim(std::span<const double> alphas, std::span<const double> power,
                        int first_bin, double noise_var, double carrier, double symbol_time);

/// Σ_s of the per-target range CRLB in m² (phase-aware).
double crlb_range(std::span<const double> alphas, std::span<const double> power, int first_bin,
                  double noise_var, double carrier, double symbol_time);

/// Σ_s of the per-target reflection-coefficient CRLB.
double crlb_coeff(std::span<const double> alphas, std::span<const double> power,
                  double noise_var);

/// Phase-unaware range bound for unimodular OFDM over M bins, in m².
double crlb_range_no_phase(std::span<const double> alphas, int M, double noise_var,
                           double symbol_time);

/// r_min = c / (2B).
double min_resolution(double bandwidth);

}  // namespace cscim::radar
