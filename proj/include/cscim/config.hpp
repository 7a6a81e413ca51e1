#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cscim/chirp.hpp"
#include "cscim/modem.hpp"

namespace cscim::harness {

/// One transceiver under test: scheme, chirp family, number of active chirps,
/// and whether the index separation is applied.
struct Variant {
  modem::Scheme scheme = modem::Scheme::CscIm;
  chirp::Family family = chirp::Family::Linear;
  int L = 2;
  bool use_is = false;

  /// e.g. "csc-im-linear/L2/is"
  std::string label() const;
};

/// Parses "csc-im-linear", "csc-im-sinusoidal", "dft-s-ofdm-im", "ofdm-im".
Variant variant_from_name(const std::string& name);
std::string variant_name(const Variant& v);

struct ExperimentConfig {
  std::string preset = "desk";

  // waveform
  int lowest_bin = -31;
  int highest_bin = 32;
  int n = 128;
  int n_cp = 32;
  double symbol_time = 25e-9;
  double carrier = 6.48e9;
  double deviation_linear = 56.0;
  double deviation_sinusoidal = 28.0;

  // modem
  std::vector<std::string> schemes{"csc-im-linear", "csc-im-sinusoidal", "dft-s-ofdm-im",
                                   "ofdm-im"};
  std::vector<int> L_values{1, 2, 5};
  int H = 4;
  std::map<int, int> is_delta{{2, 15}, {5, 10}};
  std::vector<bool> is_options{false};
  index_codec::PskMapping mapping = index_codec::PskMapping::Natural;

  // sweep
  std::string axis = "snr";  ///< "snr" or "ebn0"
  std::vector<double> sweep_db{-6, -5, -4, -3, -2, -1, 0};
  std::vector<double> spacing_rmin{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0};
  std::vector<double> radar_snr_db{10, 20, 30, 40};
  double resolution_snr_db = 20.0;

  // run
  std::int64_t trials = 2000;
  std::int64_t max_trials = 400000;
  std::int64_t min_errors = 100;
  std::int64_t batch = 2000;
  std::uint64_t seed = 1;
  int oversample = 8;

  // channel
  bool fading = false;
  double pdp_delay_scale = 25e-9 / (2048.0 / 10.56e9);

  // radar
  std::string scenario = "single";  ///< "single" or "two"
  std::vector<std::string> estimators{"mf"};
  int refine_stages = 3;
  int zoom = 64;
  int update_passes = 2;
  double single_min = 0.3;  ///< fraction of R_max
  double single_max = 0.45;
  double spacing_min = 1.5;  ///< two-target spacing, in r_min
  double spacing_max = 2.0;
  double alpha_single = -1.0;
  double alpha_two = -0.70710678118654752;

  std::string out;

  int bins() const { return highest_bin - lowest_bin + 1; }
  double cp_time() const { return symbol_time * n_cp / n; }
  double sample_rate() const { return n / symbol_time; }
  double max_range() const;
  /// Resolution of the linear chirp, used to place the nearby targets.
  double r_min() const;

  /// Cross product schemes × L × IS options, skipping IS where L = 1 or no Δ is set.
  std::vector<Variant> variants() const;
  int delta_for(const Variant& v) const;
  modem::ModemConfig modem_config(const Variant& v) const;
  /// B = D/T_s for CSC-IM, M/T_s for the flat-spectrum baselines.
  double radar_bandwidth(const Variant& v) const;

  /// Throws std::invalid_argument with the offending key.
  void validate() const;
  /// Sorted key = value lines covering every field except `out` and `seed`.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
};

ExperimentConfig desk_preset();
/// The 60 GHz numerology (N = 2048 at 10.56 GHz) with M := L_u − L_d + 1 = 1448; `m1536` widens the
/// band to L_d = −767, L_u = 768 instead.
ExperimentConfig mmwave_preset(bool m1536 = false);
ExperimentConfig preset_by_name(const std::string& name);

/// Overlays an INI file on `base`. Sections: [waveform] [modem] [sweep] [run]
/// [channel] [radar]. Unknown keys are rejected.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base);

}  // namespace cscim::harness
