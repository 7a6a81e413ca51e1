#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cscim/chirp.hpp"
#include "cscim/common.hpp"
#include "cscim/index_codec.hpp"

namespace cscim::modem {

enum class Scheme { CscIm, DftSOfdmIm, OfdmIm };

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

struct ModemConfig {
  Scheme scheme = Scheme::CscIm;
  chirp::ChirpSpec chirp;  ///< band edges are used by every scheme; the family only by CSC-IM
  int n = 128;             ///< IDFT size N
  int n_cp = 32;
  int L = 2;
  int H = 4;
  int delta = 0;
  index_codec::PskMapping mapping = index_codec::PskMapping::Natural;

  int bins() const { return chirp.bins(); }
  int first_bin() const { return chirp.lowest_bin; }
  /// E_s = M / L.
  double symbol_energy() const { return static_cast<double>(bins()) / L; }

  /// Throws std::invalid_argument unless L ≤ M/2, H is a power of two,
  /// N > M and at least two index sets exist.
  void validate() const;
};

/// Immutable transceiver for one configuration. Safe to share across threads.
class Modem {
 public:
  explicit Modem(ModemConfig cfg);

  const ModemConfig& config() const { return cfg_; }
  /// g_k for CSC-IM, all ones for the two DFT/OFDM baselines.
  const chirp::FdssProfile& fdss() const { return fdss_; }
  const index_codec::Capacity& capacity() const { return capacity_; }

  struct Encoded {
    index_codec::IndexWord word;
    cvec d;  ///< length M, √E_s e^{j2πh/H} at the active indices
  };

  Encoded encode(std::span<const std::uint8_t> bits) const;
  Encoded encode(const index_codec::IndexWord& word) const;

  /// Transmitted bin values w_k on k = L_d..L_u.
  cvec bins_of(std::span<const cplx> d) const;

  /// Encode, map to bins and synthesize the time-domain frame.
  chirp::FrameSignal tx_frame(std::span<const std::uint8_t> bits) const;

  /// Detection from received bins B_k with known CFR and noise variance.
  /// Returns nothing when the decision is not a codeword (greedy IS stall or
  /// an index rank beyond the p1-bit range); callers count that as a block error.
  std::optional<index_codec::IndexWord> detect_bins(std::span<const cplx> received,
                                                    std::span<const cplx> cfr,
                                                    double noise_var) const;

  std::optional<index_codec::Bits> rx_bins(std::span<const cplx> received,
                                           std::span<const cplx> cfr, double noise_var) const;

  /// Receiver front end (CP removal, DFT) followed by rx_bins.
  std::optional<index_codec::Bits> rx_frame(const chirp::FrameSignal& frame,
                                            std::span<const cplx> cfr, double noise_var) const;

  /// Union bound on the BLER at N_0 = 1/SNR_post (CSC-IM, DFT-s-OFDM-IM) or N_0 = σ²M/Σ|H|² (OFDM-IM).
  double union_bound(std::span<const cplx> cfr, double noise_var) const;

 private:
  ModemConfig cfg_;
  chirp::FdssProfile fdss_;
  index_codec::Capacity capacity_;
};

struct EqualizedSymbols {
  cvec y;                 ///< ŝ_l, l = 0..M−1
  double snr_post = 0.0;  ///< +∞ when the noise variance is zero
  double alpha = 0.0;     ///< (1/M) Σ |H g|²/(|H g|² + σ²), the bias of y
};

/// LMMSE frequency-domain equalization followed by the M-point IDFT.
EqualizedSymbols equalize_lmmse(std::span<const cplx> received, std::span<const cplx> cfr,
                                const chirp::FdssProfile& fdss, double noise_var);

/// Per-bin decision metrics t_{l,z}, stored row-major as l·H + z.
struct MetricTable {
  int M = 0;
  int H = 1;
  std::vector<double> t;

  double at(int l, int z) const { return t[static_cast<std::size_t>(l * H + z)]; }
};

/// t_{l,z} = Re{y_l e^{−j2πz/H}}.
MetricTable csc_metrics(std::span<const cplx> y, int H);

/// Subcarrier-domain ML metrics for OFDM-IM with known CFR:
/// t_{l,z} = Re{H_l* B_l e^{−j2πz/H}} − (√E_s/2)|H_l|².
MetricTable ofdm_metrics(std::span<const cplx> received, std::span<const cplx> cfr, int H,
                         double symbol_energy);

/// Greedy selection: best z per index, then indices in decreasing metric order
/// (ties: lower index, then lower z) subject to a cyclic distance ≥ Δ+1 from
/// every earlier pick. With Δ = 0 this is the top-L per-bin rule. Returns
/// nothing if fewer than L picks fit.
std::optional<index_codec::IndexWord> greedy_detect(const MetricTable& metrics, int L,
                                                    int delta);

/// Exhaustive arg max of Σ_ℓ t_{i_ℓ,h_ℓ} over every valid separated index set
/// and every PSK assignment. Reference for small instances only.
index_codec::IndexWord exhaustive_detect(const MetricTable& metrics, int L, int delta);

/// Gaussian tail Q(x).
double q_function(double x);

/// Union bound on the block error probability, clipped to [0, 1].
double union_bound_bler(int M, int L, int H, double symbol_energy, double n0);

}  // namespace cscim::modem
