#include "cscim/modem.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cscim::modem {

namespace ic = index_codec;

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::CscIm: return "csc-im";
    case Scheme::DftSOfdmIm: return "dft-s-ofdm-im";
    case Scheme::OfdmIm: return "ofdm-im";
  }
  return "?";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "csc-im" || name == "cscim") return Scheme::CscIm;
  if (name == "dft-s-ofdm-im" || name == "dfts") return Scheme::DftSOfdmIm;
  if (name == "ofdm-im" || name == "ofdm") return Scheme::OfdmIm;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

void ModemConfig::validate() const {
  if (scheme == Scheme::CscIm) {
    chirp.validate();
  } else if (!(chirp.lowest_bin < 0 && chirp.highest_bin > 0)) {
    throw std::invalid_argument("modem: band edges must satisfy L_d < 0 < L_u");
  }
  const int m = bins();
  if (L < 1 || L > m / 2) throw std::invalid_argument("modem: need 1 <= L <= M/2");
  if (H < 1 || (H & (H - 1)) != 0) throw std::invalid_argument("modem: H must be a power of two");
  if (n <= m) throw std::invalid_argument("modem: N must exceed M");
  if (n_cp < 0 || n_cp > n) throw std::invalid_argument("modem: CP length out of range");
  if (delta < 0) throw std::invalid_argument("modem: negative index separation");
  if (ic::index_count(L, delta, m) < 2)
    throw std::invalid_argument("modem: fewer than two index sets satisfy the separation");
}

Modem::Modem(ModemConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  fdss_ = cfg_.scheme == Scheme::CscIm ? chirp::make_fdss(cfg_.chirp)
                                       : chirp::flat_fdss(cfg_.first_bin(), cfg_.bins());
  capacity_ = ic::bit_capacity(cfg_.bins(), cfg_.L, cfg_.H, cfg_.delta);
}

Modem::Encoded Modem::encode(const ic::IndexWord& word) const {
  word.validate();
  Encoded out;
  out.word = word;
  out.d.assign(static_cast<std::size_t>(cfg_.bins()), cplx{});
  const double amp = std::sqrt(cfg_.symbol_energy());
  for (int l = 0; l < cfg_.L; ++l)
    out.d[static_cast<std::size_t>(word.i[static_cast<std::size_t>(l)])] =
        amp * phasor(kTwoPi * word.h[static_cast<std::size_t>(l)] / cfg_.H);
  return out;
}

Modem::Encoded Modem::encode(std::span<const std::uint8_t> bits) const {
  return encode(ic::bits_to_word(bits, cfg_.bins(), cfg_.L, cfg_.H, cfg_.delta, cfg_.mapping));
}

cvec Modem::bins_of(std::span<const cplx> d) const {
  if (cfg_.scheme == Scheme::OfdmIm) return cvec(d.begin(), d.end());
  cvec w = chirp::spread(d, cfg_.first_bin());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] *= fdss_.g[k];
  return w;
}

chirp::FrameSignal Modem::tx_frame(std::span<const std::uint8_t> bits) const {
  const Encoded enc = encode(bits);
  if (cfg_.scheme == Scheme::OfdmIm)
    return chirp::synthesize_bins(enc.d, cfg_.first_bin(), cfg_.n, cfg_.n_cp);
  return chirp::synthesize(enc.d, fdss_, cfg_.n, cfg_.n_cp);
}

std::optional<ic::IndexWord> Modem::detect_bins(std::span<const cplx> received,
                                                std::span<const cplx> cfr,
                                                double noise_var) const {
  MetricTable metrics;
  if (cfg_.scheme == Scheme::OfdmIm) {
    metrics = ofdm_metrics(received, cfr, cfg_.H, cfg_.symbol_energy());
  } else {
    const auto eq = equalize_lmmse(received, cfr, fdss_, noise_var);
    metrics = csc_metrics(eq.y, cfg_.H);
  }
  auto word = greedy_detect(metrics, cfg_.L, cfg_.delta);
  if (!word) return std::nullopt;
  word->M = cfg_.bins();
  word->H = cfg_.H;
  word->delta = cfg_.delta;
  return word;
}

std::optional<ic::Bits> Modem::rx_bins(std::span<const cplx> received, std::span<const cplx> cfr,
                                       double noise_var) const {
  const auto word = detect_bins(received, cfr, noise_var);
  if (!word) return std::nullopt;
  const ic::BigInt rank = ic::indices_to_rank(word->i, word->M, word->L, word->delta);
  if (rank > (ic::BigInt(1) << capacity_.p1)) return std::nullopt;
  return ic::word_to_bits(*word, cfg_.mapping);
}

std::optional<ic::Bits> Modem::rx_frame(const chirp::FrameSignal& frame,
                                        std::span<const cplx> cfr, double noise_var) const {
  const cvec received = chirp::demodulate(frame, cfg_.first_bin(), cfg_.bins());
  return rx_bins(received, cfr, noise_var);
}

double Modem::union_bound(std::span<const cplx> cfr, double noise_var) const {
  double n0 = noise_var;
  if (cfg_.scheme == Scheme::OfdmIm) {
    double gain = 0.0;
    for (cplx h : cfr) gain += std::norm(h);
    n0 = noise_var * static_cast<double>(cfr.size()) / gain;
  } else {
    const cvec zeros(static_cast<std::size_t>(cfg_.bins()));
    const auto eq = equalize_lmmse(zeros, cfr, fdss_, noise_var);
    n0 = 1.0 / eq.snr_post;
  }
  return union_bound_bler(cfg_.bins(), cfg_.L, cfg_.H, cfg_.symbol_energy(), n0);
}

EqualizedSymbols equalize_lmmse(std::span<const cplx> received, std::span<const cplx> cfr,
                                const chirp::FdssProfile& fdss, double noise_var) {
  if (noise_var < 0.0) throw std::invalid_argument("equalize_lmmse: negative noise variance");
  const int m = fdss.bins();
  if (static_cast<int>(received.size()) != m || static_cast<int>(cfr.size()) != m)
    throw std::invalid_argument("equalize_lmmse: vectors must cover the M bins");
  cvec z(static_cast<std::size_t>(m));
  double alpha = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const cplx hg = cfr[i] * fdss.g[i];
    const double den = std::norm(hg) + noise_var;
    if (den > 0.0) {
      z[i] = std::conj(hg) / den * received[i];
      alpha += std::norm(hg) / den;
    }
  }
  alpha /= m;
  EqualizedSymbols out;
  out.y = chirp::despread(z, fdss.first_bin);
  out.alpha = alpha;
  out.snr_post = alpha >= 1.0 ? std::numeric_limits<double>::infinity()
                              : 1.0 / (1.0 / alpha - 1.0);
  return out;
}

MetricTable csc_metrics(std::span<const cplx> y, int H) {
  MetricTable t;
  t.M = static_cast<int>(y.size());
  t.H = H;
  t.t.resize(static_cast<std::size_t>(t.M * H));
  for (int z = 0; z < H; ++z) {
    const cplx rot = phasor(-kTwoPi * z / H);
    for (int l = 0; l < t.M; ++l)
      t.t[static_cast<std::size_t>(l * H + z)] = std::real(y[static_cast<std::size_t>(l)] * rot);
  }
  return t;
}

MetricTable ofdm_metrics(std::span<const cplx> received, std::span<const cplx> cfr, int H,
                         double symbol_energy) {
  MetricTable t;
  t.M = static_cast<int>(received.size());
  t.H = H;
  t.t.resize(static_cast<std::size_t>(t.M * H));
  const double half = 0.5 * std::sqrt(symbol_energy);
  for (int l = 0; l < t.M; ++l) {
    const auto i = static_cast<std::size_t>(l);
    const cplx c = std::conj(cfr[i]) * received[i];
    const double bias = half * std::norm(cfr[i]);
    for (int z = 0; z < H; ++z)
      t.t[static_cast<std::size_t>(l * H + z)] = std::real(c * phasor(-kTwoPi * z / H)) - bias;
  }
  return t;
}

std::optional<ic::IndexWord> greedy_detect(const MetricTable& metrics, int L, int delta) {
  const int m = metrics.M;
  std::vector<int> best_z(static_cast<std::size_t>(m), 0);
  std::vector<double> best(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) {
    double top = metrics.at(l, 0);
    for (int z = 1; z < metrics.H; ++z) {
      if (metrics.at(l, z) > top) {
        top = metrics.at(l, z);
        best_z[static_cast<std::size_t>(l)] = z;
      }
    }
    best[static_cast<std::size_t>(l)] = top;
  }
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return best[static_cast<std::size_t>(a)] > best[static_cast<std::size_t>(b)];
  });

  std::vector<int> picks;
  picks.reserve(static_cast<std::size_t>(L));
  for (int l : order) {
    const bool fits = std::all_of(picks.begin(), picks.end(), [&](int p) {
      const int d = std::abs(l - p);
      return std::min(d, m - d) >= delta + 1;
    });
    if (!fits) continue;
    picks.push_back(l);
    if (static_cast<int>(picks.size()) == L) break;
  }
  if (static_cast<int>(picks.size()) < L) return std::nullopt;
  std::sort(picks.begin(), picks.end());

  ic::IndexWord word;
  word.M = m;
  word.L = L;
  word.H = metrics.H;
  word.delta = delta;
  word.i = picks;
  for (int l : picks) word.h.push_back(best_z[static_cast<std::size_t>(l)]);
  return word;
}

ic::IndexWord exhaustive_detect(const MetricTable& metrics, int L, int delta) {
  const int m = metrics.M;
  const ic::BigInt total = ic::index_count(L, delta, m);
  ic::IndexWord best;
  double best_sum = -std::numeric_limits<double>::infinity();
  for (ic::BigInt n = 1; n <= total; ++n) {
    const auto idx = ic::rank_to_indices(n, m, L, delta);
    // Each hypothesis is idx × H^L; the sum separates over ℓ.
    double sum = 0.0;
    std::vector<int> h;
    for (int l : idx) {
      int arg = 0;
      for (int z = 1; z < metrics.H; ++z)
        if (metrics.at(l, z) > metrics.at(l, arg)) arg = z;
      sum += metrics.at(l, arg);
      h.push_back(arg);
    }
    if (sum > best_sum) {
      best_sum = sum;
      best.i = idx;
      best.h = std::move(h);
    }
  }
  best.M = m;
  best.L = L;
  best.H = metrics.H;
  best.delta = delta;
  return best;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double union_bound_bler(int M, int L, int H, double symbol_energy, double n0) {
  if (!(n0 > 0.0)) return 0.0;
  const double d_ind = std::sqrt(2.0 * symbol_energy);
  const double d_psk = 2.0 * std::sqrt(symbol_energy) * std::sin(kPi / H);
  const double q_ind = q_function(d_ind / std::sqrt(2.0 * n0));
  const double q_psk = q_function(d_psk / std::sqrt(2.0 * n0));
  const double p_psk = H >= 4 ? 2.0 * q_psk : (H == 2 ? q_psk : 0.0);
  // 1 − (1 − q)^L without cancellation for tiny q.
  const auto any_of = [L](double q) { return q >= 1.0 ? 1.0 : -std::expm1(L * std::log1p(-q)); };
  const double p = (M - L) * static_cast<double>(H) * any_of(q_ind) + L * any_of(p_psk);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace cscim::modem
