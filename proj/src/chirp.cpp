#include "cscim/chirp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cscim/fft.hpp"
#include "cscim/special.hpp"

namespace cscim::chirp {

std::string_view to_string(Family family) {
  return family == Family::Linear ? "linear" : "sinusoidal";
}

Family family_from_string(std::string_view name) {
  if (name == "linear") return Family::Linear;
  if (name == "sinusoidal" || name == "sin") return Family::Sinusoidal;
  throw std::invalid_argument("unknown chirp family: " + std::string(name));
}

void ChirpSpec::validate() const {
  if (!(lowest_bin < 0 && highest_bin > 0))
    throw std::invalid_argument("chirp: band edges must satisfy L_d < 0 < L_u");
  if (deviation < 0.0) throw std::invalid_argument("chirp: deviation D must be non-negative");
  if (!(static_cast<double>(bins()) > deviation))
    throw std::invalid_argument("chirp: M = L_u - L_d + 1 must exceed D");
  if (!(symbol_time > 0.0)) throw std::invalid_argument("chirp: symbol time must be positive");
}

cvec fourier_coeffs_linear(const ChirpSpec& spec) {
  const int m = spec.bins();
  cvec f(static_cast<std::size_t>(m));
  if (spec.deviation == 0.0) {
    f[static_cast<std::size_t>(-spec.lowest_bin)] = 1.0;
    return f;
  }
  // The textbook closed form is written for the deviation in radians.
  const double d = spec.deviation;
  const double d_rad = kTwoPi * d;
  const double root = std::sqrt(kPi * d_rad);
  const double gain = std::sqrt(kPi / d_rad);
  for (int i = 0; i < m; ++i) {
    const double k = spec.lowest_bin + i;
    const double alpha = (0.5 * d_rad + kTwoPi * k) / root;
    const double beta = (0.5 * d_rad - kTwoPi * k) / root;
    const auto fa = special::fresnel(alpha);
    const auto fb = special::fresnel(beta);
    // −(2πk)²/(2·D_rad) − πk, plus the constant −πD/4 from φ(0) = 0.
    const double phase = -kPi * (k * k / d + k + 0.25 * d);
    f[static_cast<std::size_t>(i)] =
        gain * phasor(phase) * cplx(fa.c + fb.c, fa.s + fb.s);
  }
  return f;
}

cvec fourier_coeffs_sinusoidal(const ChirpSpec& spec) {
  const int m = spec.bins();
  cvec f(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    f[static_cast<std::size_t>(i)] = special::bessel_j(spec.lowest_bin + i, 0.5 * spec.deviation);
  return f;
}

cvec fourier_coeffs(const ChirpSpec& spec) {
  return spec.family == Family::Linear ? fourier_coeffs_linear(spec)
                                       : fourier_coeffs_sinusoidal(spec);
}

FdssProfile normalize_fdss(std::span<const cplx> raw, int first_bin) {
  const double energy = std::accumulate(raw.begin(), raw.end(), 0.0,
                                        [](double acc, cplx v) { return acc + std::norm(v); });
  if (!(energy > 0.0)) throw std::invalid_argument("fdss: all-zero coefficient vector");
  const double scale = std::sqrt(static_cast<double>(raw.size()) / energy);
  FdssProfile out;
  out.first_bin = first_bin;
  out.raw.assign(raw.begin(), raw.end());
  out.g.reserve(raw.size());
  for (cplx v : raw) out.g.push_back(scale * v);
  return out;
}

FdssProfile make_fdss(const ChirpSpec& spec) {
  spec.validate();
  const cvec raw = fourier_coeffs(spec);
  return normalize_fdss(raw, spec.lowest_bin);
}

FdssProfile flat_fdss(int first_bin, int bins) {
  const cvec ones(static_cast<std::size_t>(bins), cplx{1.0, 0.0});
  return normalize_fdss(ones, first_bin);
}

cvec spread(std::span<const cplx> d, int first_bin) {
  const int m = static_cast<int>(d.size());
  const cvec full = fft::forward(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  cvec out(d.size());
  for (int i = 0; i < m; ++i)
    out[static_cast<std::size_t>(i)] = full[static_cast<std::size_t>(wrap_index(first_bin + i, m))] * scale;
  return out;
}

cvec despread(std::span<const cplx> bins, int first_bin) {
  const int m = static_cast<int>(bins.size());
  cvec placed(bins.size());
  for (int i = 0; i < m; ++i)
    placed[static_cast<std::size_t>(wrap_index(first_bin + i, m))] = bins[static_cast<std::size_t>(i)];
  cvec out = fft::inverse(placed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (auto& v : out) v *= scale;
  return out;
}

FrameSignal synthesize_bins(std::span<const cplx> bins, int first_bin, int n, int n_cp,
                            double sample_rate) {
  const int count = static_cast<int>(bins.size());
  if (n <= count) throw std::invalid_argument("synthesize: IDFT size N must exceed the bin count");
  if (n_cp < 0 || n_cp > n) throw std::invalid_argument("synthesize: CP length out of range");
  cvec grid(static_cast<std::size_t>(n));
  double power = 0.0;
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(wrap_index(first_bin + i, n))] = bins[static_cast<std::size_t>(i)];
    power += std::norm(bins[static_cast<std::size_t>(i)]);
  }
  const cvec body = fft::inverse(grid);

  FrameSignal frame;
  frame.n = n;
  frame.n_cp = n_cp;
  frame.sample_rate = sample_rate;
  frame.reference_power = power;
  frame.samples.reserve(static_cast<std::size_t>(n + n_cp));
  frame.samples.insert(frame.samples.end(), body.end() - n_cp, body.end());
  frame.samples.insert(frame.samples.end(), body.begin(), body.end());
  return frame;
}

FrameSignal synthesize(std::span<const cplx> d, const FdssProfile& fdss, int n, int n_cp,
                       double sample_rate) {
  if (static_cast<int>(d.size()) != fdss.bins())
    throw std::invalid_argument("synthesize: symbol vector length must equal M");
  if (n <= fdss.bins()) throw std::invalid_argument("synthesize: N must exceed M");
  cvec shaped = spread(d, fdss.first_bin);
  for (std::size_t i = 0; i < shaped.size(); ++i) shaped[i] *= fdss.g[i];
  FrameSignal frame = synthesize_bins(shaped, fdss.first_bin, n, n_cp, sample_rate);

  double g_energy = 0.0;
  for (cplx v : fdss.g) g_energy += std::norm(v);
  double d_energy = 0.0;
  for (cplx v : d) d_energy += std::norm(v);
  frame.reference_power = g_energy * d_energy / static_cast<double>(fdss.bins());
  return frame;
}

cvec demodulate(const FrameSignal& frame, int first_bin, int count) {
  const auto body = frame.body();
  if (static_cast<int>(body.size()) != frame.n)
    throw std::invalid_argument("demodulate: frame body length mismatch");
  const cvec spectrum = fft::forward(body);
  const double scale = 1.0 / static_cast<double>(frame.n);
  cvec out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = spectrum[static_cast<std::size_t>(wrap_index(first_bin + i, frame.n))] * scale;
  return out;
}

double measure_pmepr(const FrameSignal& frame, int oversample, bool use_frame_mean) {
  if (oversample < 1) throw std::invalid_argument("pmepr: oversample must be positive");
  const auto body = frame.body();
  const int n = frame.n;
  const cvec spectrum = fft::forward(body);
  const int padded = n * oversample;
  cvec grid(static_cast<std::size_t>(padded));
  double frame_power = 0.0;
  for (int r = 0; r < n; ++r) {
    const cplx x = spectrum[static_cast<std::size_t>(r)] / static_cast<double>(n);
    frame_power += std::norm(x);
    const int k = r < n / 2 ? r : r - n;
    grid[static_cast<std::size_t>(wrap_index(k, padded))] = x;
  }
  const cvec fine = fft::inverse(grid);
  double peak = 0.0;
  for (cplx v : fine) peak = std::max(peak, std::norm(v));

  const double mean = use_frame_mean ? frame_power : frame.reference_power;
  if (!(mean > 0.0) || !(frame_power > 0.0))
    throw std::invalid_argument("pmepr: zero-power frame");
  return linear_to_db(peak / mean);
}

int occupied_bandwidth(const FdssProfile& fdss, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("occupied_bandwidth: fraction must be in (0, 1)");
  const int m = fdss.bins();
  std::vector<double> power(static_cast<std::size_t>(m));
  double total = 0.0;
  double moment = 0.0;
  for (int i = 0; i < m; ++i) {
    power[static_cast<std::size_t>(i)] = std::norm(fdss.g[static_cast<std::size_t>(i)]);
    total += power[static_cast<std::size_t>(i)];
    moment += power[static_cast<std::size_t>(i)] * i;
  }
  const double centroid = moment / total;

  // Bins ordered by distance to the centroid form a growing contiguous window.
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [centroid](int a, int b) {
    return std::abs(a - centroid) < std::abs(b - centroid);
  });
  double acc = 0.0;
  for (int count = 1; count <= m; ++count) {
    acc += power[static_cast<std::size_t>(order[static_cast<std::size_t>(count - 1)])];
    if (acc >= fraction * total * (1.0 - 1e-14)) return count;
  }
  return m;
}

}  // namespace cscim::chirp
