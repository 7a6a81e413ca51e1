#include "cscim/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace cscim::channel {

void RadarScene::validate() {
  if (!(symbol_time > 0.0)) throw std::invalid_argument("radar scene: T_s must be positive");
  for (const auto& t : targets) {
    if (t.alpha == 0.0) throw std::invalid_argument("radar scene: zero reflection coefficient");
    if (!(t.range > 0.0)) throw std::invalid_argument("radar scene: target range must be positive");
    if (delay_of(t.range) > cp_time)
      throw std::invalid_argument("radar scene: target beyond the maximum range set by the CP");
  }
  std::sort(targets.begin(), targets.end(),
            [](const Target& a, const Target& b) { return a.range < b.range; });
}

cvec radar_cfr(const RadarScene& scene, int first_bin, int count) {
  cvec h(static_cast<std::size_t>(count));
  for (const auto& t : scene.targets) {
    const double tau = RadarScene::delay_of(t.range);
    if (tau > scene.cp_time) throw std::invalid_argument("radar_cfr: delay exceeds T_CP");
    const cplx carrier = t.alpha * phasor(-kTwoPi * scene.carrier * tau);
    const double slope = -kTwoPi * tau / scene.symbol_time;
    for (int i = 0; i < count; ++i)
      h[static_cast<std::size_t>(i)] += carrier * phasor(slope * (first_bin + i));
  }
  return h;
}

std::vector<Tap> default_pdp(double delay_scale) {
  return {{0.0, 0.0, 10.0}, {10e-9 * delay_scale, -10.0, 0.0}, {20e-9 * delay_scale, -20.0, 0.0}};
}

cvec CommChannel::cfr(int first_bin, int count, double symbol_time) const {
  cvec h(static_cast<std::size_t>(count));
  for (std::size_t p = 0; p < pdp.size(); ++p) {
    const double slope = -kTwoPi * pdp[p].delay / symbol_time;
    for (int i = 0; i < count; ++i)
      h[static_cast<std::size_t>(i)] += gains[p] * phasor(slope * (first_bin + i));
  }
  return h;
}

CommChannel rician_realize(std::span<const Tap> pdp, Rng& rng, std::optional<double> los_phase) {
  CommChannel ch;
  ch.pdp.assign(pdp.begin(), pdp.end());
  double total = 0.0;
  for (const auto& t : ch.pdp) {
    if (t.rician_k < 0.0) throw std::invalid_argument("rician_realize: negative K factor");
    total += db_to_linear(t.power_db);
  }
  if (!(total > 0.0)) throw std::invalid_argument("rician_realize: empty power delay profile");
  for (auto& t : ch.pdp) t.power_db = linear_to_db(db_to_linear(t.power_db) / total);

  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  ch.gains.reserve(ch.pdp.size());
  for (const auto& t : ch.pdp) {
    const double p = db_to_linear(t.power_db);
    const double k = t.rician_k;
    const double theta = los_phase ? *los_phase : uniform(rng);
    const double re = gauss(rng);
    const double im = gauss(rng);
    const double los_w = std::isinf(k) ? 1.0 : std::sqrt(k / (k + 1.0));
    const double nlos_w = std::isinf(k) ? 0.0 : std::sqrt(1.0 / (k + 1.0));
    const cplx los = los_w * phasor(theta);
    const cplx nlos = nlos_w * cplx(re, im);
    ch.gains.push_back(std::sqrt(p) * (los + nlos));
  }
  return ch;
}

void add_awgn_inplace(std::span<cplx> x, double noise_var, Rng& rng) {
  if (noise_var < 0.0) throw std::invalid_argument("add_awgn: negative noise variance");
  if (noise_var == 0.0) return;
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * noise_var));
  for (auto& v : x) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v += cplx(re, im);
  }
}

cvec add_awgn(std::span<const cplx> x, double noise_var, Rng& rng) {
  cvec out(x.begin(), x.end());
  add_awgn_inplace(out, noise_var, rng);
  return out;
}

}  // namespace cscim::channel
