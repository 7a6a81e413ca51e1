#include <doctest.h>

#include <random>

#include "cscim/channel.hpp"
#include "cscim/modem.hpp"
#include "cscim/radar.hpp"

using namespace cscim;
using radar::RadarObservation;

namespace {

constexpr double kTs = 25e-9;
constexpr double kFc = 6.48e9;
constexpr double kTcp = 6.25e-9;

modem::Modem desk_modem(modem::Scheme scheme, int L, int delta) {
  modem::ModemConfig c;
  c.scheme = scheme;
  c.chirp = {chirp::Family::Linear, 56, -31, 32, kTs};
  c.L = L;
  c.delta = delta;
  return modem::Modem(c);
}

double bandwidth_of(const modem::Modem& m) {
  return m.config().scheme == modem::Scheme::CscIm ? 56 / kTs : 64 / kTs;
}

RadarObservation observe(const modem::Modem& m, const std::vector<channel::Target>& targets,
                         double noise_var, Rng& rng) {
  index_codec::Bits bits(static_cast<std::size_t>(m.capacity().p));
  for (auto& x : bits) x = static_cast<std::uint8_t>(rng() & 1);
  RadarObservation obs;
  obs.w = m.bins_of(m.encode(bits).d);
  obs.first_bin = -31;
  obs.noise_var = noise_var;
  obs.carrier = kFc;
  obs.symbol_time = kTs;
  obs.cp_time = kTcp;
  obs.bandwidth = bandwidth_of(m);
  channel::RadarScene scene{targets, kFc, kTs, kTcp};
  scene.validate();
  const cvec h = channel::radar_cfr(scene, -31, 64);
  obs.b.resize(64);
  for (std::size_t k = 0; k < 64; ++k) obs.b[k] = obs.w[k] * h[k];
  channel::add_awgn_inplace(obs.b, noise_var, rng);
  return obs;
}

std::vector<double> powers(const cvec& v) {
  std::vector<double> p;
  for (cplx x : v) p.push_back(std::norm(x));
  return p;
}

}  // namespace

TEST_CASE("steering vector") {
  Rng rng(1);
  const auto m = desk_modem(modem::Scheme::CscIm, 1, 0);
  const auto obs = observe(m, {{0.3, 1.0}}, 0.0, rng);
  const double tau = 1.7e-9;
  const cvec c = radar::steering(obs, tau);
  for (int i = 0; i < 64; ++i) {
    const int k = -31 + i;
    CHECK(std::abs(c[static_cast<std::size_t>(i)] - phasor(-kTwoPi * kFc * tau) * phasor(-kTwoPi * k * tau / kTs)) < 1e-9);
  }
}

TEST_CASE("matched-filter objective") {
  Rng rng(2);
  const auto m = desk_modem(modem::Scheme::CscIm, 2, 0);
  const double range = 0.41;
  const double tau = channel::RadarScene::delay_of(range);
  for (double alpha : {1.0, -0.6}) {
    const auto obs = observe(m, {{range, alpha}}, 0.0, rng);
    const auto at = radar::mf_objective(tau, obs);
    CHECK(at.alpha == doctest::Approx(alpha).epsilon(1e-10));
    CHECK(at.metric > radar::mf_objective(tau + 1 / (2 * obs.bandwidth), obs).metric);
    RadarObservation zero = obs;
    std::fill(zero.b.begin(), zero.b.end(), cplx{});
    CHECK(radar::mf_objective(tau, zero).metric == 0.0);
  }
}

TEST_CASE("noiseless single-target search is exact to grid resolution") {
  Rng rng(3);
  std::uniform_real_distribution<double> frac(0.3, 0.7);
  // OFDM-IM lights only L subcarriers, so its delay grid aliases; see the next case.
  for (auto scheme : {modem::Scheme::CscIm, modem::Scheme::DftSOfdmIm}) {
    for (int L : {1, 2, 5}) {
      const auto m = desk_modem(scheme, L, 0);
      for (int t = 0; t < 20; ++t) {
        const double tau = frac(rng) * kTcp;
        const double alpha = t % 2 ? -1.0 : 0.8;
        const auto obs = observe(m, {{channel::RadarScene::range_of(tau), alpha}}, 0.0, rng);
        const auto est = radar::estimate_single(obs);
        CAPTURE(modem::to_string(scheme));
        CAPTURE(L);
        CAPTURE(tau);
        REQUIRE(est.targets.size() == 1);
        CHECK(std::abs(est.targets[0].delay - tau) < 1e-4 / obs.bandwidth);
        CHECK(est.targets[0].alpha == doctest::Approx(alpha).epsilon(1e-3));
        CHECK(est.targets[0].range == doctest::Approx(est.targets[0].delay * kSpeedOfLight / 2));
        CHECK(est.coarse_step == doctest::Approx(1 / (2 * obs.bandwidth)));
      }
    }
  }
}

TEST_CASE("a single lit subcarrier carries no delay information") {
  Rng rng(11);
  const auto m = desk_modem(modem::Scheme::OfdmIm, 1, 0);
  const auto obs = observe(m, {{0.4, 1.0}}, 0.0, rng);
  const double tau = channel::RadarScene::delay_of(0.4);
  int lit = 0, k = 0;
  for (std::size_t i = 0; i < obs.w.size(); ++i)
    if (std::abs(obs.w[i]) > 0) {
      ++lit;
      k = obs.first_bin + static_cast<int>(i);
    }
  CHECK(lit == 1);
  // The objective repeats with the period of that one tone.
  const double period = 1 / (kFc + k / kTs);
  for (int q : {3, 7, 20})
    CHECK(radar::mf_objective(tau, obs).metric ==
          doctest::Approx(radar::mf_objective(tau + q * period, obs).metric).epsilon(1e-6));
}

TEST_CASE("estimate_multi with one target equals estimate_single") {
  Rng rng(4);
  const auto m = desk_modem(modem::Scheme::CscIm, 2, 15);
  const auto obs = observe(m, {{0.35, -0.7}}, 1e-2, rng);
  const auto a = radar::estimate_single(obs);
  const auto b = radar::estimate_multi(obs, 1);
  CHECK(a.targets[0].delay == b.targets[0].delay);
  CHECK(a.targets[0].alpha == b.targets[0].alpha);
  CHECK_THROWS_AS(radar::estimate_multi(obs, 17), std::invalid_argument);
  CHECK_THROWS_AS(radar::estimate_multi(obs, 0), std::invalid_argument);
  RadarObservation dead = obs;
  std::fill(dead.w.begin(), dead.w.end(), cplx{});
  CHECK_THROWS_AS(radar::estimate_single(dead), std::invalid_argument);
}

TEST_CASE("two noiseless targets three resolution cells apart") {
  Rng rng(5);
  const auto m = desk_modem(modem::Scheme::CscIm, 1, 0);
  const double r_min = radar::min_resolution(56 / kTs);
  for (int t = 0; t < 10; ++t) {
    const double r0 = 0.2 + 0.01 * t;
    const auto obs = observe(m, {{r0, -0.7071}, {r0 + 3 * r_min, -0.7071}}, 0.0, rng);
    const auto est = radar::estimate_multi(obs, 2);
    REQUIRE(est.targets.size() == 2);
    CHECK(std::abs(est.targets[0].range - r0) < r_min / 100);
    CHECK(std::abs(est.targets[1].range - r0 - 3 * r_min) < r_min / 100);
  }
}

TEST_CASE("two update passes do not do worse than one") {
  Rng rng(6);
  const auto m = desk_modem(modem::Scheme::CscIm, 2, 15);
  const double r_min = radar::min_resolution(56 / kTs);
  std::uniform_real_distribution<double> spacing(1.5, 2.0), start(0.3, 0.4);
  radar::SearchOptions one, two;
  one.update_passes = 1;
  two.update_passes = 2;
  double e1 = 0.0, e2 = 0.0;
  for (int t = 0; t < 300; ++t) {
    const double r0 = start(rng);
    const double r1 = r0 + spacing(rng) * r_min;
    const auto obs = observe(m, {{r0, -0.7071}, {r1, -0.7071}}, 1e-3, rng);
    const auto a = radar::estimate_multi(obs, 2, one);
    const auto b = radar::estimate_multi(obs, 2, two);
    e1 += std::pow(a.targets[0].range - r0, 2) + std::pow(a.targets[1].range - r1, 2);
    e2 += std::pow(b.targets[0].range - r0, 2) + std::pow(b.targets[1].range - r1, 2);
  }
  CHECK(e2 <= e1);
}

TEST_CASE("LMMSE estimator") {
  Rng rng(7);
  // DFT-s-OFDM-IM with L = 1 has unimodular bins.
  const auto uni = desk_modem(modem::Scheme::DftSOfdmIm, 1, 0);
  const auto obs = observe(uni, {{0.37, 1.0}}, 1e-4, rng);
  for (cplx w : obs.w) REQUIRE(std::abs(w) == doctest::Approx(1.0).epsilon(1e-12));
  const auto mf = radar::estimate_multi(obs, 1);
  const auto lm = radar::estimate_lmmse(obs, 1);
  CHECK(std::abs(mf.targets[0].delay - lm.targets[0].delay) < 1e-6);
  CHECK(std::abs(mf.targets[0].delay - lm.targets[0].delay) < 1e-15);

  const cvec h = radar::lmmse_channel(obs);
  for (std::size_t k = 0; k < h.size(); ++k)
    CHECK(std::abs(h[k] - std::conj(obs.w[k]) * obs.b[k] / (std::norm(obs.w[k]) + 1e-4)) < 1e-14);

  RadarObservation loud = obs;
  loud.noise_var = 1e30;
  for (cplx v : radar::lmmse_channel(loud)) CHECK(std::abs(v) < 1e-28);
}

TEST_CASE("Fisher information and range bounds") {
  const std::vector<double> ones(64, 1.0);
  const double s2 = 0.01;
  const std::vector<double> a1{1.0};
  const auto J = radar::fim(a1, ones, -31, s2, kFc, kTs);
  REQUIRE(J.size() == 4);
  double sum = 0.0, e = 0.0;
  for (int k = -31; k <= 32; ++k) {
    sum += std::pow(k / kTs + kFc, 2);
    e += 1.0;
  }
  CHECK(J[0] == doctest::Approx(8 * kPi * kPi / s2 * sum).epsilon(1e-12));
  CHECK(J[3] == doctest::Approx(2 / s2 * e).epsilon(1e-12));
  CHECK(J[1] == 0.0);
  CHECK(J[2] == 0.0);

  const std::vector<double> a2{2.0};
  CHECK(radar::fim(a2, ones, -31, s2, kFc, kTs)[0] == doctest::Approx(4 * J[0]).epsilon(1e-12));

  const std::vector<double> two{-0.7, 0.4};
  const auto J2 = radar::fim(two, ones, -31, s2, kFc, kTs);
  const double from_fim = kSpeedOfLight * kSpeedOfLight / 4 * (1 / J2[0] + 1 / J2[5]);
  CHECK(radar::crlb_range(two, ones, -31, s2, kFc, kTs) == doctest::Approx(from_fim).epsilon(1e-12));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(J2[static_cast<std::size_t>(i * 4 + j)] == 0.0);

  const double one = radar::crlb_range(a1, ones, -31, s2, kFc, kTs);
  CHECK(radar::crlb_range(a1, ones, -31, 2 * s2, kFc, kTs) == doctest::Approx(2 * one));
  const std::vector<double> pair{1.0, 1.0};
  CHECK(radar::crlb_range(pair, ones, -31, s2, kFc, kTs) == doctest::Approx(2 * one));
  CHECK(radar::crlb_coeff(a1, ones, s2) == doctest::Approx(s2 / (2 * 64)));

  const std::vector<double> zero{0.0};
  CHECK_THROWS_AS(radar::fim(zero, ones, -31, s2, kFc, kTs), std::invalid_argument);
}

TEST_CASE("phase-aware bound is far tighter than the phase-unaware one at mmwave numerology") {
  const double ts = 2048 / 10.56e9;
  const auto g = chirp::make_fdss({chirp::Family::Linear, 1382, -723, 724, ts});
  std::vector<double> p;
  for (cplx v : g.g) p.push_back(std::norm(v));
  const std::vector<double> a{1.0};
  const double aware = radar::crlb_range(a, p, -723, 1e-3, 64.8e9, ts);
  const double blind = radar::crlb_range_no_phase(a, 1448, 1e-3, ts);
  CHECK(aware < blind / 100);

  // With f_c = 0 and centred flat bins the two expressions agree.
  const std::vector<double> flat(65, 1.0);
  CHECK(radar::crlb_range(a, flat, -32, 1e-3, 0.0, ts) ==
        doctest::Approx(radar::crlb_range_no_phase(a, 65, 1e-3, ts)).epsilon(1e-12));
}

TEST_CASE("minimum resolution") {
  CHECK(radar::min_resolution(kSpeedOfLight / 2) == doctest::Approx(1.0));
  CHECK(radar::min_resolution(1e9) == doctest::Approx(2 * radar::min_resolution(2e9)));
  CHECK(radar::min_resolution(1382 / (2048 / 10.56e9)) == doctest::Approx(0.021035).epsilon(1e-4));
}

TEST_CASE("realized and expected bounds agree on average without IS") {
  Rng rng(9);
  const auto m = desk_modem(modem::Scheme::CscIm, 2, 0);
  std::vector<double> g = powers(m.fdss().g);
  const std::vector<double> a{1.0};
  const double expected = radar::crlb_range(a, g, -31, 1e-2, kFc, kTs);
  double inv = 0.0;
  const int n = 2000;
  for (int t = 0; t < n; ++t) {
    const auto obs = observe(m, {{0.3, 1.0}}, 0.0, rng);
    inv += 1 / radar::crlb_range(a, powers(obs.w), -31, 1e-2, kFc, kTs);
  }
  CHECK(1 / (inv / n) == doctest::Approx(expected).epsilon(0.02));
}
