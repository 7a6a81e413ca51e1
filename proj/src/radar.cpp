#include "cscim/radar.hpp"

#include <algorithm>
#include <stdexcept>

#include "cscim/fft.hpp"

namespace cscim::radar {
namespace {

double sum_power(const RadarObservation& obs) {
  double s = 0.0;
  for (cplx v : obs.w) s += std::norm(v);
  return s;
}

cvec search_vector(const RadarObservation& obs, std::span<const cplx> b, Estimator est) {
  cvec v(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    v[k] = std::conj(obs.w[k]) * b[k];
    if (est == Estimator::Lmmse) {
      const double den = std::norm(obs.w[k]) + obs.noise_var;
      v[k] = den > 0.0 ? v[k] / den : cplx{};
    }
  }
  return v;
}

// Σ_k v_k e^{j2πkτ/T_s} on τ = start + q·step, via chirp-Z.
cvec delay_scan(std::span<const cplx> v, const RadarObservation& obs, double start, double step,
                std::size_t count) {
  const double scale = kTwoPi / obs.symbol_time;
  cvec x = fft::chirp_z(v, count, -scale * start, scale * step);
  for (std::size_t q = 0; q < count; ++q)
    x[q] *= phasor(scale * obs.first_bin * (start + static_cast<double>(q) * step));
  return x;
}

double find_delay(std::span<const cplx> v, const RadarObservation& obs, const SearchOptions& opt) {
  const double coarse = 0.5 / obs.bandwidth;
  const auto count = static_cast<std::size_t>(std::ceil(obs.cp_time / coarse));
  const cvec env = delay_scan(v, obs, 0.0, coarse, std::max<std::size_t>(count, 1));
  std::size_t arg = 0;
  for (std::size_t q = 1; q < env.size(); ++q)
    if (std::abs(env[q]) > std::abs(env[arg])) arg = q;
  double tau = static_cast<double>(arg) * coarse;

  // The carrier term enters only now, on a grid fine enough to follow it.
  double half = coarse;
  for (int stage = 0; stage < opt.refine_stages; ++stage) {
    const double step = half / opt.zoom;
    const double start = tau - half;
    const auto points = static_cast<std::size_t>(2 * opt.zoom + 1);
    const cvec scan = delay_scan(v, obs, start, step, points);
    double best = -1.0;
    for (std::size_t q = 0; q < points; ++q) {
      const double t = start + static_cast<double>(q) * step;
      if (t < 0.0 || t >= obs.cp_time) continue;
      const double m = std::abs(std::real(phasor(kTwoPi * obs.carrier * t) * scan[q]));
      if (m > best) {
        best = m;
        tau = t;
      }
    }
    half = step;
  }
  return tau;
}

double estimate_alpha(std::span<const cplx> b, const RadarObservation& obs, double tau,
                      Estimator est) {
  const cvec c = steering(obs, tau);
  cplx acc{};
  for (std::size_t k = 0; k < b.size(); ++k) acc += std::conj(c[k] * obs.w[k]) * b[k];
  double den = sum_power(obs);
  if (est == Estimator::Lmmse) den += obs.noise_var;
  return std::real(acc) / den;
}

void subtract(cvec& b, const RadarObservation& obs, const Estimate& e) {
  const cvec c = steering(obs, e.delay);
  for (std::size_t k = 0; k < b.size(); ++k) b[k] -= e.alpha * obs.w[k] * c[k];
}

Estimate estimate_one(std::span<const cplx> b, const RadarObservation& obs,
                      const SearchOptions& opt) {
  const cvec v = search_vector(obs, b, opt.estimator);
  Estimate e;
  e.delay = find_delay(v, obs, opt);
  e.alpha = estimate_alpha(b, obs, e.delay, opt.estimator);
  e.range = channel::RadarScene::range_of(e.delay);
  return e;
}

void check(const RadarObservation& obs) {
  if (obs.b.size() != obs.w.size() || obs.b.empty())
    throw std::invalid_argument("radar: b and w must be aligned and non-empty");
  if (!(sum_power(obs) > 0.0)) throw std::invalid_argument("radar: all-zero reference bins");
  if (!(obs.bandwidth > 0.0) || !(obs.cp_time > 0.0) || !(obs.symbol_time > 0.0))
    throw std::invalid_argument("radar: bandwidth, T_CP and T_s must be positive");
}

}  // namespace

cvec steering(const RadarObservation& obs, double tau) {
  cvec c(obs.b.size());
  const cplx carrier = phasor(-kTwoPi * obs.carrier * tau);
  const double slope = -kTwoPi * tau / obs.symbol_time;
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = carrier * phasor(slope * (obs.first_bin + static_cast<int>(i)));
  return c;
}

cvec lmmse_channel(const RadarObservation& obs) {
  check(obs);
  return search_vector(obs, obs.b, Estimator::Lmmse);
}

Objective mf_objective(double tau, const RadarObservation& obs) {
  check(obs);
  const cvec c = steering(obs, tau);
  cplx acc{};
  for (std::size_t k = 0; k < c.size(); ++k) acc += std::conj(c[k] * obs.w[k]) * obs.b[k];
  return {std::abs(std::real(acc)), std::real(acc) / sum_power(obs)};
}

EstimateSet estimate_single(const RadarObservation& obs, const SearchOptions& opt) {
  return estimate_multi(obs, 1, opt);
}

EstimateSet estimate_multi(const RadarObservation& obs, int targets, const SearchOptions& opt) {
  check(obs);
  if (targets < 1 || targets > opt.max_targets)
    throw std::invalid_argument("radar: target count outside [1, max_targets]");
  EstimateSet out;
  out.coarse_step = 0.5 / obs.bandwidth;
  out.zoom = opt.zoom;
  out.refine_stages = opt.refine_stages;
  out.update_passes = opt.update_passes;

  std::vector<Estimate>& est = out.targets;
  cvec residual = obs.b;
  for (int n = 0; n < targets; ++n) {
    est.push_back(estimate_one(residual, obs, opt));
    subtract(residual, obs, est.back());
  }
  if (targets > 1) {
    for (int pass = 0; pass < opt.update_passes; ++pass) {
      for (int n = 0; n < targets; ++n) {
        cvec others = obs.b;
        for (int s = 0; s < targets; ++s)
          if (s != n) subtract(others, obs, est[static_cast<std::size_t>(s)]);
        est[static_cast<std::size_t>(n)] = estimate_one(others, obs, opt);
      }
    }
  }
  std::sort(est.begin(), est.end(),
            [](const Estimate& a, const Estimate& b) { return a.range < b.range; });
  return out;
}

EstimateSet estimate_lmmse(const RadarObservation& obs, int targets, SearchOptions opt) {
  opt.estimator = Estimator::Lmmse;
  return estimate_multi(obs, targets, opt);
}

std::vector<double> fim(std::span<const double> alphas, std::span<const double> power,
                        int first_bin, double noise_var, double carrier, double symbol_time) {
  const std::size_t r = alphas.size();
  double freq_weight = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < power.size(); ++i) {
    const double f = (first_bin + static_cast<int>(i)) / symbol_time + carrier;
    freq_weight += power[i] * f * f;
    total += power[i];
  }
  std::vector<double> j(4 * r * r, 0.0);
  for (std::size_t s = 0; s < r; ++s) {
    if (alphas[s] == 0.0) throw std::invalid_argument("fim: zero reflection coefficient");
    const double a2 = alphas[s] * alphas[s];
    j[s * 2 * r + s] = 8.0 * kPi * kPi * a2 / noise_var * freq_weight;
    j[(s + r) * 2 * r + (s + r)] = 2.0 * a2 / noise_var * total;
  }
  return j;
}

namespace {
double inverse_square_sum(std::span<const double> alphas) {
  double s = 0.0;
  for (double a : alphas) {
    if (a == 0.0) throw std::invalid_argument("crlb: zero reflection coefficient");
    s += 1.0 / (a * a);
  }
  return s;
}
}  // namespace

double crlb_range(std::span<const double> alphas, std::span<const double> power, int first_bin,
                  double noise_var, double carrier, double symbol_time) {
  double freq_weight = 0.0;
  for (std::size_t i = 0; i < power.size(); ++i) {
    const double f = (first_bin + static_cast<int>(i)) / symbol_time + carrier;
    freq_weight += power[i] * f * f;
  }
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  return noise_var * c2 / (32.0 * kPi * kPi * freq_weight) * inverse_square_sum(alphas);
}

double crlb_coeff(std::span<const double> alphas, std::span<const double> power,
                  double noise_var) {
  double total = 0.0;
  for (double p : power) total += p;
  return noise_var / (2.0 * total) * inverse_square_sum(alphas);
}

double crlb_range_no_phase(std::span<const double> alphas, int M, double noise_var,
                           double symbol_time) {
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const double m = M;
  return 3.0 * noise_var * c2 * symbol_time * symbol_time /
         (8.0 * kPi * kPi * m * (m * m - 1.0)) * inverse_square_sum(alphas);
}

double min_resolution(double bandwidth) { return 0.5 * kSpeedOfLight / bandwidth; }

}  // namespace cscim::radar
