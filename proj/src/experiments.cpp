#include "cscim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "cscim/channel.hpp"
#include "cscim/radar.hpp"

namespace cscim::harness {
namespace {

enum ExperimentId : std::uint64_t { kPmepr = 1, kBler = 2, kRadar = 3, kResolution = 4 };

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

index_codec::Bits random_bits(int p, Rng& rng) {
  index_codec::Bits bits(static_cast<std::size_t>(p));
  std::uniform_int_distribution<int> coin(0, 1);
  for (auto& b : bits) b = static_cast<std::uint8_t>(coin(rng));
  return bits;
}

std::uint64_t point_id(std::size_t variant, std::size_t point) {
  return static_cast<std::uint64_t>(variant) * 100000u + point;
}

}  // namespace

void write_csv(const Table& table, const ExperimentConfig& cfg, std::ostream& os) {
  os << "# experiment=" << table.experiment << " config_hash=" << cfg.hash()
     << " seed=" << cfg.seed << " preset=" << cfg.preset << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

void write_csv(const Table& table, const ExperimentConfig& cfg, const std::string& path) {
  if (path.empty() || path == "-") {
    write_csv(table, cfg, std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(table, cfg, file);
  if (!file) throw std::runtime_error("write failed: " + path);
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

PmeprResult run_pmepr_ccdf(const ExperimentConfig& cfg, Execution ex) {
  cfg.validate();
  PmeprResult result;
  result.table.experiment = "pmepr";
  result.table.columns = {"variant", "scheme", "L", "delta", "pmepr_db", "ccdf"};
  const auto variants = cfg.variants();
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    const Variant& v = variants[vi];
    const modem::Modem mdm(cfg.modem_config(v));
    auto values = run_trials<double>(
        0, cfg.trials,
        [&](std::int64_t t) {
          Rng rng = trial_rng(cfg.seed, kPmepr, point_id(vi, 0), static_cast<std::uint64_t>(t));
          const auto frame = mdm.tx_frame(random_bits(mdm.capacity().p, rng));
          return chirp::measure_pmepr(frame, cfg.oversample);
        },
        ex);
    std::sort(values.begin(), values.end());
    const auto count = static_cast<double>(values.size());

    PmeprSummary s;
    s.variant = v;
    s.frames = cfg.trials;
    s.max_db = values.back();
    // Exceeded by at most ⌊count·1e−3⌋ samples.
    const auto allowed = static_cast<std::size_t>(std::floor(count * 1e-3));
    s.ccdf_1e3_db = values[values.size() - 1 - std::min(allowed, values.size() - 1)];
    result.summary.push_back(s);

    const double step = 0.05;
    const int last = static_cast<int>(std::ceil(std::max(0.0, s.max_db) / step)) + 1;
    for (int g = 0; g <= last; ++g) {
      const double x = g * step;
      const auto above = values.end() - std::upper_bound(values.begin(), values.end(), x);
      result.table.rows.push_back({v.label(), variant_name(v), std::to_string(v.L),
                                   std::to_string(cfg.delta_for(v)), fmt(x, "%.2f"),
                                   fmt(static_cast<double>(above) / count, "%.6e")});
    }
  }
  return result;
}

namespace {

struct LinkTrial {
  bool error = false;
  double bound = 0.0;
};

}  // namespace

BlerPoint bler_point(const ExperimentConfig& cfg, const Variant& v, double snr_db,
                     std::uint64_t pid, Execution ex) {
  const modem::Modem mdm(cfg.modem_config(v));
  const int m = cfg.bins();
  const double noise_var = db_to_linear(-snr_db);
  const auto pdp = channel::default_pdp(cfg.pdp_delay_scale);
  const cvec flat(static_cast<std::size_t>(m), cplx{1.0, 0.0});

  BlerPoint pt;
  pt.variant = v;
  pt.delta = cfg.delta_for(v);
  pt.snr_db = snr_db;
  pt.ebn0_db = snr_db + linear_to_db(static_cast<double>(m) / mdm.capacity().p);

  auto trial = [&](std::int64_t t) {
    Rng rng = trial_rng(cfg.seed, kBler, pid, static_cast<std::uint64_t>(t));
    const auto bits = random_bits(mdm.capacity().p, rng);
    const auto enc = mdm.encode(bits);
    const cvec w = mdm.bins_of(enc.d);
    cvec cfr = flat;
    if (cfg.fading) cfr = channel::rician_realize(pdp, rng).cfr(cfg.lowest_bin, m, cfg.symbol_time);
    cvec received(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) received[k] = cfr[k] * w[k];
    channel::add_awgn_inplace(received, noise_var, rng);
    const auto decoded = mdm.rx_bins(received, cfr, noise_var);
    LinkTrial r;
    r.error = !decoded || *decoded != bits;
    if (cfg.fading) r.bound = mdm.union_bound(cfr, noise_var);
    return r;
  };

  double bound_sum = 0.0;
  while (pt.errors < cfg.min_errors && pt.trials < cfg.max_trials) {
    const std::int64_t n = std::min(cfg.batch, cfg.max_trials - pt.trials);
    const auto results = run_trials<LinkTrial>(pt.trials, n, trial, ex);
    for (const auto& r : results) {
      pt.errors += r.error ? 1 : 0;
      bound_sum += r.bound;
    }
    pt.trials += n;
  }
  pt.bler = static_cast<double>(pt.errors) / static_cast<double>(pt.trials);
  std::tie(pt.bler_lo, pt.bler_hi) = wilson_interval(pt.errors, pt.trials);
  pt.union_bound = cfg.fading ? bound_sum / static_cast<double>(pt.trials)
                              : mdm.union_bound(flat, noise_var);
  return pt;
}

BlerResult run_bler(const ExperimentConfig& cfg, Execution ex) {
  cfg.validate();
  BlerResult result;
  result.table.experiment = "bler";
  result.table.columns = {"variant", "scheme", "L",      "delta",   "channel",
                          "snr_db",  "ebn0_db", "trials", "errors", "bler",
                          "bler_lo", "bler_hi", "union_bound"};
  const auto variants = cfg.variants();
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    const Variant& v = variants[vi];
    const int p = index_codec::bit_capacity(cfg.bins(), v.L, cfg.H, cfg.delta_for(v)).p;
    const double to_snr = linear_to_db(static_cast<double>(p) / cfg.bins());
    for (std::size_t si = 0; si < cfg.sweep_db.size(); ++si) {
      const double x = cfg.sweep_db[si];
      const double snr = cfg.axis == "ebn0" ? x + to_snr : x;
      const BlerPoint pt = bler_point(cfg, v, snr, point_id(vi, si), ex);
      result.points.push_back(pt);
      result.table.rows.push_back(
          {v.label(), variant_name(v), std::to_string(v.L), std::to_string(pt.delta),
           cfg.fading ? "rician" : "awgn", fmt(pt.snr_db, "%.4f"), fmt(pt.ebn0_db, "%.4f"),
           std::to_string(pt.trials), std::to_string(pt.errors), fmt(pt.bler, "%.6e"),
           fmt(pt.bler_lo, "%.6e"), fmt(pt.bler_hi, "%.6e"), fmt(pt.union_bound, "%.6e")});
    }
  }
  return result;
}

namespace {

struct RadarTrial {
  std::vector<double> squared_error;  ///< per estimator, summed over targets
  double crlb_realized = 0.0;
};

radar::Estimator estimator_from(const std::string& name) {
  return name == "lmmse" ? radar::Estimator::Lmmse : radar::Estimator::MatchedFilter;
}

// Shared by the RMSE and resolution sweeps. spacing_rmin < 0 draws the
// two-target spacing from the configured interval.
std::vector<RadarPoint> radar_sweep_point(const ExperimentConfig& cfg, const Variant& v,
                                          bool two_targets, double snr_db, double spacing_rmin,
                                          std::uint64_t experiment, std::uint64_t pid,
                                          Execution ex) {
  const modem::Modem mdm(cfg.modem_config(v));
  const int m = cfg.bins();
  const double noise_var = db_to_linear(-snr_db);
  const double r_max = cfg.max_range();
  const double r_min = cfg.r_min();
  const int targets = two_targets ? 2 : 1;

  radar::SearchOptions opt;
  opt.zoom = cfg.zoom;
  opt.refine_stages = cfg.refine_stages;
  opt.update_passes = cfg.update_passes;

  auto trial = [&](std::int64_t t) {
    Rng rng = trial_rng(cfg.seed, experiment, pid, static_cast<std::uint64_t>(t));
    const auto enc = mdm.encode(random_bits(mdm.capacity().p, rng));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    channel::RadarScene scene;
    scene.carrier = cfg.carrier;
    scene.symbol_time = cfg.symbol_time;
    scene.cp_time = cfg.cp_time();
    const double first = (cfg.single_min + (cfg.single_max - cfg.single_min) * unit(rng)) * r_max;
    if (two_targets) {
      const double gap = spacing_rmin >= 0.0
                             ? spacing_rmin
                             : cfg.spacing_min + (cfg.spacing_max - cfg.spacing_min) * unit(rng);
      scene.targets = {{first, cfg.alpha_two}, {first + gap * r_min, cfg.alpha_two}};
    } else {
      scene.targets = {{first, cfg.alpha_single}};
    }
    scene.validate();

    radar::RadarObservation obs;
    obs.w = mdm.bins_of(enc.d);
    const cvec h = channel::radar_cfr(scene, cfg.lowest_bin, m);
    obs.b.resize(obs.w.size());
    for (std::size_t k = 0; k < obs.w.size(); ++k) obs.b[k] = obs.w[k] * h[k];
    channel::add_awgn_inplace(obs.b, noise_var, rng);
    obs.first_bin = cfg.lowest_bin;
    obs.noise_var = noise_var;
    obs.carrier = cfg.carrier;
    obs.symbol_time = cfg.symbol_time;
    obs.cp_time = cfg.cp_time();
    obs.bandwidth = cfg.radar_bandwidth(v);

    RadarTrial r;
    for (const auto& name : cfg.estimators) {
      radar::SearchOptions o = opt;
      o.estimator = estimator_from(name);
      const auto est = radar::estimate_multi(obs, targets, o);
      double se = 0.0;
      for (int s = 0; s < targets; ++s) {
        const double e = est.targets[static_cast<std::size_t>(s)].range -
                         scene.targets[static_cast<std::size_t>(s)].range;
        se += e * e;
      }
      r.squared_error.push_back(se);
    }
    std::vector<double> alphas, power;
    for (const auto& tg : scene.targets) alphas.push_back(tg.alpha);
    for (cplx x : obs.w) power.push_back(std::norm(x));
    r.crlb_realized = radar::crlb_range(alphas, power, cfg.lowest_bin, noise_var, cfg.carrier,
                                        cfg.symbol_time);
    return r;
  };

  const auto results = run_trials<RadarTrial>(0, cfg.trials, trial, ex);

  std::vector<double> alphas(static_cast<std::size_t>(targets),
                             two_targets ? cfg.alpha_two : cfg.alpha_single);
  std::vector<double> expected;
  for (cplx g : mdm.fdss().g) expected.push_back(std::norm(g));
  const double crlb = radar::crlb_range(alphas, expected, cfg.lowest_bin, noise_var, cfg.carrier,
                                        cfg.symbol_time);
  const double nophase = radar::crlb_range_no_phase(alphas, m, noise_var, cfg.symbol_time);
  double realized = 0.0;
  for (const auto& r : results) realized += r.crlb_realized;
  const double n = static_cast<double>(results.size());

  std::vector<RadarPoint> points;
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
    double se = 0.0;
    for (const auto& r : results) se += r.squared_error[e];
    RadarPoint pt;
    pt.variant = v;
    pt.estimator = cfg.estimators[e];
    pt.snr_db = snr_db;
    pt.spacing_rmin = spacing_rmin;
    pt.trials = cfg.trials;
    pt.rmse_m = std::sqrt(se / (n * targets));
    pt.crlb_m = std::sqrt(crlb / targets);
    pt.crlb_realized_m = std::sqrt(realized / (n * targets));
    pt.crlb_nophase_m = std::sqrt(nophase / targets);
    points.push_back(pt);
  }
  return points;
}

}  // namespace

RadarResult run_radar_rmse(const ExperimentConfig& cfg, Execution ex) {
  cfg.validate();
  RadarResult result;
  result.table.experiment = "radar-rmse";
  result.table.columns = {"variant",  "scheme", "L",      "delta",  "estimator",
                          "scenario", "snr_db", "trials", "rmse_m", "crlb_m",
                          "crlb_realized_m", "crlb_nophase_m"};
  const bool two = cfg.scenario == "two";
  const auto variants = cfg.variants();
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    for (std::size_t si = 0; si < cfg.radar_snr_db.size(); ++si) {
      const auto pts = radar_sweep_point(cfg, variants[vi], two, cfg.radar_snr_db[si], -1.0,
                                         kRadar, point_id(vi, si), ex);
      for (const auto& pt : pts) {
        result.points.push_back(pt);
        const Variant& v = pt.variant;
        result.table.rows.push_back(
            {v.label(), variant_name(v), std::to_string(v.L), std::to_string(cfg.delta_for(v)),
             pt.estimator, cfg.scenario, fmt(pt.snr_db, "%.4f"), std::to_string(pt.trials),
             fmt(pt.rmse_m, "%.6e"), fmt(pt.crlb_m, "%.6e"), fmt(pt.crlb_realized_m, "%.6e"),
             fmt(pt.crlb_nophase_m, "%.6e")});
      }
    }
  }
  return result;
}

RadarResult run_resolution(const ExperimentConfig& cfg, Execution ex) {
  cfg.validate();
  RadarResult result;
  result.table.experiment = "resolution";
  result.table.columns = {"variant",      "scheme",    "L",      "delta",  "estimator", "snr_db",
                          "spacing_rmin", "spacing_m", "trials", "rmse_m", "crlb_m"};
  const auto variants = cfg.variants();
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    for (std::size_t si = 0; si < cfg.spacing_rmin.size(); ++si) {
      const auto pts = radar_sweep_point(cfg, variants[vi], true, cfg.resolution_snr_db,
                                         cfg.spacing_rmin[si], kResolution, point_id(vi, si), ex);
      for (const auto& pt : pts) {
        result.points.push_back(pt);
        const Variant& v = pt.variant;
        result.table.rows.push_back(
            {v.label(), variant_name(v), std::to_string(v.L), std::to_string(cfg.delta_for(v)),
             pt.estimator, fmt(pt.snr_db, "%.4f"), fmt(pt.spacing_rmin, "%.4f"),
             fmt(pt.spacing_rmin * cfg.r_min(), "%.6e"), std::to_string(pt.trials),
             fmt(pt.rmse_m, "%.6e"), fmt(pt.crlb_m, "%.6e")});
      }
    }
  }
  return result;
}

}  // namespace cscim::harness
