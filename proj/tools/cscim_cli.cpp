// Command-line driver for the experiments and the index-codec utilities.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cscim/chirp.hpp"
#include "cscim/config.hpp"
#include "cscim/experiments.hpp"
#include "cscim/golay.hpp"
#include "cscim/index_codec.hpp"
#include "cscim/radar.hpp"

using namespace cscim;
namespace ic = cscim::index_codec;

namespace {

struct CommonOptions {
  std::string config;
  std::string preset = "desk";
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::int64_t trials = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "INI file overlaid on the preset")->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset, "desk | mmwave | mmwave-m1536");
  cmd->add_option("--out", o.out, "CSV output path (stdout if omitted)");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&o](std::uint64_t s) { o.seed = s; o.seed_set = true; }, "master seed");
  cmd->add_option("--trials", o.trials, "override run.trials");
}

harness::ExperimentConfig resolve(const CommonOptions& o) {
  auto cfg = harness::preset_by_name(o.preset);
  if (!o.config.empty()) cfg = harness::load_config(o.config, cfg);
  if (o.seed_set) cfg.seed = o.seed;
  if (o.trials > 0) cfg.trials = o.trials;
  cfg.out = o.out;
  cfg.validate();
  return cfg;
}

std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSC-IM waveform toolkit"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string scenario;
  bool fading = false;

  auto* pmepr = app.add_subcommand("pmepr", "PMEPR CCDF per scheme");
  add_common(pmepr, common);
  auto* bler = app.add_subcommand("bler", "BLER and union bound versus SNR");
  add_common(bler, common);
  bler->add_flag("--fading", fading, "Rician multipath instead of AWGN");
  auto* rmse = app.add_subcommand("radar-rmse", "range RMSE against the CRLBs");
  add_common(rmse, common);
  rmse->add_option("--scenario", scenario, "single | two");
  auto* resolution = app.add_subcommand("resolution", "two-target RMSE versus spacing");
  add_common(resolution, common);

  int M = 0, L = 0, delta = 0;
  std::string n_text, indices_text;
  auto* rank = app.add_subcommand("rank", "index set -> 1-based rank");
  rank->add_option("--M", M)->required();
  rank->add_option("--L", L)->required();
  rank->add_option("--delta", delta);
  rank->add_option("--indices", indices_text, "comma separated, ascending")->required();
  auto* unrank = app.add_subcommand("unrank", "1-based rank -> index set");
  unrank->add_option("--n", n_text)->required();
  unrank->add_option("--M", M)->required();
  unrank->add_option("--L", L)->required();
  unrank->add_option("--delta", delta);
  auto* count = app.add_subcommand("count", "number of separated index sets");
  count->add_option("--M", M)->required();
  count->add_option("--L", L)->required();
  count->add_option("--delta", delta);
  auto* dnl = app.add_subcommand("delta-no-loss", "largest separation without bit loss");
  dnl->add_option("--M", M)->required();
  dnl->add_option("--L", L)->required();

  std::string family = "sinusoidal";
  double deviation = 12.0, tol = 1e-2;
  int lowest = -11, highest = 12, shift_p = 0, shift_r = 1;
  auto* gcp = app.add_subcommand("gcp-check", "complementary pair from two shifted chirps");
  gcp->add_option("--family", family);
  gcp->add_option("--D", deviation);
  gcp->add_option("--lowest", lowest);
  gcp->add_option("--highest", highest);
  gcp->add_option("--shift-p", shift_p);
  gcp->add_option("--shift-r", shift_r);
  gcp->add_option("--tol", tol);

  double snr_db = 30.0;
  std::vector<double> alphas{-1.0};
  auto* crlb = app.add_subcommand("crlb", "range bounds and resolution for a preset");
  add_common(crlb, common);
  crlb->add_option("--snr", snr_db, "dB");
  crlb->add_option("--alphas", alphas, "reflection coefficients")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (pmepr->parsed()) {
      const auto cfg = resolve(common);
      const auto res = harness::run_pmepr_ccdf(cfg);
      harness::write_csv(res.table, cfg, cfg.out);
      for (const auto& s : res.summary)
        std::fprintf(stderr, "%-28s max %.3f dB  ccdf(1e-3) %.3f dB  frames %lld\n",
                     s.variant.label().c_str(), s.max_db, s.ccdf_1e3_db,
                     static_cast<long long>(s.frames));
    } else if (bler->parsed()) {
      auto cfg = resolve(common);
      if (fading) cfg.fading = true;
      harness::write_csv(harness::run_bler(cfg).table, cfg, cfg.out);
    } else if (rmse->parsed()) {
      auto cfg = resolve(common);
      if (!scenario.empty()) cfg.scenario = scenario;
      cfg.validate();
      harness::write_csv(harness::run_radar_rmse(cfg).table, cfg, cfg.out);
    } else if (resolution->parsed()) {
      const auto cfg = resolve(common);
      harness::write_csv(harness::run_resolution(cfg).table, cfg, cfg.out);
    } else if (rank->parsed()) {
      const auto idx = parse_indices(indices_text);
      std::cout << ic::indices_to_rank(idx, M, L, delta) << "\n";
    } else if (unrank->parsed()) {
      const auto idx = ic::rank_to_indices(ic::BigInt(n_text), M, L, delta);
      for (std::size_t i = 0; i < idx.size(); ++i) std::cout << (i ? "," : "") << idx[i];
      std::cout << "\n";
    } else if (count->parsed()) {
      std::cout << ic::index_count(L, delta, M) << "\n";
    } else if (dnl->parsed()) {
      std::cout << ic::delta_no_loss(M, L) << "\n";
    } else if (gcp->parsed()) {
      // No M > D check here: the heavily truncated case is a legitimate query.
      chirp::ChirpSpec spec{chirp::family_from_string(family), deviation, lowest, highest, 1.0};
      const cvec raw = chirp::fourier_coeffs(spec);
      const auto [a, b] = golay::gcp_from_chirps(raw, lowest, shift_p, shift_r, 1.0, 1.0);
      const auto rep = golay::is_gcp(a, b, tol);
      std::printf("gcp=%s max_violation=%.6e worst_lag=%d\n", rep.is_pair ? "true" : "false",
                  rep.max_violation, rep.worst_lag);
      return rep.is_pair ? 0 : 1;
    } else if (crlb->parsed()) {
      const auto cfg = resolve(common);
      const double noise_var = db_to_linear(-snr_db);
      chirp::ChirpSpec spec{chirp::Family::Linear, cfg.deviation_linear, cfg.lowest_bin,
                            cfg.highest_bin, cfg.symbol_time};
      const auto fdss = chirp::make_fdss(spec);
      std::vector<double> power;
      for (cplx g : fdss.g) power.push_back(std::norm(g));
      std::printf("preset=%s M=%d T_s=%.6e f_c=%.6e B=%.6e\n", cfg.preset.c_str(), cfg.bins(),
                  cfg.symbol_time, cfg.carrier, spec.bandwidth());
      std::printf("r_min_m=%.6e max_range_m=%.6e\n", radar::min_resolution(spec.bandwidth()),
                  cfg.max_range());
      std::printf("crlb_range_m=%.6e\n", std::sqrt(radar::crlb_range(alphas, power, cfg.lowest_bin,
                                                                     noise_var, cfg.carrier,
                                                                     cfg.symbol_time)));
      std::printf("crlb_range_nophase_m=%.6e\n",
                  std::sqrt(radar::crlb_range_no_phase(alphas, cfg.bins(), noise_var,
                                                       cfg.symbol_time)));
      std::printf("crlb_coeff=%.6e\n", radar::crlb_coeff(alphas, power, noise_var));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
