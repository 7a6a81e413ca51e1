#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cscim/config.hpp"
#include "cscim/runner.hpp"

namespace cscim::harness {

struct Table {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Comment line "# experiment=… config_hash=… seed=… preset=…", header row, rows.
void write_csv(const Table& table, const ExperimentConfig& cfg, std::ostream& os);
/// Writes to `path`, or to stdout when the path is empty or "-".
void write_csv(const Table& table, const ExperimentConfig& cfg, const std::string& path);

/// 95% Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z = 1.959963984540054);

struct PmeprSummary {
  Variant variant;
  std::int64_t frames = 0;
  double max_db = 0.0;
  double ccdf_1e3_db = 0.0;  ///< smallest x with P(PMEPR > x) ≤ 1e−3
};

struct PmeprResult {
  Table table;
  std::vector<PmeprSummary> summary;
};

/// `trials` random frames per variant; empirical CCDF on a 0.05 dB grid.
PmeprResult run_pmepr_ccdf(const ExperimentConfig& cfg, Execution ex = Execution::Parallel);

struct BlerPoint {
  Variant variant;
  int delta = 0;
  double snr_db = 0.0;
  double ebn0_db = 0.0;
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  double bler = 0.0;
  double bler_lo = 0.0;
  double bler_hi = 0.0;
  double union_bound = 0.0;
};

struct BlerResult {
  Table table;
  std::vector<BlerPoint> points;
};

/// Block error rate per sweep point, batches of cfg.batch trials until
/// cfg.min_errors block errors or cfg.max_trials.
BlerResult run_bler(const ExperimentConfig& cfg, Execution ex = Execution::Parallel);

/// Simulates one sweep point; exposed for the acceptance checks.
BlerPoint bler_point(const ExperimentConfig& cfg, const Variant& v, double snr_db,
                     std::uint64_t point_id, Execution ex = Execution::Parallel);

struct RadarPoint {
  Variant variant;
  std::string estimator;
  double snr_db = 0.0;
  double spacing_rmin = 0.0;  ///< two-target resolution sweep only
  std::int64_t trials = 0;
  double rmse_m = 0.0;
  double crlb_m = 0.0;           ///< expectation bound, |g_k|²
  double crlb_realized_m = 0.0;  ///< mean of the per-frame bound, |w_k|²
  double crlb_nophase_m = 0.0;
};

struct RadarResult {
  Table table;
  std::vector<RadarPoint> points;
};

/// Range RMSE against the CRLBs over cfg.radar_snr_db for cfg.scenario.
RadarResult run_radar_rmse(const ExperimentConfig& cfg, Execution ex = Execution::Parallel);

/// Two-target RMSE over cfg.spacing_rmin at cfg.resolution_snr_db.
RadarResult run_resolution(const ExperimentConfig& cfg, Execution ex = Execution::Parallel);

}  // namespace cscim::harness
