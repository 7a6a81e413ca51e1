#pragma once

#include <omp.h>

#include <cstdint>
#include <vector>

#include "cscim/common.hpp"

namespace cscim::harness {

enum class Execution { Serial, Parallel };

/// Worker threads for Parallel execution: $CSCIM_THREADS if set and positive,
/// otherwise the OpenMP default.
int worker_count();

/// Seed of one trial's private stream, a splitmix64 chain over its coordinates.
/// The same coordinates give the same stream whatever the thread count.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t experiment, std::uint64_t point,
                         std::uint64_t trial);

inline Rng trial_rng(std::uint64_t master, std::uint64_t experiment, std::uint64_t point,
                     std::uint64_t trial) {
  return Rng(trial_seed(master, experiment, point, trial));
}

/// Evaluates fn(t) for t = first .. first+count−1 and returns the results in
/// trial order. fn must depend only on its argument.
template <class Result, class Fn>
std::vector<Result> run_trials(std::int64_t first, std::int64_t count, Fn&& fn, Execution ex) {
  std::vector<Result> out(static_cast<std::size_t>(count));
  if (ex == Execution::Serial) {
    for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(first + i);
    return out;
  }
#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_count())
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(first + i);
  return out;
}

}  // namespace cscim::harness
