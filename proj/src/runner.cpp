#include "cscim/runner.hpp"

#include <cstdlib>
#include <string>

namespace cscim::harness {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("CSCIM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t experiment, std::uint64_t point,
                         std::uint64_t trial) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ experiment);
  h = splitmix64(h ^ point);
  return splitmix64(h ^ trial);
}

}  // namespace cscim::harness
