#include "cscim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace cscim::fft {
namespace {

// Planning in FFTW is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, direction) under a lock and
// kept for the lifetime of the process.
class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    cvec scratch(static_cast<std::size_t>(n));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

cvec transform(std::span<const cplx> x, int sign) {
  cvec out(x.begin(), x.end());
  if (out.empty()) return out;
  fftw_plan plan = cache().get(static_cast<int>(out.size()), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, buf, buf);
  return out;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

cvec forward(std::span<const cplx> x) { return transform(x, FFTW_FORWARD); }

cvec inverse(std::span<const cplx> x) { return transform(x, FFTW_BACKWARD); }

cvec chirp_z(std::span<const cplx> x, std::size_t count, double start_phase,
             double step_phase) {
  const std::size_t len = x.size();
  if (len == 0 || count == 0) return cvec(count);
  const std::size_t conv = next_pow2(len + count - 1);

  // n·q = (n² + q² − (q − n)²) / 2
  auto half_square_phase = [step_phase](double m) {
    return 0.5 * step_phase * m * m;
  };

  cvec y(conv);
  for (std::size_t n = 0; n < len; ++n) {
    const double nn = static_cast<double>(n);
    y[n] = x[n] * phasor(-start_phase * nn + half_square_phase(nn));
  }
  cvec h(conv);
  for (std::size_t m = 0; m < count; ++m)
    h[m] = phasor(-half_square_phase(static_cast<double>(m)));
  for (std::size_t m = 1; m < len; ++m)
    h[conv - m] = phasor(-half_square_phase(static_cast<double>(m)));

  cvec yf = forward(y);
  const cvec hf = forward(h);
  for (std::size_t i = 0; i < conv; ++i) yf[i] *= hf[i];
  cvec c = inverse(yf);

  cvec out(count);
  const double scale = 1.0 / static_cast<double>(conv);
  for (std::size_t q = 0; q < count; ++q)
    out[q] = c[q] * scale * phasor(half_square_phase(static_cast<double>(q)));
  return out;
}

cvec chirp_z_direct(std::span<const cplx> x, std::size_t count,
                    double start_phase, double step_phase) {
  cvec out(count);
  for (std::size_t q = 0; q < count; ++q) {
    cplx acc{};
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double nn = static_cast<double>(n);
      acc += x[n] * phasor(-start_phase * nn +
                           step_phase * nn * static_cast<double>(q));
    }
    out[q] = acc;
  }
  return out;
}

}  // namespace cscim::fft
