#pragma once

#include <span>

#include "cscim/common.hpp"

namespace cscim::fft {

/// X_k = Σ_n x_n e^{-j2πkn/N}. No scaling.
cvec forward(std::span<const cplx> x);

/// x_n = Σ_k X_k e^{+j2πkn/N}. No scaling (so inverse(forward(x)) = N·x).
cvec inverse(std::span<const cplx> x);

/// Chirp-Z transform evaluated with Bluestein's algorithm:
///   X_q = Σ_{n=0}^{len-1} x_n · A^{-n} · W^{n·q},   q = 0..count-1,
/// with A = e^{j·start_phase} and W = e^{j·step_phase}. Only the unit-circle
/// case is supported, which is all the zoom searches need.
cvec chirp_z(std::span<const cplx> x, std::size_t count, double start_phase,
             double step_phase);

/// Direct O(len·count) evaluation of the same sum. Reference for chirp_z.
cvec chirp_z_direct(std::span<const cplx> x, std::size_t count,
                    double start_phase, double step_phase);

}  // namespace cscim::fft
