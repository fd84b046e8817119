#pragma once

#include <cstdint>
#include <filesystem>

#include "solver/state.hpp"

namespace electroflow::solver {

/// Random data with amplitude |k|^{-slope} and seeded phases, restricted to
/// the dealiased block; u is Leray-projected. Each part is rescaled to the
/// requested L^2 norm (0 gives an identically zero part).
State random_state(const TorusGrid& grid, double slope, std::uint64_t seed, double q_norm, double u_norm);

/// Coefficients e^{-sigma |k|} with fixed phases, so every Gevrey norm with
/// tau < sigma is finite.
State analytic_state(const TorusGrid& grid, double sigma, double q_norm, double u_norm);

/// q = amplitude * cos(k . x), u = 0.
State single_mode_state(const TorusGrid& grid, int kx, int ky, double amplitude);

/// Reads q, u1, u2 from EFSNAP1 files; the time is taken from q.
State snapshot_state(const std::filesystem::path& q, const std::filesystem::path& u1,
                     const std::filesystem::path& u2, int n);

}  // namespace electroflow::solver
