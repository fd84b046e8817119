#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "diagnostics/norms.hpp"
#include "solver/solver.hpp"

namespace electroflow::solver {

struct RunOptions {
  double final_time = 0.0;
  int sample_every = 1;
  std::vector<double> snapshot_times;
  std::filesystem::path snapshot_dir;  // empty: no snapshots
  bool gevrey = true;
  std::function<void(const State&)> observer;  // called at every sample
};

struct RunResult {
  std::vector<diagnostics::DiagnosticsRecord> records;
  State final_state;
  std::vector<std::filesystem::path> snapshots;
};

/// Integrates from `initial` for final_time / dt steps (which must be an
/// integer), sampling the initial state and every sample_every-th step.
/// final_time = 0 produces no records and writes the initial snapshot only.
RunResult run(const State& initial, const ForcingSpec& forcing, const SolverConfig& cfg, const RunOptions& opts);

/// Writes q, u1, u2 as <stem>_q.efsnap, <stem>_u1.efsnap, <stem>_u2.efsnap.
std::vector<std::filesystem::path> write_state_snapshots(const State& s, double alpha,
                                                         const std::filesystem::path& dir, const std::string& stem);

}  // namespace electroflow::solver
