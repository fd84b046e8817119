#include "solver/run.hpp"

#include <cmath>
#include <cstdio>

#include "common/error.hpp"
#include "spectral/snapshot.hpp"

namespace electroflow::solver {

std::vector<std::filesystem::path> write_state_snapshots(const State& s, double alpha,
                                                         const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  const std::pair<const char*, const SpectralField*> parts[] = {{"q", &s.q}, {"u1", &s.u[0]}, {"u2", &s.u[1]}};
  for (const auto& [name, f] : parts) {
    auto path = dir / (stem + "_" + name + ".efsnap");
    spectral::write_snapshot(path, *f, s.t, alpha);
    out.push_back(path);
  }
  return out;
}

RunResult run(const State& initial, const ForcingSpec& forcing, const SolverConfig& cfg, const RunOptions& opts) {
  if (!(opts.final_time >= 0.0)) fail(ErrorCode::invalid_argument, "run: T must be >= 0");
  if (opts.sample_every < 1) fail(ErrorCode::invalid_argument, "run: sample_every must be >= 1");
  Solver solver(cfg, forcing);
  if (!(initial.grid() == solver.grid())) fail(ErrorCode::dimension_mismatch, "run: initial state grid differs from config n");

  const double steps_real = opts.final_time / cfg.dt;
  const long long steps = std::llround(steps_real);
  if (std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * std::max(1.0, steps_real)) {
    fail(ErrorCode::invalid_argument, "run: T must be an integer multiple of dt");
  }

  State s = initial;
  solver.apply_galerkin(s);
  RunResult result{{}, s, {}};
  auto snapshot = [&](long long step) {
    if (opts.snapshot_dir.empty()) return;
    char stem[32];
    std::snprintf(stem, sizeof stem, "snap_%08lld", step);
    for (auto& p : write_state_snapshots(s, cfg.alpha, opts.snapshot_dir, stem)) result.snapshots.push_back(p);
  };
  if (steps == 0) {
    snapshot(0);
    return result;
  }

  std::optional<SpectralField> lap_phi;
  if (!forcing.phi_modes.empty()) lap_phi = solver.forcing().laplacian_phi;
  diagnostics::RecordBuilder record(cfg.alpha, cfg.epsilon, lap_phi, opts.gevrey);
  std::vector<bool> snap_done(opts.snapshot_times.size(), false);
  auto maybe_snapshot = [&](long long step) {
    for (std::size_t i = 0; i < opts.snapshot_times.size(); ++i) {
      if (!snap_done[i] && std::abs(s.t - opts.snapshot_times[i]) <= 0.5 * cfg.dt) {
        snap_done[i] = true;
        snapshot(step);
      }
    }
  };
  auto sample = [&]() {
    result.records.push_back(record(s));
    if (opts.observer) opts.observer(s);
  };

  const double t0 = s.t;
  sample();
  maybe_snapshot(0);
  for (long long k = 1; k <= steps; ++k) {
    solver.advance(s);
    s.t = t0 + static_cast<double>(k) * cfg.dt;
    if (k % opts.sample_every == 0 || k == steps) sample();
    maybe_snapshot(k);
  }
  result.final_state = s;
  return result;
}

}  // namespace electroflow::solver
