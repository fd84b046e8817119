#pragma once

#include <vector>

namespace electroflow::diagnostics {

/// One ensemble member: the series y(t) = ||Lambda q|| + ||A u|| and the
/// H norm of its initial data.
struct BallRun {
  std::vector<double> t, y;
  double initial_size = 0.0;
};

struct AbsorbingBallReport {
  std::vector<double> band;        // sup of y over the fit window, per run
  double rho_hat = 0.0;            // max of band
  double band_ratio = 1.0;         // max band / min band
  std::vector<double> entry_time;  // first t with y <= 1.1 rho_hat
  std::vector<bool> persists;      // y <= 1.1 rho_hat at every later sample
  bool entry_ordered = false;      // nondecreasing in initial size, last > first
};

/// Fails with precondition for fewer than 3 runs.
AbsorbingBallReport absorbing_ball_check(const std::vector<BallRun>& runs, double window_start, double window_end);

}  // namespace electroflow::diagnostics
