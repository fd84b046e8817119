#include "diagnostics/absorbing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "common/error.hpp"

namespace electroflow::diagnostics {

AbsorbingBallReport absorbing_ball_check(const std::vector<BallRun>& runs, double window_start, double window_end) {
  if (runs.size() < 3) fail(ErrorCode::precondition, "absorbing_ball_check: need at least 3 runs");
  AbsorbingBallReport rep;
  for (const auto& r : runs) {
    if (r.t.size() != r.y.size()) fail(ErrorCode::dimension_mismatch, "absorbing_ball_check: t and y differ in length");
    double sup = -1.0;
    for (std::size_t i = 0; i < r.t.size(); ++i)
      if (r.t[i] >= window_start && r.t[i] <= window_end) sup = std::max(sup, r.y[i]);
    if (sup < 0.0) fail(ErrorCode::precondition, "absorbing_ball_check: a run has no samples in the fit window");
    rep.band.push_back(sup);
  }
  rep.rho_hat = *std::max_element(rep.band.begin(), rep.band.end());
  const double lo = *std::min_element(rep.band.begin(), rep.band.end());
  rep.band_ratio = lo > 0.0 ? rep.rho_hat / lo : (rep.rho_hat > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);

  const double radius = 1.1 * rep.rho_hat;
  for (const auto& r : runs) {
    double entry = std::numeric_limits<double>::infinity();
    bool persists = false;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      if (r.y[i] <= radius) {
        entry = r.t[i];
        persists = std::all_of(r.y.begin() + static_cast<std::ptrdiff_t>(i), r.y.end(),
                               [&](double v) { return v <= radius; });
        break;
      }
    }
    rep.entry_time.push_back(entry);
    rep.persists.push_back(persists);
  }

  std::vector<std::size_t> order(runs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return runs[a].initial_size < runs[b].initial_size; });
  rep.entry_ordered = true;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (rep.entry_time[order[i]] < rep.entry_time[order[i - 1]]) rep.entry_ordered = false;
  if (!(rep.entry_time[order.back()] > rep.entry_time[order.front()])) rep.entry_ordered = false;
  return rep;
}

}  // namespace electroflow::diagnostics
