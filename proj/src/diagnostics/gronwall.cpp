#include "diagnostics/gronwall.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace electroflow::diagnostics {

GronwallReport gronwall_verify(const GronwallInput& in) {
  const std::size_t m = in.t.size();
  if (in.y.size() != m || (!in.f1.empty() && in.f1.size() != m) || (!in.f2.empty() && in.f2.size() != m)) {
    fail(ErrorCode::dimension_mismatch, "gronwall_verify: series lengths differ");
  }
  if (m < 3) fail(ErrorCode::precondition, "gronwall_verify: need at least 3 samples");
  if (!(in.c > 0.0) || in.c1 < 0.0 || in.c2 < 0.0 || in.c3 < 0.0 || in.n < 0) {
    fail(ErrorCode::invalid_argument, "gronwall_verify: need c > 0 and C1, C2, C3, n >= 0");
  }
  const double h = (in.t.back() - in.t.front()) / static_cast<double>(m - 1);
  for (std::size_t i = 1; i < m; ++i) {
    if (std::abs(in.t[i] - in.t[i - 1] - h) > 1e-9 * std::max(1.0, h)) {
      fail(ErrorCode::precondition, "gronwall_verify: time grid is not uniform");
    }
  }
  if (!(h > 0.0) || 1.0 / h < 20.0 - 1e-9) {
    fail(ErrorCode::precondition, "gronwall_verify: fewer than 20 points per unit time");
  }
  if (in.t0 < in.t.front() - 1e-12 || in.t0 > in.t.back()) {
    fail(ErrorCode::precondition, "gronwall_verify: t0 outside the series");
  }
  auto f1 = [&](std::size_t i) { return in.f1.empty() ? 0.0 : in.f1[i]; };
  auto f2 = [&](std::size_t i) { return in.f2.empty() ? 0.0 : in.f2[i]; };
  auto ypow = [&](std::size_t i, int k) {
    if (k < 0 && in.y[i] <= 0.0) fail(ErrorCode::precondition, "gronwall_verify: y^(n-1) undefined for y <= 0");
    return std::pow(in.y[i], k);
  };

  GronwallReport rep;
  rep.hypothesis_ok = true;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (in.t[i] < in.t0) continue;
    const double dy = (in.y[i + 1] - in.y[i - 1]) / (2.0 * h);
    const double rhs = in.c1 + in.c2 * f1(i) + (in.c3 == 0.0 ? 0.0 : in.c3 * f2(i) * ypow(i, in.n));
    const double res = dy + in.c * in.y[i] - rhs;
    rep.max_inequality_residual = std::max(rep.max_inequality_residual, res);
    const double scale = 1.0 + std::abs(dy) + std::abs(in.c * in.y[i]) + std::abs(rhs);
    if (res > in.tolerance * scale) rep.hypothesis_ok = false;
  }

  std::vector<double> g(m);
  for (std::size_t i = 0; i < m; ++i) {
    g[i] = f1(i) + in.y[i] + (f2(i) == 0.0 ? 0.0 : f2(i) * ypow(i, in.n - 1));
  }
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / h));
  for (std::size_t i = 0; i + steps < m; ++i) {
    if (in.t[i] < in.t0 - 1e-12) continue;
    double integral = 0.0;
    for (std::size_t j = i; j < i + steps; ++j) integral += 0.5 * h * (g[j] + g[j + 1]);
    rep.max_window_integral = std::max(rep.max_window_integral, integral);
  }
  if (rep.max_window_integral > in.r) rep.hypothesis_ok = false;

  rep.bound = (in.c1 / in.c + 2.0 * in.c2 * in.r + 2.0 * in.r) * std::exp(2.0 * in.c3 * in.r);
  double ymax = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (in.t[i] >= in.t0 + 1.0 - 1e-12) ymax = std::max(ymax, in.y[i]);
  rep.margin = rep.bound - ymax;
  rep.conclusion_ok = rep.margin >= 0.0;
  return rep;
}

}  // namespace electroflow::diagnostics
