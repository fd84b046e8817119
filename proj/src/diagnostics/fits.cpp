#include "diagnostics/fits.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "common/error.hpp"

namespace electroflow::diagnostics {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::dimension_mismatch, "fit_line: x and y differ in length");
  if (x.size() < 2) fail(ErrorCode::precondition, "fit_line: need at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) fail(ErrorCode::ill_conditioned, "fit_line: all x values coincide");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

RateFit decay_rate_fit(std::span<const double> t, std::span<const double> y, double t_a, double t_b) {
  if (t.size() != y.size()) fail(ErrorCode::dimension_mismatch, "decay_rate_fit: t and y differ in length");
  std::vector<double> ts, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_a || t[i] > t_b) continue;
    if (!(y[i] > 0.0)) {
      fail(ErrorCode::precondition, "decay_rate_fit: nonpositive sample at t = " + std::to_string(t[i]));
    }
    ts.push_back(t[i]);
    ly.push_back(std::log(y[i]));
  }
  if (ts.size() < 10) fail(ErrorCode::precondition, "decay_rate_fit: fewer than 10 samples in window");
  const LineFit f = fit_line(ts, ly);
  return {-f.slope, std::exp(f.intercept), f.r2, static_cast<int>(ts.size())};
}

LineFit power_law_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) fail(ErrorCode::precondition, "power_law_fit: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_line(lx, ly);
}

}  // namespace electroflow::diagnostics
