#pragma once

#include <span>

namespace electroflow::diagnostics {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

/// Ordinary least squares y = slope x + intercept. r2 is 1 for a constant y.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct RateFit {
  double rate = 0.0;       // y ~ amplitude e^{-rate t}
  double amplitude = 0.0;
  double r2 = 1.0;
  int samples = 0;
};

/// Log-linear fit of y over t in [t_a, t_b]. Needs >= 10 samples, all > 0.
RateFit decay_rate_fit(std::span<const double> t, std::span<const double> y, double t_a, double t_b);

/// Slope of log y against log x (power-law exponent).
LineFit power_law_fit(std::span<const double> x, std::span<const double> y);

}  // namespace electroflow::diagnostics
