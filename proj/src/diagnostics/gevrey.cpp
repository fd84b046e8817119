#include "diagnostics/gevrey.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "common/error.hpp"
#include "diagnostics/fits.hpp"

namespace electroflow::diagnostics {

double gevrey_radius_fit(const spectral::SpectralField& f, double alpha) {
  if (!(alpha > 0.0)) fail(ErrorCode::invalid_argument, "gevrey_radius_fit: alpha must be > 0");
  const auto& grid = f.grid();
  const auto c = f.coeffs();
  struct Shell {
    double amp = 0.0, kmag = 0.0;
  };
  std::map<int, Shell> shells;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double a = std::abs(c[i]);
    auto& s = shells[static_cast<int>(std::floor(grid.kmag(i)))];
    if (a > s.amp) s = {a, grid.kmag(i)};
  }
  std::vector<double> x, y;
  for (const auto& [j, s] : shells) {
    if (s.amp <= 1e-14) continue;
    x.push_back(std::pow(s.kmag, 0.5 * alpha));
    y.push_back(std::log(s.amp));
  }
  if (x.size() < 6) fail(ErrorCode::ill_conditioned, "gevrey_radius_fit: fewer than 6 resolved shells");
  return -fit_line(x, y).slope;
}

}  // namespace electroflow::diagnostics
