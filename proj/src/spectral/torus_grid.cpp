#include "spectral/torus_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace electroflow::spectral {

TorusGrid::TorusGrid(int n, double dealias_fraction) : n_(n), dealias_fraction_(dealias_fraction) {
  if (n < 8 || n % 2 != 0) {
    fail(ErrorCode::invalid_argument, "TorusGrid: n must be even and >= 8, got " + std::to_string(n));
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    fail(ErrorCode::invalid_argument, "TorusGrid: dealias_fraction must lie in (0, 1]");
  }
  auto tables = std::make_shared<Tables>();
  const std::size_t total = size();
  tables->kx.resize(total);
  tables->ky.resize(total);
  tables->k2.resize(total);
  tables->kmag.resize(total);
  tables->partner.resize(total);
  tables->nyquist.resize(total);
  tables->retained.resize(total);
  const double cutoff = dealias_cutoff();
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const std::size_t i = static_cast<std::size_t>(ix) * n + iy;
      const int kx = wavenumber(ix);
      const int ky = wavenumber(iy);
      tables->kx[i] = kx;
      tables->ky[i] = ky;
      tables->k2[i] = static_cast<double>(kx * kx + ky * ky);
      tables->kmag[i] = std::sqrt(tables->k2[i]);
      tables->partner[i] = static_cast<std::size_t>((n - ix) % n) * n + (n - iy) % n;
      tables->nyquist[i] = (kx == n / 2 || ky == n / 2);
      tables->retained[i] = std::abs(kx) <= cutoff && std::abs(ky) <= cutoff;
    }
  }
  tables_ = std::move(tables);
}

double TorusGrid::coordinate(int i) const noexcept {
  return 2.0 * std::numbers::pi * i / n_;
}

}  // namespace electroflow::spectral
