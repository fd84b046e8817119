#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"
#include "solver/state.hpp"

namespace electroflow::solver {

double inner(const FieldPair& a, const FieldPair& b) {
  return spectral::inner(a.q, b.q) + spectral::inner(a.u, b.u);
}

double norm(const FieldPair& a) { return std::sqrt(inner(a, a)); }

Forcing build_forcing(const ForcingSpec& spec, const TorusGrid& grid) {
  Forcing out(grid);
  for (const auto& m : spec.f_modes) {
    const std::string where = "forcing mode (" + std::to_string(m.kx) + "," + std::to_string(m.ky) + ")";
    if (m.kx == 0 && m.ky == 0) fail(ErrorCode::invalid_argument, where + ": k = 0 is excluded (mean-zero)");
    if (!grid.contains(m.kx, m.ky) || !grid.retained(grid.flat(m.kx, m.ky))) {
      fail(ErrorCode::invalid_argument, where + ": outside the dealiased block of n = " + std::to_string(grid.n()));
    }
    const cplx div = static_cast<double>(m.kx) * m.f1 + static_cast<double>(m.ky) * m.f2;
    const double scale = std::max(1.0, std::abs(m.f1) + std::abs(m.f2));
    if (std::abs(div) > 1e-12 * scale * std::hypot(m.kx, m.ky)) {
      fail(ErrorCode::invalid_argument, where + ": not divergence-free (k . f != 0)");
    }
    out.f[0].set_pair(m.kx, m.ky, out.f[0].at(m.kx, m.ky) + m.f1);
    out.f[1].set_pair(m.kx, m.ky, out.f[1].at(m.kx, m.ky) + m.f2);
  }
  for (const auto& m : spec.phi_modes) {
    const std::string where = "potential mode (" + std::to_string(m.kx) + "," + std::to_string(m.ky) + ")";
    if (m.kx == 0 && m.ky == 0) fail(ErrorCode::invalid_argument, where + ": k = 0 is excluded (mean-zero)");
    if (!grid.contains(m.kx, m.ky) || !grid.retained(grid.flat(m.kx, m.ky))) {
      fail(ErrorCode::invalid_argument, where + ": outside the dealiased block of n = " + std::to_string(grid.n()));
    }
    out.phi.set_pair(m.kx, m.ky, out.phi.at(m.kx, m.ky) + m.phi);
  }
  out.laplacian_phi = out.phi;
  auto c = out.laplacian_phi.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= -grid.k2(i);
  return out;
}

const char* scheme_name(Scheme s) noexcept { return s == Scheme::ifrk4 ? "IFRK4" : "IFRK2"; }

std::optional<Scheme> parse_scheme(const std::string& name) {
  if (name == "IFRK2" || name == "ifrk2") return Scheme::ifrk2;
  if (name == "IFRK4" || name == "ifrk4") return Scheme::ifrk4;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorCode::invalid_argument, "alpha must lie in (0, 1]");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::invalid_argument, "dt must be > 0");
  if (n < 8 || n % 2 != 0) fail(ErrorCode::invalid_argument, "n must be an even integer >= 8");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail(ErrorCode::invalid_argument, "epsilon must be >= 0");
  if (galerkin_n && *galerkin_n < 1) fail(ErrorCode::invalid_argument, "galerkin_n must be >= 1");
  if (!(cfl_limit > 0.0)) fail(ErrorCode::invalid_argument, "cfl_limit must be > 0");
  if (reorth_interval < 1) fail(ErrorCode::invalid_argument, "reorth_interval must be >= 1");
}

}  // namespace electroflow::solver
