#include "solver/initial.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "common/error.hpp"
#include "operators/periodic.hpp"
#include "spectral/snapshot.hpp"

namespace electroflow::solver {

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class Amplitude, class Phase>
SpectralField fill(const TorusGrid& grid, Amplitude amp, Phase phase) {
  SpectralField f(grid);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const std::size_t j = grid.partner(i);
    if (j <= i || !grid.retained(i)) continue;
    f.set_pair(grid.kx(i), grid.ky(i), std::polar(amp(i), phase(i)));
  }
  return f;
}

void rescale(SpectralField& f, double target) {
  const double now = std::sqrt(spectral::inner(f, f));
  if (target == 0.0 || now == 0.0) {
    f *= 0.0;
    return;
  }
  f *= target / now;
}

void rescale(VectorSpectralField& u, double target) {
  const double now = std::sqrt(spectral::inner(u, u));
  if (target == 0.0 || now == 0.0) {
    u *= 0.0;
    return;
  }
  u *= target / now;
}

void check_norms(double q_norm, double u_norm) {
  if (!(q_norm >= 0.0) || !(u_norm >= 0.0)) fail(ErrorCode::invalid_argument, "initial norms must be >= 0");
}

}  // namespace

State random_state(const TorusGrid& grid, double slope, std::uint64_t seed, double q_norm, double u_norm) {
  check_norms(q_norm, u_norm);
  std::mt19937_64 rng(seed);
  auto amp = [&](std::size_t i) { return std::pow(grid.kmag(i), -slope); };
  auto phase = [&](std::size_t) { return 2.0 * std::numbers::pi * unit_uniform(rng); };
  State s(grid);
  s.q = fill(grid, amp, phase);
  VectorSpectralField u(fill(grid, amp, phase), fill(grid, amp, phase));
  s.u = ops::leray_project(u);
  rescale(s.q, q_norm);
  rescale(s.u, u_norm);
  return s;
}

State analytic_state(const TorusGrid& grid, double sigma, double q_norm, double u_norm) {
  check_norms(q_norm, u_norm);
  if (!(sigma > 0.0)) fail(ErrorCode::invalid_argument, "analytic initial data needs sigma > 0");
  auto amp = [&](std::size_t i) { return std::exp(-sigma * grid.kmag(i)); };
  State s(grid);
  s.q = fill(grid, amp, [&](std::size_t i) { return 0.7 * grid.kx(i) + 1.3 * grid.ky(i); });
  VectorSpectralField u(fill(grid, amp, [&](std::size_t i) { return 0.3 * grid.kx(i) - 1.1 * grid.ky(i); }),
                        fill(grid, amp, [&](std::size_t i) { return -0.9 * grid.kx(i) + 0.5 * grid.ky(i); }));
  s.u = ops::leray_project(u);
  rescale(s.q, q_norm);
  rescale(s.u, u_norm);
  return s;
}

State single_mode_state(const TorusGrid& grid, int kx, int ky, double amplitude) {
  if ((kx == 0 && ky == 0) || !grid.contains(kx, ky)) {
    fail(ErrorCode::invalid_argument, "single_mode: wavenumber must be nonzero and on the grid");
  }
  State s(grid);
  s.q.set_pair(kx, ky, 0.5 * amplitude);
  return s;
}

State snapshot_state(const std::filesystem::path& q, const std::filesystem::path& u1,
                     const std::filesystem::path& u2, int n) {
  auto sq = spectral::read_snapshot(q);
  auto s1 = spectral::read_snapshot(u1);
  auto s2 = spectral::read_snapshot(u2);
  for (const auto* s : {&sq, &s1, &s2}) {
    if (s->field.grid().n() != n) fail(ErrorCode::dimension_mismatch, "snapshot grid size differs from config n");
  }
  State st(sq.field, VectorSpectralField(s1.field, s2.field), sq.t);
  if (st.u.divergence_defect() > 1e-10 * std::max(1.0, std::sqrt(st.u.energy()))) {
    fail(ErrorCode::invalid_argument, "snapshot velocity is not divergence-free");
  }
  return st;
}

}  // namespace electroflow::solver
