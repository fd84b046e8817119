#include "diagnostics/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "common/error.hpp"
#include "diagnostics/gevrey.hpp"
#include "spectral/fft.hpp"

namespace electroflow::diagnostics {

namespace {

constexpr double area = 4.0 * std::numbers::pi * std::numbers::pi;

double weighted_sum(const SpectralField& f, double s) {
  const auto& grid = f.grid();
  const auto c = f.coeffs();
  double sum = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double w = s == 0.0 ? 1.0 : std::pow(grid.k2(i), s);
    sum += w * std::norm(c[i]);
  }
  return sum;
}

}  // namespace

double lp_norm(const SpectralField& f, int p) {
  if (p < 2 || p % 2 != 0) fail(ErrorCode::invalid_argument, "lp_norm: p must be an even integer >= 2");
  if (p == 2) return std::sqrt(area * f.energy());
  // The trapezoid rule on m points is exact for f^p once m > p * max |k_j|.
  const auto& g = f.grid();
  int kmax = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (f.coeffs()[i] != spectral::cplx(0.0)) kmax = std::max({kmax, std::abs(g.kx(i)), std::abs(g.ky(i))});
  const auto samples = spectral::inverse_transform_padded(f, p * kmax / g.n() + 1);
  double sum = 0.0;
  for (double v : samples) sum += std::pow(std::abs(v), p);
  return std::pow(area * sum / static_cast<double>(samples.size()), 1.0 / p);
}

double sobolev_norm(const SpectralField& f, double s) { return std::sqrt(area * weighted_sum(f, s)); }

double sobolev_norm(const VectorSpectralField& u, double s) {
  return std::sqrt(area * (weighted_sum(u[0], s) + weighted_sum(u[1], s)));
}

RecordBuilder::RecordBuilder(double alpha, double epsilon, std::optional<SpectralField> laplacian_phi, bool gevrey)
    : alpha_(alpha), epsilon_(epsilon), laplacian_phi_(std::move(laplacian_phi)), gevrey_(gevrey) {}

DiagnosticsRecord RecordBuilder::operator()(const State& s) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.l2_q = lp_norm(s.q, 2);
  r.l4_q = lp_norm(s.q, 4);
  r.l8_q = lp_norm(s.q, 8);
  r.h1_q = sobolev_norm(s.q, 1.0);
  r.halpha2_q = sobolev_norm(s.q, 0.5 * alpha_);
  r.l2_u = sobolev_norm(s.u, 0.0);
  r.h1_u = sobolev_norm(s.u, 1.0);
  r.h2_u = sobolev_norm(s.u, 2.0);
  if (gevrey_) {
    try {
      r.gevrey_tau_hat = gevrey_radius_fit(s.q, alpha_);
    } catch (const Error&) {
      r.gevrey_tau_hat = DiagnosticsRecord::nan;
    }
  }
  double d = 2.0 * r.halpha2_q * r.halpha2_q + 2.0 * epsilon_ * r.h1_q * r.h1_q;
  if (laplacian_phi_) d -= 2.0 * spectral::inner(*laplacian_phi_, s.q);
  const double q2 = r.l2_q * r.l2_q;
  if (previous_ && s.t > previous_->t) {
    r.energy_residual = (q2 - previous_->q2) / (s.t - previous_->t) + 0.5 * (previous_->dissipation + d);
  }
  previous_ = Prev{s.t, q2, d};
  return r;
}

}  // namespace electroflow::diagnostics
