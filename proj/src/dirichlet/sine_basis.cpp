#include "dirichlet/sine_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"
#include "dirichlet/heat_kernel.hpp"

namespace electroflow::dirichlet {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::MatrixXd sine_table(int m_max, std::span<const double> xs) {
  Eigen::MatrixXd s(static_cast<Eigen::Index>(xs.size()), m_max);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int m = 1; m <= m_max; ++m) s(static_cast<Eigen::Index>(i), m - 1) = std::sin(m * xs[i]);
  }
  return s;
}

}  // namespace

SineBasis::SineBasis(int m_max) : m_max_(m_max) {
  if (m_max < 1) fail(ErrorCode::invalid_argument, "SineBasis: m_max must be >= 1");
}

std::vector<SineBasis::Mode> SineBasis::sorted_modes() const {
  std::vector<Mode> modes;
  modes.reserve(size());
  for (int m = 1; m <= m_max_; ++m) {
    for (int n = 1; n <= m_max_; ++n) modes.push_back({m, n, eigenvalue(m, n)});
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) { return a.lambda < b.lambda; });
  return modes;
}

SineField::SineField(SineBasis basis, std::vector<double> coeffs)
    : basis_(basis), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_.size()) {
    fail(ErrorCode::dimension_mismatch, "SineField: expected " + std::to_string(basis_.size()) +
                                            " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) fail(ErrorCode::invalid_argument, "SineField: non-finite coefficient");
  }
}

double SineField::energy() const noexcept {
  double e = 0.0;
  for (double c : coeffs_) e += c * c;
  return e;
}

double SineField::lambda_norm_sq(double s) const noexcept {
  double e = 0.0;
  for (int m = 1; m <= basis_.m_max(); ++m) {
    for (int n = 1; n <= basis_.m_max(); ++n) {
      const double c = at(m, n);
      if (c != 0.0) e += std::pow(SineBasis::eigenvalue(m, n), s) * c * c;
    }
  }
  return e;
}

int SineField::band_limit() const noexcept {
  int b = 0;
  for (int m = 1; m <= basis_.m_max(); ++m) {
    for (int n = 1; n <= basis_.m_max(); ++n) {
      if (at(m, n) != 0.0) b = std::max({b, m, n});
    }
  }
  return b;
}

namespace {

template <class Symbol>
SineField map_coeffs(const SineField& f, Symbol symbol) {
  SineField out = f;
  const int mm = f.basis().m_max();
  for (int m = 1; m <= mm; ++m) {
    for (int n = 1; n <= mm; ++n) {
      const double c = f.at(m, n);
      if (c != 0.0) out.set(m, n, symbol(SineBasis::eigenvalue(m, n)) * c);
    }
  }
  return out;
}

}  // namespace

SineField lambda_s_apply(const SineField& f, double s) {
  return map_coeffs(f, [s](double lambda) { return std::pow(lambda, 0.5 * s); });
}

SineField heat_semigroup(const SineField& f, double t) {
  if (!(t >= 0.0)) fail(ErrorCode::invalid_argument, "heat_semigroup: t must be >= 0");
  return map_coeffs(f, [t](double lambda) { return std::exp(-t * lambda); });
}

SineField inverse_lambda_eps_dirichlet(const SineField& f, double eps, bool normalized) {
  if (!(eps >= 0.0)) fail(ErrorCode::invalid_argument, "inverse_lambda_eps_dirichlet: eps must be >= 0");
  const double norm = normalized ? 1.0 : std::sqrt(pi);
  return map_coeffs(f, [eps, norm](double lambda) {
    return norm * std::erfc(std::sqrt(eps * lambda)) / std::sqrt(lambda);
  });
}

SineField lambda_s_via_heat_integral(const SineField& f, double s) {
  if (!(s > 0.0 && s < 2.0)) {
    fail(ErrorCode::invalid_argument, "lambda_s_via_heat_integral: s must lie in (0, 2)");
  }
  const double c = calibration_constant(s);
  return map_coeffs(f, [c, s](double lambda) {
    return c * heat_difference_integral(lambda, s);
  });
}

Eigen::MatrixXd evaluate(const SineField& f, std::span<const double> xs, std::span<const double> ys) {
  const int mm = f.basis().m_max();
  Eigen::MatrixXd c(mm, mm);
  for (int m = 1; m <= mm; ++m) {
    for (int n = 1; n <= mm; ++n) c(m - 1, n - 1) = f.at(m, n);
  }
  const Eigen::MatrixXd sx = sine_table(mm, xs);
  const Eigen::MatrixXd sy = sine_table(mm, ys);
  return (2.0 / pi) * (sx * c * sy.transpose());
}

std::vector<double> trapezoid_nodes(int intervals) {
  std::vector<double> x;
  for (int i = 1; i < intervals; ++i) x.push_back(i * pi / intervals);
  return x;
}

std::vector<double> midpoint_nodes(int cells) {
  std::vector<double> x;
  for (int i = 0; i < cells; ++i) x.push_back((i + 0.5) * pi / cells);
  return x;
}

Projection project(const Eigen::MatrixXd& samples, int intervals, const SineBasis& basis) {
  const auto nodes = trapezoid_nodes(intervals);
  const auto npts = static_cast<Eigen::Index>(nodes.size());
  if (samples.rows() != npts || samples.cols() != npts) {
    fail(ErrorCode::dimension_mismatch, "project: samples must be (intervals-1)^2");
  }
  if (basis.m_max() >= intervals) {
    fail(ErrorCode::invalid_argument, "project: m_max must be below the number of intervals");
  }
  const int full = intervals - 1;
  const Eigen::MatrixXd s = sine_table(full, nodes);
  const double h = pi / intervals;
  // Orthonormal coefficients: c_mn = h^2 (2/pi) sum g sin(m x) sin(n y).
  const Eigen::MatrixXd c = (h * h * 2.0 / pi) * (s.transpose() * samples * s);
  Projection out{SineField(basis)};
  for (int m = 0; m < full; ++m) {
    for (int n = 0; n < full; ++n) {
      const double v = c(m, n);
      out.total_energy += v * v;
      if (m < basis.m_max() && n < basis.m_max()) {
        out.field.set(m + 1, n + 1, v);
      } else {
        out.tail_energy += v * v;
      }
    }
  }
  return out;
}

}  // namespace electroflow::dirichlet
