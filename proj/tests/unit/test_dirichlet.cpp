#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "common/error.hpp"
#include "dirichlet/cordoba.hpp"
#include "dirichlet/heat_kernel.hpp"
#include "dirichlet/quadratic_form.hpp"
#include "dirichlet/sine_basis.hpp"

using namespace electroflow;
using namespace electroflow::dirichlet;

namespace {

constexpr double pi = std::numbers::pi;

SineField random_field(int m_max, int band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SineField f{SineBasis(m_max)};
  for (int m = 1; m <= band; ++m)
    for (int n = 1; n <= band; ++n) f.set(m, n, normal(rng) / (m * m + n * n));
  return f;
}

SineField w11(int m_max = 16, double c = 1.0) {
  SineField f{SineBasis(m_max)};
  f.set(1, 1, c);
  return f;
}

double max_diff(const SineField& a, const SineField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

}  // namespace

TEST_CASE("sorted modes ascend") {
  const auto modes = SineBasis(12).sorted_modes();
  CHECK(modes.size() == 144);
  CHECK(modes.front().lambda == 2.0);
  for (std::size_t i = 1; i < modes.size(); ++i) CHECK(modes[i - 1].lambda <= modes[i].lambda);
}

TEST_CASE("sampled basis is orthonormal") {
  // Trapezoid on the interior nodes is exact for products of sines of degree < N.
  const int intervals = 32;
  const auto x = trapezoid_nodes(intervals);
  const double h = pi / intervals;
  const SineBasis basis(6);
  double worst = 0.0;
  for (auto a : basis.sorted_modes())
    for (auto b : basis.sorted_modes()) {
      SineField fa{basis}, fb{basis};
      fa.set(a.m, a.n, 1.0);
      fb.set(b.m, b.n, 1.0);
      const auto va = evaluate(fa, x, x), vb = evaluate(fb, x, x);
      const double g = (va.array() * vb.array()).sum() * h * h;
      worst = std::max(worst, std::abs(g - ((a.m == b.m && a.n == b.n) ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-13);
}

TEST_CASE("projection recovers coefficients and reports the tail") {
  const auto f = random_field(8, 8, 2);
  const auto x = trapezoid_nodes(32);
  const auto p = project(evaluate(f, x, x), 32, SineBasis(8));
  CHECK(max_diff(p.field, f) < 1e-13);
  CHECK(p.tail_energy < 1e-25);
  const auto q = project(evaluate(f, x, x), 32, SineBasis(4));
  CHECK(q.tail_energy == doctest::Approx(f.energy() - q.field.energy()).epsilon(1e-12));
}

TEST_CASE("Lambda^s on w_11") {
  const auto f = w11();
  CHECK(lambda_s_apply(f, 1.0).at(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lambda_s_apply(f, 2.0).at(1, 1) == doctest::Approx(2.0).epsilon(1e-15));
  // -Delta w_11 evaluated by central differences.
  const double x = 0.7, y = 1.1, h = 1e-4;
  auto w = [](double a, double b) { return 2.0 / pi * std::sin(a) * std::sin(b); };
  const double lap = (w(x + h, y) + w(x - h, y) + w(x, y + h) + w(x, y - h) - 4.0 * w(x, y)) / (h * h);
  CHECK(-lap == doctest::Approx(2.0 * w(x, y)).epsilon(1e-6));
}

TEST_CASE("Lambda^s and Lambda^-s are inverse") {
  const auto f = random_field(16, 16, 5);
  for (double s : {0.5, 1.0, 1.7}) CHECK(max_diff(lambda_s_apply(lambda_s_apply(f, s), -s), f) < 1e-13);
}

TEST_CASE("Lambda^s by the heat integral agrees with the eigenvalue power") {
  const auto f = random_field(8, 8, 6);
  for (double s : {0.3, 1.0, 1.6}) {
    const auto a = lambda_s_apply(f, s), b = lambda_s_via_heat_integral(f, s);
    CHECK(max_diff(a, b) < 1e-9);
  }
}

TEST_CASE("calibration constant matches a / Gamma(1 - a) with a = s/2") {
  // int_0^inf t^{-1-a}(1 - e^{-t}) dt = Gamma(1 - a) / a for 0 < a < 1.
  for (double s : {0.2, 0.5, 1.0, 1.5, 1.9}) {
    const double a = s / 2.0;
    CHECK(calibration_constant(s) == doctest::Approx(a / boost::math::tgamma(1.0 - a)).epsilon(1e-10));
  }
  CHECK(heat_difference_integral(3.0, 1.0) == doctest::Approx(std::sqrt(3.0) / calibration_constant(1.0)).epsilon(1e-10));
}

TEST_CASE("heat semigroup on the square") {
  const auto f = w11();
  CHECK(heat_semigroup(f, 0.5).at(1, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(max_diff(heat_semigroup(f, 0.0), f) == 0.0);
  const auto r = random_field(16, 16, 8);
  CHECK(max_diff(heat_semigroup(heat_semigroup(r, 0.1), 0.25), heat_semigroup(r, 0.35)) < 1e-13);
}

TEST_CASE("Dirichlet (Lambda^-1)_eps") {
  CHECK(inverse_lambda_eps_dirichlet(w11(), 0.0).at(1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  // int_{0.5}^inf t^{-1/2} e^{-2t} dt / sqrt(pi); substitute t = 0.5 + v / (1 - v).
  const double oracle = gk.integrate(
                            [](double v) {
                              const double t = 0.5 + v / (1.0 - v);
                              return std::exp(-2.0 * t) / std::sqrt(t) / ((1.0 - v) * (1.0 - v));
                            },
                            0.0, 1.0, 15, 1e-14) /
                        std::sqrt(pi);
  const double got = inverse_lambda_eps_dirichlet(w11(), 0.5).at(1, 1);
  CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(got == doctest::Approx(0.111228).epsilon(1e-5));
  const auto r = random_field(16, 16, 9);
  for (double s : {0.0, 0.5, 1.0, 1.5})
    for (double eps : {0.0, 1e-3, 1e-1})
      CHECK(lambda_s_apply(inverse_lambda_eps_dirichlet(r, eps), s).energy() <=
            lambda_s_apply(r, s - 1.0).energy() * (1.0 + 1e-14));
}

TEST_CASE("1D heat kernel: image and eigen-sum branches agree, symmetry, mass") {
  for (double t : {1e-3, 0.05, 0.3, 2.0})
    for (double x : {0.1, 1.0, 2.9})
      for (double y : {0.2, 1.5, 3.0}) {
        double sum = 0.0;
        for (int m = 1; m <= 400; ++m) sum += std::exp(-t * m * m) * std::sin(m * x) * std::sin(m * y);
        sum *= 2.0 / pi;
        CHECK(heat_kernel_1d(x, y, t) == doctest::Approx(sum).epsilon(1e-10).scale(1.0));
        CHECK(heat_kernel_1d(x, y, t) == doctest::Approx(heat_kernel_1d(y, x, t)).epsilon(1e-14));
        CHECK(heat_kernel_1d(x, y, t) >= 0.0);
      }
  // e^{t Delta} 1 equals the integral of the kernel.
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  for (double t : {0.01, 0.4})
    for (double x : {0.05, 1.3}) {
      const double mass = gk.integrate([&](double y) { return heat_kernel_1d(x, y, t); }, 0.0, pi, 15, 1e-13);
      CHECK(heat_of_one_1d(x, t) == doctest::Approx(mass).epsilon(1e-9));
      CHECK(heat_of_one_1d(x, t) <= 1.0);
    }
}

TEST_CASE("2D heat kernel is symmetric and nonnegative; tiny t refused") {
  const auto e = heat_kernel_2d(0.05, {{0.3, 0.4}, {1.5, 1.5}, {2.8, 0.2}, {1.0, 2.0}});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(e.values(i, j) == doctest::Approx(e.values(j, i)).epsilon(1e-13));
      CHECK(e.values(i, j) >= -1e-14);
      CHECK(e.values(i, j) == doctest::Approx(heat_kernel_1d(e.points[i][0], e.points[j][0], 0.05) *
                                              heat_kernel_1d(e.points[i][1], e.points[j][1], 0.05))
                                  .epsilon(1e-10)
                                  .scale(1.0));
    }
  CHECK_THROWS_AS(heat_kernel_2d(1e-5, {{1.0, 1.0}}), Error);
}

TEST_CASE("kernels are nonnegative and K_s obeys the off-diagonal power bound") {
  for (double s : {0.25, 0.5, 0.75}) {
    double c_fit = 0.0;
    for (double x : {0.2, 0.9, 1.6, 2.4, 3.0}) {
      CHECK(kernel_b_1d(x, s, 0.2) >= 0.0);
      for (double y : {0.1, 0.5, 1.55, 2.0, 2.9}) {
        if (x == y) continue;
        const double k = kernel_k_1d(x, y, s, 0.2);
        CHECK(k >= 0.0);
        c_fit = std::max(c_fit, k * std::pow(std::abs(x - y), 1.0 + 2.0 * s));
      }
    }
    CHECK(std::isfinite(c_fit));
    CHECK(c_fit > 0.0);
  }
  CHECK(kernel_b_2d({1.0, 1.0}, 0.5, 0.2) >= 0.0);
  CHECK(kernel_k_2d({1.0, 1.0}, {1.2, 2.0}, 0.5, 0.2) >= 0.0);
}

TEST_CASE("near the diagonal K_s approaches the whole-line fractional kernel") {
  // Far from the boundary and for |x - y| small, K_s ~ c_{1,s} |x - y|^{-1-2s} with
  // c_{1,s} = 4^s Gamma(1/2 + s) / (pi^{1/2} |Gamma(-s)|) / 2.
  const double s = 0.5, r = 1e-3;
  const double whole_line =
      std::pow(4.0, s) * boost::math::tgamma(0.5 + s) / (std::sqrt(pi) * std::abs(boost::math::tgamma(-s))) / 2.0;
  const double k = kernel_k_1d(pi / 2.0, pi / 2.0 + r, s, 0.05);
  CHECK(k * std::pow(r, 1.0 + 2.0 * s) == doctest::Approx(whole_line).epsilon(1e-3));
}

TEST_CASE("quadratic-form identity on 1D eigenfunctions") {
  SineField1d psi{{0.0, 1.0}};
  const double r = quadratic_form_identity_residual(psi, 0.5);
  CHECK(r < 5e-3);
  const QuadratureSpec q;
  CHECK(quadratic_form_terms(psi, 0.5, q.refine()).residual() < quadratic_form_terms(psi, 0.5, q).residual());
  SineField1d zero{{0.0, 0.0}};
  CHECK(quadratic_form_identity_residual(zero, 0.5) == 0.0);
}

TEST_CASE("quadratic-form identity on a mixed 1D field") {
  SineField1d psi{{0.8, -0.3, 0.1}};
  for (double s : {0.25, 0.5, 0.75}) CHECK(quadratic_form_identity_residual(psi, s) < 5e-3);
}

TEST_CASE("coarse 2D quadratic form lands near the identity") {
  const auto t = quadratic_form_terms_2d(w11(8), 0.5, 12);
  CHECK(t.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(t.pair_term > 0.0);
  CHECK(t.boundary_term > 0.0);
  CHECK(t.residual() < 0.25);
}

TEST_CASE("kernel table rows") {
  std::ostringstream out;
  const std::vector<double> xs{0.5, 1.0}, ys{2.0};
  write_kernel_table(out, 0.5, xs, ys);
  std::istringstream in(out.str());
  int rows = 0;
  double x, y, k, b;
  while (in >> x >> y >> k >> b) {
    CHECK(k == doctest::Approx(kernel_k_1d(x, y, 0.5, 0.2)).epsilon(1e-12));
    CHECK(b >= 0.0);
    ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("Cordoba gap weak form") {
  CHECK(cordoba_gap(w11(64), 1.0, 2).min_gap >= -1e-6);
  CHECK(cordoba_gap(SineField{SineBasis(16)}, 1.0, 2).values.cwiseAbs().maxCoeff() == 0.0);
  const auto a = cordoba_gap(w11(64), 1.0, 2), b = cordoba_gap(w11(64, 3.0), 1.0, 2);
  CHECK((b.values - 9.0 * a.values).cwiseAbs().maxCoeff() < 1e-10);
  for (int i = 0; i < 5; ++i) {
    const auto f = random_field(64, 8, 100 + i);
    for (int p : {2, 4})
      for (double s : {0.5, 1.0, 1.5}) CHECK(cordoba_gap(f, s, p).min_gap >= -1e-6);
  }
}

TEST_CASE("band-limit guard") {
  const auto f = random_field(16, 16, 3);
  CHECK(band_limit_loss(f, 4) > 1e-6);
  try {
    cordoba_gap(f, 1.0, 4);
    FAIL("expected band_limit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::band_limit);
  }
  // sin^4 is not a finite sine series; its tail past m = 16 is small, not zero.
  CHECK(band_limit_loss(w11(16), 4) < 1e-6);
  CHECK(band_limit_loss(w11(64), 4) < band_limit_loss(w11(16), 4));
}

TEST_CASE("nonlinear Poincare left side") {
  CHECK(nonlinear_poincare_lhs(w11(32), 1.0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  // int w^4 = (2/pi)^4 (3 pi / 8)^2
  const double l4 = std::pow(2.0 / pi, 4) * std::pow(3.0 * pi / 8.0, 2);
  CHECK(nonlinear_poincare_lhs(w11(32), 1.0, 4) == doctest::Approx(std::sqrt(2.0) * l4).epsilon(1e-13));
  CHECK(nonlinear_poincare_lhs(SineField{SineBasis(16)}, 1.0, 4) == 0.0);
  const auto f = random_field(64, 8, 44);
  for (int p : {2, 4})
    for (double s : {0.5, 1.0}) CHECK(nonlinear_poincare_lhs(f, s, p) > 0.0);
}
