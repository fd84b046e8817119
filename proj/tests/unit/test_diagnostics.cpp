#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "common/error.hpp"
#include "diagnostics/absorbing.hpp"
#include "diagnostics/csv.hpp"
#include "diagnostics/eigen_merge.hpp"
#include "diagnostics/fits.hpp"
#include "diagnostics/gevrey.hpp"
#include "diagnostics/gronwall.hpp"
#include "diagnostics/norms.hpp"
#include "diagnostics/trace.hpp"
#include "solver/initial.hpp"

using namespace electroflow;
using namespace electroflow::diagnostics;
using solver::FieldPair;
using spectral::cplx;
using spectral::TorusGrid;

namespace {

constexpr double pi = std::numbers::pi;

SpectralField cos_x(const TorusGrid& g) {
  SpectralField f(g);
  f.set_pair(1, 0, 0.5);
  return f;
}

double one_d_power(int p) {
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  return gk.integrate([p](double x) { return std::pow(std::cos(x), p); }, 0.0, 2.0 * pi, 10, 1e-15);
}

}  // namespace

TEST_CASE("L^p norms of cos x") {
  const TorusGrid g(32);
  const auto f = cos_x(g);
  CHECK(lp_norm(f, 2) == doctest::Approx(std::sqrt(2.0) * pi).epsilon(1e-14));
  // int_{T^2} cos^4 x = 2 pi * 3 pi / 4
  CHECK(lp_norm(f, 4) == doctest::Approx(std::pow(1.5 * pi * pi, 0.25)).epsilon(1e-13));
  CHECK(lp_norm(f, 4) == doctest::Approx(1.9615).epsilon(1e-4));
  for (int p : {4, 6, 8})
    CHECK(lp_norm(f, p) == doctest::Approx(std::pow(2.0 * pi * one_d_power(p), 1.0 / p)).epsilon(1e-12));
}

TEST_CASE("L^p norms of a random field agree with fine-grid quadrature") {
  const TorusGrid g(16);
  const auto s = solver::random_state(g, 1.0, 3, 1.0, 0.0);
  const auto fine = spectral::inverse_transform_padded(s.q, 8);
  const double cell = (2.0 * pi / 128.0) * (2.0 * pi / 128.0);
  for (int p : {4, 8}) {
    double sum = 0.0;
    for (double v : fine) sum += std::pow(v, p);
    CHECK(lp_norm(s.q, p) == doctest::Approx(std::pow(sum * cell, 1.0 / p)).epsilon(1e-12));
  }
}

TEST_CASE("Sobolev norms weight by |k|^{2s}") {
  const TorusGrid g(32);
  SpectralField f(g);
  f.set_pair(3, 4, 0.5);
  const double l2 = lp_norm(f, 2);
  CHECK(sobolev_norm(f, 1.0) == doctest::Approx(5.0 * l2).epsilon(1e-14));
  CHECK(sobolev_norm(f, 0.5) == doctest::Approx(std::sqrt(5.0) * l2).epsilon(1e-14));
  VectorSpectralField u(g);
  u[0].set_pair(0, 2, 0.5);
  CHECK(sobolev_norm(u, 2.0) == doctest::Approx(4.0 * std::sqrt(2.0) * pi).epsilon(1e-14));
}

TEST_CASE("energy residual of exact linear decay is second order in the sample spacing") {
  const TorusGrid g(16);
  const double lambda = std::sqrt(5.0);
  const solver::State a = solver::single_mode_state(g, 2, 1, 1.0);
  const double a2 = std::pow(lp_norm(a.q, 2), 2);
  auto residual = [&](double h) {
    RecordBuilder build(1.0, 0.0, std::nullopt, false);
    solver::State b = a;
    b.q *= std::exp(-lambda * h);
    b.t = h;
    build(a);
    return build(b).energy_residual;
  };
  // |q|^2 = a2 e^{-2 lambda t}, D = 2 lambda |q|^2: the trapezoid defect in closed form.
  auto exact = [&](double h) {
    const double e = std::exp(-2.0 * lambda * h);
    return a2 * ((e - 1.0) / h + lambda * (1.0 + e));
  };
  const double r1 = residual(0.004), r2 = residual(0.002);
  CHECK(r1 == doctest::Approx(exact(0.004)).epsilon(1e-7));
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.01));
  RecordBuilder fresh(1.0, 0.0);
  CHECK(std::isnan(fresh(solver::single_mode_state(g, 1, 1, 1.0)).energy_residual));
}

TEST_CASE("line and rate fits") {
  std::vector<double> x, y, t, e;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i);
    y.push_back(3.0 * i - 2.0);
    t.push_back(0.1 * i);
    e.push_back(5.0 * std::exp(-2.5 * 0.1 * i));
  }
  const auto l = fit_line(x, y);
  CHECK(l.slope == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(l.intercept == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(l.r2 == doctest::Approx(1.0));
  CHECK(fit_line(x, std::vector<double>(20, 4.0)).r2 == 1.0);
  const auto r = decay_rate_fit(t, e, 0.0, 2.0);
  CHECK(r.rate == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(r.amplitude == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r.samples == 20);
  CHECK_THROWS_AS(decay_rate_fit(t, e, 0.0, 0.5), Error);
  e[3] = -1.0;
  CHECK_THROWS_AS(decay_rate_fit(t, e, 0.0, 2.0), Error);
  const std::vector<double> n{4, 8, 16, 32}, v{2.0 * 8, 2.0 * 22.627416997969522, 2.0 * 64, 2.0 * 181.01933598375618};
  CHECK(power_law_fit(n, v).slope == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("Gevrey radius is recovered from a constructed spectrum") {
  const TorusGrid g(64);
  for (double alpha : {0.5, 1.0})
    for (double tau : {0.5, 2.0}) {
      SpectralField f(g);
      for (std::size_t i = 1; i < g.size(); ++i)
        if (g.retained(i)) f.coeffs()[i] = std::exp(-tau * std::pow(g.kmag(i), alpha / 2.0));
      CHECK(gevrey_radius_fit(f, alpha) == doctest::Approx(tau).epsilon(1e-10));
    }
  SpectralField few(g);
  few.set_pair(1, 0, 1.0);
  few.set_pair(2, 0, 0.5);
  try {
    gevrey_radius_fit(few, 1.0);
    FAIL("expected ill_conditioned");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ill_conditioned);
  }
}

TEST_CASE("Gronwall checker accepts e^{-t} and rejects a violation") {
  GronwallInput in;
  for (int i = 0; i <= 200; ++i) {
    in.t.push_back(0.025 * i);
    in.y.push_back(std::exp(-in.t.back()));
  }
  // y' + y/2 = -y/2 <= 0
  in.c = 0.5;
  in.r = 1.0;
  auto rep = gronwall_verify(in);
  CHECK(rep.hypothesis_ok);
  CHECK(rep.conclusion_ok);
  CHECK(rep.bound == doctest::Approx(2.0));
  CHECK(rep.margin == doctest::Approx(2.0 - std::exp(-1.0)).epsilon(1e-12));

  GronwallInput grow = in;
  for (std::size_t i = 0; i < grow.t.size(); ++i) grow.y[i] = std::exp(grow.t[i]);
  rep = gronwall_verify(grow);
  CHECK(!rep.hypothesis_ok);

  GronwallInput sparse = in;
  sparse.t = {0.0, 1.0, 2.0};
  sparse.y = {1.0, 0.5, 0.25};
  CHECK_THROWS_AS(gronwall_verify(sparse), Error);
}

TEST_CASE("eigenvalue merge on a hand example") {
  const std::vector<double> a{1, 4, 9, 16}, b{2, 4, 10};
  const auto rep = eigen_merge_bound(a, b, 1.0, 2.0, 2.0, 1.0, {1, 2, 4});
  CHECK(rep.mu == std::vector<double>{1, 2, 4, 4, 9, 10, 16});
  CHECK(rep.partial_sums[3] == 11.0);
  CHECK(rep.c == doctest::Approx(1.0 / 4.0));
  CHECK(rep.beta == 1.0);
  CHECK(rep.all_bounds_hold);
  CHECK_THROWS_AS(eigen_merge_bound({1, 4}, {3, 2}, 1.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(eigen_merge_bound({1, 2}, {}, 1.0, 0.0, 2.0, 1.0), Error);
  CHECK(growth_constant({1, 4, 9}, 2.0) == 1.0);
  CHECK(growth_constant({2, 3, 9}, 1.0) == 1.5);
}

TEST_CASE("lattice eigenvalues count lattice points") {
  CHECK(lattice_eigenvalues(1.0, 2.0).size() == 4);
  CHECK(lattice_eigenvalues(std::sqrt(2.0), 2.0).size() == 8);
  const auto l = lattice_eigenvalues(5.0, 1.0);
  CHECK(l.size() == 80);
  CHECK(std::is_sorted(l.begin(), l.end()));
  CHECK(l.back() == doctest::Approx(5.0));
}

TEST_CASE("trace over a zero base with one q and one u mode at |k| = 1 is 2") {
  const TorusGrid g(16);
  solver::SolverConfig cfg;
  cfg.n = 16;
  cfg.alpha = 0.7;
  solver::Solver sol(cfg);
  solver::TangentState frame;
  FieldPair q(g), u(g);
  q.q.set_pair(1, 0, 1.0 / (2.0 * pi * std::sqrt(2.0)));
  u.u[1].set_pair(1, 0, 1.0 / (2.0 * pi * std::sqrt(2.0)));
  frame.vectors = {q, u};
  CHECK(trace_estimate(sol, FieldPair(g), frame, 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(trace_estimate(sol, FieldPair(g), frame, 0) == 0.0);
}

TEST_CASE("trace over a zero base equals the merged eigenvalue partial sums") {
  const TorusGrid g(32);
  for (double alpha : {0.5, 1.0}) {
    solver::SolverConfig cfg;
    cfg.n = 32;
    cfg.alpha = alpha;
    solver::Solver sol(cfg);
    auto frame = solver::mode_frame(g, 4 * 24);
    std::stable_sort(frame.vectors.begin(), frame.vectors.end(),
                     [&](const FieldPair& a, const FieldPair& b) { return sol.linear_form(a) < sol.linear_form(b); });
    const double radius = 3.0;
    const auto lq = lattice_eigenvalues(radius, alpha), lu = lattice_eigenvalues(radius, 2.0);
    const auto rep = eigen_merge_bound(lq, lu, growth_constant(lq, alpha / 2.0), growth_constant(lu, 1.0),
                                       alpha / 2.0, 1.0, {1});
    const auto terms = trace_terms(sol, FieldPair(g), frame);
    double sum = 0.0;
    for (std::size_t n = 0; n < terms.size() && rep.mu[n] <= std::pow(radius, alpha); ++n) {
      sum += terms[n];
      CHECK(sum == doctest::Approx(rep.partial_sums[n]).epsilon(1e-12));
    }
  }
}

TEST_CASE("trace series records partial sums and averages them") {
  const TorusGrid g(16);
  solver::SolverConfig cfg;
  cfg.n = 16;
  cfg.dt = 0.01;
  solver::Solver sol(cfg);
  auto base = solver::random_state(g, 3.0, 2, 0.5, 0.5);
  auto frame = solver::mode_frame(g, 6);
  const auto series = trace_series(sol, base, frame, 20, 5);
  CHECK(series.t.size() == 4);  // steps 5, 10, 15, 20
  for (const auto& row : series.partial) {
    CHECK(row.size() == 6);
    for (std::size_t i = 1; i < row.size(); ++i) CHECK(std::isfinite(row[i]));
  }
  double mean = 0.0;
  for (std::size_t k = 2; k < series.t.size(); ++k) mean += series.partial[k][3];
  CHECK(series.time_average(4, series.t[2]) == doctest::Approx(mean / 2.0).epsilon(1e-14));
}

TEST_CASE("absorbing-ball report on synthetic runs") {
  std::vector<BallRun> runs;
  for (double size : {1.0, 5.0, 20.0}) {
    BallRun r;
    r.initial_size = size;
    for (int i = 0; i <= 100; ++i) {
      const double t = 0.1 * i;
      r.t.push_back(t);
      r.y.push_back(2.0 + size * std::exp(-t));
    }
    runs.push_back(r);
  }
  const auto rep = absorbing_ball_check(runs, 8.0, 10.0);
  CHECK(rep.band_ratio == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(rep.entry_ordered);
  for (bool p : rep.persists) CHECK(p);
  CHECK(rep.entry_time[0] < rep.entry_time[2]);
  runs.pop_back();
  CHECK_THROWS_AS(absorbing_ball_check(runs, 8.0, 10.0), Error);
}

TEST_CASE("CSV round trip keeps every bit and nan") {
  DiagnosticsRecord r;
  r.t = 0.1;
  r.l2_q = 1.0 / 3.0;
  r.h2_u = 1e-300;
  r.energy_residual = -2.5e-7;
  std::vector<DiagnosticsRecord> recs{r, r};
  recs[1].gevrey_tau_hat = 4.25;
  std::stringstream io;
  write_csv(io, recs);
  CHECK(io.str().substr(0, io.str().find('\n')) == csv_header);
  const auto back = read_csv(io);
  REQUIRE(back.size() == 2);
  CHECK(back[0].l2_q == r.l2_q);
  CHECK(back[0].h2_u == r.h2_u);
  CHECK(std::isnan(back[0].gevrey_tau_hat));
  CHECK(back[1].gevrey_tau_hat == 4.25);
  std::stringstream bad("t,l2_q\n0,1\n");
  CHECK_THROWS_AS(read_csv(bad), Error);
}
