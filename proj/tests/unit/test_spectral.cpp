#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "common/error.hpp"
#include "spectral/fft.hpp"
#include "spectral/snapshot.hpp"

using namespace electroflow;
using namespace electroflow::spectral;

namespace {

constexpr double pi = std::numbers::pi;

SpectralField random_field(const TorusGrid& g, std::uint64_t seed, int band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField f(g);
  for (int kx = -band; kx <= band; ++kx)
    for (int ky = 0; ky <= band; ++ky) {
      if (ky == 0 && kx <= 0) continue;
      f.set_pair(kx, ky, {normal(rng), normal(rng)});
    }
  return f;
}

std::vector<double> samples_of(const TorusGrid& g, auto fn) {
  std::vector<double> s(g.size());
  for (int ix = 0; ix < g.n(); ++ix)
    for (int iy = 0; iy < g.n(); ++iy)
      s[static_cast<std::size_t>(ix) * g.n() + iy] = fn(g.coordinate(ix), g.coordinate(iy));
  return s;
}

}  // namespace

TEST_CASE("cos x has coefficient 1/2 at k = (+-1, 0)") {
  const TorusGrid g(16);
  const auto f = forward_transform(samples_of(g, [](double x, double) { return std::cos(x); }), g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool hit = g.ky(i) == 0 && std::abs(g.kx(i)) == 1;
    CHECK(std::abs(f.coeffs()[i] - cplx(hit ? 0.5 : 0.0)) < 1e-15);
  }
}

TEST_CASE("constant samples transform to the zero field") {
  const TorusGrid g(8);
  const auto f = forward_transform(std::vector<double>(g.size(), 5.0), g);
  CHECK(f.max_abs() == 0.0);
}

TEST_CASE("inverse of +-1/2 at (1, 0) is cos x, zero field is zero") {
  const TorusGrid g(16);
  SpectralField f(g);
  f.set_pair(1, 0, 0.5);
  const auto s = inverse_transform(f);
  for (int ix = 0; ix < g.n(); ++ix)
    for (int iy = 0; iy < g.n(); ++iy)
      CHECK(s[static_cast<std::size_t>(ix) * g.n() + iy] == doctest::Approx(std::cos(g.coordinate(ix))).epsilon(1e-14));
  for (double v : inverse_transform(SpectralField(g))) CHECK(v == 0.0);
}

TEST_CASE("inverse transform matches direct trigonometric summation") {
  const TorusGrid g(16);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(-7, 7);
  std::normal_distribution<double> normal;
  SpectralField f(g);
  for (int m = 0; m < 3; ++m) {
    int kx = pick(rng), ky = pick(rng);
    if (kx == 0 && ky == 0) ky = 1;
    f.set_pair(kx, ky, {normal(rng), normal(rng)});
  }
  const auto s = inverse_transform(f);
  double worst = 0.0;
  for (int ix = 0; ix < g.n(); ++ix)
    for (int iy = 0; iy < g.n(); ++iy) {
      const double x = g.coordinate(ix), y = g.coordinate(iy);
      cplx sum = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
        sum += f.coeffs()[i] * std::exp(cplx(0.0, g.kx(i) * x + g.ky(i) * y));
      worst = std::max(worst, std::abs(sum.real() - s[static_cast<std::size_t>(ix) * g.n() + iy]));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("round trip removes the mean only") {
  const TorusGrid g(32);
  const auto s = samples_of(g, [](double x, double y) {
    return 2.0 + std::exp(std::sin(x)) * std::cos(2.0 * y) + 0.3 * std::sin(x + 3.0 * y);
  });
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  const auto back = inverse_transform(forward_transform(s, g));
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(back[i] - (s[i] - mean)));
  CHECK(worst < 1e-12);
}

TEST_CASE("Parseval against grid quadrature") {
  const TorusGrid g(32);
  const auto f = random_field(g, 11, 10);
  const auto s = inverse_transform(f);
  double quad = 0.0;
  for (double v : s) quad += v * v;
  quad *= (2.0 * pi / g.n()) * (2.0 * pi / g.n());
  CHECK(f.energy() == doctest::Approx(quad / (4.0 * pi * pi)).epsilon(1e-10));
  CHECK(inner(f, f) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("Hermitian defect above tolerance is a symmetry violation") {
  const TorusGrid g(8);
  SpectralField f(g);
  f.set(1, 0, cplx(0.0, 1.0));
  CHECK(f.hermitian_defect() > 0.5);
  try {
    inverse_transform(f);
    FAIL("expected symmetry_violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::symmetry_violation);
  }
}

TEST_CASE("dealias threshold on n = 16") {
  const TorusGrid g(16);
  SpectralField f(g);
  f.set_pair(6, 0, 1.0);
  f.set_pair(5, 0, 1.0);
  f.set_pair(5, 5, 1.0);
  const auto d = dealias(f);
  CHECK(d.at(6, 0) == cplx(0.0));
  CHECK(d.at(5, 0) == cplx(1.0));
  CHECK(d.at(5, 5) == cplx(1.0));
}

TEST_CASE("dealias is idempotent and never adds energy") {
  const TorusGrid g(24);
  const auto f = random_field(g, 5, 11);
  const auto once = dealias(f);
  const auto twice = dealias(once);
  CHECK(once.energy() <= f.energy());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(once.coeffs()[i] == twice.coeffs()[i]);
    if (g.retained(i)) CHECK(once.coeffs()[i] == f.coeffs()[i]);
  }
}

TEST_CASE("padded inverse agrees with the native grid on shared points") {
  const TorusGrid g(16);
  const auto f = random_field(g, 9, 5);
  const auto s = inverse_transform(f);
  const auto p = inverse_transform_padded(f, 2);
  for (int ix = 0; ix < g.n(); ++ix)
    for (int iy = 0; iy < g.n(); ++iy)
      CHECK(p[static_cast<std::size_t>(2 * ix) * (2 * g.n()) + 2 * iy] ==
            doctest::Approx(s[static_cast<std::size_t>(ix) * g.n() + iy]).epsilon(1e-12));
}

TEST_CASE("snapshot text round trip is exact") {
  const TorusGrid g(16);
  const auto f = random_field(g, 21, 7);
  std::stringstream io;
  write_snapshot(io, f, 0.125, 0.75);
  const auto header = io.str().substr(0, io.str().find('\n'));
  CHECK(header == "EFSNAP1 16 0.125 0.75");
  const auto snap = read_snapshot(io);
  CHECK(snap.t == 0.125);
  CHECK(snap.alpha == 0.75);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(snap.field.coeffs()[i] == f.coeffs()[i]);
}

TEST_CASE("malformed snapshots are io errors") {
  std::stringstream bad("EFSNAP2 16 0 1\n");
  CHECK_THROWS_AS(read_snapshot(bad), Error);
  std::stringstream out_of_range("EFSNAP1 8 0 1\n9 0 1 0\n");
  CHECK_THROWS_AS(read_snapshot(out_of_range), Error);
}
