#include "operators/periodic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace electroflow::ops {

namespace {

double radial_symbol(const MultiplierSpec& spec, double kmag) {
  using Kind = MultiplierSpec::Kind;
  switch (spec.kind) {
    case Kind::fractional_laplacian:
      return std::pow(kmag, spec.a);
    case Kind::inverse_lambda_eps: {
      const double m = std::erfc(kmag * std::sqrt(spec.a)) / kmag;
      return spec.normalized ? m : m * std::sqrt(std::numbers::pi);
    }
    case Kind::heat:
      return std::exp(-spec.a * kmag * kmag);
    case Kind::gevrey:
      return std::exp(spec.a * std::pow(kmag, spec.b));
    default:
      break;
  }
  fail(ErrorCode::internal, "radial_symbol: not a radial multiplier");
}

void check_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) fail(ErrorCode::invalid_argument, std::string(what) + " must be >= 0");
}

}  // namespace

std::vector<cplx> multiplier_table(const TorusGrid& grid, const MultiplierSpec& spec) {
  using Kind = MultiplierSpec::Kind;
  if (spec.kind == Kind::leray) {
    fail(ErrorCode::invalid_argument, "leray is matrix-valued; use leray_project");
  }
  if (spec.kind == Kind::inverse_lambda_eps) check_nonnegative(spec.a, "eps");
  if (spec.kind == Kind::heat) check_nonnegative(spec.a, "t");
  if (spec.kind == Kind::gevrey) {
    check_nonnegative(spec.a, "tau");
    if (!(spec.b > 0.0)) fail(ErrorCode::invalid_argument, "gevrey exponent s must be > 0");
  }
  if (spec.kind == Kind::riesz_component && spec.axis != 0 && spec.axis != 1) {
    fail(ErrorCode::invalid_argument, "riesz axis must be 0 or 1");
  }
  std::vector<cplx> table(grid.size());
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (spec.kind == Kind::riesz_component) {
      const int k = spec.axis == 0 ? grid.kx(i) : grid.ky(i);
      if (std::abs(k) == grid.n() / 2) continue;
      table[i] = cplx(0.0, k / grid.kmag(i));
    } else {
      table[i] = radial_symbol(spec, grid.kmag(i));
    }
  }
  return table;
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& spec) {
  const auto table = multiplier_table(f.grid(), spec);
  SpectralField out = f;
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= table[i];
  return out;
}

std::shared_ptr<const std::vector<cplx>> MultiplierCache::get(const TorusGrid& grid,
                                                               const MultiplierSpec& spec) {
  const Key key{grid.n(), grid.dealias_fraction(), static_cast<int>(spec.kind),
                spec.a,   spec.b,                  spec.axis,
                spec.normalized};
  std::lock_guard lock(mutex_);
  auto it = tables_.find(key);
  if (it != tables_.end()) return it->second;
  auto table = std::make_shared<const std::vector<cplx>>(multiplier_table(grid, spec));
  tables_.emplace(key, table);
  return table;
}

SpectralField fractional_laplacian(const SpectralField& f, double s) {
  return apply_multiplier(f, MultiplierSpec::fractional_laplacian(s));
}

VectorSpectralField riesz_transform(const SpectralField& f) {
  return {apply_multiplier(f, MultiplierSpec::riesz_component(0)),
          apply_multiplier(f, MultiplierSpec::riesz_component(1))};
}

VectorSpectralField riesz_transform_eps(const SpectralField& f, double eps) {
  if (eps == 0.0) return riesz_transform(f);
  const SpectralField damped = fractional_laplacian(inverse_lambda_eps(f, eps), 1.0);
  return riesz_transform(damped);
}

VectorSpectralField gradient(const SpectralField& f) {
  const TorusGrid& g = f.grid();
  VectorSpectralField out(g);
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(g.kx(i)) != g.n() / 2) out[0].coeffs()[i] = cplx(0.0, g.kx(i)) * c[i];
    if (std::abs(g.ky(i)) != g.n() / 2) out[1].coeffs()[i] = cplx(0.0, g.ky(i)) * c[i];
  }
  return out;
}

SpectralField divergence(const VectorSpectralField& v) {
  const TorusGrid& g = v.grid();
  SpectralField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx d = 0.0;
    if (std::abs(g.kx(i)) != g.n() / 2) d += cplx(0.0, g.kx(i)) * v[0].coeffs()[i];
    if (std::abs(g.ky(i)) != g.n() / 2) d += cplx(0.0, g.ky(i)) * v[1].coeffs()[i];
    out.coeffs()[i] = d;
  }
  out.clear_mean();
  return out;
}

VectorSpectralField leray_project(const VectorSpectralField& v) {
  const TorusGrid& g = v.grid();
  VectorSpectralField out(g);
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (g.nyquist(i)) continue;
    const double kx = g.kx(i), ky = g.ky(i);
    const cplx a = v[0].coeffs()[i], b = v[1].coeffs()[i];
    const cplx kdotv = (kx * a + ky * b) / g.k2(i);
    out[0].coeffs()[i] = a - kx * kdotv;
    out[1].coeffs()[i] = b - ky * kdotv;
  }
  return out;
}

SpectralField inverse_lambda_eps(const SpectralField& f, double eps, bool normalized) {
  return apply_multiplier(f, MultiplierSpec::inverse_lambda_eps(eps, normalized));
}

SpectralField gevrey_weight(const SpectralField& f, double tau, double s) {
  const auto table = multiplier_table(f.grid(), MultiplierSpec::gevrey(tau, s));
  SpectralField out = f;
  auto c = out.coeffs();
  const TorusGrid& g = f.grid();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx{}) continue;
    const cplx w = c[i] * table[i];
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      fail(ErrorCode::overflow, "gevrey_weight: coefficient at k=(" + std::to_string(g.kx(i)) + "," +
                                    std::to_string(g.ky(i)) + ") overflows for tau=" +
                                    std::to_string(tau));
    }
    c[i] = w;
  }
  return out;
}

SpectralField heat(const SpectralField& f, double t) {
  return apply_multiplier(f, MultiplierSpec::heat(t));
}

}  // namespace electroflow::ops
