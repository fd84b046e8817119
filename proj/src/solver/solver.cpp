#include "solver/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "common/error.hpp"
#include "operators/periodic.hpp"
#include "solver/lawson.hpp"

namespace electroflow::solver {

namespace {

void scale_modes(std::span<cplx> c, const std::vector<double>& factor) {
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= factor[i];
}

}  // namespace

std::vector<bool> galerkin_mask(const TorusGrid& grid, int n_g) {
  if (n_g < 1) fail(ErrorCode::invalid_argument, "galerkin_truncate: n_g must be >= 1");
  std::vector<double> eig;
  eig.reserve(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) eig.push_back(grid.k2(i));
  std::sort(eig.begin(), eig.end());
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(n_g), eig.size());
  const double cutoff = eig[take - 1];
  std::vector<bool> mask(grid.size(), false);
  for (std::size_t i = 1; i < grid.size(); ++i) mask[i] = grid.k2(i) <= cutoff;
  return mask;
}

State galerkin_truncate(const State& s, int n_g) {
  const auto mask = galerkin_mask(s.grid(), n_g);
  State out = s;
  for (SpectralField* f : {&out.q, &out.u[0], &out.u[1]}) {
    auto c = f->coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!mask[i]) c[i] = 0.0;
  }
  return out;
}

Solver::Solver(const SolverConfig& cfg, const ForcingSpec& forcing)
    : cfg_(cfg), grid_((cfg.validate(), cfg.n)), forcing_(build_forcing(forcing, grid_)), fft_(cfg.n) {
  const std::size_t size = grid_.size();
  lq_.resize(size);
  lu_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    lq_[i] = std::pow(grid_.kmag(i), cfg_.alpha) + cfg_.epsilon * grid_.k2(i);
    lu_[i] = grid_.k2(i);
  }
  lq_[0] = lu_[0] = 0.0;
  auto exp_table = [&](const std::vector<double>& l, double h) {
    std::vector<double> e(size);
    for (std::size_t i = 0; i < size; ++i) e[i] = std::exp(-l[i] * h);
    return e;
  };
  eq_full_ = exp_table(lq_, cfg_.dt);
  eq_half_ = exp_table(lq_, 0.5 * cfg_.dt);
  eu_full_ = exp_table(lu_, cfg_.dt);
  eu_half_ = exp_table(lu_, 0.5 * cfg_.dt);

  const auto damp = cfg_.epsilon > 0.0
                        ? ops::multiplier_table(grid_, ops::MultiplierSpec::inverse_lambda_eps(cfg_.epsilon))
                        : std::vector<cplx>();
  for (int axis = 0; axis < 2; ++axis) {
    riesz_[axis] = ops::multiplier_table(grid_, ops::MultiplierSpec::riesz_component(axis));
    if (cfg_.epsilon > 0.0) {
      for (std::size_t i = 0; i < size; ++i) riesz_[axis][i] *= damp[i] * grid_.kmag(i);
    }
  }
  for (int axis = 0; axis < 2; ++axis) to_physical_derivative(forcing_.phi, axis, grad_phi_[axis]);
  if (cfg_.galerkin_n) galerkin_mask_ = galerkin_mask(grid_, *cfg_.galerkin_n);
}

void Solver::to_physical(const SpectralField& f, std::vector<double>& out) {
  out.resize(grid_.size());
  fft_.to_physical(f.coeffs(), out);
}

void Solver::to_physical_derivative(const SpectralField& f, int axis, std::vector<double>& out) {
  scratch_.resize(grid_.size());
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int k = axis == 0 ? grid_.kx(i) : grid_.ky(i);
    scratch_[i] = grid_.nyquist(i) ? cplx(0.0) : cplx(0.0, k) * c[i];
  }
  out.resize(grid_.size());
  fft_.to_physical(scratch_, out);
}

void Solver::to_spectral_dealiased(const std::vector<double>& samples, SpectralField& out) {
  auto c = out.coeffs();
  fft_.to_spectral(samples, c);
  spectral::dealias_in_place(c, grid_);
  out.clear_mean();
}

void Solver::check_cfl(double max_speed) const {
  const double courant = cfg_.dt * max_speed * (grid_.n() / 2);
  if (courant > cfg_.cfl_limit) {
    std::ostringstream msg;
    msg << "CFL guard: dt*max|u|*(n/2) = " << courant << " exceeds " << cfg_.cfl_limit;
    fail(ErrorCode::cfl_violation, msg.str());
  }
}

PhysicalFields Solver::physical(const FieldPair& x) {
  PhysicalFields p;
  to_physical(x.q, p.q);
  to_physical_derivative(x.q, 0, p.qx);
  to_physical_derivative(x.q, 1, p.qy);
  to_physical(x.u[0], p.u1);
  to_physical(x.u[1], p.u2);
  to_physical_derivative(x.u[0], 0, p.u1x);
  to_physical_derivative(x.u[0], 1, p.u1y);
  to_physical_derivative(x.u[1], 0, p.u2x);
  to_physical_derivative(x.u[1], 1, p.u2y);
  scratch_.resize(grid_.size());
  const auto c = x.q.coeffs();
  for (int axis = 0; axis < 2; ++axis) {
    for (std::size_t i = 0; i < c.size(); ++i) scratch_[i] = riesz_[axis][i] * c[i];
    auto& r = axis == 0 ? p.r1 : p.r2;
    r.resize(grid_.size());
    fft_.to_physical(scratch_, r);
  }
  double m2 = 0.0;
  for (std::size_t j = 0; j < p.u1.size(); ++j) m2 = std::max(m2, p.u1[j] * p.u1[j] + p.u2[j] * p.u2[j]);
  p.max_speed = std::sqrt(m2);
  return p;
}

FieldPair Solver::nonlinear_rhs(const FieldPair& x) { return nonlinear_rhs(physical(x)); }

FieldPair Solver::nonlinear_rhs(const PhysicalFields& b) {
  check_cfl(b.max_speed);
  const std::size_t size = grid_.size();
  FieldPair out(grid_);
  work_.resize(size);

  for (std::size_t j = 0; j < size; ++j) work_[j] = -(b.u1[j] * b.qx[j] + b.u2[j] * b.qy[j]);
  to_spectral_dealiased(work_, out.q);
  out.q += forcing_.laplacian_phi;

  const std::vector<double>* rq[2] = {&b.r1, &b.r2};
  for (int a = 0; a < 2; ++a) {
    const auto& ux = a == 0 ? b.u1x : b.u2x;
    const auto& uy = a == 0 ? b.u1y : b.u2y;
    const auto& r = *rq[a];
    const auto& gp = grad_phi_[a];
    for (std::size_t j = 0; j < size; ++j) {
      work_[j] = -(b.u1[j] * ux[j] + b.u2[j] * uy[j]) - b.q[j] * r[j] - b.q[j] * gp[j];
    }
    to_spectral_dealiased(work_, out.u[a]);
    out.u[a] += forcing_.f[a];
  }
  out.u = ops::leray_project(out.u);
  apply_galerkin(out);
  return out;
}

FieldPair Solver::linearized_rhs(const PhysicalFields& b, const FieldPair& dx) {
  const PhysicalFields d = physical(dx);
  const std::size_t size = grid_.size();
  FieldPair out(grid_);
  work_.resize(size);

  for (std::size_t j = 0; j < size; ++j) {
    work_[j] = -(b.u1[j] * d.qx[j] + b.u2[j] * d.qy[j] + d.u1[j] * b.qx[j] + d.u2[j] * b.qy[j]);
  }
  to_spectral_dealiased(work_, out.q);

  for (int a = 0; a < 2; ++a) {
    const auto& bux = a == 0 ? b.u1x : b.u2x;
    const auto& buy = a == 0 ? b.u1y : b.u2y;
    const auto& dux = a == 0 ? d.u1x : d.u2x;
    const auto& duy = a == 0 ? d.u1y : d.u2y;
    const auto& br = a == 0 ? b.r1 : b.r2;
    const auto& dr = a == 0 ? d.r1 : d.r2;
    const auto& gp = grad_phi_[a];
    for (std::size_t j = 0; j < size; ++j) {
      work_[j] = -(b.u1[j] * dux[j] + b.u2[j] * duy[j] + d.u1[j] * bux[j] + d.u2[j] * buy[j]) -
                 (d.q[j] * br[j] + b.q[j] * dr[j]) - d.q[j] * gp[j];
    }
    to_spectral_dealiased(work_, out.u[a]);
  }
  out.u = ops::leray_project(out.u);
  apply_galerkin(out);
  return out;
}

void Solver::apply_linear(FieldPair& x, double h) const {
  const std::vector<double>* eq = nullptr;
  const std::vector<double>* eu = nullptr;
  std::vector<double> tq, tu;
  if (h == cfg_.dt) {
    eq = &eq_full_;
    eu = &eu_full_;
  } else if (h == 0.5 * cfg_.dt) {
    eq = &eq_half_;
    eu = &eu_half_;
  } else {
    tq.resize(grid_.size());
    tu.resize(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      tq[i] = std::exp(-lq_[i] * h);
      tu[i] = std::exp(-lu_[i] * h);
    }
    eq = &tq;
    eu = &tu;
  }
  scale_modes(x.q.coeffs(), *eq);
  scale_modes(x.u[0].coeffs(), *eu);
  scale_modes(x.u[1].coeffs(), *eu);
}

void Solver::apply_galerkin(FieldPair& x) const {
  if (galerkin_mask_.empty()) return;
  for (SpectralField* f : {&x.q, &x.u[0], &x.u[1]}) {
    auto c = f->coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!galerkin_mask_[i]) c[i] = 0.0;
  }
}

double Solver::linear_form(const FieldPair& x) const {
  double s = 0.0;
  const auto q = x.q.coeffs();
  const auto u1 = x.u[0].coeffs();
  const auto u2 = x.u[1].coeffs();
  for (std::size_t i = 0; i < q.size(); ++i) {
    s += lq_[i] * std::norm(q[i]) + lu_[i] * (std::norm(u1[i]) + std::norm(u2[i]));
  }
  return 4.0 * std::numbers::pi * std::numbers::pi * s;
}

State Solver::step(const State& s) {
  State out = s;
  advance(out);
  return out;
}

void Solver::advance(State& s) {
  const double t0 = s.t;
  FieldPair& x = s;
  lawson_step(*this, x, [this](int, const FieldPair& y) { return nonlinear_rhs(y); });
  apply_galerkin(x);
  x.q.clear_mean();
  s.t = t0 + cfg_.dt;
}

}  // namespace electroflow::solver
