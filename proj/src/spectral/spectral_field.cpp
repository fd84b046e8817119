#include "spectral/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace electroflow::spectral {

namespace {

void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (!(a == b)) fail(ErrorCode::dimension_mismatch, "spectral fields live on different grids");
}

constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;

}  // namespace

SpectralField::SpectralField(TorusGrid grid) : grid_(std::move(grid)), coeffs_(grid_.size()) {}

SpectralField::SpectralField(TorusGrid grid, std::vector<cplx> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    fail(ErrorCode::dimension_mismatch, "SpectralField: expected " + std::to_string(grid_.size()) +
                                            " coefficients, got " + std::to_string(coeffs_.size()));
  }
  coeffs_[0] = 0.0;
}

cplx SpectralField::at(int kx, int ky) const {
  if (!grid_.contains(kx, ky)) return 0.0;
  return coeffs_[grid_.flat(kx, ky)];
}

void SpectralField::set(int kx, int ky, cplx value) {
  if (!grid_.contains(kx, ky)) {
    fail(ErrorCode::invalid_argument,
         "wavenumber (" + std::to_string(kx) + "," + std::to_string(ky) + ") outside grid");
  }
  if (kx == 0 && ky == 0) return;
  coeffs_[grid_.flat(kx, ky)] = value;
}

void SpectralField::set_pair(int kx, int ky, cplx value) {
  if (!grid_.contains(kx, ky)) {
    fail(ErrorCode::invalid_argument,
         "wavenumber (" + std::to_string(kx) + "," + std::to_string(ky) + ") outside grid");
  }
  if (kx == 0 && ky == 0) return;
  const std::size_t i = grid_.flat(kx, ky);
  const std::size_t j = grid_.partner(i);
  if (i == j) {
    coeffs_[i] = value.real();
  } else {
    coeffs_[i] = value;
    coeffs_[j] = std::conj(value);
  }
}

double SpectralField::hermitian_defect() const noexcept {
  double defect = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    defect = std::max(defect, std::abs(coeffs_[i] - std::conj(coeffs_[grid_.partner(i)])));
  }
  return defect;
}

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::energy() const noexcept {
  double e = 0.0;
  for (const cplx& c : coeffs_) e += std::norm(c);
  return e;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) noexcept {
  for (cplx& c : coeffs_) c *= scale;
  return *this;
}

void SpectralField::axpy(double a, const SpectralField& x) {
  require_same_grid(grid_, x.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * x.coeffs_[i];
}

VectorSpectralField::VectorSpectralField(SpectralField u1, SpectralField u2)
    : c_{std::move(u1), std::move(u2)} {
  require_same_grid(c_[0].grid(), c_[1].grid());
}

double VectorSpectralField::divergence_defect() const noexcept {
  const TorusGrid& g = grid();
  double defect = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx div = static_cast<double>(g.kx(i)) * c_[0].coeffs()[i] +
                     static_cast<double>(g.ky(i)) * c_[1].coeffs()[i];
    defect = std::max(defect, std::abs(div));
  }
  return defect;
}

VectorSpectralField& VectorSpectralField::operator+=(const VectorSpectralField& other) {
  c_[0] += other.c_[0];
  c_[1] += other.c_[1];
  return *this;
}

VectorSpectralField& VectorSpectralField::operator-=(const VectorSpectralField& other) {
  c_[0] -= other.c_[0];
  c_[1] -= other.c_[1];
  return *this;
}

VectorSpectralField& VectorSpectralField::operator*=(double scale) noexcept {
  c_[0] *= scale;
  c_[1] *= scale;
  return *this;
}

void VectorSpectralField::axpy(double a, const VectorSpectralField& x) {
  c_[0].axpy(a, x.c_[0]);
  c_[1].axpy(a, x.c_[1]);
}

double inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid());
  double s = 0.0;
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return four_pi_sq * s;
}

double inner(const VectorSpectralField& f, const VectorSpectralField& g) {
  return inner(f[0], g[0]) + inner(f[1], g[1]);
}

void dealias_in_place(std::span<cplx> coeffs, const TorusGrid& grid) noexcept {
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!grid.retained(i)) coeffs[i] = 0.0;
  }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_in_place(out.coeffs(), out.grid());
  return out;
}

}  // namespace electroflow::spectral
