#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "spectral/torus_grid.hpp"

namespace electroflow::spectral {

using cplx = std::complex<double>;

/// Fourier coefficients f_k of a real, mean-zero field f = sum f_k e^{ik.x}.
///
/// The k = 0 coefficient is held at exactly zero. Hermitian symmetry
/// f_{-k} = conj(f_k) is expected of callers; `hermitian_defect` measures it.
class SpectralField {
 public:
  explicit SpectralField(TorusGrid grid);
  SpectralField(TorusGrid grid, std::vector<cplx> coeffs);

  const TorusGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }

  cplx at(int kx, int ky) const;
  void set(int kx, int ky, cplx value);
  // Sets k and its partner -k to conj(value) so the field stays real.
  void set_pair(int kx, int ky, cplx value);

  // Re-zero the mean after in-place edits of coeffs().
  void clear_mean() noexcept { coeffs_[0] = 0.0; }

  double hermitian_defect() const noexcept;
  double max_abs() const noexcept;
  // sum |f_k|^2, i.e. the mean of f^2 over the torus.
  double energy() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale) noexcept;
  void axpy(double a, const SpectralField& x);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  TorusGrid grid_;
  std::vector<cplx> coeffs_;
};

/// Velocity-like pair (u1, u2) sharing one grid.
class VectorSpectralField {
 public:
  explicit VectorSpectralField(const TorusGrid& grid) : c_{SpectralField(grid), SpectralField(grid)} {}
  VectorSpectralField(SpectralField u1, SpectralField u2);

  const TorusGrid& grid() const noexcept { return c_[0].grid(); }
  SpectralField& operator[](int axis) noexcept { return c_[axis]; }
  const SpectralField& operator[](int axis) const noexcept { return c_[axis]; }

  // max_k |k1 u1(k) + k2 u2(k)|
  double divergence_defect() const noexcept;
  double energy() const noexcept { return c_[0].energy() + c_[1].energy(); }

  VectorSpectralField& operator+=(const VectorSpectralField& other);
  VectorSpectralField& operator-=(const VectorSpectralField& other);
  VectorSpectralField& operator*=(double scale) noexcept;
  void axpy(double a, const VectorSpectralField& x);

 private:
  std::array<SpectralField, 2> c_;
};

/// L^2(T^2) inner product (2pi)^2 sum Re(f_k conj(g_k)).
double inner(const SpectralField& f, const SpectralField& g);
double inner(const VectorSpectralField& f, const VectorSpectralField& g);

/// Zeroes every mode outside the 2/3-rule block; retained modes untouched.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(std::span<cplx> coeffs, const TorusGrid& grid) noexcept;

}  // namespace electroflow::spectral
