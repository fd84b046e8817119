#pragma once

#include <span>
#include <vector>

#include "spectral/spectral_field.hpp"

namespace electroflow::spectral {

/// Reusable 2D complex FFT workspace for one grid size.
///
/// Plans come from a process-wide cache (plan creation is serialized);
/// execution uses this engine's private buffers, so one engine must not be
/// shared between threads while distinct engines may run concurrently.
class FftEngine {
 public:
  explicit FftEngine(int n);

  int n() const noexcept { return n_; }

  // samples(x) = sum_k coeffs_k e^{ik.x}; imaginary residue dropped.
  void to_physical(std::span<const cplx> coeffs, std::span<double> samples);
  // coeffs_k = n^{-2} sum_x samples(x) e^{-ik.x}; mean kept as coeffs[0].
  void to_spectral(std::span<const double> samples, std::span<cplx> coeffs);

  // Largest |imag| seen in the most recent to_physical call.
  double last_imaginary_residue() const noexcept { return last_imag_; }

 private:
  int n_;
  void* forward_;
  void* backward_;
  std::vector<cplx> in_;
  std::vector<cplx> out_;
  double last_imag_ = 0.0;
};

/// Grid samples -> mean-zero spectral field. samples[ix * n + iy] = f(2pi ix/n, 2pi iy/n).
SpectralField forward_transform(std::span<const double> samples, const TorusGrid& grid);

/// Spectral field -> grid samples. Fails with symmetry_violation when the
/// imaginary residue exceeds 1e-12 of the field magnitude (sum of |f_k|).
std::vector<double> inverse_transform(const SpectralField& f);

/// Samples of f on a (factor * n)^2 grid by zero padding; used for
/// pointwise powers that would alias on the native grid.
std::vector<double> inverse_transform_padded(const SpectralField& f, int factor);

}  // namespace electroflow::spectral
