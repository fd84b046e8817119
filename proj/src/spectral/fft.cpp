#include "spectral/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "common/error.hpp"

namespace electroflow::spectral {

namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// Plans are never destroyed; there is one pair per grid size in practice.
fftw_plan cached_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard lock(plan_mutex());
  auto it = plans.find({n, sign});
  if (it != plans.end()) return it->second;
  std::vector<cplx> a(static_cast<std::size_t>(n) * n), b(a.size());
  fftw_plan p = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p == nullptr) fail(ErrorCode::internal, "FFTW plan creation failed for n=" + std::to_string(n));
  plans.emplace(std::make_pair(n, sign), p);
  return p;
}

}  // namespace

FftEngine::FftEngine(int n)
    : n_(n),
      forward_(cached_plan(n, FFTW_FORWARD)),
      backward_(cached_plan(n, FFTW_BACKWARD)),
      in_(static_cast<std::size_t>(n) * n),
      out_(in_.size()) {}

void FftEngine::to_physical(std::span<const cplx> coeffs, std::span<double> samples) {
  if (coeffs.size() != in_.size() || samples.size() != in_.size()) {
    fail(ErrorCode::dimension_mismatch, "FftEngine::to_physical: size mismatch");
  }
  std::copy(coeffs.begin(), coeffs.end(), in_.begin());
  fftw_execute_dft(static_cast<fftw_plan>(backward_), reinterpret_cast<fftw_complex*>(in_.data()),
                   reinterpret_cast<fftw_complex*>(out_.data()));
  double imag = 0.0;
  for (std::size_t i = 0; i < out_.size(); ++i) {
    samples[i] = out_[i].real();
    imag = std::max(imag, std::abs(out_[i].imag()));
  }
  last_imag_ = imag;
}

void FftEngine::to_spectral(std::span<const double> samples, std::span<cplx> coeffs) {
  if (coeffs.size() != in_.size() || samples.size() != in_.size()) {
    fail(ErrorCode::dimension_mismatch, "FftEngine::to_spectral: size mismatch");
  }
  for (std::size_t i = 0; i < in_.size(); ++i) in_[i] = samples[i];
  fftw_execute_dft(static_cast<fftw_plan>(forward_), reinterpret_cast<fftw_complex*>(in_.data()),
                   reinterpret_cast<fftw_complex*>(out_.data()));
  const double scale = 1.0 / static_cast<double>(in_.size());
  for (std::size_t i = 0; i < out_.size(); ++i) coeffs[i] = out_[i] * scale;
}

SpectralField forward_transform(std::span<const double> samples, const TorusGrid& grid) {
  if (samples.size() != grid.size()) {
    fail(ErrorCode::dimension_mismatch, "forward_transform: expected " + std::to_string(grid.size()) +
                                            " samples, got " + std::to_string(samples.size()));
  }
  FftEngine engine(grid.n());
  SpectralField f(grid);
  engine.to_spectral(samples, f.coeffs());
  f.clear_mean();
  // Exact Hermitian symmetry; the FFT only delivers it to round-off.
  auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t j = grid.partner(i);
    if (j < i) continue;
    if (j == i) {
      c[i] = c[i].real();
    } else {
      const cplx avg = 0.5 * (c[i] + std::conj(c[j]));
      c[i] = avg;
      c[j] = std::conj(avg);
    }
  }
  return f;
}

std::vector<double> inverse_transform(const SpectralField& f) {
  const TorusGrid& grid = f.grid();
  FftEngine engine(grid.n());
  std::vector<double> samples(grid.size());
  engine.to_physical(f.coeffs(), samples);
  double magnitude = 0.0;
  for (const cplx& c : f.coeffs()) magnitude += std::abs(c);
  if (engine.last_imaginary_residue() > 1e-12 * std::max(magnitude, 1e-300)) {
    fail(ErrorCode::symmetry_violation,
         "inverse_transform: imaginary residue " + std::to_string(engine.last_imaginary_residue()) +
             " exceeds 1e-12 of field magnitude " + std::to_string(magnitude));
  }
  return samples;
}

std::vector<double> inverse_transform_padded(const SpectralField& f, int factor) {
  if (factor < 1) fail(ErrorCode::invalid_argument, "inverse_transform_padded: factor must be >= 1");
  const TorusGrid& grid = f.grid();
  const int n = grid.n();
  const int m = n * factor;
  std::vector<cplx> padded(static_cast<std::size_t>(m) * m);
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx{}) continue;
    int kx = grid.kx(i);
    int ky = grid.ky(i);
    const std::size_t ix = static_cast<std::size_t>(kx >= 0 ? kx : kx + m);
    const std::size_t iy = static_cast<std::size_t>(ky >= 0 ? ky : ky + m);
    if (factor > 1 && (grid.nyquist(i))) {
      // The Nyquist mode of the coarse grid is split evenly between +n/2 and
      // -n/2 on the fine grid so the padded field stays real.
      const int sx = (kx == n / 2) ? 2 : 1;
      const int sy = (ky == n / 2) ? 2 : 1;
      const cplx share = c[i] / static_cast<double>(sx * sy);
      for (int a = 0; a < sx; ++a) {
        for (int b = 0; b < sy; ++b) {
          const int kx2 = (a == 1) ? -kx : kx;
          const int ky2 = (b == 1) ? -ky : ky;
          const std::size_t jx = static_cast<std::size_t>(kx2 >= 0 ? kx2 : kx2 + m);
          const std::size_t jy = static_cast<std::size_t>(ky2 >= 0 ? ky2 : ky2 + m);
          padded[jx * m + jy] += share;
        }
      }
      continue;
    }
    padded[ix * m + iy] = c[i];
  }
  FftEngine engine(m);
  std::vector<double> samples(padded.size());
  engine.to_physical(padded, samples);
  return samples;
}

}  // namespace electroflow::spectral
