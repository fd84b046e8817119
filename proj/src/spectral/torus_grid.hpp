#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace electroflow::spectral {

/// Uniform n x n grid on the 2pi-periodic torus together with its
/// wavenumber set {-n/2+1, ..., n/2}^2.
///
/// Coefficients and samples share the flat layout `ix * n + iy`; index i maps
/// to the signed wavenumber i for i <= n/2 and i - n otherwise. Copies are
/// cheap: the per-mode tables are shared and immutable.
class TorusGrid {
 public:
  static constexpr double default_dealias_fraction = 2.0 / 3.0;

  explicit TorusGrid(int n, double dealias_fraction = default_dealias_fraction);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }
  double dealias_fraction() const noexcept { return dealias_fraction_; }

  int wavenumber(int index) const noexcept { return index <= n_ / 2 ? index : index - n_; }
  int index_of(int k) const noexcept { return k >= 0 ? k : k + n_; }
  std::size_t flat(int kx, int ky) const noexcept {
    return static_cast<std::size_t>(index_of(kx)) * n_ + index_of(ky);
  }
  // Flat index of the Hermitian partner -k (taken mod n).
  std::size_t partner(std::size_t flat_index) const noexcept { return tables_->partner[flat_index]; }

  bool contains(int kx, int ky) const noexcept {
    return kx > -n_ / 2 && kx <= n_ / 2 && ky > -n_ / 2 && ky <= n_ / 2;
  }

  int kx(std::size_t i) const noexcept { return tables_->kx[i]; }
  int ky(std::size_t i) const noexcept { return tables_->ky[i]; }
  double k2(std::size_t i) const noexcept { return tables_->k2[i]; }
  double kmag(std::size_t i) const noexcept { return tables_->kmag[i]; }
  // True when either component sits on the Nyquist wavenumber n/2.
  bool nyquist(std::size_t i) const noexcept { return tables_->nyquist[i]; }
  bool retained(std::size_t i) const noexcept { return tables_->retained[i]; }

  // Largest |k_j| kept by the dealias rule.
  double dealias_cutoff() const noexcept { return dealias_fraction_ * n_ / 2.0; }

  bool operator==(const TorusGrid& other) const noexcept {
    return n_ == other.n_ && dealias_fraction_ == other.dealias_fraction_;
  }

  // Physical coordinate of sample index i along one axis.
  double coordinate(int i) const noexcept;

 private:
  struct Tables {
    std::vector<int> kx, ky;
    std::vector<double> k2, kmag;
    std::vector<std::size_t> partner;
    std::vector<bool> nyquist, retained;
  };

  int n_;
  double dealias_fraction_;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace electroflow::spectral
