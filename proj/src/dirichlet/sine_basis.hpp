#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace electroflow::dirichlet {

/// Dirichlet eigenpairs on (0, pi)^2:
///   w_mn(x, y) = (2/pi) sin(m x) sin(n y),   lambda_mn = m^2 + n^2,
/// for 1 <= m, n <= m_max.
class SineBasis {
 public:
  explicit SineBasis(int m_max);

  int m_max() const noexcept { return m_max_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(m_max_) * m_max_; }
  std::size_t index(int m, int n) const noexcept {
    return static_cast<std::size_t>(m - 1) * m_max_ + (n - 1);
  }
  static double eigenvalue(int m, int n) noexcept { return static_cast<double>(m * m + n * n); }

  struct Mode {
    int m, n;
    double lambda;
  };
  // All modes by ascending eigenvalue (ties by m, then n).
  std::vector<Mode> sorted_modes() const;

  bool operator==(const SineBasis& other) const noexcept { return m_max_ == other.m_max_; }

 private:
  int m_max_;
};

/// Real coefficients c_mn of f = sum c_mn w_mn; c stored at basis.index(m, n).
class SineField {
 public:
  explicit SineField(SineBasis basis) : basis_(basis), coeffs_(basis.size()) {}
  SineField(SineBasis basis, std::vector<double> coeffs);

  const SineBasis& basis() const noexcept { return basis_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }

  double at(int m, int n) const { return coeffs_[basis_.index(m, n)]; }
  void set(int m, int n, double v) { coeffs_[basis_.index(m, n)] = v; }

  // ||f||_{L^2}^2 = sum c^2 (orthonormal basis)
  double energy() const noexcept;
  // ||Lambda^s f||^2 = sum lambda^s c^2
  double lambda_norm_sq(double s) const noexcept;
  // Largest m or n carrying a nonzero coefficient.
  int band_limit() const noexcept;

 private:
  SineBasis basis_;
  std::vector<double> coeffs_;
};

/// c_mn -> lambda_mn^{s/2} c_mn.
SineField lambda_s_apply(const SineField& f, double s);

/// e^{t Delta}: c_mn -> e^{-t lambda_mn} c_mn.
SineField heat_semigroup(const SineField& f, double t);

/// (Lambda^{-1})_eps, normalized: c_mn -> erfc(sqrt(eps lambda)) / sqrt(lambda) c_mn.
SineField inverse_lambda_eps_dirichlet(const SineField& f, double eps, bool normalized = true);

/// Lambda^s f assembled from  c_s int_0^inf (1 - e^{-t lambda}) t^{-1-s/2} dt
/// per mode by numerical quadrature; an independent route to lambda_s_apply
/// for s in (0, 2).
SineField lambda_s_via_heat_integral(const SineField& f, double s);

/// Values of f on the tensor grid xs x ys; result(i, j) = f(xs[i], ys[j]).
Eigen::MatrixXd evaluate(const SineField& f, std::span<const double> xs, std::span<const double> ys);

/// Interior trapezoid nodes x_i = i pi / N, i = 1..N-1.
std::vector<double> trapezoid_nodes(int intervals);

/// Cell-centre nodes x_i = (i + 1/2) pi / G, i = 0..G-1.
std::vector<double> midpoint_nodes(int cells);

/// Discrete sine analysis of samples on the interior trapezoid grid with
/// `intervals` subintervals per axis. Coefficients are exact for sine
/// polynomials of degree < intervals. Returns the leading m_max x m_max
/// block and reports the energy outside it.
struct Projection {
  SineField field;
  double total_energy = 0.0;
  double tail_energy = 0.0;
};
Projection project(const Eigen::MatrixXd& samples, int intervals, const SineBasis& basis);

}  // namespace electroflow::dirichlet
