#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "spectral/spectral_field.hpp"

namespace electroflow::ops {

using spectral::cplx;
using spectral::SpectralField;
using spectral::TorusGrid;
using spectral::VectorSpectralField;

/// Scalar Fourier multipliers on the torus. Every kind is a radial function
/// of |k| except riesz_component (i k_axis / |k|); leray is the only
/// matrix-valued one and is applied through `leray_project`.
struct MultiplierSpec {
  enum class Kind { fractional_laplacian, riesz_component, inverse_lambda_eps, heat, gevrey, leray };

  Kind kind = Kind::fractional_laplacian;
  double a = 0.0;  // s, eps, t or tau depending on kind
  double b = 0.0;  // gevrey exponent s
  int axis = 0;
  bool normalized = true;  // inverse_lambda_eps only

  static MultiplierSpec fractional_laplacian(double s) { return {Kind::fractional_laplacian, s}; }
  static MultiplierSpec riesz_component(int axis) { return {Kind::riesz_component, 0.0, 0.0, axis}; }
  static MultiplierSpec inverse_lambda_eps(double eps, bool normalized = true) {
    return {Kind::inverse_lambda_eps, eps, 0.0, 0, normalized};
  }
  static MultiplierSpec heat(double t) { return {Kind::heat, t}; }
  static MultiplierSpec gevrey(double tau, double s) { return {Kind::gevrey, tau, s}; }
  static MultiplierSpec leray() { return {Kind::leray}; }

  auto key() const { return std::make_tuple(static_cast<int>(kind), a, b, axis, normalized); }
};

/// Symbol value per flat mode index. k = 0 maps to 0. Odd (riesz) symbols
/// vanish on Nyquist modes, where i k_axis has no real-field partner.
std::vector<cplx> multiplier_table(const TorusGrid& grid, const MultiplierSpec& spec);

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& spec);

/// Read-only tables memoized per (grid, spec). Lookups are serialized; a
/// returned table is complete and never modified afterwards.
class MultiplierCache {
 public:
  std::shared_ptr<const std::vector<cplx>> get(const TorusGrid& grid, const MultiplierSpec& spec);

 private:
  using Key = std::tuple<int, double, int, double, double, int, bool>;
  std::mutex mutex_;
  std::map<Key, std::shared_ptr<const std::vector<cplx>>> tables_;
};

SpectralField fractional_laplacian(const SpectralField& f, double s);

/// R f = grad Lambda^{-1} f, symbol i k / |k|.
VectorSpectralField riesz_transform(const SpectralField& f);

/// grad (Lambda^{-1})_eps f, the damped Riesz transform of the regularized
/// system. eps = 0 reproduces riesz_transform.
VectorSpectralField riesz_transform_eps(const SpectralField& f, double eps);

VectorSpectralField gradient(const SpectralField& f);
SpectralField divergence(const VectorSpectralField& v);

/// v -> v - k (k.v)/|k|^2 per mode. Modes touching the Nyquist line are
/// dropped because the projector has no Hermitian-consistent action there.
VectorSpectralField leray_project(const VectorSpectralField& v);

/// (Lambda^{-1})_eps with symbol erfc(|k| sqrt(eps)) / |k| when normalized;
/// the literal integral  int_eps^inf t^{-1/2} e^{t Delta} dt  carries an
/// extra factor sqrt(pi) and is selected with normalized = false.
SpectralField inverse_lambda_eps(const SpectralField& f, double eps, bool normalized = true);

/// e^{tau Lambda^s}. Fails with ErrorCode::overflow rather than saturating.
SpectralField gevrey_weight(const SpectralField& f, double tau, double s);

/// e^{t Delta}, symbol e^{-t |k|^2}.
SpectralField heat(const SpectralField& f, double t);

}  // namespace electroflow::ops
