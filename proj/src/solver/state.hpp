#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectral/spectral_field.hpp"

namespace electroflow::solver {

using spectral::cplx;
using spectral::SpectralField;
using spectral::TorusGrid;
using spectral::VectorSpectralField;

/// (q, u) without a clock: tendencies, tangent vectors, differences.
struct FieldPair {
  SpectralField q;
  VectorSpectralField u;

  explicit FieldPair(const TorusGrid& grid) : q(grid), u(grid) {}
  FieldPair(SpectralField q_, VectorSpectralField u_) : q(std::move(q_)), u(std::move(u_)) {}

  const TorusGrid& grid() const noexcept { return q.grid(); }

  FieldPair& operator+=(const FieldPair& o) { q += o.q; u += o.u; return *this; }
  FieldPair& operator-=(const FieldPair& o) { q -= o.q; u -= o.u; return *this; }
  FieldPair& operator*=(double s) noexcept { q *= s; u *= s; return *this; }
  void axpy(double a, const FieldPair& x) { q.axpy(a, x.q); u.axpy(a, x.u); }
};

/// Inner product of H = L^2 x (L^2)^2 on the torus.
double inner(const FieldPair& a, const FieldPair& b);
double norm(const FieldPair& a);

/// Charge density q, velocity u and simulation time t.
struct State : FieldPair {
  double t = 0.0;

  explicit State(const TorusGrid& grid) : FieldPair(grid) {}
  State(SpectralField q_, VectorSpectralField u_, double t_ = 0.0)
      : FieldPair(std::move(q_), std::move(u_)), t(t_) {}
};

/// Time-independent body force f (divergence-free) and potential Phi, both
/// given as lists of modes; Hermitian partners are filled in automatically.
struct ForcingSpec {
  struct ForceMode {
    int kx = 0, ky = 0;
    cplx f1, f2;
  };
  struct PotentialMode {
    int kx = 0, ky = 0;
    cplx phi;
  };
  std::vector<ForceMode> f_modes;
  std::vector<PotentialMode> phi_modes;

  bool empty() const noexcept { return f_modes.empty() && phi_modes.empty(); }
  bool operator==(const ForcingSpec&) const = default;
};

inline bool operator==(const ForcingSpec::ForceMode& a, const ForcingSpec::ForceMode& b) {
  return a.kx == b.kx && a.ky == b.ky && a.f1 == b.f1 && a.f2 == b.f2;
}
inline bool operator==(const ForcingSpec::PotentialMode& a, const ForcingSpec::PotentialMode& b) {
  return a.kx == b.kx && a.ky == b.ky && a.phi == b.phi;
}

/// Forcing materialized on a grid: f, Phi and the source Delta Phi.
struct Forcing {
  VectorSpectralField f;
  SpectralField phi;
  SpectralField laplacian_phi;

  explicit Forcing(const TorusGrid& grid) : f(grid), phi(grid), laplacian_phi(grid) {}
};

/// Validates divergence-freeness and grid membership of every mode.
Forcing build_forcing(const ForcingSpec& spec, const TorusGrid& grid);

enum class Scheme { ifrk2, ifrk4 };

const char* scheme_name(Scheme s) noexcept;
std::optional<Scheme> parse_scheme(const std::string& name);

struct SolverConfig {
  double alpha = 1.0;
  double dt = 0.01;
  int n = 64;
  Scheme scheme = Scheme::ifrk2;
  double epsilon = 0.0;
  std::optional<int> galerkin_n;
  std::uint64_t seed = 0;
  double cfl_limit = 0.5;
  int reorth_interval = 1;

  /// Throws ErrorCode::invalid_argument naming the offending field.
  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

}  // namespace electroflow::solver
