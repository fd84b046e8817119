#include "common/error.hpp"

namespace electroflow {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::symmetry_violation: return "symmetry_violation";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::cfl_violation: return "cfl_violation";
    case ErrorCode::rank_collapse: return "rank_collapse";
    case ErrorCode::quadrature_nonconvergence: return "quadrature_nonconvergence";
    case ErrorCode::band_limit: return "band_limit";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::ill_conditioned: return "ill_conditioned";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace electroflow
