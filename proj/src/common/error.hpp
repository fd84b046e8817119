#pragma once

#include <stdexcept>
#include <string>

namespace electroflow {

// Numeric values are part of the C ABI (see electroflow.h); keep in sync.
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  dimension_mismatch = 2,
  symmetry_violation = 3,
  overflow = 4,
  cfl_violation = 5,
  rank_collapse = 6,
  quadrature_nonconvergence = 7,
  band_limit = 8,
  config = 9,
  io = 10,
  precondition = 11,
  ill_conditioned = 12,
  internal = 13,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace electroflow
