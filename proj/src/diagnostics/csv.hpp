#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "diagnostics/norms.hpp"

namespace electroflow::diagnostics {

inline constexpr const char* csv_header =
    "t,l2_q,l4_q,l8_q,h1_q,halpha2_q,l2_u,h1_u,h2_u,gevrey_tau_hat,energy_residual";

/// %.17g decimals, NaN written as `nan`.
std::string format_double(double v);

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records);

/// Fails with ErrorCode::io on a header mismatch or malformed row.
std::vector<DiagnosticsRecord> read_csv(std::istream& in);
std::vector<DiagnosticsRecord> read_csv(const std::filesystem::path& path);

}  // namespace electroflow::diagnostics
