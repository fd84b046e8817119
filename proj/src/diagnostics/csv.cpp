#include "diagnostics/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace electroflow::diagnostics {

namespace {

double* field(DiagnosticsRecord& r, int i) {
  double* fields[] = {&r.t,    &r.l2_q, &r.l4_q, &r.l8_q,          &r.h1_q,         &r.halpha2_q,
                      &r.l2_u, &r.h1_u, &r.h2_u, &r.gevrey_tau_hat, &r.energy_residual};
  return fields[i];
}

constexpr int column_count = 11;

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  out << csv_header << '\n';
  for (auto r : records) {
    for (int i = 0; i < column_count; ++i) out << (i ? "," : "") << format_double(*field(r, i));
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  write_csv(out, records);
  if (!out) fail(ErrorCode::io, "write failed for " + path.string());
}

std::vector<DiagnosticsRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header) fail(ErrorCode::io, "diagnostics CSV: header mismatch");
  std::vector<DiagnosticsRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    DiagnosticsRecord r;
    std::istringstream row(line);
    std::string cell;
    int i = 0;
    while (std::getline(row, cell, ',')) {
      if (i >= column_count) break;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        fail(ErrorCode::io, "diagnostics CSV line " + std::to_string(lineno) + ": bad value '" + cell + "'");
      }
      *field(r, i++) = v;
    }
    if (i != column_count) fail(ErrorCode::io, "diagnostics CSV line " + std::to_string(lineno) + ": wrong column count");
    out.push_back(r);
  }
  return out;
}

std::vector<DiagnosticsRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot read " + path.string());
  return read_csv(in);
}

}  // namespace electroflow::diagnostics
