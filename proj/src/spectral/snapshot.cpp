#include "spectral/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "common/error.hpp"

namespace electroflow::spectral {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_snapshot(std::ostream& out, const SpectralField& f, double t, double alpha) {
  const TorusGrid& g = f.grid();
  out << "EFSNAP1 " << g.n() << ' ' << g17(t) << ' ' << g17(alpha) << '\n';
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx{}) continue;
    out << g.kx(i) << ' ' << g.ky(i) << ' ' << g17(c[i].real()) << ' ' << g17(c[i].imag()) << '\n';
  }
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& f, double t, double alpha) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot open snapshot for writing: " + path.string());
  write_snapshot(out, f, t, alpha);
  if (!out) fail(ErrorCode::io, "failed writing snapshot: " + path.string());
}

Snapshot read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::io, "snapshot: empty input");
  std::istringstream header(line);
  std::string magic;
  int n = 0;
  double t = 0.0, alpha = 0.0;
  if (!(header >> magic >> n >> t >> alpha) || magic != "EFSNAP1") {
    fail(ErrorCode::io, "snapshot: bad header '" + line + "'");
  }
  TorusGrid grid(n);
  SpectralField f(grid);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    int kx = 0, ky = 0;
    double re = 0.0, im = 0.0;
    if (!(row >> kx >> ky >> re >> im)) {
      fail(ErrorCode::io, "snapshot line " + std::to_string(lineno) + ": expected 'kx ky re im'");
    }
    if (!grid.contains(kx, ky)) {
      fail(ErrorCode::io, "snapshot line " + std::to_string(lineno) + ": wavenumber outside grid");
    }
    f.set(kx, ky, {re, im});
  }
  return {std::move(f), t, alpha};
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open snapshot: " + path.string());
  return read_snapshot(in);
}

}  // namespace electroflow::spectral
