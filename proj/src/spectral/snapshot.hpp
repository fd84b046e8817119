#pragma once

#include <filesystem>
#include <iosfwd>

#include "spectral/spectral_field.hpp"

namespace electroflow::spectral {

/// Text snapshot of one scalar field:
///   EFSNAP1 <n> <t> <alpha>
///   kx ky re im        (one line per nonzero mode, %.17g)
/// Modes absent from the file are zero.
struct Snapshot {
  SpectralField field;
  double t = 0.0;
  double alpha = 0.0;
};

void write_snapshot(std::ostream& out, const SpectralField& f, double t, double alpha);
void write_snapshot(const std::filesystem::path& path, const SpectralField& f, double t, double alpha);

Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace electroflow::spectral
