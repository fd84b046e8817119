#pragma once

#include "spectral/spectral_field.hpp"

namespace electroflow::diagnostics {

/// Gevrey radius estimate: per unit shell |k| in [j, j+1) take the largest
/// |f_k| and the |k| where it occurs, then fit log(max) against |k|^{alpha/2}
/// over shells above 1e-14; returns minus the slope. Fails with
/// ill_conditioned when fewer than 6 shells are resolved.
double gevrey_radius_fit(const spectral::SpectralField& f, double alpha);

}  // namespace electroflow::diagnostics
