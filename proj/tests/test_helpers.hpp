#pragma once

// Shared fixtures: the standard ZnTe / 255 THz probe parameter set used
// throughout the worked examples, plus small convenience builders.

#include "eostk/config.hpp"
#include "eostk/constants.hpp"
#include "eostk/grids.hpp"
#include "eostk/optics.hpp"

#include <cmath>
#include <limits>

namespace testutil {

inline eostk::CrystalParams znte() { return eostk::CrystalParams::znte_default(); }

// Probe with the standard photon number on a NIR grid around 255 THz.
inline eostk::ProbePulse standard_probe(const eostk::FrequencyGrid& nir,
                                        const eostk::CrystalParams& crystal) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return eostk::gaussian_probe(nan, 2.3e10, 2.0 * M_PI * 0.255, 9.65, crystal, nir);
}

inline eostk::FrequencyGrid standard_nir_grid(int n_points = 512) {
  const double wc = 2.0 * M_PI * 0.255;
  const double dw = 2.0 / 9.65;
  return eostk::make_nir_grid(wc, 6.0 * dw, n_points);
}

struct Apparatus {
  eostk::CrystalParams crystal;
  eostk::FrequencyGrid mir;
  eostk::TimeGrid tg;
  eostk::FrequencyGrid nir;
  eostk::ProbePulse probe;
  eostk::DetectionModes modes;
};

// Full detection-mode stack at the standard parameter point. n_freq controls
// the MIR resolution; the time grid is transform-matched for inversion use.
inline Apparatus standard_apparatus(int n_freq = 128, int nir_points = 384) {
  Apparatus a;
  a.crystal = znte();
  std::tie(a.mir, a.tg) = eostk::make_matched_grids(2.0 * M_PI * 0.1, n_freq);
  a.nir = standard_nir_grid(nir_points);
  a.probe = standard_probe(a.nir, a.crystal);
  a.modes = eostk::compute_detection_modes(a.probe, a.crystal, a.mir, a.nir);
  return a;
}

} // namespace testutil
