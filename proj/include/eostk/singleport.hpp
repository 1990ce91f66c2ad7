#pragma once

#include "eostk/optics.hpp"
#include "eostk/states.hpp"

namespace eostk {

/// Decomposition of the single-port signal variance at wave-plate angle
/// theta and probe delay t_d:
///   total = shot + mir + nir_cascading,
///   shot = N,  mir = 8 N sin^2(phi) <p_MIR^2(t_d)>,
///   nir_cascading = N * cascading_term(theta).
struct VarianceDecomposition {
  double shot = 0.0;
  double mir = 0.0;
  double nir_cascading = 0.0;
  double total = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double t_d = 0.0;
};

/// Analytic variance of the single-port signal. Requires
/// pi/2 <= theta <= 3pi/2 (waveplate_phi domain).
VarianceDecomposition signal_variance(const GaussianState& state,
                                      const DetectionModes& modes,
                                      const ProbePulse& probe,
                                      double theta, double t_d);

/// Invert the decomposition on a measured total:
/// returns measured_total - N - N * cascading_term(theta).
double extract_mir_variance(double measured_total, double theta,
                            const DetectionModes& modes, const ProbePulse& probe);

} // namespace eostk
