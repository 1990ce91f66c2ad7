#include "eostk/singleport.hpp"

#include <cmath>
#include <stdexcept>

namespace eostk {

VarianceDecomposition signal_variance(const GaussianState& state,
                                      const DetectionModes& modes,
                                      const ProbePulse& probe,
                                      double theta, double t_d) {
  VarianceDecomposition d;
  d.theta = theta;
  d.phi = waveplate_phi(theta); // validates the theta range
  d.t_d = t_d;
  const double n = probe.photon_number;
  d.shot = n;
  const double s = std::sin(d.phi);
  const double p2 = mir_p_quadrature_moments(state, modes.alpha_mir, t_d, t_d).real();
  d.mir = 8.0 * n * s * s * p2;
  d.nir_cascading = n * cascading_term(theta, modes);
  d.total = d.shot + d.mir + d.nir_cascading;
  return d;
}

double extract_mir_variance(double measured_total, double theta,
                            const DetectionModes& modes, const ProbePulse& probe) {
  const double n = probe.photon_number;
  return measured_total - n - n * cascading_term(theta, modes);
}

} // namespace eostk
