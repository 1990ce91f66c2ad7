#pragma once

#include "eostk/optics.hpp"
#include "eostk/states.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eostk {

/// One two-port acquisition: both probes share the pulse shape; each
/// channel has its own delay and homodyne phase.
struct ChannelConfig {
  double t1 = 0.0;           // fs
  double t2 = 0.0;           // fs
  double phi1 = 0.0;         // rad
  double phi2 = 0.0;         // rad
  double photon_number = 0.0;
  long samples = 1;
  std::uint64_t seed = 0;

  void validate() const; // sin(phi_j) != 0, samples >= 1
};

/// Second moments of the rescaled signals x_j = S_j / sqrt(2N).
/// Diagonal entries are the raw moments <x_j^2> (shot noise 1/2,
/// MIR, cascading, complementary-vacuum parts, plus the mean-field
/// square). The off-diagonal entry follows the halved-anticommutator
/// convention
///   sin(phi1) sin(phi2) [<{p(t1),p(t2)}>_psi - <{p,p}>_vac] / 2,
/// which is HALF the raw cross moment <x1 x2>.
Eigen::Matrix2d measured_covariance(const GaussianState& state,
                                    const DetectionModes& modes,
                                    const ChannelConfig& config);

/// Mean signals <x_j> = sqrt(2) sin(phi_j) <p(t_j)>.
Eigen::Vector2d measured_mean(const GaussianState& state,
                              const DetectionModes& modes,
                              const ChannelConfig& config);

/// Draw m pairs from the physical joint distribution described by the
/// measured_covariance matrix and the mean vector (the off-diagonal is
/// doubled internally to undo the halved convention). Deterministic for
/// a fixed seed. Throws on a non-positive-semidefinite covariance.
Eigen::ArrayX2d sample_joint(const Eigen::Matrix2d& second_moments,
                             const Eigen::Vector2d& mean, long m, std::uint64_t seed);

/// One delay pair worth of accumulated statistics. cov_* are raw second
/// moments of (x1, x2); samples == 0 marks an analytic (infinite-M) row.
struct BatchRow {
  double t1 = 0.0;
  double t2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  long samples = 0;
  double cov_x1x1 = 0.0;
  double cov_x1x2 = 0.0;
  double cov_x2x2 = 0.0;
};

enum class Provenance { analytic, sampled };

/// Two-time second moment C(t1, t2) of the measured MIR p-quadrature.
struct CoherenceMatrix {
  TimeGrid grid;
  Eigen::MatrixXcd values;
  Provenance provenance = Provenance::analytic;
  long samples = 0;

  /// max |C(t1,t2) - conj(C(t2,t1))|
  double hermiticity_residual() const;
};

/// Exact rows over the full Cartesian product of the delay grid.
std::vector<BatchRow> analytic_batches(const GaussianState& state,
                                       const DetectionModes& modes,
                                       const TimeGrid& tg, double phi1, double phi2,
                                       double photon_number);

/// Monte-Carlo rows, m shots per delay pair. Sub-seeds are derived
/// per (pair, batch) so any parallel schedule reproduces the serial run.
std::vector<BatchRow> sampled_batches(const GaussianState& state,
                                      const DetectionModes& modes,
                                      const TimeGrid& tg, double phi1, double phi2,
                                      double photon_number, long m, std::uint64_t seed);

/// C(t1,t2) = <x1 x2> / (2 sin(phi1) sin(phi2))
///          + (1/2) int |alpha_MIR|^2 e^{i W (t2-t1)} dW.
/// Shot noise and cascading cancel in the cross moment, so this equals
/// the full quantum <p(t1) p(t2)> of the input state. Requires one row
/// per delay pair and |sin phi| >= 1e-3.
CoherenceMatrix estimate_coherence_matrix(const std::vector<BatchRow>& rows,
                                          const TimeGrid& tg,
                                          const ComplexSpectrum& alpha_mir);

void write_batch_csv(const std::string& path, const std::vector<BatchRow>& rows);
std::vector<BatchRow> read_batch_csv(const std::string& path);

struct CalibrationResult {
  ComplexSpectrum alpha_mir;           // + sqrt of alpha2 (global sign fixed positive)
  Eigen::ArrayXd alpha2;               // |alpha_MIR(W)|^2, masked bins set to 0
  std::vector<Eigen::Index> masked;    // bins where |alpha_ref| is below threshold
};

/// Recover |alpha_MIR|^2 from a run on a reference coherent state with
/// known spectral amplitude alpha_ref: a two-dimensional transform of C
/// evaluated at (-W, +W) is divided by the reference intensity (plus the
/// exactly known vacuum-term contribution), so the result is independent
/// of the reference's overall scale. Requires the coherence matrix to
/// live on a transform-matched grid pair (dW * dt * n_time = 2 pi).
CalibrationResult calibrate_alpha_mir(const CoherenceMatrix& reference,
                                      const ComplexSpectrum& alpha_ref,
                                      double mask_fraction = 1e-2);

} // namespace eostk
