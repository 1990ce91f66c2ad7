#pragma once

#include "eostk/optics.hpp"
#include "eostk/states.hpp"
#include "eostk/twoport.hpp"

#include <string>
#include <vector>

namespace eostk {

struct MomentInversion {
  GaussianState state;                  // recovered (M, A); mean left zero
  std::vector<Eigen::Index> masked;     // bins where |alpha_MIR| was below the floor
  double pre_projection_min_eigenvalue = 0.0; // symplectic eigenvalue before cleanup
};

/// Frequency-domain inversion of the coherence matrix:
///   <a(W1) a(W2)> = -(2/(2pi)^2) dft2(C)(+W1, +W2) / (alpha(W1) alpha(W2)),
///   <a^dag(W1) a(W2)> = +(2/(2pi)^2) dft2(C)(-W1, +W2) / (alpha*(W1) alpha(W2)),
/// using a(-W) = a^dag(W). Bins with |alpha_MIR| < floor * max|alpha_MIR|
/// are masked (reported, set to vacuum). The result is Hermitized /
/// symmetrized and projected onto the physical cone. Requires a
/// transform-matched grid pair. Returns raw (non-central) moments; they
/// coincide with the central ones for zero-mean states.
MomentInversion invert_to_frequency_moments(const CoherenceMatrix& c,
                                            const ComplexSpectrum& alpha_mir,
                                            double floor = 1e-2);

struct PrincipalMode {
  int index = 0;
  ComplexSpectrum f;            // unit-normalized: int |f|^2 dW = 1
  double n = 0.0;               // mean photon number
  double xx = 0.5;              // <x^2>
  double pp = 0.5;              // <p^2>
  double xp = 0.0;              // <{x, p}>
  double r = 0.0;               // squeezing parameter
  double psi = 0.0;             // squeezing angle, rad
  double impurity = 0.0;        // |r_major + r_minor| residual
  std::complex<double> alpha{0.0, 0.0}; // coherent amplitude
};

/// Eigen-decomposition of the photon-number moment matrix, descending
/// eigenvalues. Each mode's global phase is rotated so the amplitude is
/// as real as possible, then signed so its largest entry is positive.
std::vector<PrincipalMode> principal_modes(const GaussianState& state);

/// (<x^2>, <p^2>, <{x,p}>) of the mode with spectral amplitude f,
/// contracted against the state's (M, A) with the vacuum 1/2 offsets.
void mode_moments(const GaussianState& state, PrincipalMode& mode);

/// r = (1/2) ln(2 * major variance) from the diagonalized 2x2 quadrature
/// covariance; psi is the major-axis angle; impurity is
/// |(1/2) ln(2 v_major) + (1/2) ln(2 v_minor)| (zero for pure states).
void squeezing_parameters(PrincipalMode& mode);

/// E_j(t) = i int dW sqrt(hbar W / C) f*(W) e^{-iWt}  (V/m per photon^1/2)
Eigen::ArrayXcd temporal_mode_field(const ComplexSpectrum& f, const TimeGrid& tg,
                                    const CrystalParams& crystal);

struct WignerGrid {
  Eigen::ArrayXd x;       // quadrature axis
  Eigen::ArrayXd p;
  Eigen::MatrixXd w;      // w(i, j) = W(x(i), p(j))
  double normalization = 0.0; // grid integral, should be 1 within 1e-3
};

/// Gaussian Wigner function of a single mode (mean zero unless alpha set).
WignerGrid wigner(const PrincipalMode& mode, int n_points = 101, double half_width = 4.0);

struct ModeComparison {
  double overlap = 0.0;     // |<f_rec | f_exact>|
  double d_xx = 0.0;
  double d_pp = 0.0;
  double d_r = 0.0;
};

struct ReconstructionReport {
  std::vector<PrincipalMode> modes;
  TimeGrid time_grid;
  std::vector<Eigen::ArrayXcd> waveforms;   // E_j(t), one per mode
  std::vector<Eigen::ArrayXcd> exact_waveforms; // ground-truth E_j(t), when given
  std::vector<WignerGrid> wigners;
  std::vector<ModeComparison> comparison;   // vs ground truth, when given
  std::vector<Eigen::Index> masked_bins;
  double min_symplectic_eigenvalue = 0.0;
  double mode_cutoff = 1e-3;                // keep n_j > cutoff * n_1
};

/// Assemble the field-operator decomposition report
///   E(t) = sum_j E_j(t) [cosh(r_j) a_j + e^{i psi_j} sinh(r_j) a_j^dag + alpha_j] + H.c.
/// Optionally compares against ground-truth modes (band-limited overlaps
/// and moment errors).
ReconstructionReport field_operator_report(
    const MomentInversion& inversion, const CrystalParams& crystal,
    const TimeGrid& tg, const std::vector<PrincipalMode>* ground_truth = nullptr,
    double mode_cutoff = 1e-3);

/// JSON serialization of the report (documented schema; lossless
/// round-trip with from_json_report).
std::string to_json_report(const ReconstructionReport& report);
ReconstructionReport from_json_report(const std::string& json_text);

struct MeanFieldEstimate {
  Eigen::ArrayXd p_mean;                  // <p(t)> over the delay grid
  Eigen::VectorXcd mu;                    // recovered mode means, sqrt(dW) a(W_k)
  std::vector<std::complex<double>> alpha; // projections onto the principal modes
};

/// First-moment estimation: channel sample means mapped through the MIR
/// gain sqrt(2) sin(phi), inverted to spectral means on a matched grid,
/// then projected onto the principal modes.
MeanFieldEstimate estimate_mean_field(const Eigen::ArrayXd& sample_means,
                                      const TimeGrid& tg, double phi,
                                      const ComplexSpectrum& alpha_mir,
                                      const std::vector<PrincipalMode>& modes);

} // namespace eostk
