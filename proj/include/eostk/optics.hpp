#pragma once

#include "eostk/grids.hpp"

namespace eostk {

/// Electro-optic crystal: macroscopic NIR constants plus the Lorentz
/// oscillator model for the MIR refractive index,
///   n(W) = Re sqrt( eps_inf (1 + (w_lo^2 - w_to^2)/(w_to^2 - Wt^2 - i g |Wt|)) ),
/// with Wt = W / (2pi THz).
struct CrystalParams {
  double length = 0.0;        // m
  double n_nir = 0.0;         // refractive index at probe frequencies
  double group_index = 0.0;   // group index of the probe
  double d_eff = 0.0;         // effective nonlinear susceptibility, m/V
  double area = 0.0;          // effective transverse area, m^2
  double lorentz_eps_inf = 6.7;
  double lorentz_w_lo = 6.2;  // in 2pi*THz-scaled units
  double lorentz_w_to = 5.3;
  double lorentz_damping = 0.09;

  /// ZnTe, 7 um, as used for all worked examples.
  static CrystalParams znte_default();

  /// C = 4 pi eps0 c0 n A, the field-to-photon conversion constant
  /// (units C m^2 / (V fs)).
  double photon_constant() const;
};

/// MIR refractive index from the Lorentz model. W in rad/fs, W >= 0.
double lorentz_ri(double omega, const CrystalParams& crystal);

/// Phase matching F1(W) = sinc[(l W / 2 c0)(n(W) - n_g)].
double phase_matching_F1(double omega, const CrystalParams& crystal);

/// Gaussian probe E_p(t) = E sin(w_c t) exp(-(t/dt_p)^2). The spectrum
/// is analytic (two Gaussian lobes), sampled on the NIR grid.
struct ProbePulse {
  double amplitude = 0.0;      // E, V/m
  double omega_c = 0.0;        // rad/fs
  double duration = 0.0;       // dt_p, fs
  double bandwidth = 0.0;      // dw = 2/dt_p, rad/fs
  double photon_number = 0.0;  // N
  ComplexSpectrum spectrum;    // E_p(w) on the NIR grid, V fs/m

  /// analytic E_p(w) at arbitrary w (any sign)
  std::complex<double> spectral_amplitude(double omega) const;
};

/// Construct a probe from either the field amplitude or the photon
/// number (set exactly one; the other is derived from
/// N = C int dw |E_p(w)|^2 / (hbar w)).
ProbePulse gaussian_probe(double amplitude_or_nan, double photon_number_or_nan,
                          double omega_c, double duration,
                          const CrystalParams& crystal, const FrequencyGrid& nir_grid);

/// Probe spectral autocorrelation G(W) = int_0^inf dw E_p(w) E_p*(w + W),
/// defined for either sign of W (G_+ = G_-^* holds to the cross-lobe
/// overlap, negligible for any realistic probe).
std::complex<double> probe_autocorrelation_G(double omega, const ProbePulse& probe);

/// Spectral amplitudes of the detection mode (probe shot noise alpha_0,
/// MIR signal pickup alpha_MIR, NIR cascading pickup alpha_NIR, and the
/// beta counterparts beta = -alpha).
struct DetectionModes {
  ComplexSpectrum alpha0;     // NIR grid
  ComplexSpectrum alpha_nir;  // NIR grid
  ComplexSpectrum beta_nir;   // NIR grid
  ComplexSpectrum alpha_mir;  // MIR grid
  ComplexSpectrum beta_mir;   // MIR grid
  bool pv_resolution_warning = false;

  double mir_commutator() const;   // int |alpha_MIR|^2 dW
  double nir_commutator() const;   // int |alpha_NIR|^2 dw
  double alpha0_norm() const;      // int |alpha_0|^2 dw, = 1
  /// vacuum equal-time MIR p-quadrature variance, 1/2 * int |alpha_MIR|^2 dW
  double vacuum_p_variance() const { return 0.5 * mir_commutator(); }
};

/// alpha_MIR(W) = sqrt(C/hbar N) (d l / 2 c0 n) sqrt(n W / n(W)) G*(W) F1(W),
/// beta_MIR = -alpha_MIR. Real-valued for any probe.
void detection_mode_mir(const ProbePulse& probe, const CrystalParams& crystal,
                        const FrequencyGrid& mir_grid, DetectionModes& out);

/// alpha_0, alpha_NIR, beta_NIR from the second-order kernel F2 with
/// g(x) = pi delta(x) - i/x split into a diagonal part and a principal
/// value part. beta_NIR = -alpha_NIR by construction.
void detection_modes_nir(const ProbePulse& probe, const CrystalParams& crystal,
                         const FrequencyGrid& nir_grid, DetectionModes& out,
                         int n_internal = 2048, double internal_span_factor = 1.25);

/// Both bands in one call.
DetectionModes compute_detection_modes(const ProbePulse& probe,
                                       const CrystalParams& crystal,
                                       const FrequencyGrid& mir_grid,
                                       const FrequencyGrid& nir_grid);

/// Wave-plate angle theta -> homodyne phase phi = arcsin(-sqrt(2) cos(theta/2)).
double waveplate_phi(double theta);

/// Cascading contribution to the signal variance (per unit shot noise):
/// 2 sin(2 phi) int dw alpha_0(w) Im alpha_NIR(w). Requires
/// pi/2 <= theta <= 3pi/2.
double cascading_term(double theta, const DetectionModes& modes);

/// Same quantity parameterized directly by phi.
double cascading_term_phi(double phi, const DetectionModes& modes);

/// Effective interaction strength r = |d l/(n c0)| sqrt(w_c dw) E0,
/// E0 = |int_0^inf E_p(w) dw|.
double interaction_strength_r(const ProbePulse& probe, const CrystalParams& crystal);

} // namespace eostk
