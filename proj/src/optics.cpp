#include "eostk/optics.hpp"
#include "eostk/constants.hpp"
#include "eostk/pv.hpp"

#include <stdexcept>
#include <cmath>

namespace eostk {

using constants::c0;
using constants::eps0;
using constants::hbar;
using constants::pi;
using std::complex;

namespace {
constexpr complex<double> I{0.0, 1.0};

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }
} // namespace

CrystalParams CrystalParams::znte_default() {
  CrystalParams c;
  c.length = 7.0 * constants::um;
  c.n_nir = 2.76;
  c.group_index = 2.9;
  c.d_eff = -232.0 * constants::pm_per_v;
  c.area = pi * std::pow(3.0 * constants::um, 2);
  return c;
}

double CrystalParams::photon_constant() const {
  return 4.0 * pi * eps0 * c0 * n_nir * area;
}

double lorentz_ri(double omega, const CrystalParams& crystal) {
  if (omega < 0.0) throw std::invalid_argument("lorentz_ri: omega must be >= 0");
  const double wt = omega / constants::thz;
  const double wlo2 = crystal.lorentz_w_lo * crystal.lorentz_w_lo;
  const double wto2 = crystal.lorentz_w_to * crystal.lorentz_w_to;
  const complex<double> denom = wto2 - wt * wt - I * crystal.lorentz_damping * std::abs(wt);
  const complex<double> val = crystal.lorentz_eps_inf * (1.0 + (wlo2 - wto2) / denom);
  return std::sqrt(val).real();
}

double phase_matching_F1(double omega, const CrystalParams& crystal) {
  if (omega < 0.0) throw std::invalid_argument("phase_matching_F1: omega must be >= 0");
  const double x =
      crystal.length * omega / (2.0 * c0) * (lorentz_ri(omega, crystal) - crystal.group_index);
  return sinc(x);
}

std::complex<double> ProbePulse::spectral_amplitude(double omega) const {
  // FT of E sin(w_c t) exp(-(t/dt)^2): two Gaussian lobes at +-w_c
  const double s = duration * duration / 4.0;
  const double dp = omega - omega_c;
  const double dm = omega + omega_c;
  return amplitude * duration * std::sqrt(pi) / (2.0 * I) *
         (std::exp(-dp * dp * s) - std::exp(-dm * dm * s));
}

namespace {

// N / E^2: photon number of a unit-amplitude probe
double photon_number_per_amp2(double omega_c, double duration,
                              const CrystalParams& crystal) {
  ProbePulse unit;
  unit.amplitude = 1.0;
  unit.omega_c = omega_c;
  unit.duration = duration;
  const double dw = 2.0 / duration;
  // fine quadrature over the probe support; the integrand is smooth
  const int n = 4096;
  const double lo = std::max(omega_c - 8.0 * dw, 1e-6 * omega_c);
  const double hi = omega_c + 8.0 * dw;
  const double h = (hi - lo) / (n - 1);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = lo + i * h;
    acc += std::norm(unit.spectral_amplitude(w)) / (hbar * w);
  }
  return crystal.photon_constant() * acc * h;
}

} // namespace

ProbePulse gaussian_probe(double amplitude_or_nan, double photon_number_or_nan,
                          double omega_c, double duration,
                          const CrystalParams& crystal, const FrequencyGrid& nir_grid) {
  const bool has_amp = !std::isnan(amplitude_or_nan);
  const bool has_n = !std::isnan(photon_number_or_nan);
  if (has_amp == has_n)
    throw std::invalid_argument("gaussian_probe: give exactly one of amplitude, photon number");
  if (omega_c <= 0.0 || duration <= 0.0)
    throw std::invalid_argument("gaussian_probe: omega_c and duration must be positive");

  ProbePulse p;
  p.omega_c = omega_c;
  p.duration = duration;
  p.bandwidth = 2.0 / duration;
  if (nir_grid.points(0) > omega_c - 4.0 * p.bandwidth ||
      nir_grid.points(nir_grid.size() - 1) < omega_c + 4.0 * p.bandwidth)
    throw std::invalid_argument("gaussian_probe: NIR grid does not cover omega_c +- 4*dw");

  const double per_amp2 = photon_number_per_amp2(omega_c, duration, crystal);
  if (has_amp) {
    p.amplitude = amplitude_or_nan;
    p.photon_number = per_amp2 * p.amplitude * p.amplitude;
  } else {
    if (photon_number_or_nan < 0.0)
      throw std::invalid_argument("gaussian_probe: photon number must be >= 0");
    p.photon_number = photon_number_or_nan;
    p.amplitude = std::sqrt(photon_number_or_nan / per_amp2);
  }

  p.spectrum.grid = nir_grid;
  p.spectrum.values.resize(nir_grid.size());
  for (Eigen::Index i = 0; i < nir_grid.size(); ++i)
    p.spectrum.values(i) = p.spectral_amplitude(nir_grid.points(i));
  return p;
}

std::complex<double> probe_autocorrelation_G(double omega, const ProbePulse& probe) {
  // int_0^inf dw E_p(w) E_p*(w + W); the integrand is concentrated on
  // the +w_c lobe, so a fixed window around it suffices
  const double dw = probe.bandwidth;
  const int n = 2048;
  const double lo = std::max(probe.omega_c - 8.0 * dw, 0.0) + 1e-9;
  const double hi = probe.omega_c + 8.0 * dw;
  const double h = (hi - lo) / (n - 1);
  complex<double> acc{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const double w = lo + i * h;
    acc += probe.spectral_amplitude(w) * std::conj(probe.spectral_amplitude(w + omega));
  }
  return acc * h;
}

double DetectionModes::mir_commutator() const {
  return alpha_mir.grid.integrate(alpha_mir.values.abs2().eval());
}

double DetectionModes::nir_commutator() const {
  return alpha_nir.grid.integrate(alpha_nir.values.abs2().eval());
}

double DetectionModes::alpha0_norm() const {
  return alpha0.grid.integrate(alpha0.values.abs2().eval());
}

void detection_mode_mir(const ProbePulse& probe, const CrystalParams& crystal,
                        const FrequencyGrid& mir_grid, DetectionModes& out) {
  if (probe.photon_number <= 0.0)
    throw std::invalid_argument("detection_mode_mir: probe carries no photons");
  const double pref = std::sqrt(crystal.photon_constant() / (hbar * probe.photon_number)) *
                      crystal.d_eff * crystal.length / (2.0 * c0 * crystal.n_nir);
  out.alpha_mir.grid = mir_grid;
  out.alpha_mir.values.resize(mir_grid.size());
  for (Eigen::Index i = 0; i < mir_grid.size(); ++i) {
    const double w = mir_grid.points(i);
    out.alpha_mir.values(i) = pref * std::sqrt(crystal.n_nir * w / lorentz_ri(w, crystal)) *
                              std::conj(probe_autocorrelation_G(w, probe)) *
                              phase_matching_F1(w, crystal);
  }
  out.beta_mir.grid = mir_grid;
  out.beta_mir.values = -out.alpha_mir.values;
}

void detection_modes_nir(const ProbePulse& probe, const CrystalParams& crystal,
                         const FrequencyGrid& nir_grid, DetectionModes& out,
                         int n_internal, double internal_span_factor) {
  const double n = crystal.n_nir;
  const double N = probe.photon_number;
  if (N <= 0.0)
    throw std::invalid_argument("detection_modes_nir: probe carries no photons");
  const double root_c = std::sqrt(crystal.photon_constant() / (hbar * N));

  out.alpha0.grid = nir_grid;
  out.alpha0.values.resize(nir_grid.size());
  for (Eigen::Index i = 0; i < nir_grid.size(); ++i) {
    const double w = nir_grid.points(i);
    out.alpha0.values(i) = I * root_c * std::conj(probe.spectral_amplitude(w)) / std::sqrt(w);
  }

  // F2 kernel, reduced over the NIR integration variable:
  //   alpha_NIR(w') = -i sqrt(C/hbar N) k2 sqrt(w') [H_delta(w') + H_pv(w')]
  //   H_delta(w') = pi int dW  W2(W, W)  E_p*(w' - W)  G(W)
  //   H_pv(w')    = -i int dW' E_p*(w' - W') G(W') Q(W'),
  //   Q(W')       = PV int dW W2(W, W') / (W' - W)
  // with W2(W, W') = (n W / n(W)) sinc^2[(l/2c0)(n_g W' - n(W) W)].
  // The internal MIR variables run over both signs; the energy-conserving
  // (delta) part is odd in W, which is what cancels the phase-independent
  // cascading contribution.
  const double k2 = 2.0 * pi * crystal.d_eff * crystal.d_eff * crystal.length * crystal.length /
                    std::pow(4.0 * pi * c0 * n, 2);
  const double mir_reach = internal_span_factor * 6.0 * probe.bandwidth;

  auto w2 = [&](double W, double Wp) {
    const double nw = lorentz_ri(std::abs(W), crystal);
    const double x = crystal.length / (2.0 * c0) * (crystal.group_index * Wp - nw * W);
    const double s = sinc(x);
    return n * W / nw * s * s;
  };

  // the W' support is set by E_p*(w' - W') G(W'): |W'| <~ 6 dw
  const int n_prime = 257;
  const double wp_hi = 6.0 * probe.bandwidth;
  const double dwp = 2.0 * wp_hi / (n_prime - 1);
  Eigen::ArrayXd wp_grid = Eigen::ArrayXd::LinSpaced(n_prime, -wp_hi, wp_hi);

  // internal grid for the PV variable, half-step offset to stay off W = 0
  const double d_in = 2.0 * mir_reach / n_internal;
  Eigen::ArrayXd w_in(n_internal);
  for (int i = 0; i < n_internal; ++i) w_in(i) = -mir_reach + (i + 0.5) * d_in;

  Eigen::ArrayXcd g_wp(n_prime);
  Eigen::ArrayXd q_wp(n_prime), wdiag(n_prime);
  bool pv_warn = false;
  for (int j = 0; j < n_prime; ++j) {
    const double wp = wp_grid(j);
    g_wp(j) = probe_autocorrelation_G(wp, probe);
    wdiag(j) = w2(wp, wp);
    Eigen::ArrayXd kernel(n_internal);
    for (int i = 0; i < n_internal; ++i) kernel(i) = w2(w_in(i), wp);
    // PV int W2/(W' - W) dW = -PV int W2/(W - W') dW
    PvResult pv = pv_integrate(kernel, w_in(0), d_in, wp);
    pv_warn |= pv.resolution_warning;
    q_wp(j) = -pv.value.real();
  }
  out.pv_resolution_warning = pv_warn;

  out.alpha_nir.grid = nir_grid;
  out.alpha_nir.values.resize(nir_grid.size());
  for (Eigen::Index i = 0; i < nir_grid.size(); ++i) {
    const double w = nir_grid.points(i);
    complex<double> h_delta{0.0, 0.0}, h_pv{0.0, 0.0};
    for (int j = 0; j < n_prime; ++j) {
      const complex<double> epc = std::conj(probe.spectral_amplitude(w - wp_grid(j)));
      h_delta += wdiag(j) * epc * g_wp(j);
      h_pv += epc * g_wp(j) * q_wp(j);
    }
    h_delta *= pi * dwp;
    h_pv *= -I * dwp;
    out.alpha_nir.values(i) = -I * root_c * k2 * std::sqrt(w) * (h_delta + h_pv);
  }
  out.beta_nir.grid = nir_grid;
  out.beta_nir.values = -out.alpha_nir.values;
}

DetectionModes compute_detection_modes(const ProbePulse& probe,
                                       const CrystalParams& crystal,
                                       const FrequencyGrid& mir_grid,
                                       const FrequencyGrid& nir_grid) {
  DetectionModes m;
  detection_mode_mir(probe, crystal, mir_grid, m);
  detection_modes_nir(probe, crystal, nir_grid, m);
  return m;
}

double waveplate_phi(double theta) {
  if (theta < pi / 2 - 1e-12 || theta > 3 * pi / 2 + 1e-12)
    throw std::invalid_argument("waveplate_phi: theta must lie in [pi/2, 3pi/2]");
  return std::asin(std::clamp(-std::sqrt(2.0) * std::cos(theta / 2.0), -1.0, 1.0));
}

double cascading_term(double theta, const DetectionModes& modes) {
  return cascading_term_phi(waveplate_phi(theta), modes);
}

double cascading_term_phi(double phi, const DetectionModes& modes) {
  const Eigen::ArrayXd integrand =
      modes.alpha0.values.real() * modes.alpha_nir.values.imag();
  return 2.0 * std::sin(2.0 * phi) * modes.alpha0.grid.integrate(integrand.eval());
}

double interaction_strength_r(const ProbePulse& probe, const CrystalParams& crystal) {
  // E0 = |int_0^inf E_p(w) dw|
  const double dw = probe.bandwidth;
  const int n = 4096;
  const double lo = std::max(probe.omega_c - 8.0 * dw, 0.0);
  const double hi = probe.omega_c + 8.0 * dw;
  const double h = (hi - lo) / (n - 1);
  complex<double> acc{0.0, 0.0};
  for (int i = 0; i < n; ++i) acc += probe.spectral_amplitude(lo + i * h);
  const double e0 = std::abs(acc * h);
  return std::abs(crystal.d_eff * crystal.length / (crystal.n_nir * c0)) *
         std::sqrt(probe.omega_c * probe.bandwidth) * e0;
}

} // namespace eostk
