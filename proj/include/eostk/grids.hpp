#pragma once

#include <Eigen/Core>
#include <complex>

namespace eostk {

enum class Band { MIR, NIR };

/// Uniform angular-frequency grid (rad/fs). MIR grids are half-step
/// offset from zero: points[k] = (k + 1/2) * step, so endpoint-singular
/// factors like sqrt(Omega) and 1/alpha(Omega) are never evaluated at 0.
struct FrequencyGrid {
  Eigen::ArrayXd points;
  double step = 0.0;
  Band band = Band::MIR;
  double omega_max = 0.0; // upper band edge for MIR grids

  Eigen::Index size() const { return points.size(); }

  /// step * sum(values): rectangle quadrature consistent with the
  /// half-step offset (midpoint rule over [0, omega_max] for MIR).
  double integrate(const Eigen::ArrayXd& values) const;
  std::complex<double> integrate(const Eigen::ArrayXcd& values) const;

  void validate() const; // throws std::invalid_argument on violation
};

/// Uniform time grid (fs), symmetric about t = 0.
struct TimeGrid {
  Eigen::ArrayXd points;
  double step = 0.0;

  Eigen::Index size() const { return points.size(); }
  double span() const { return points(points.size() - 1) - points(0); }

  double integrate(const Eigen::ArrayXd& values) const;
  std::complex<double> integrate(const Eigen::ArrayXcd& values) const;

  void validate() const;
};

/// Complex amplitudes sampled on a frequency grid. Units depend on
/// context: V fs/m for field spectra, fs^(1/2) for detection-mode
/// amplitudes.
struct ComplexSpectrum {
  FrequencyGrid grid;
  Eigen::ArrayXcd values;

  std::complex<double> norm2() const { return grid.integrate(values.abs2().eval()); }
};

/// MIR frequency grid on (0, omega_max] plus a time grid of n_time
/// points spanning t_span, centered at 0. Rejects time grids too coarse
/// to resolve omega_max (Nyquist: dt <= pi/omega_max).
std::pair<FrequencyGrid, TimeGrid> make_grids(double omega_max, int n_freq,
                                              double t_span, int n_time);

/// Grids whose discrete exponentials are exactly orthogonal
/// (step_t * step_w * n_time = 2*pi), so the two-dimensional transform
/// pair used in the moment inversion round-trips to machine precision.
/// n_time = 2*n_freq + 2 keeps every frequency sum/difference appearing
/// in the inversion below the aliasing order.
std::pair<FrequencyGrid, TimeGrid> make_matched_grids(double omega_max, int n_freq);

/// NIR grid covering [center - half_width, center + half_width].
FrequencyGrid make_nir_grid(double center, double half_width, int n_points);

} // namespace eostk
