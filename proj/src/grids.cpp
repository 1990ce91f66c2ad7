#include "eostk/grids.hpp"
#include "eostk/constants.hpp"

#include <stdexcept>
#include <cmath>

namespace eostk {

namespace {

void check_uniform(const Eigen::ArrayXd& p, double step) {
  if (p.size() < 2 || step <= 0.0)
    throw std::invalid_argument("grid needs at least 2 points and a positive step");
  for (Eigen::Index i = 1; i < p.size(); ++i) {
    double d = p(i) - p(i - 1);
    if (std::abs(d - step) > 1e-12 * step)
      throw std::invalid_argument("grid spacing is not uniform");
  }
}

} // namespace

double FrequencyGrid::integrate(const Eigen::ArrayXd& values) const {
  return step * values.sum();
}

std::complex<double> FrequencyGrid::integrate(const Eigen::ArrayXcd& values) const {
  return step * values.sum();
}

void FrequencyGrid::validate() const {
  check_uniform(points, step);
  if (band == Band::MIR) {
    if (!(points(0) > 0.0 && points(0) <= step + 1e-15))
      throw std::invalid_argument("MIR grid must start in (0, step]");
    if (points(points.size() - 1) > omega_max * (1.0 + 1e-12))
      throw std::invalid_argument("MIR grid exceeds omega_max");
  }
}

double TimeGrid::integrate(const Eigen::ArrayXd& values) const {
  return step * values.sum();
}

std::complex<double> TimeGrid::integrate(const Eigen::ArrayXcd& values) const {
  return step * values.sum();
}

void TimeGrid::validate() const {
  check_uniform(points, step);
  double mid = points(0) + points(points.size() - 1);
  if (std::abs(mid) > 1e-9 * span())
    throw std::invalid_argument("time grid must be symmetric about 0");
}

std::pair<FrequencyGrid, TimeGrid> make_grids(double omega_max, int n_freq,
                                              double t_span, int n_time) {
  if (omega_max <= 0.0)
    throw std::invalid_argument("omega_max must be positive");
  if (n_freq < 8 || n_time < 8)
    throw std::invalid_argument("need at least 8 frequency and 8 time points");

  const double dt = t_span / (n_time - 1);
  if (dt > constants::pi / omega_max * (1.0 + 1e-12))
    throw std::invalid_argument("time step violates Nyquist condition dt <= pi/omega_max");

  FrequencyGrid fg;
  fg.step = omega_max / n_freq;
  fg.band = Band::MIR;
  fg.omega_max = omega_max;
  fg.points = (Eigen::ArrayXd::LinSpaced(n_freq, 0, n_freq - 1) + 0.5) * fg.step;

  TimeGrid tg;
  tg.step = dt;
  tg.points = Eigen::ArrayXd::LinSpaced(n_time, 0, n_time - 1) * dt - t_span / 2.0;

  fg.validate();
  tg.validate();
  return {fg, tg};
}

std::pair<FrequencyGrid, TimeGrid> make_matched_grids(double omega_max, int n_freq) {
  if (omega_max <= 0.0 || n_freq < 8)
    throw std::invalid_argument("omega_max must be positive and n_freq >= 8");
  const int n_time = 2 * n_freq + 2;
  const double dw = omega_max / n_freq;
  const double dt = 2.0 * constants::pi / (n_time * dw);
  return make_grids(omega_max, n_freq, dt * (n_time - 1), n_time);
}

FrequencyGrid make_nir_grid(double center, double half_width, int n_points) {
  if (center - half_width <= 0.0)
    throw std::invalid_argument("NIR grid would reach non-positive frequencies");
  FrequencyGrid g;
  g.band = Band::NIR;
  g.step = 2.0 * half_width / (n_points - 1);
  g.points = Eigen::ArrayXd::LinSpaced(n_points, center - half_width, center + half_width);
  g.omega_max = center + half_width;
  g.validate();
  return g;
}

} // namespace eostk
