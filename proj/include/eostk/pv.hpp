#pragma once

#include <Eigen/Core>
#include <complex>

namespace eostk {

struct PvResult {
  std::complex<double> value{0.0, 0.0};
  /// set when the integrand varies by more than 10% across the excluded
  /// cell, i.e. the grid does not resolve the pole neighbourhood
  bool resolution_warning = false;
};

/// Cauchy principal value of int f(x)/(x - x0) dx over the uniform grid
/// x[i] = x_start + i*dx. A symmetric interval around the pole is
/// excluded from the quadrature sum; its contribution is restored
/// analytically from the local expansion f(x) ~ f(x0) + f'(x0)(x - x0)
/// (the constant term integrates to zero by symmetry, the linear term
/// to f'(x0) * interval width).
PvResult pv_integrate(const Eigen::ArrayXcd& f, double x_start, double dx, double x0);

PvResult pv_integrate(const Eigen::ArrayXd& f, double x_start, double dx, double x0);

} // namespace eostk
