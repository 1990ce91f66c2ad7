#include "eostk/pv.hpp"

#include <stdexcept>
#include <cmath>

namespace eostk {

namespace {

template <typename Scalar>
PvResult pv_impl(const Eigen::Array<Scalar, Eigen::Dynamic, 1>& f,
                 double x_start, double dx, double x0) {
  const Eigen::Index n = f.size();
  if (n < 5 || dx <= 0.0)
    throw std::invalid_argument("pv_integrate: need at least 5 samples and dx > 0");

  auto x_at = [&](Eigen::Index i) { return x_start + static_cast<double>(i) * dx; };
  const double x_end = x_at(n - 1);
  if (x0 < x_start - 0.5 * dx || x0 > x_end + 0.5 * dx)
    throw std::invalid_argument("pv_integrate: pole lies outside the grid");

  // points closer than one step to the pole are excluded from the sum
  Eigen::Index i_lo = n, i_hi = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(x_at(i) - x0) < dx * (1.0 - 1e-12)) {
      i_lo = std::min(i_lo, i);
      i_hi = std::max(i_hi, i);
    }
  }
  if (i_hi < 0) { // pole in the half-cell margin beyond the last point
    i_lo = i_hi = (x0 < x_start) ? 0 : n - 1;
  }

  std::complex<double> sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i >= i_lo && i <= i_hi) continue;
    // trapezoid endpoint weights: keeps the smooth part second order
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += w * std::complex<double>(f(i)) / (x_at(i) - x0);
  }
  sum *= dx;

  // local quadratic model around the pole for the excluded interval
  Eigen::Index ic = std::clamp<Eigen::Index>(
      static_cast<Eigen::Index>(std::lround((x0 - x_start) / dx)), 1, n - 2);
  const std::complex<double> fm(f(ic - 1)), fc(f(ic)), fp(f(ic + 1));
  const double u = (x0 - x_at(ic)) / dx; // in [-1/2, 1/2]
  const std::complex<double> d1 = (fp - fm) / 2.0;
  const std::complex<double> d2 = fp - 2.0 * fc + fm;
  const std::complex<double> f0 = fc + d1 * u + 0.5 * d2 * u * u;
  const std::complex<double> fp0 = (d1 + d2 * u) / dx;

  // excluded region [lo, hi] = the cells owned by the excluded points;
  // PV of f0 + fp0*(x - x0) over it is analytic
  const double lo = x_at(i_lo) - 0.5 * dx;
  const double hi = x_at(i_hi) + 0.5 * dx;
  PvResult r;
  r.value = sum + f0 * std::log(std::abs((hi - x0) / (x0 - lo))) + fp0 * (hi - lo);

  const double scale = std::max({std::abs(fm), std::abs(fc), std::abs(fp)});
  if (scale > 0.0 && std::abs(fp - fm) > 0.1 * scale) r.resolution_warning = true;
  return r;
}

} // namespace

PvResult pv_integrate(const Eigen::ArrayXcd& f, double x_start, double dx, double x0) {
  return pv_impl<std::complex<double>>(f, x_start, dx, x0);
}

PvResult pv_integrate(const Eigen::ArrayXd& f, double x_start, double dx, double x0) {
  return pv_impl<double>(f, x_start, dx, x0);
}

} // namespace eostk
