#pragma once

#include "eostk/grids.hpp"

namespace eostk {

// Sign convention, fixed repo-wide:
//   E(w) = int E(t) e^{+iwt} dt,   E(t) = 1/(2pi) int E(w) e^{-iwt} dw.

/// F(w) = dt * sum_t f(t) e^{+iwt}, evaluated at the given target
/// frequencies (any sign).
Eigen::ArrayXcd dft1(const TimeGrid& tg, const Eigen::ArrayXcd& f,
                     const Eigen::ArrayXd& target);

/// Two-dimensional Riemann-sum transform of C(t1, t2):
///   F(w1, w2) = dt^2 * sum_{t1,t2} C(t1,t2) e^{i(w1 t1 + w2 t2)},
/// evaluated on the Cartesian product of the two target frequency lists.
Eigen::MatrixXcd dft2(const TimeGrid& tg, const Eigen::MatrixXcd& c,
                      const Eigen::ArrayXd& targets1,
                      const Eigen::ArrayXd& targets2);

/// Inverse of dft2 on matched grids:
///   C(t1,t2) = (dw/2pi)^2 * sum_{w1,w2} F(w1,w2) e^{-i(w1 t1 + w2 t2)}.
Eigen::MatrixXcd idft2(const TimeGrid& tg, const Eigen::MatrixXcd& f,
                       const Eigen::ArrayXd& freqs1,
                       const Eigen::ArrayXd& freqs2, double freq_step);

} // namespace eostk
