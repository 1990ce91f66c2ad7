#include "eostk/fourier.hpp"
#include "eostk/constants.hpp"

#include <stdexcept>

namespace eostk {

namespace {

// phases(t, w) = e^{i s w t} as a (n_time x n_freq) matrix
Eigen::MatrixXcd phase_matrix(const Eigen::ArrayXd& t, const Eigen::ArrayXd& w, double sign) {
  Eigen::MatrixXcd ph(t.size(), w.size());
  for (Eigen::Index j = 0; j < w.size(); ++j)
    ph.col(j) = (std::complex<double>(0, sign * w(j)) * t).exp().matrix();
  return ph;
}

} // namespace

Eigen::ArrayXcd dft1(const TimeGrid& tg, const Eigen::ArrayXcd& f,
                     const Eigen::ArrayXd& target) {
  if (f.size() != tg.size())
    throw std::invalid_argument("dft1: sample count does not match time grid");
  Eigen::MatrixXcd ph = phase_matrix(tg.points, target, +1.0);
  return (tg.step * (ph.transpose() * f.matrix())).array();
}

Eigen::MatrixXcd dft2(const TimeGrid& tg, const Eigen::MatrixXcd& c,
                      const Eigen::ArrayXd& targets1,
                      const Eigen::ArrayXd& targets2) {
  if (c.rows() != tg.size() || c.cols() != tg.size())
    throw std::invalid_argument("dft2: matrix shape does not match time grid");
  Eigen::MatrixXcd p1 = phase_matrix(tg.points, targets1, +1.0);
  Eigen::MatrixXcd p2 = phase_matrix(tg.points, targets2, +1.0);
  return tg.step * tg.step * (p1.transpose() * c * p2);
}

Eigen::MatrixXcd idft2(const TimeGrid& tg, const Eigen::MatrixXcd& f,
                       const Eigen::ArrayXd& freqs1,
                       const Eigen::ArrayXd& freqs2, double freq_step) {
  if (f.rows() != freqs1.size() || f.cols() != freqs2.size())
    throw std::invalid_argument("idft2: matrix shape does not match frequency lists");
  Eigen::MatrixXcd p1 = phase_matrix(tg.points, freqs1, -1.0);
  Eigen::MatrixXcd p2 = phase_matrix(tg.points, freqs2, -1.0);
  const double w = freq_step / (2.0 * constants::pi);
  return w * w * (p1 * f * p2.transpose());
}

} // namespace eostk
