#include "eostk/twoport.hpp"
#include "eostk/constants.hpp"
#include "eostk/fourier.hpp"
#include "eostk/rng.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace eostk {

using constants::pi;
using std::complex;

void ChannelConfig::validate() const {
  if (std::abs(std::sin(phi1)) < 1e-12 || std::abs(std::sin(phi2)) < 1e-12)
    throw std::invalid_argument("ChannelConfig: sin(phi) must be nonzero");
  if (samples < 1)
    throw std::invalid_argument("ChannelConfig: samples >= 1 required");
}

Eigen::Matrix2d measured_covariance(const GaussianState& state,
                                    const DetectionModes& modes,
                                    const ChannelConfig& config) {
  config.validate();
  const double s1 = std::sin(config.phi1), s2 = std::sin(config.phi2);
  const complex<double> full11 =
      mir_p_quadrature_moments(state, modes.alpha_mir, config.t1, config.t1);
  const complex<double> full22 =
      mir_p_quadrature_moments(state, modes.alpha_mir, config.t2, config.t2);
  const complex<double> full12 =
      mir_p_quadrature_moments(state, modes.alpha_mir, config.t1, config.t2);
  const double vac0 = vacuum_p_moment(modes.alpha_mir, 0.0, 0.0).real();
  const double vac12 = vacuum_p_moment(modes.alpha_mir, config.t1, config.t2).real();

  Eigen::Matrix2d sigma;
  sigma(0, 0) = 2.0 * s1 * s1 * (full11.real() + vac0) + 0.5 +
                0.5 * cascading_term_phi(config.phi1, modes);
  sigma(1, 1) = 2.0 * s2 * s2 * (full22.real() + vac0) + 0.5 +
                0.5 * cascading_term_phi(config.phi2, modes);
  sigma(0, 1) = sigma(1, 0) = s1 * s2 * (full12.real() - vac12);
  return sigma;
}

Eigen::Vector2d measured_mean(const GaussianState& state,
                              const DetectionModes& modes,
                              const ChannelConfig& config) {
  Eigen::Vector2d mu;
  mu(0) = std::sqrt(2.0) * std::sin(config.phi1) *
          mir_p_mean(state, modes.alpha_mir, config.t1);
  mu(1) = std::sqrt(2.0) * std::sin(config.phi2) *
          mir_p_mean(state, modes.alpha_mir, config.t2);
  return mu;
}

Eigen::ArrayX2d sample_joint(const Eigen::Matrix2d& second_moments,
                             const Eigen::Vector2d& mean, long m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample_joint: need m >= 1");
  // undo the halved off-diagonal convention and subtract the means to get
  // the true central covariance of (x1, x2)
  Eigen::Matrix2d cov;
  cov(0, 0) = second_moments(0, 0) - mean(0) * mean(0);
  cov(1, 1) = second_moments(1, 1) - mean(1) * mean(1);
  cov(0, 1) = cov(1, 0) = 2.0 * second_moments(0, 1) - mean(0) * mean(1);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  if (es.eigenvalues().minCoeff() < -1e-10 * std::abs(es.eigenvalues().maxCoeff()))
    throw std::invalid_argument("sample_joint: covariance not positive semidefinite");
  Eigen::Matrix2d root = es.eigenvectors() *
                         es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                         es.eigenvectors().transpose();

  GaussianRng rng(seed);
  Eigen::ArrayX2d out(m, 2);
  for (long i = 0; i < m; ++i) {
    Eigen::Vector2d z(rng(), rng());
    Eigen::Vector2d x = mean + root * z;
    out(i, 0) = x(0);
    out(i, 1) = x(1);
  }
  return out;
}

std::vector<BatchRow> analytic_batches(const GaussianState& state,
                                       const DetectionModes& modes,
                                       const TimeGrid& tg, double phi1, double phi2,
                                       double photon_number) {
  const Eigen::Index n = tg.size();
  const double s1 = std::sin(phi1), s2 = std::sin(phi2);
  const Eigen::MatrixXcd full = mir_p_two_time_matrix(state, modes.alpha_mir, tg);
  const double vac0 = vacuum_p_moment(modes.alpha_mir, 0.0, 0.0).real();
  Eigen::ArrayXd vac_row(n); // vacuum moment depends on t2 - t1 only
  for (Eigen::Index j = 0; j < n; ++j)
    vac_row(j) = vacuum_p_moment(modes.alpha_mir, tg.points(0), tg.points(j)).real();
  const double casc1 = cascading_term_phi(phi1, modes);
  const double casc2 = cascading_term_phi(phi2, modes);

  std::vector<BatchRow> rows;
  rows.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      BatchRow r;
      r.t1 = tg.points(i);
      r.t2 = tg.points(j);
      r.phi1 = phi1;
      r.phi2 = phi2;
      r.samples = 0;
      r.cov_x1x1 = 2.0 * s1 * s1 * (full(i, i).real() + vac0) + 0.5 + 0.5 * casc1;
      r.cov_x2x2 = 2.0 * s2 * s2 * (full(j, j).real() + vac0) + 0.5 + 0.5 * casc2;
      const double vac12 = vac_row(std::abs(j - i)); // even in the time difference
      r.cov_x1x2 = 2.0 * s1 * s2 * (full(i, j).real() - vac12);
      rows.push_back(r);
    }
  }
  (void)photon_number;
  return rows;
}

std::vector<BatchRow> sampled_batches(const GaussianState& state,
                                      const DetectionModes& modes,
                                      const TimeGrid& tg, double phi1, double phi2,
                                      double photon_number, long m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sampled_batches: need m >= 1");
  const Eigen::Index n = tg.size();
  std::vector<BatchRow> rows(static_cast<std::size_t>(n * n));
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::uint64_t pair_index = static_cast<std::uint64_t>(i * n + j);
      ChannelConfig cfg;
      cfg.t1 = tg.points(i);
      cfg.t2 = tg.points(j);
      cfg.phi1 = phi1;
      cfg.phi2 = phi2;
      cfg.photon_number = photon_number;
      cfg.samples = m;
      const Eigen::Matrix2d sigma = measured_covariance(state, modes, cfg);
      const Eigen::Vector2d mu = measured_mean(state, modes, cfg);
      const Eigen::ArrayX2d x = sample_joint(sigma, mu, m, sub_seed(seed, pair_index));
      BatchRow r;
      r.t1 = cfg.t1;
      r.t2 = cfg.t2;
      r.phi1 = phi1;
      r.phi2 = phi2;
      r.samples = m;
      r.cov_x1x1 = x.col(0).square().mean();
      r.cov_x1x2 = (x.col(0) * x.col(1)).mean();
      r.cov_x2x2 = x.col(1).square().mean();
      rows[pair_index] = r;
    }
  }
  return rows;
}

double CoherenceMatrix::hermiticity_residual() const {
  return (values - values.adjoint()).cwiseAbs().maxCoeff();
}

CoherenceMatrix estimate_coherence_matrix(const std::vector<BatchRow>& rows,
                                          const TimeGrid& tg,
                                          const ComplexSpectrum& alpha_mir) {
  const Eigen::Index n = tg.size();
  if (rows.size() != static_cast<std::size_t>(n * n))
    throw std::invalid_argument("estimate_coherence_matrix: need one row per delay pair");

  CoherenceMatrix c;
  c.grid = tg;
  c.values.resize(n, n);
  c.provenance = Provenance::analytic;
  for (const BatchRow& r : rows)
    if (r.samples > 0) {
      c.provenance = Provenance::sampled;
      c.samples = r.samples;
    }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const BatchRow& r = rows[static_cast<std::size_t>(i * n + j)];
      if (std::abs(r.t1 - tg.points(i)) > 1e-9 || std::abs(r.t2 - tg.points(j)) > 1e-9)
        throw std::invalid_argument("estimate_coherence_matrix: row order does not match the delay grid");
      const double s1 = std::sin(r.phi1), s2 = std::sin(r.phi2);
      if (std::abs(s1) < 1e-3 || std::abs(s2) < 1e-3)
        throw std::invalid_argument("estimate_coherence_matrix: |sin phi| < 1e-3 is ill-conditioned");
      c.values(i, j) = r.cov_x1x2 / (2.0 * s1 * s2) +
                       vacuum_p_moment(alpha_mir, r.t1, r.t2);
    }
  }
  return c;
}

void write_batch_csv(const std::string& path, const std::vector<BatchRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_batch_csv: cannot open " + path);
  out << "t1_fs,t2_fs,phi1,phi2,M,cov_x1x1,cov_x1x2,cov_x2x2\n";
  out << std::setprecision(17);
  for (const BatchRow& r : rows)
    out << r.t1 << ',' << r.t2 << ',' << r.phi1 << ',' << r.phi2 << ','
        << r.samples << ',' << r.cov_x1x1 << ',' << r.cov_x1x2 << ','
        << r.cov_x2x2 << '\n';
  if (!out) throw std::runtime_error("write_batch_csv: write failed for " + path);
}

std::vector<BatchRow> read_batch_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_batch_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_batch_csv: empty file " + path);
  if (line.rfind("t1_fs,", 0) != 0)
    throw std::runtime_error("read_batch_csv: unexpected header in " + path);
  std::vector<BatchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    BatchRow r;
    char comma;
    ss >> r.t1 >> comma >> r.t2 >> comma >> r.phi1 >> comma >> r.phi2 >> comma >>
        r.samples >> comma >> r.cov_x1x1 >> comma >> r.cov_x1x2 >> comma >> r.cov_x2x2;
    if (ss.fail()) throw std::runtime_error("read_batch_csv: malformed row in " + path);
    rows.push_back(r);
  }
  return rows;
}

CalibrationResult calibrate_alpha_mir(const CoherenceMatrix& reference,
                                      const ComplexSpectrum& alpha_ref,
                                      double mask_fraction) {
  const FrequencyGrid& fg = alpha_ref.grid;
  const TimeGrid& tg = reference.grid;
  const double match = fg.step * tg.step * static_cast<double>(tg.size());
  if (std::abs(match - 2.0 * pi) > 1e-9 * 2.0 * pi)
    throw std::invalid_argument(
        "calibrate_alpha_mir: grids are not transform-matched (dW*dt*n_time != 2pi)");

  const double peak = alpha_ref.values.abs().maxCoeff();
  if (peak <= 0.0)
    throw std::invalid_argument("calibrate_alpha_mir: reference amplitude is zero");
  const double floor = mask_fraction * peak;

  // the vacuum delta-term of C carries e^{-iW(t1 - t2)}, so it lives at
  // the (+W, -W) corner together with the mean-field contribution
  const Eigen::MatrixXcd f =
      dft2(tg, reference.values, fg.points, (-fg.points).eval());

  CalibrationResult res;
  const Eigen::Index n = fg.size();
  res.alpha2 = Eigen::ArrayXd::Zero(n);
  res.alpha_mir.grid = fg;
  res.alpha_mir.values = Eigen::ArrayXcd::Zero(n);
  const double four_pi2 = (2.0 * pi) * (2.0 * pi);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(alpha_ref.values(k)) < floor) {
      res.masked.push_back(k);
      continue;
    }
    const double denom =
        four_pi2 * (0.5 * std::norm(alpha_ref.values(k)) + 0.5 / fg.step);
    res.alpha2(k) = f(k, k).real() / denom;
    res.alpha_mir.values(k) = std::sqrt(std::max(0.0, res.alpha2(k)));
  }
  if (res.masked.size() == static_cast<std::size_t>(n))
    throw std::invalid_argument(
        "calibrate_alpha_mir: reference amplitude below threshold on the whole band");
  return res;
}

} // namespace eostk
