#include "eostk/states.hpp"
#include "eostk/constants.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <stdexcept>
#include <cmath>

namespace eostk {

using constants::pi;
using std::complex;

static const complex<double> I{0.0, 1.0};

Eigen::MatrixXd to_covariance(const GaussianState& s) {
  const Eigen::Index n = s.modes();
  const Eigen::MatrixXd re_m = s.m.real();
  const Eigen::MatrixXd im_m = s.m.imag();
  const Eigen::MatrixXd re_a = s.a.real();
  const Eigen::MatrixXd im_a = s.a.imag();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  Eigen::MatrixXd v(2 * n, 2 * n);
  v.topLeftCorner(n, n) = re_a + re_m + 0.5 * id;
  v.bottomRightCorner(n, n) = -re_a + re_m + 0.5 * id;
  Eigen::MatrixXd v_xp = im_a + im_m;
  v.topRightCorner(n, n) = v_xp;
  v.bottomLeftCorner(n, n) = v_xp.transpose();
  return 0.5 * (v + v.transpose()).eval();
}

void from_covariance(const Eigen::MatrixXd& v, GaussianState& s) {
  const Eigen::Index n = s.modes();
  if (v.rows() != 2 * n || v.cols() != 2 * n)
    throw std::invalid_argument("from_covariance: size mismatch");
  const Eigen::MatrixXd v_xx = v.topLeftCorner(n, n);
  const Eigen::MatrixXd v_pp = v.bottomRightCorner(n, n);
  const Eigen::MatrixXd v_xp = v.topRightCorner(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  const Eigen::MatrixXd re_m = 0.5 * (v_xx + v_pp - id);
  const Eigen::MatrixXd im_m = 0.5 * (v_xp - v_xp.transpose());
  const Eigen::MatrixXd re_a = 0.5 * (v_xx - v_pp);
  const Eigen::MatrixXd im_a = 0.5 * (v_xp + v_xp.transpose());
  s.m = re_m.cast<complex<double>>() + I * im_m.cast<complex<double>>();
  s.a = re_a.cast<complex<double>>() + I * im_a.cast<complex<double>>();
}

static Eigen::MatrixXd symplectic_form(Eigen::Index n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return j;
}

PhysicalityReport physicality_check(const GaussianState& s) {
  const Eigen::Index n = s.modes();
  const Eigen::MatrixXd v = to_covariance(s);
  Eigen::MatrixXcd h = v.cast<complex<double>>() +
                       0.5 * I * symplectic_form(n).cast<complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  PhysicalityReport r;
  r.min_symplectic_eigenvalue = es.eigenvalues().minCoeff();
  r.pass = r.min_symplectic_eigenvalue >= -1e-8;
  return r;
}

Eigen::MatrixXd project_physical(const Eigen::MatrixXd& v, int max_iter) {
  const Eigen::Index n2 = v.rows();
  const Eigen::MatrixXcd ij = 0.5 * I * symplectic_form(n2 / 2).cast<complex<double>>();
  Eigen::MatrixXd out = 0.5 * (v + v.transpose());
  for (int it = 0; it < max_iter; ++it) {
    Eigen::MatrixXcd h = out.cast<complex<double>>() + ij;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.eigenvalues().minCoeff() >= -1e-12) break;
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXcd hp = es.eigenvectors() * lam.asDiagonal() *
                          es.eigenvectors().adjoint();
    out = (hp - ij).real();
    out = 0.5 * (out + out.transpose()).eval();
  }
  return out;
}

GaussianState vacuum_state(const FrequencyGrid& grid) {
  GaussianState s;
  s.grid = grid;
  const Eigen::Index n = grid.size();
  s.m = Eigen::MatrixXcd::Zero(n, n);
  s.a = Eigen::MatrixXcd::Zero(n, n);
  s.mean = Eigen::VectorXcd::Zero(n);
  return s;
}

GaussianState coherent_state(const FrequencyGrid& grid,
                             const std::function<complex<double>(double)>& amplitude) {
  GaussianState s = vacuum_state(grid);
  const double root_dw = std::sqrt(grid.step);
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    s.mean(k) = root_dw * amplitude(grid.points(k));
  return s;
}

double SymplecticPropagator::symplectic_residual() const {
  const Eigen::Index n = e.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  double r1 = (e * e.adjoint() - f * f.adjoint() - id).cwiseAbs().maxCoeff();
  double r2 = (e * f.transpose() - f * e.transpose()).cwiseAbs().maxCoeff();
  return std::max(r1, r2);
}

double SymplecticPropagator::symplectic_residual_real() const {
  const Eigen::Index n = e.rows();
  // real quadrature representation S: x' = (Re(E+F)) x + ...
  Eigen::MatrixXd s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = (e + f).real();
  s.topRightCorner(n, n) = -(e - f).imag();
  s.bottomLeftCorner(n, n) = (e + f).imag();
  s.bottomRightCorner(n, n) = (e - f).real();
  const Eigen::MatrixXd j = symplectic_form(n);
  return (s * j * s.transpose() - j).cwiseAbs().maxCoeff();
}

GaussianState apply_propagator(const SymplecticPropagator& s, const GaussianState& in) {
  GaussianState out = in;
  const Eigen::MatrixXcd& e = s.e;
  const Eigen::MatrixXcd& f = s.f;
  // a' = E a + F a^dag
  const Eigen::Index n = e.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd mt1 = in.m.transpose() + id; // <a a^dag>
  out.m = e.conjugate() * in.m * e.transpose() +
          e.conjugate() * in.a.conjugate() * f.transpose() +
          f.conjugate() * in.a * e.transpose() +
          f.conjugate() * mt1 * f.transpose();
  out.a = e * in.a * e.transpose() +
          e * mt1 * f.transpose() +
          f * in.m * e.transpose() +
          f * in.a.conjugate() * f.transpose();
  out.mean = e * in.mean + f * in.mean.conjugate();
  return out;
}

GaussianState displace(const GaussianState& s, const Eigen::VectorXcd& delta) {
  GaussianState out = s;
  out.mean += delta;
  return out;
}

complex<double> DrivingField::spectral_amplitude(double omega) const {
  const double g2 = rate * rate;
  return I * amplitude * std::sqrt(pi) * omega / (2.0 * g2) *
         std::exp(-omega * omega / (4.0 * g2));
}

double DrivingField::time_domain(double t) const {
  const double u = rate * t;
  return amplitude * u * std::exp(-u * u);
}

DrivingField make_driving_field(double gamma, const FrequencyGrid& grid) {
  if (gamma <= 0.0)
    throw std::invalid_argument("make_driving_field: rate must be positive");
  DrivingField d;
  d.rate = gamma;
  d.spectrum.grid = grid;
  d.spectrum.values.resize(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    d.spectrum.values(k) = d.spectral_amplitude(grid.points(k));
  return d;
}

namespace {

// generator blocks of the quadratic Hamiltonian at unit coupling.  The
// sqrt(w w') field weight is tapered by a Gaussian envelope of width 2*Gamma:
// with a hard grid cutoff and no taper, the difference-frequency block keeps
// ladder-converting photons upward until they reflect off the band edge and
// the dominant modes localize there instead of around the driving spectrum.
// The envelope plays the role of the finite conversion bandwidth a real
// crystal would impose.
void generator_blocks(const DrivingField& d, const FrequencyGrid& g,
                      Eigen::MatrixXcd& b, Eigen::MatrixXcd& dd) {
  const Eigen::Index n = g.size();
  const double wc = 2.0 * d.rate;
  b.resize(n, n);
  dd.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double wk = g.points(k);
    for (Eigen::Index l = 0; l < n; ++l) {
      const double wl = g.points(l);
      const double s = g.step * std::sqrt(wk * wl) *
                       std::exp(-(wk * wk + wl * wl) / (2.0 * wc * wc));
      const complex<double> p = s * d.spectral_amplitude(wk + wl);
      const complex<double> q = s * d.spectral_amplitude(wk - wl);
      dd(k, l) = 2.0 * p;              // pair-creation block, i * (real symmetric)
      b(k, l) = q + std::conj(s * d.spectral_amplitude(wl - wk)); // Hermitian
    }
  }
  b = 0.5 * (b + b.adjoint()).eval();
  dd = 0.5 * (dd + dd.transpose()).eval();
}

SymplecticPropagator propagate(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& dd,
                               double coupling) {
  const Eigen::Index n = b.rows();
  Eigen::MatrixXcd k(2 * n, 2 * n);
  k.topLeftCorner(n, n) = -I * b;
  k.topRightCorner(n, n) = -I * dd;
  k.bottomLeftCorner(n, n) = I * dd.conjugate();
  k.bottomRightCorner(n, n) = I * b.conjugate();
  Eigen::MatrixXcd s = (coupling * k).exp();
  SymplecticPropagator out;
  out.e = s.topLeftCorner(n, n);
  out.f = s.topRightCorner(n, n);
  return out;
}

Eigen::VectorXd bloch_messiah_r(const SymplecticPropagator& s) {
  // svd of F gives sinh(r_j)
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s.f);
  Eigen::VectorXd r = svd.singularValues();
  for (Eigen::Index j = 0; j < r.size(); ++j) r(j) = std::asinh(r(j));
  return r;
}

} // namespace

SqueezedGeneration generate_squeezed_qlp(const DrivingField& driving, double r_g,
                                         const FrequencyGrid& grid) {
  if (r_g <= 0.0)
    throw std::invalid_argument("generate_squeezed_qlp: r_g must be positive");
  Eigen::MatrixXcd b, dd;
  generator_blocks(driving, grid, b, dd);
  const double dnorm = dd.cwiseAbs().maxCoeff();
  if (dnorm <= 0.0)
    throw std::invalid_argument("generate_squeezed_qlp: driving field has no overlap with the grid");

  auto r_max_at = [&](double zeta) {
    return bloch_messiah_r(propagate(b, dd, zeta)).maxCoeff();
  };

  // bracket the coupling, then bisect: r_max is monotone in zeta here
  double lo = 0.0, hi = r_g / dnorm;
  while (r_max_at(hi) < r_g) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6 / dnorm)
      throw std::runtime_error("generate_squeezed_qlp: coupling search failed to bracket");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (r_max_at(mid) < r_g ? lo : hi) = mid;
  }
  const double zeta = 0.5 * (lo + hi);

  SqueezedGeneration out;
  out.driving = driving;
  out.driving.r_g = r_g;
  out.coupling = zeta;
  out.propagator = propagate(b, dd, zeta);
  if (out.propagator.symplectic_residual() > 1e-8)
    throw std::runtime_error("generate_squeezed_qlp: propagator lost symplecticity");
  out.squeezing = bloch_messiah_r(out.propagator);
  std::sort(out.squeezing.data(), out.squeezing.data() + out.squeezing.size(),
            std::greater<double>());
  out.state = apply_propagator(out.propagator, vacuum_state(grid));
  return out;
}

complex<double> mir_p_quadrature_moments(const GaussianState& s,
                                         const ComplexSpectrum& alpha_mir,
                                         double t1, double t2) {
  const FrequencyGrid& g = s.grid;
  const Eigen::Index n = g.size();
  if (alpha_mir.values.size() != n)
    throw std::invalid_argument("mir_p_quadrature_moments: grid mismatch");
  const double root_dw = std::sqrt(g.step);
  Eigen::VectorXcd v1(n), v2(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const complex<double> a = root_dw * alpha_mir.values(k);
    v1(k) = a * std::exp(-I * g.points(k) * t1);
    v2(k) = a * std::exp(-I * g.points(k) * t2);
  }
  const Eigen::VectorXcd c1 = v1.conjugate(), c2 = v2.conjugate();
  // p(t) = (i/sqrt2) sum_k [ v_k(t)^* a_k^dag - v_k(t) a_k ]
  complex<double> central =
      -0.5 * (c1.transpose() * s.a.conjugate() * c2 -
              c1.transpose() * s.m * v2 -
              (v1.transpose() * s.m.transpose() * c2 + v1.transpose() * c2) +
              v1.transpose() * s.a * v2)(0, 0);
  const double m1 = mir_p_mean(s, alpha_mir, t1);
  const double m2 = mir_p_mean(s, alpha_mir, t2);
  return central + m1 * m2;
}

double mir_p_mean(const GaussianState& s, const ComplexSpectrum& alpha_mir, double t) {
  const FrequencyGrid& g = s.grid;
  const double root_dw = std::sqrt(g.step);
  complex<double> acc{0.0, 0.0};
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    const complex<double> v = root_dw * alpha_mir.values(k) *
                              std::exp(-I * g.points(k) * t);
    acc += std::conj(v) * std::conj(s.mean(k)) - v * s.mean(k);
  }
  return (I / std::sqrt(2.0) * acc).real();
}

Eigen::MatrixXcd mir_p_two_time_matrix(const GaussianState& s,
                                       const ComplexSpectrum& alpha_mir,
                                       const TimeGrid& tg) {
  const FrequencyGrid& g = s.grid;
  const Eigen::Index n = g.size();
  const Eigen::Index nt = tg.size();
  if (alpha_mir.values.size() != n)
    throw std::invalid_argument("mir_p_two_time_matrix: grid mismatch");
  const double root_dw = std::sqrt(g.step);

  Eigen::MatrixXcd v(n, nt); // v(k, i) = sqrt(dw) alpha_k e^{-i W_k t_i}
  Eigen::VectorXd mean_p(nt);
  for (Eigen::Index i = 0; i < nt; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      v(k, i) = root_dw * alpha_mir.values(k) * std::exp(-I * g.points(k) * tg.points(i));

  const Eigen::MatrixXcd vc = v.conjugate();
  const Eigen::Index nmodes = n;
  const Eigen::MatrixXcd mt1 = s.m.transpose() + Eigen::MatrixXcd::Identity(nmodes, nmodes);
  Eigen::MatrixXcd c = -0.5 * (vc.transpose() * s.a.conjugate() * vc -
                               vc.transpose() * s.m * v -
                               v.transpose() * mt1 * vc +
                               v.transpose() * s.a * v);
  for (Eigen::Index i = 0; i < nt; ++i)
    mean_p(i) = mir_p_mean(s, alpha_mir, tg.points(i));
  c += (mean_p * mean_p.transpose()).cast<complex<double>>();
  return c;
}

complex<double> vacuum_p_moment(const ComplexSpectrum& alpha_mir, double t1, double t2) {
  const FrequencyGrid& g = alpha_mir.grid;
  Eigen::ArrayXcd integrand =
      alpha_mir.values.abs2().cast<complex<double>>() *
      ((g.points * (t2 - t1)).cast<complex<double>>() * I).exp();
  return 0.5 * g.integrate(integrand);
}

} // namespace eostk
