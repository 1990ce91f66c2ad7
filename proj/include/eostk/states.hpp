#pragma once

#include "eostk/grids.hpp"
#include <Eigen/Dense>
#include <functional>

namespace eostk {

/// Multimode Gaussian state over the discrete MIR modes a_k = sqrt(dW) a(W_k)
/// (so [a_k, a_k^dagger] = 1 on the grid).
///   M_kl = <a_k^dagger a_l>, A_kl = <a_k a_l>  (central moments),
///   mean_k = <a_k>.
struct GaussianState {
  FrequencyGrid grid;
  Eigen::MatrixXcd m;     // Hermitian PSD
  Eigen::MatrixXcd a;     // symmetric
  Eigen::VectorXcd mean;

  Eigen::Index modes() const { return m.rows(); }
};

/// Real quadrature covariance in (x_1..x_n, p_1..p_n) ordering, vacuum = I/2.
Eigen::MatrixXd to_covariance(const GaussianState& s);

/// Overwrite (m, a) of the state from a real covariance matrix.
void from_covariance(const Eigen::MatrixXd& v, GaussianState& s);

struct PhysicalityReport {
  bool pass = false;
  double min_symplectic_eigenvalue = 0.0; // min eig of V + (i/2) J, >= -1e-8 required
};

/// Bosonic uncertainty check on the full covariance matrix.
PhysicalityReport physicality_check(const GaussianState& s);

/// Project a covariance onto the physical cone: clip negative eigenvalues
/// of V + (i/2) J at zero and take the real symmetric part back.
/// The alternating projection roughly halves the violation per pass, so
/// the cap is sized for gross violations; clean inputs exit immediately.
Eigen::MatrixXd project_physical(const Eigen::MatrixXd& v, int max_iter = 100);

GaussianState vacuum_state(const FrequencyGrid& grid);

/// Displaced vacuum; amplitude(W) is the continuum coherent amplitude
/// <a(W)>, stored as mean_k = sqrt(dW) * amplitude(W_k).
GaussianState coherent_state(const FrequencyGrid& grid,
                             const std::function<std::complex<double>(double)>& amplitude);

/// Bogoliubov transformation a_out = E a + F a^dagger.
struct SymplecticPropagator {
  Eigen::MatrixXcd e;
  Eigen::MatrixXcd f;

  /// residual of the Bogoliubov identities (E E^H - F F^H = I, E F^T = F E^T)
  double symplectic_residual() const;
  /// residual of S J S^T = J in the real quadrature representation
  double symplectic_residual_real() const;
};

GaussianState apply_propagator(const SymplecticPropagator& s, const GaussianState& in);

/// Displace a state by delta (added to mean; second moments untouched).
GaussianState displace(const GaussianState& s, const Eigen::VectorXcd& delta);

/// Single-cycle driving field E_d(t) = E_d Gamma t exp(-(Gamma t)^2) with
/// analytic spectrum E_d(w) = i E_d sqrt(pi) w / (2 Gamma^2) exp(-w^2/(4 Gamma^2)).
struct DrivingField {
  double amplitude = 1.0;  // V/m (shape only; the coupling is rescaled anyway)
  double rate = 0.0;       // Gamma, rad/fs
  double r_g = 0.0;        // effective generation strength actually realized
  ComplexSpectrum spectrum; // sampled on the MIR grid

  std::complex<double> spectral_amplitude(double omega) const;
  double time_domain(double t) const;
};

DrivingField make_driving_field(double gamma, const FrequencyGrid& grid);

struct SqueezedGeneration {
  GaussianState state;
  SymplecticPropagator propagator;
  DrivingField driving;
  double coupling = 0.0;            // the scale factor applied to the generator
  Eigen::VectorXd squeezing;        // Bloch-Messiah r_j, descending
};

/// Multimode squeezed vacuum from the quadratic sum/difference-frequency
/// Hamiltonian
///   H ~ int dW dW' sqrt(W W') [E_d(W+W') a^dag(W) a^dag(W')
///                              + E_d(W-W') a^dag(W) a(W')] + H.c.
/// with the sqrt(W W') weight tapered by a Gaussian conversion-bandwidth
/// envelope of width 2*Gamma (an untapered difference-frequency block keeps
/// up-converting photons until they pile at the grid edge). The overall
/// coupling is solved so that
/// the largest Bloch-Messiah squeezing parameter equals r_g. Aborts if
/// the propagator's symplecticity residual exceeds 1e-8.
SqueezedGeneration generate_squeezed_qlp(const DrivingField& driving, double r_g,
                                         const FrequencyGrid& grid);

/// Analytic <p(t1) p(t2)> of the MIR detection quadrature
/// p(t) = (i/sqrt2)[alpha^dag(t) - alpha(t)] built from alpha_MIR.
/// Full (non-central) moment; complex in general.
std::complex<double> mir_p_quadrature_moments(const GaussianState& s,
                                              const ComplexSpectrum& alpha_mir,
                                              double t1, double t2);

/// <p(t)> for the same detection quadrature.
double mir_p_mean(const GaussianState& s, const ComplexSpectrum& alpha_mir, double t);

/// All pairs <p(t_i) p(t_j)> over a time grid in one shot (a handful of
/// matrix products instead of O(n_t^2) separate contractions).
Eigen::MatrixXcd mir_p_two_time_matrix(const GaussianState& s,
                                       const ComplexSpectrum& alpha_mir,
                                       const TimeGrid& tg);

/// Vacuum part 1/2 int |alpha(W)|^2 e^{iW(t2-t1)} dW, needed both in the
/// coherence-matrix estimator and as the vacuum reference.
std::complex<double> vacuum_p_moment(const ComplexSpectrum& alpha_mir, double t1, double t2);

} // namespace eostk
