#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eostk/reconstruct.hpp"
#include "eostk/states.hpp"
#include "test_helpers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

using namespace eostk;
using std::complex;

namespace {

const complex<double> I{0.0, 1.0};

FrequencyGrid small_mir(int n = 48) {
  return make_matched_grids(2.0 * M_PI * 0.1, n).first;
}

double logdet_2v(const GaussianState& s) {
  Eigen::MatrixXd v2 = 2.0 * to_covariance(s);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(v2);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v2.rows(); ++i)
    acc += std::log(std::abs(lu.matrixLU()(i, i)));
  return acc;
}

} // namespace

TEST_CASE("vacuum_state: zero moments, physical, covariance I/2") {
  auto g = small_mir();
  auto s = vacuum_state(g);
  CHECK(s.m.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.a.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.mean.cwiseAbs().maxCoeff() == 0.0);
  auto rep = physicality_check(s);
  CHECK(rep.pass);
  CHECK(rep.min_symplectic_eigenvalue >= -1e-8);
  Eigen::MatrixXd v = to_covariance(s);
  CHECK((v - 0.5 * Eigen::MatrixXd::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("coherent_state: zero amplitude is vacuum; mean echoes the sampled amplitude") {
  auto g = small_mir();
  auto zero = coherent_state(g, [](double) { return complex<double>(0.0, 0.0); });
  CHECK(zero.mean.cwiseAbs().maxCoeff() == 0.0);

  auto amp = [](double w) {
    return complex<double>(std::exp(-std::pow((w - 0.1) / 0.05, 2)), 0.1 * w);
  };
  auto s = coherent_state(g, amp);
  const double root_dw = std::sqrt(g.step);
  for (Eigen::Index k = 0; k < g.size(); k += 7)
    CHECK(std::abs(s.mean(k) - root_dw * amp(g.points(k))) < 1e-14);
  // second moments about the mean are vacuum
  CHECK(s.m.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.a.cwiseAbs().maxCoeff() == 0.0);
  CHECK(physicality_check(s).pass);
}

TEST_CASE("covariance round trip") {
  auto g = small_mir(16);
  auto gen = generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.01, g), 0.7, g);
  GaussianState s = gen.state;
  Eigen::MatrixXd v = to_covariance(s);
  GaussianState back = vacuum_state(g);
  from_covariance(v, back);
  CHECK((back.m - s.m).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back.a - s.a).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("physicality_check: rejects a negative photon-number matrix") {
  auto g = small_mir(12);
  auto s = vacuum_state(g);
  s.m = -0.1 * Eigen::MatrixXcd::Identity(g.size(), g.size());
  CHECK_FALSE(physicality_check(s).pass);
}

TEST_CASE("project_physical: moves an unphysical covariance onto the cone") {
  auto g = small_mir(12);
  auto s = vacuum_state(g);
  s.m = -0.1 * Eigen::MatrixXcd::Identity(g.size(), g.size());
  Eigen::MatrixXd fixed = project_physical(to_covariance(s));
  from_covariance(fixed, s);
  CHECK(physicality_check(s).pass);
}

TEST_CASE("driving field: spectrum is consistent with the time-domain form") {
  auto g = small_mir(128);
  const double gamma = 2.0 * M_PI * 0.01;
  auto d = make_driving_field(gamma, g);
  // real field: E(t) = (1/pi) Re int_0^inf E(w) e^{-iwt} dw
  for (double t : {-60.0, -20.0, 0.0, 15.0, 45.0}) {
    Eigen::ArrayXcd ph = (g.points.cast<complex<double>>() * (-I * t)).exp();
    const double rebuilt = (g.integrate((d.spectrum.values * ph).eval())).real() / M_PI;
    CHECK(std::abs(rebuilt - d.time_domain(t)) < 1e-3); // peak amplitude is ~0.43

  }
  CHECK_THROWS_AS(make_driving_field(-1.0, g), std::invalid_argument);
}

TEST_CASE("generate_squeezed_qlp: symplectic, normalized, physical, pure") {
  auto g = small_mir(64);
  auto gen = generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.01, g), 1.0, g);
  CHECK(gen.propagator.symplectic_residual() < 1e-8);
  CHECK(gen.propagator.symplectic_residual_real() < 1e-7);
  CHECK(gen.squeezing(0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(physicality_check(gen.state).pass);
  // purity: det(2V) = 1 for S |0>
  CHECK(std::abs(logdet_2v(gen.state)) < 1e-6);
  CHECK_THROWS_AS(
      generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.01, g), 0.0, g),
      std::invalid_argument);
}

TEST_CASE("generate_squeezed_qlp: M eigenvalues equal sinh^2 of the squeezing spectrum") {
  auto g = small_mir(48);
  auto gen = generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.01, g), 0.8, g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen.state.m);
  Eigen::VectorXd eig = es.eigenvalues().reverse();
  for (Eigen::Index j = 0; j < 5; ++j)
    CHECK(eig(j) ==
          doctest::Approx(std::pow(std::sinh(gen.squeezing(j)), 2)).epsilon(1e-8).scale(1e-12));
}

TEST_CASE("generate_squeezed_qlp: mode structure follows the driving spectrum") {
  auto g = small_mir(128);
  const double gamma = 2.0 * M_PI * 0.01; // 10 THz
  auto gen = generate_squeezed_qlp(make_driving_field(gamma, g), 1.0, g);
  auto modes = principal_modes(gen.state);
  REQUIRE(modes.size() >= 3);

  // first mode peaks near the driving spectrum peak (sqrt(2) Gamma)
  Eigen::Index pk;
  modes[0].f.values.abs().maxCoeff(&pk);
  CHECK(g.points(pk) == doctest::Approx(std::sqrt(2.0) * gamma).epsilon(0.25));

  // higher modes gain nodes: 0, 1, 2 sign changes where the amplitude matters
  for (int j = 0; j < 3; ++j) {
    const auto& f = modes[j].f.values;
    const double floor = 0.05 * f.abs().maxCoeff();
    int nodes = 0;
    double prev = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
      const double v = f(k).real();
      if (std::abs(v) < floor) continue;
      if (prev != 0.0 && v * prev < 0.0) ++nodes;
      prev = v;
    }
    CHECK(nodes == j);
  }

  // the state is confined well inside the grid band
  double high = 0.0;
  for (Eigen::Index k = g.size() * 9 / 10; k < g.size(); ++k)
    high += gen.state.m(k, k).real();
  CHECK(high < 1e-8 * gen.state.m.real().trace());
}

TEST_CASE("displacement commutes with the generated propagator") {
  auto g = small_mir(24);
  auto gen = generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.01, g), 0.5, g);
  Eigen::VectorXcd delta(g.size());
  for (Eigen::Index k = 0; k < g.size(); ++k)
    delta(k) = std::exp(-std::pow((g.points(k) - 0.1) / 0.04, 2)) * (1.0 + 0.3 * I);

  GaussianState displaced_then_s =
      apply_propagator(gen.propagator, displace(vacuum_state(g), delta));
  Eigen::VectorXcd transformed =
      gen.propagator.e * delta + gen.propagator.f * delta.conjugate();
  GaussianState s_then_displaced =
      displace(apply_propagator(gen.propagator, vacuum_state(g)), transformed);

  CHECK((displaced_then_s.mean - s_then_displaced.mean).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((displaced_then_s.m - s_then_displaced.m).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((displaced_then_s.a - s_then_displaced.a).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("mir_p_quadrature_moments: vacuum reproduces the coherence kernel") {
  auto app = testutil::standard_apparatus(48, 256);
  auto vac = vacuum_state(app.mir);
  for (auto [t1, t2] : {std::pair{0.0, 0.0}, {10.0, -25.0}, {-40.0, 13.0}}) {
    const auto direct = vacuum_p_moment(app.modes.alpha_mir, t1, t2);
    const auto full = mir_p_quadrature_moments(vac, app.modes.alpha_mir, t1, t2);
    CHECK(std::abs(full - direct) < 1e-12);
    // and the kernel itself matches a hand quadrature
    Eigen::ArrayXcd ph =
        (app.mir.points.cast<complex<double>>() * (I * (t2 - t1))).exp();
    const auto hand =
        0.5 * app.mir.integrate((app.modes.alpha_mir.values.abs2().cast<complex<double>>() * ph).eval());
    CHECK(std::abs(direct - hand) < 1e-12);
  }
  // equal-time limit: half the commutator norm
  CHECK(mir_p_quadrature_moments(vac, app.modes.alpha_mir, 5.0, 5.0).real() ==
        doctest::Approx(0.5 * app.modes.mir_commutator()).epsilon(1e-12));
}

TEST_CASE("mir_p_quadrature_moments: squeezed state dips below vacuum") {
  auto app = testutil::standard_apparatus(48, 256);
  auto gen = generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.01, app.mir), 1.0,
                                   app.mir);
  const double vac_var =
      mir_p_quadrature_moments(vacuum_state(app.mir), app.modes.alpha_mir, 0.0, 0.0)
          .real();
  double best = vac_var;
  for (double t = -100.0; t <= 100.0; t += 2.0)
    best = std::min(best,
                    mir_p_quadrature_moments(gen.state, app.modes.alpha_mir, t, t).real());
  CHECK(best < vac_var);
}

TEST_CASE("mir_p_two_time_matrix agrees with the pairwise contraction") {
  auto app = testutil::standard_apparatus(32, 256);
  auto gen = generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.01, app.mir), 0.9,
                                   app.mir);
  // give the state a mean as well, to exercise the first-moment path
  Eigen::VectorXcd delta = Eigen::VectorXcd::Constant(app.mir.size(), 0.3 + 0.1 * I);
  GaussianState s = displace(gen.state, delta);
  Eigen::MatrixXcd bulk = mir_p_two_time_matrix(s, app.modes.alpha_mir, app.tg);
  for (Eigen::Index i = 0; i < app.tg.size(); i += 13)
    for (Eigen::Index j = 0; j < app.tg.size(); j += 17) {
      const auto one = mir_p_quadrature_moments(s, app.modes.alpha_mir, app.tg.points(i),
                                                app.tg.points(j));
      CHECK(std::abs(bulk(i, j) - one) < 1e-12 * (1.0 + std::abs(one)));
    }
}

TEST_CASE("grid mismatch is rejected") {
  auto app = testutil::standard_apparatus(32, 256);
  auto other = small_mir(24);
  CHECK_THROWS_AS(
      mir_p_quadrature_moments(vacuum_state(other), app.modes.alpha_mir, 0.0, 0.0),
      std::invalid_argument);
}
