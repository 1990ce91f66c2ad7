#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eostk/rng.hpp"
#include "eostk/singleport.hpp"
#include "test_helpers.hpp"

#include <Eigen/Dense>
#include <cmath>

using namespace eostk;

TEST_CASE("signal_variance: decomposition identity and theta = pi structure") {
  auto app = testutil::standard_apparatus(48, 384);
  auto vac = vacuum_state(app.mir);
  auto v = signal_variance(vac, app.modes, app.probe, M_PI, 0.0);
  CHECK(v.phi == doctest::Approx(0.0));
  CHECK(v.nir_cascading == doctest::Approx(0.0));
  CHECK(std::abs(v.mir) < 1e-12 * v.shot); // sin^2(0) kills the MIR pickup as well
  CHECK(v.shot == doctest::Approx(app.probe.photon_number));
  CHECK(std::abs(v.total - (v.shot + v.mir + v.nir_cascading)) < 1e-10 * v.total);

  CHECK_THROWS_AS(signal_variance(vac, app.modes, app.probe, 0.2, 0.0),
                  std::invalid_argument);
}

TEST_CASE("signal_variance: vacuum MIR at theta = pi/2 gives mir / N = 8 <p^2>_vac") {
  auto app = testutil::standard_apparatus(48, 384);
  auto vac = vacuum_state(app.mir);
  // theta = pi/2 maps to phi = -pi/2, so the sin^2 factor is exactly 1
  auto v = signal_variance(vac, app.modes, app.probe, M_PI / 2, 0.0);
  const double p2 = 0.5 * app.modes.mir_commutator();
  CHECK(v.mir / app.probe.photon_number == doctest::Approx(8.0 * p2).epsilon(1e-10));
  CHECK(std::abs(v.total - (v.shot + v.mir + v.nir_cascading)) < 1e-10 * v.total);
}

TEST_CASE("signal_variance: squeezed input drops below the vacuum MIR variance") {
  auto app = testutil::standard_apparatus(48, 384);
  auto gen =
      generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.01, app.mir), 1.0, app.mir);
  auto vac = vacuum_state(app.mir);
  const double theta = 3 * M_PI / 4;
  double best_sq = std::numeric_limits<double>::max(), vac_mir = 0.0;
  for (double t = -100.0; t <= 100.0; t += 2.0) {
    best_sq = std::min(best_sq, signal_variance(gen.state, app.modes, app.probe, theta, t).mir);
    vac_mir = signal_variance(vac, app.modes, app.probe, theta, t).mir;
  }
  CHECK(best_sq < vac_mir);
}

TEST_CASE("extract_mir_variance: algebraic inverse of the decomposition") {
  auto app = testutil::standard_apparatus(48, 384);
  auto vac = vacuum_state(app.mir);
  // pure shot noise at theta = pi maps to zero
  CHECK(extract_mir_variance(app.probe.photon_number, M_PI, app.modes, app.probe) ==
        doctest::Approx(0.0).scale(app.probe.photon_number));
  for (double theta : {M_PI / 2, 3 * M_PI / 4, 1.1 * M_PI}) {
    auto v = signal_variance(vac, app.modes, app.probe, theta, 7.0);
    CHECK(extract_mir_variance(v.total, theta, app.modes, app.probe) ==
          doctest::Approx(v.mir).epsilon(1e-10).scale(v.shot));
  }
}

TEST_CASE("MIR part scales as sin^2 phi, cascading as sin 2 phi (regression fit)") {
  auto app = testutil::standard_apparatus(48, 384);
  auto vac = vacuum_state(app.mir);
  const int n = 41;
  Eigen::VectorXd mir(n), casc(n), s2(n), s2p(n);
  for (int i = 0; i < n; ++i) {
    const double theta = M_PI / 2 + i * (M_PI / (n - 1));
    auto v = signal_variance(vac, app.modes, app.probe, theta, 0.0);
    const double phi = v.phi;
    mir(i) = v.mir;
    casc(i) = v.nir_cascading;
    s2(i) = std::pow(std::sin(phi), 2);
    s2p(i) = std::sin(2.0 * phi);
  }
  // one-parameter least squares against each basis function
  const double a = s2.dot(mir) / s2.dot(s2);
  const double b = s2p.dot(casc) / s2p.dot(s2p);
  CHECK((mir - a * s2).norm() / mir.norm() < 1e-8);
  CHECK((casc - b * s2p).norm() / casc.norm() < 1e-8);
  CHECK(a > 0.0);
}

TEST_CASE("extract_mir_variance: Monte-Carlo totals land within 3 standard errors") {
  auto app = testutil::standard_apparatus(32, 256);
  auto vac = vacuum_state(app.mir);
  const double theta = 3 * M_PI / 4;
  auto v = signal_variance(vac, app.modes, app.probe, theta, 0.0);

  // draw Gaussian signal samples with the analytic total variance
  const long m = 1000000;
  GaussianRng rng(sub_seed(20240817ull, 1));
  const double sigma = std::sqrt(v.total);
  double acc = 0.0;
  for (long i = 0; i < m; ++i) {
    const double x = sigma * rng();
    acc += x * x;
  }
  const double total_est = acc / m;
  const double extracted = extract_mir_variance(total_est, theta, app.modes, app.probe);
  // variance of the sample variance of a Gaussian: 2 sigma^4 / m
  const double se = std::sqrt(2.0 / m) * v.total;
  CHECK(std::abs(extracted - v.mir) < 3.0 * se);
}
