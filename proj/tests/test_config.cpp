#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eostk/config.hpp"
#include "eostk/state_io.hpp"
#include "test_helpers.hpp"

#include <cstdio>
#include <filesystem>

using namespace eostk;

TEST_CASE("parse_config: typed keys, comments, defaults") {
  const std::string text = R"(
# scenario for a coarse vacuum run
grid.omega_max_thz = 80
grid.n_freq = 64

probe.center_thz = 240     # slightly detuned probe
state.source = squeezed
state.gamma_thz = 12.5
measure.mode = sampled
measure.samples = 2000
measure.seed = 77
)";
  auto cfg = parse_config(text);
  CHECK(cfg.grid_omega_max_thz == 80.0);
  CHECK(cfg.grid_n_freq == 64);
  CHECK(cfg.probe_center_thz == 240.0);
  CHECK(cfg.state_source == StateSource::squeezed);
  CHECK(cfg.state_gamma_thz == 12.5);
  CHECK(cfg.measure_mode == MeasureMode::sampled);
  CHECK(cfg.measure_samples == 2000);
  CHECK(cfg.measure_seed == 77);
  // untouched keys keep their defaults
  CHECK(cfg.probe_duration_fs == 9.65);
  CHECK(cfg.crystal_n_nir == 2.76);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("parse_config: unknown and duplicate keys are rejected") {
  CHECK_THROWS_AS(parse_config("grid.omega_max_mhz = 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("grid.n_freq = 64\ngrid.n_freq = 128\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config("grid.n_freq = sixty\n"), std::invalid_argument);
}

TEST_CASE("validate: catches each module precondition") {
  ScenarioConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  auto broken = cfg;
  broken.grid_n_freq = 4;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  broken = cfg;
  broken.probe_photon_number = 2.3e10;
  broken.probe_amplitude_v_per_m = 60.0; // both set
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  broken = cfg;
  broken.probe_photon_number = 0.0; // neither set
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  broken = cfg;
  broken.state_source = StateSource::squeezed;
  broken.state_r_g = -1.0;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  broken = cfg;
  broken.measure_phi1_rad = 1e-5;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  broken = cfg;
  broken.singleport_theta_rad = 0.3;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  broken = cfg;
  broken.state_source = StateSource::import_file;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("config builders produce consistent grids and crystal") {
  ScenarioConfig cfg;
  cfg.grid_omega_max_thz = 100.0;
  cfg.grid_n_freq = 64;
  auto [mir, tg] = cfg.grids();
  CHECK(mir.size() == 64);
  CHECK(mir.omega_max == doctest::Approx(2.0 * M_PI * 0.1));
  // matched by default: exact transform-pair relation
  CHECK(mir.step * tg.step * tg.size() == doctest::Approx(2.0 * M_PI).epsilon(1e-12));

  auto c = cfg.crystal();
  CHECK(c.length == doctest::Approx(7e-6));
  CHECK(c.d_eff == doctest::Approx(-232e-12));
  CHECK(c.area == doctest::Approx(M_PI * 9e-12));
}

TEST_CASE("state JSON container round-trips losslessly") {
  auto g = make_matched_grids(2.0 * M_PI * 0.1, 16).first;
  auto gen = generate_squeezed_qlp(make_driving_field(2.0 * M_PI * 0.015, g), 0.6, g);
  GaussianState s = gen.state;
  s.mean(3) = std::complex<double>(0.25, -0.125);

  const std::string path =
      (std::filesystem::temp_directory_path() / "eostk_test_state.json").string();
  write_state_json(path, s);
  auto back = read_state_json(path);
  CHECK(back.grid.size() == s.grid.size());
  CHECK((back.grid.points == s.grid.points).all());
  CHECK(back.grid.step == s.grid.step);
  CHECK((back.m.array() == s.m.array()).all());
  CHECK((back.a.array() == s.a.array()).all());
  CHECK((back.mean.array() == s.mean.array()).all());
  std::remove(path.c_str());
}
