#include "eostk/config.hpp"
#include "eostk/constants.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace eostk {

using constants::thz;
using constants::um;
using constants::pm_per_v;
using constants::pi;

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (grid_omega_max_thz <= 0.0) fail("grid.omega_max_thz must be positive");
  if (grid_n_freq < 8) fail("grid.n_freq must be at least 8");
  if (!grid_matched) {
    if (grid_t_span_fs <= 0.0 || grid_n_time < 8)
      fail("unmatched grids need grid.t_span_fs > 0 and grid.n_time >= 8");
  }
  if (nir_n_points < 16) fail("nir.n_points must be at least 16");
  if (nir_half_width_bandwidths < 4.0) fail("nir.half_width_bandwidths must be >= 4");
  if (probe_duration_fs <= 0.0) fail("probe.duration_fs must be positive");
  if (probe_center_thz <= 0.0) fail("probe.center_thz must be positive");
  const bool has_n = probe_photon_number > 0.0;
  const bool has_amp = probe_amplitude_v_per_m != 0.0;
  if (has_n == has_amp)
    fail("set exactly one of probe.photon_number, probe.amplitude_v_per_m");
  if (crystal_length_um <= 0.0 || crystal_radius_um <= 0.0)
    fail("crystal dimensions must be positive");
  if (state_source == StateSource::squeezed) {
    if (state_gamma_thz <= 0.0) fail("state.gamma_thz must be positive");
    if (state_r_g <= 0.0) fail("state.r_g must be positive");
  }
  if (state_source == StateSource::import_file && state_file.empty())
    fail("state.source = import requires state.file");
  if (measure_mode == MeasureMode::sampled && measure_samples < 1)
    fail("measure.samples must be at least 1");
  if (std::abs(std::sin(measure_phi1_rad)) < 1e-3 ||
      std::abs(std::sin(measure_phi2_rad)) < 1e-3)
    fail("|sin(measure.phi)| must be at least 1e-3");
  if (singleport_theta_rad < 0.5 * pi || singleport_theta_rad > 1.5 * pi)
    fail("singleport.theta_rad must lie in [pi/2, 3pi/2]");
  if (reconstruct_mask_floor <= 0.0 || reconstruct_mask_floor >= 1.0)
    fail("reconstruct.mask_floor must be in (0, 1)");
}

CrystalParams ScenarioConfig::crystal() const {
  CrystalParams c;
  c.length = crystal_length_um * um;
  c.n_nir = crystal_n_nir;
  c.group_index = crystal_group_index;
  c.d_eff = crystal_d_eff_pm_per_v * pm_per_v;
  c.area = pi * (crystal_radius_um * um) * (crystal_radius_um * um);
  c.lorentz_eps_inf = crystal_lorentz_eps_inf;
  c.lorentz_w_lo = crystal_lorentz_w_lo;
  c.lorentz_w_to = crystal_lorentz_w_to;
  c.lorentz_damping = crystal_lorentz_damping;
  return c;
}

std::pair<FrequencyGrid, TimeGrid> ScenarioConfig::grids() const {
  const double omega_max = grid_omega_max_thz * thz;
  if (grid_matched) return make_matched_grids(omega_max, grid_n_freq);
  return make_grids(omega_max, grid_n_freq, grid_t_span_fs, grid_n_time);
}

FrequencyGrid ScenarioConfig::nir_grid() const {
  const double omega_c = probe_center_thz * thz;
  const double bw = 2.0 / probe_duration_fs;
  return make_nir_grid(omega_c, nir_half_width_bandwidths * bw, nir_n_points);
}

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: key " + key + " expects a boolean, got '" + v + "'");
}

double parse_double(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key " + key + " expects a number, got '" + v + "'");
  }
  if (pos != v.size())
    throw std::invalid_argument("config: key " + key + " has trailing junk: '" + v + "'");
  return out;
}

long parse_long(const std::string& v, const std::string& key) {
  const double d = parse_double(v, key);
  const long l = static_cast<long>(d);
  if (static_cast<double>(l) != d)
    throw std::invalid_argument("config: key " + key + " expects an integer, got '" + v + "'");
  return l;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not a key = value pair");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
      throw std::invalid_argument("config: duplicate key " + key);

    if (key == "grid.omega_max_thz") cfg.grid_omega_max_thz = parse_double(value, key);
    else if (key == "grid.n_freq") cfg.grid_n_freq = static_cast<int>(parse_long(value, key));
    else if (key == "grid.matched") cfg.grid_matched = parse_bool(value, key);
    else if (key == "grid.t_span_fs") cfg.grid_t_span_fs = parse_double(value, key);
    else if (key == "grid.n_time") cfg.grid_n_time = static_cast<int>(parse_long(value, key));
    else if (key == "nir.n_points") cfg.nir_n_points = static_cast<int>(parse_long(value, key));
    else if (key == "nir.half_width_bandwidths") cfg.nir_half_width_bandwidths = parse_double(value, key);
    else if (key == "probe.center_thz") cfg.probe_center_thz = parse_double(value, key);
    else if (key == "probe.duration_fs") cfg.probe_duration_fs = parse_double(value, key);
    else if (key == "probe.photon_number") cfg.probe_photon_number = parse_double(value, key);
    else if (key == "probe.amplitude_v_per_m") {
      cfg.probe_amplitude_v_per_m = parse_double(value, key);
      cfg.probe_photon_number = 0.0; // the amplitude takes over
    }
    else if (key == "crystal.length_um") cfg.crystal_length_um = parse_double(value, key);
    else if (key == "crystal.n_nir") cfg.crystal_n_nir = parse_double(value, key);
    else if (key == "crystal.group_index") cfg.crystal_group_index = parse_double(value, key);
    else if (key == "crystal.d_eff_pm_per_v") cfg.crystal_d_eff_pm_per_v = parse_double(value, key);
    else if (key == "crystal.radius_um") cfg.crystal_radius_um = parse_double(value, key);
    else if (key == "crystal.lorentz_eps_inf") cfg.crystal_lorentz_eps_inf = parse_double(value, key);
    else if (key == "crystal.lorentz_w_lo") cfg.crystal_lorentz_w_lo = parse_double(value, key);
    else if (key == "crystal.lorentz_w_to") cfg.crystal_lorentz_w_to = parse_double(value, key);
    else if (key == "crystal.lorentz_damping") cfg.crystal_lorentz_damping = parse_double(value, key);
    else if (key == "state.source") {
      if (value == "vacuum") cfg.state_source = StateSource::vacuum;
      else if (value == "coherent") cfg.state_source = StateSource::coherent;
      else if (value == "squeezed") cfg.state_source = StateSource::squeezed;
      else if (value == "import") cfg.state_source = StateSource::import_file;
      else throw std::invalid_argument("config: state.source must be vacuum|coherent|squeezed|import");
    }
    else if (key == "state.gamma_thz") cfg.state_gamma_thz = parse_double(value, key);
    else if (key == "state.r_g") cfg.state_r_g = parse_double(value, key);
    else if (key == "state.coherent_scale") cfg.state_coherent_scale = parse_double(value, key);
    else if (key == "state.coherent_gamma_thz") cfg.state_coherent_gamma_thz = parse_double(value, key);
    else if (key == "state.file") cfg.state_file = value;
    else if (key == "measure.mode") {
      if (value == "analytic") cfg.measure_mode = MeasureMode::analytic;
      else if (value == "sampled") cfg.measure_mode = MeasureMode::sampled;
      else throw std::invalid_argument("config: measure.mode must be analytic|sampled");
    }
    else if (key == "measure.samples") cfg.measure_samples = parse_long(value, key);
    else if (key == "measure.seed") cfg.measure_seed = static_cast<std::uint64_t>(parse_long(value, key));
    else if (key == "measure.phi1_rad") cfg.measure_phi1_rad = parse_double(value, key);
    else if (key == "measure.phi2_rad") cfg.measure_phi2_rad = parse_double(value, key);
    else if (key == "singleport.theta_rad") cfg.singleport_theta_rad = parse_double(value, key);
    else if (key == "singleport.t_d_fs") cfg.singleport_t_d_fs = parse_double(value, key);
    else if (key == "reconstruct.mask_floor") cfg.reconstruct_mask_floor = parse_double(value, key);
    else if (key == "reconstruct.mode_cutoff") cfg.reconstruct_mode_cutoff = parse_double(value, key);
    else throw std::invalid_argument("config: unknown key " + key);
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

} // namespace eostk
