#pragma once

#include "eostk/grids.hpp"
#include "eostk/optics.hpp"

#include <cstdint>
#include <string>

namespace eostk {

enum class StateSource { vacuum, coherent, squeezed, import_file };
enum class MeasureMode { analytic, sampled };

/// Flat key=value scenario description. Keys carry units in their names
/// (e.g. probe.center_thz) so the THz / rad-fs mix cannot silently bite.
/// Unknown keys are rejected.
struct ScenarioConfig {
  // grid.*
  double grid_omega_max_thz = 100.0;
  int grid_n_freq = 128;
  bool grid_matched = true;      // transform-matched time grid (required for inversion)
  double grid_t_span_fs = 0.0;   // used when grid_matched = false
  int grid_n_time = 0;

  // nir.*
  int nir_n_points = 512;
  double nir_half_width_bandwidths = 6.0;

  // probe.*  (exactly one of photon_number / amplitude)
  double probe_center_thz = 255.0;
  double probe_duration_fs = 9.65;
  double probe_photon_number = 2.3e10;
  double probe_amplitude_v_per_m = 0.0; // 0 = unset

  // crystal.*
  double crystal_length_um = 7.0;
  double crystal_n_nir = 2.76;
  double crystal_group_index = 2.9;
  double crystal_d_eff_pm_per_v = -232.0;
  double crystal_radius_um = 3.0;
  double crystal_lorentz_eps_inf = 6.7;
  double crystal_lorentz_w_lo = 6.2;
  double crystal_lorentz_w_to = 5.3;
  double crystal_lorentz_damping = 0.09;

  // state.*
  StateSource state_source = StateSource::vacuum;
  double state_gamma_thz = 10.0;  // squeezed: driving-field rate
  double state_r_g = 1.0;         // squeezed: target generation strength
  double state_coherent_scale = 1.0;
  double state_coherent_gamma_thz = 10.0;
  std::string state_file;         // import

  // measure.*
  MeasureMode measure_mode = MeasureMode::analytic;
  long measure_samples = 100000;
  std::uint64_t measure_seed = 12345;
  double measure_phi1_rad = 1.5707963267948966;
  double measure_phi2_rad = 1.5707963267948966;

  // singleport.*
  double singleport_theta_rad = 2.356194490192345; // 3 pi / 4
  double singleport_t_d_fs = 0.0;

  // reconstruct.*
  double reconstruct_mask_floor = 1e-2;
  double reconstruct_mode_cutoff = 1e-3;

  void validate() const; // throws std::invalid_argument

  // Derived builders (validate first).
  CrystalParams crystal() const;
  std::pair<FrequencyGrid, TimeGrid> grids() const;
  FrequencyGrid nir_grid() const;
};

/// Parse "key = value" lines ('#' comments, blank lines allowed).
/// Unknown keys and duplicate keys raise std::invalid_argument.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

} // namespace eostk
