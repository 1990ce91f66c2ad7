// Scenario driver: config ingestion, pipeline orchestration, and
// figure-data export. Stages can run independently (each one consumes /
// produces the documented file formats) or together via `run`.

#include "eostk/config.hpp"
#include "eostk/constants.hpp"
#include "eostk/optics.hpp"
#include "eostk/reconstruct.hpp"
#include "eostk/singleport.hpp"
#include "eostk/state_io.hpp"
#include "eostk/states.hpp"
#include "eostk/twoport.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace eostk;
using constants::thz;

namespace {

struct Pipeline {
  ScenarioConfig cfg;
  CrystalParams crystal;
  FrequencyGrid mir;
  TimeGrid tg;
  FrequencyGrid nir;
  ProbePulse probe;
  DetectionModes modes;
};

Pipeline build_pipeline(const ScenarioConfig& cfg) {
  Pipeline p;
  p.cfg = cfg;
  p.crystal = cfg.crystal();
  std::tie(p.mir, p.tg) = cfg.grids();
  p.nir = cfg.nir_grid();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double amp = cfg.probe_amplitude_v_per_m != 0.0 ? cfg.probe_amplitude_v_per_m : nan;
  const double n = cfg.probe_photon_number > 0.0 ? cfg.probe_photon_number : nan;
  p.probe = gaussian_probe(amp, n, cfg.probe_center_thz * thz, cfg.probe_duration_fs,
                           p.crystal, p.nir);
  p.modes = compute_detection_modes(p.probe, p.crystal, p.mir, p.nir);
  return p;
}

std::function<std::complex<double>(double)> coherent_amplitude(const ScenarioConfig& cfg) {
  const double gamma = cfg.state_coherent_gamma_thz * thz;
  const double scale = cfg.state_coherent_scale;
  // unit-peak single-cycle-like spectral mean, real by convention
  return [gamma, scale](double w) {
    const double u = w / (std::sqrt(2.0) * gamma);
    return std::complex<double>(scale * u * std::exp(0.5 - 0.5 * u * u), 0.0);
  };
}

GaussianState make_state(const Pipeline& p) {
  switch (p.cfg.state_source) {
    case StateSource::vacuum:
      return vacuum_state(p.mir);
    case StateSource::coherent:
      return coherent_state(p.mir, coherent_amplitude(p.cfg));
    case StateSource::squeezed: {
      const DrivingField d = make_driving_field(p.cfg.state_gamma_thz * thz, p.mir);
      return generate_squeezed_qlp(d, p.cfg.state_r_g, p.mir).state;
    }
    case StateSource::import_file:
      return read_state_json(p.cfg.state_file);
  }
  throw std::invalid_argument("unknown state source");
}

void write_text(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

// ---- stages ---------------------------------------------------------------

void stage_detection_modes(const Pipeline& p, const fs::path& out) {
  std::ostringstream a;
  a << std::setprecision(17) << "Omega_over_2pi_THz,alpha_MIR\n";
  for (Eigen::Index k = 0; k < p.mir.size(); ++k)
    a << p.mir.points(k) / thz << ',' << p.modes.alpha_mir.values(k).real() << '\n';
  write_text(out / "alpha_mir.csv", a.str());

  std::ostringstream b;
  b << std::setprecision(17)
    << "omega_over_2pi_THz,re_alpha0,im_alpha0,re_alpha_NIR,im_alpha_NIR\n";
  for (Eigen::Index k = 0; k < p.nir.size(); ++k)
    b << p.nir.points(k) / thz << ',' << p.modes.alpha0.values(k).real() << ','
      << p.modes.alpha0.values(k).imag() << ',' << p.modes.alpha_nir.values(k).real()
      << ',' << p.modes.alpha_nir.values(k).imag() << '\n';
  write_text(out / "alpha_nir.csv", b.str());

  json j;
  j["alpha0_norm"] = p.modes.alpha0_norm();
  j["mir_commutator"] = p.modes.mir_commutator();
  j["nir_commutator"] = p.modes.nir_commutator();
  j["interaction_strength_r"] = interaction_strength_r(p.probe, p.crystal);
  j["probe_photon_number"] = p.probe.photon_number;
  j["probe_amplitude_v_per_m"] = p.probe.amplitude;
  j["pv_resolution_warning"] = p.modes.pv_resolution_warning;
  write_text(out / "detection_summary.json", j.dump(2) + "\n");
}

GaussianState stage_generate(const Pipeline& p, const fs::path& out) {
  GaussianState state = make_state(p);
  const PhysicalityReport phys = physicality_check(state);
  if (!phys.pass)
    throw std::runtime_error("generated state violates the uncertainty relation");
  write_state_json((out / "state.json").string(), state);
  return state;
}

std::vector<BatchRow> stage_simulate(const Pipeline& p, const GaussianState& state,
                                     const fs::path& out) {
  std::vector<BatchRow> rows;
  if (p.cfg.measure_mode == MeasureMode::analytic)
    rows = analytic_batches(state, p.modes, p.tg, p.cfg.measure_phi1_rad,
                            p.cfg.measure_phi2_rad, p.probe.photon_number);
  else
    rows = sampled_batches(state, p.modes, p.tg, p.cfg.measure_phi1_rad,
                           p.cfg.measure_phi2_rad, p.probe.photon_number,
                           p.cfg.measure_samples, p.cfg.measure_seed);
  const fs::path tmp = out / "batches.csv.tmp";
  write_batch_csv(tmp.string(), rows);
  fs::rename(tmp, out / "batches.csv");

  std::ostringstream m;
  m << std::setprecision(17) << "t_fs,mean_x\n";
  for (Eigen::Index i = 0; i < p.tg.size(); ++i) {
    ChannelConfig cfg;
    cfg.t1 = cfg.t2 = p.tg.points(i);
    cfg.phi1 = p.cfg.measure_phi1_rad;
    cfg.phi2 = p.cfg.measure_phi2_rad;
    m << p.tg.points(i) << ',' << measured_mean(state, p.modes, cfg)(0) << '\n';
  }
  write_text(out / "means.csv", m.str());
  return rows;
}

ReconstructionReport stage_reconstruct(const Pipeline& p, const fs::path& out) {
  const std::vector<BatchRow> rows = read_batch_csv((out / "batches.csv").string());
  const CoherenceMatrix c = estimate_coherence_matrix(rows, p.tg, p.modes.alpha_mir);
  const MomentInversion inv =
      invert_to_frequency_moments(c, p.modes.alpha_mir, p.cfg.reconstruct_mask_floor);

  std::vector<PrincipalMode> truth;
  const std::vector<PrincipalMode>* truth_ptr = nullptr;
  if (fs::exists(out / "state.json")) {
    const GaussianState ground = read_state_json((out / "state.json").string());
    truth = principal_modes(ground);
    truth_ptr = &truth;
  }
  ReconstructionReport rep = field_operator_report(inv, p.crystal, p.tg, truth_ptr,
                                                   p.cfg.reconstruct_mode_cutoff);
  write_text(out / "report.json", to_json_report(rep) + "\n");
  return rep;
}

void stage_calibrate(const Pipeline& p, const fs::path& out) {
  if (p.cfg.state_source != StateSource::coherent)
    throw std::invalid_argument("calibrate requires state.source = coherent");
  const GaussianState state = make_state(p);

  std::vector<BatchRow> rows;
  if (p.cfg.measure_mode == MeasureMode::analytic)
    rows = analytic_batches(state, p.modes, p.tg, p.cfg.measure_phi1_rad,
                            p.cfg.measure_phi2_rad, p.probe.photon_number);
  else
    rows = sampled_batches(state, p.modes, p.tg, p.cfg.measure_phi1_rad,
                           p.cfg.measure_phi2_rad, p.probe.photon_number,
                           p.cfg.measure_samples, p.cfg.measure_seed);
  const CoherenceMatrix c = estimate_coherence_matrix(rows, p.tg, p.modes.alpha_mir);

  ComplexSpectrum alpha_ref;
  alpha_ref.grid = p.mir;
  alpha_ref.values.resize(p.mir.size());
  const auto amp = coherent_amplitude(p.cfg);
  for (Eigen::Index k = 0; k < p.mir.size(); ++k)
    alpha_ref.values(k) = amp(p.mir.points(k));

  const CalibrationResult cal = calibrate_alpha_mir(c, alpha_ref);

  std::ostringstream s;
  s << std::setprecision(17)
    << "Omega_over_2pi_THz,alpha2_recovered,alpha2_direct,masked\n";
  for (Eigen::Index k = 0; k < p.mir.size(); ++k) {
    const bool masked =
        std::find(cal.masked.begin(), cal.masked.end(), k) != cal.masked.end();
    s << p.mir.points(k) / thz << ',' << cal.alpha2(k) << ','
      << std::norm(p.modes.alpha_mir.values(k)) << ',' << (masked ? 1 : 0) << '\n';
  }
  write_text(out / "calibration.csv", s.str());
}

void stage_export(const fs::path& out) {
  const fs::path report_path = out / "report.json";
  std::ifstream in(report_path);
  if (!in) throw std::invalid_argument("report stage needs " + report_path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const ReconstructionReport rep = from_json_report(ss.str());
  if (rep.modes.empty()) throw std::invalid_argument("report is empty; nothing to export");

  std::ostringstream spec;
  spec << std::setprecision(17) << "Omega_over_2pi_THz,mode_index,re_f,im_f\n";
  for (std::size_t j = 0; j < rep.modes.size(); ++j) {
    const ComplexSpectrum& f = rep.modes[j].f;
    for (Eigen::Index k = 0; k < f.grid.size(); ++k)
      spec << f.grid.points(k) / thz << ',' << j << ',' << f.values(k).real() << ','
           << f.values(k).imag() << '\n';
  }
  write_text(out / "mode_spectra.csv", spec.str());

  std::ostringstream wf;
  wf << std::setprecision(17) << "t_fs,mode_index,exact_re,reconstructed_re\n";
  for (std::size_t j = 0; j < rep.waveforms.size(); ++j) {
    for (Eigen::Index i = 0; i < rep.time_grid.size(); ++i) {
      wf << rep.time_grid.points(i) << ',' << j << ',';
      if (j < rep.exact_waveforms.size())
        wf << rep.exact_waveforms[j](i).real();
      else
        wf << "nan";
      wf << ',' << rep.waveforms[j](i).real() << '\n';
    }
  }
  write_text(out / "waveforms.csv", wf.str());

  for (std::size_t j = 0; j < rep.wigners.size(); ++j) {
    const WignerGrid& w = rep.wigners[j];
    std::ostringstream s;
    s << std::setprecision(17) << "x,p,w\n";
    for (Eigen::Index i = 0; i < w.x.size(); ++i)
      for (Eigen::Index k = 0; k < w.p.size(); ++k)
        s << w.x(i) << ',' << w.p(k) << ',' << w.w(i, k) << '\n';
    write_text(out / ("wigner_mode_" + std::to_string(j) + ".csv"), s.str());
  }
}

void stage_singleport(const Pipeline& p, const GaussianState& state, const fs::path& out) {
  const VarianceDecomposition d = signal_variance(
      state, p.modes, p.probe, p.cfg.singleport_theta_rad, p.cfg.singleport_t_d_fs);
  json j;
  j["theta_rad"] = d.theta;
  j["phi_rad"] = d.phi;
  j["t_d_fs"] = d.t_d;
  j["shot"] = d.shot;
  j["mir"] = d.mir;
  j["nir_cascading"] = d.nir_cascading;
  j["total"] = d.total;
  j["extracted_mir"] =
      extract_mir_variance(d.total, p.cfg.singleport_theta_rad, p.modes, p.probe);
  write_text(out / "singleport.json", j.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"eostk: electro-optic sampling simulation and reconstruction"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  int threads = 0;

  app.add_option("--config", config_path, "scenario config file")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed_override, "override measure.seed")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--threads", threads, "worker thread count (0 = library default)");

  auto* sub_dm = app.add_subcommand("detection-modes", "compute detection-mode amplitudes");
  auto* sub_gen = app.add_subcommand("generate", "generate the input state");
  auto* sub_sim = app.add_subcommand("simulate", "two-port measurement simulation");
  auto* sub_rec = app.add_subcommand("reconstruct", "reconstruction from batches.csv");
  auto* sub_cal = app.add_subcommand("calibrate", "alpha_MIR calibration from a coherent reference");
  auto* sub_rep = app.add_subcommand("report", "export figure data from report.json");
  auto* sub_run = app.add_subcommand("run", "full pipeline");
  for (CLI::App* sub : {sub_dm, sub_gen, sub_sim, sub_rec, sub_cal, sub_rep, sub_run})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (threads > 0) {
      Eigen::setNbThreads(threads);
#ifdef _OPENMP
      omp_set_num_threads(threads);
#endif
    }
    ScenarioConfig cfg = load_config(config_path);
    if (seed_given) cfg.measure_seed = seed_override;

    const fs::path out(out_dir);
    fs::create_directories(out);
    const Pipeline p = build_pipeline(cfg);

    if (sub_dm->parsed()) {
      stage_detection_modes(p, out);
    } else if (sub_gen->parsed()) {
      stage_generate(p, out);
    } else if (sub_sim->parsed()) {
      const GaussianState state = fs::exists(out / "state.json")
                                      ? read_state_json((out / "state.json").string())
                                      : make_state(p);
      stage_simulate(p, state, out);
    } else if (sub_rec->parsed()) {
      stage_reconstruct(p, out);
    } else if (sub_cal->parsed()) {
      stage_calibrate(p, out);
    } else if (sub_rep->parsed()) {
      stage_export(out);
    } else if (sub_run->parsed()) {
      stage_detection_modes(p, out);
      const GaussianState state = stage_generate(p, out);
      stage_simulate(p, state, out);
      stage_reconstruct(p, out);
      stage_export(out);
      stage_singleport(p, state, out);
    }
  } catch (const std::invalid_argument& e) {
    json err = {{"kind", "validation"}, {"error", e.what()}};
    std::cerr << err.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    json err = {{"kind", "runtime"}, {"error", e.what()}};
    std::cerr << err.dump() << '\n';
    return 2;
  }
  return 0;
}
