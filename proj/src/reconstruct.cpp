#include "eostk/reconstruct.hpp"
#include "eostk/constants.hpp"
#include "eostk/fourier.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace eostk {

using constants::pi;
using std::complex;

static const complex<double> I{0.0, 1.0};

static void require_matched(const FrequencyGrid& fg, const TimeGrid& tg,
                            const char* who) {
  const double match = fg.step * tg.step * static_cast<double>(tg.size());
  if (std::abs(match - 2.0 * pi) > 1e-9 * 2.0 * pi)
    throw std::invalid_argument(std::string(who) +
                                ": grids are not transform-matched (dW*dt*n_time != 2pi)");
}

MomentInversion invert_to_frequency_moments(const CoherenceMatrix& c,
                                            const ComplexSpectrum& alpha_mir,
                                            double floor) {
  const FrequencyGrid& fg = alpha_mir.grid;
  const TimeGrid& tg = c.grid;
  require_matched(fg, tg, "invert_to_frequency_moments");

  const Eigen::Index n = fg.size();
  const double peak = alpha_mir.values.abs().maxCoeff();
  if (peak <= 0.0)
    throw std::invalid_argument("invert_to_frequency_moments: alpha_MIR is zero");
  const double alpha_floor = floor * peak;

  const Eigen::MatrixXcd f_pp = dft2(tg, c.values, fg.points, fg.points);
  const Eigen::MatrixXcd f_mp = dft2(tg, c.values, (-fg.points).eval(), fg.points);

  MomentInversion out;
  out.state = vacuum_state(fg);
  const double factor = 2.0 * fg.step / ((2.0 * pi) * (2.0 * pi));

  std::vector<bool> good(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    good[static_cast<std::size_t>(k)] = std::abs(alpha_mir.values(k)) >= alpha_floor;
    if (!good[static_cast<std::size_t>(k)]) out.masked.push_back(k);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!good[static_cast<std::size_t>(k)]) continue;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (!good[static_cast<std::size_t>(l)]) continue;
      const complex<double> ak = alpha_mir.values(k);
      const complex<double> al = alpha_mir.values(l);
      out.state.a(k, l) = -factor * f_pp(k, l) / (ak * al);
      out.state.m(k, l) = factor * f_mp(k, l) / (std::conj(ak) * al);
    }
  }
  out.state.m = 0.5 * (out.state.m + out.state.m.adjoint()).eval();
  out.state.a = 0.5 * (out.state.a + out.state.a.transpose()).eval();

  out.pre_projection_min_eigenvalue =
      physicality_check(out.state).min_symplectic_eigenvalue;
  if (out.pre_projection_min_eigenvalue < -1e-12) {
    const Eigen::MatrixXd v = project_physical(to_covariance(out.state));
    from_covariance(v, out.state);
  }
  return out;
}

std::vector<PrincipalMode> principal_modes(const GaussianState& state) {
  const Eigen::Index n = state.modes();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.m);
  const double root_dw = std::sqrt(state.grid.step);

  std::vector<PrincipalMode> modes;
  modes.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = n - 1 - j; // Eigen sorts ascending
    Eigen::VectorXcd v = es.eigenvectors().col(src);
    // rotate the global phase so the amplitude is as real as possible,
    // then fix the sign via the largest-magnitude entry
    const complex<double> s2 = (v.array() * v.array()).sum();
    if (std::abs(s2) > 1e-14) v *= std::exp(-I * (std::arg(s2) / 2.0));
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax).real() < 0.0) v = -v;

    PrincipalMode m;
    m.index = static_cast<int>(j);
    m.n = std::max(0.0, es.eigenvalues()(src));
    m.f.grid = state.grid;
    m.f.values = v.array().conjugate() / root_dw;
    mode_moments(state, m);
    squeezing_parameters(m);
    m.alpha = (v.transpose() * state.mean)(0, 0);
    modes.push_back(std::move(m));
  }
  return modes;
}

void mode_moments(const GaussianState& state, PrincipalMode& mode) {
  const double root_dw = std::sqrt(state.grid.step);
  const Eigen::VectorXcd v = (mode.f.values.conjugate() * root_dw).matrix();
  const double nj = (v.adjoint() * state.m * v)(0, 0).real();
  const complex<double> ajj = (v.transpose() * state.a * v)(0, 0);
  mode.n = nj;
  mode.xx = 0.5 + nj + ajj.real();
  mode.pp = 0.5 + nj - ajj.real();
  mode.xp = 2.0 * ajj.imag();
}

void squeezing_parameters(PrincipalMode& mode) {
  Eigen::Matrix2d v;
  v << mode.xx, 0.5 * mode.xp, 0.5 * mode.xp, mode.pp;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(v);
  const double v_minor = es.eigenvalues()(0);
  const double v_major = es.eigenvalues()(1);
  if (v_minor <= 0.0 || v_major <= 0.0)
    throw std::invalid_argument("squeezing_parameters: non-positive quadrature variance");
  mode.r = 0.5 * std::log(2.0 * v_major);
  const Eigen::Vector2d major = es.eigenvectors().col(1);
  mode.psi = std::atan2(major(1), major(0));
  if (mode.psi > 0.5 * pi) mode.psi -= pi;   // axis, not direction
  if (mode.psi <= -0.5 * pi) mode.psi += pi;
  mode.impurity = std::abs(0.5 * std::log(2.0 * v_major) + 0.5 * std::log(2.0 * v_minor));
}

Eigen::ArrayXcd temporal_mode_field(const ComplexSpectrum& f, const TimeGrid& tg,
                                    const CrystalParams& crystal) {
  const FrequencyGrid& fg = f.grid;
  const double cphot = crystal.photon_constant();
  Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(tg.size());
  for (Eigen::Index k = 0; k < fg.size(); ++k) {
    const double w = fg.points(k);
    const complex<double> coeff =
        I * fg.step * std::sqrt(constants::hbar * w / cphot) * std::conj(f.values(k));
    out += coeff * ((-I) * w * tg.points.cast<complex<double>>()).exp();
  }
  return out;
}

WignerGrid wigner(const PrincipalMode& mode, int n_points, double half_width) {
  if (n_points < 3) throw std::invalid_argument("wigner: need at least 3 grid points");
  Eigen::Matrix2d v;
  v << mode.xx, 0.5 * mode.xp, 0.5 * mode.xp, mode.pp;
  const double det = v.determinant();
  if (det <= 0.0) throw std::invalid_argument("wigner: covariance not positive definite");
  const Eigen::Matrix2d vinv = v.inverse();

  const double x0 = std::sqrt(2.0) * mode.alpha.real();
  const double p0 = std::sqrt(2.0) * mode.alpha.imag();
  const double reach = half_width * std::sqrt(std::max(mode.xx, mode.pp));

  WignerGrid g;
  g.x = Eigen::ArrayXd::LinSpaced(n_points, x0 - reach, x0 + reach);
  g.p = Eigen::ArrayXd::LinSpaced(n_points, p0 - reach, p0 + reach);
  g.w.resize(n_points, n_points);
  const double norm = 1.0 / (2.0 * pi * std::sqrt(det));
  for (int i = 0; i < n_points; ++i) {
    for (int j = 0; j < n_points; ++j) {
      Eigen::Vector2d d(g.x(i) - x0, g.p(j) - p0);
      g.w(i, j) = norm * std::exp(-0.5 * d.dot(vinv * d));
    }
  }
  const double dx = g.x(1) - g.x(0);
  const double dp = g.p(1) - g.p(0);
  g.normalization = g.w.sum() * dx * dp;
  return g;
}

ReconstructionReport field_operator_report(
    const MomentInversion& inversion, const CrystalParams& crystal,
    const TimeGrid& tg, const std::vector<PrincipalMode>* ground_truth,
    double mode_cutoff) {
  ReconstructionReport rep;
  rep.time_grid = tg;
  rep.masked_bins = inversion.masked;
  rep.mode_cutoff = mode_cutoff;
  rep.min_symplectic_eigenvalue =
      physicality_check(inversion.state).min_symplectic_eigenvalue;

  std::vector<PrincipalMode> all = principal_modes(inversion.state);
  if (all.empty())
    throw std::invalid_argument("field_operator_report: no modes");
  const double n1 = all.front().n;
  for (std::size_t j = 0; j < all.size(); ++j) {
    // always keep the top 3; beyond that drop modes below the relative
    // cutoff or at roundoff level
    if (j >= 3 && (all[j].n <= mode_cutoff * n1 || all[j].n < 1e-12)) break;
    rep.modes.push_back(all[j]);
  }

  const double dw = inversion.state.grid.step;
  for (const PrincipalMode& m : rep.modes) {
    rep.waveforms.push_back(temporal_mode_field(m.f, tg, crystal));
    rep.wigners.push_back(wigner(m));
  }
  if (ground_truth) {
    const std::size_t nc = std::min(rep.modes.size(), ground_truth->size());
    for (std::size_t j = 0; j < nc; ++j) {
      const PrincipalMode& a = rep.modes[j];
      const PrincipalMode& b = (*ground_truth)[j];
      ModeComparison cmp;
      cmp.overlap = std::abs((a.f.values.conjugate() * b.f.values).sum() * dw);
      cmp.d_xx = a.xx - b.xx;
      cmp.d_pp = a.pp - b.pp;
      cmp.d_r = a.r - b.r;
      rep.comparison.push_back(cmp);
      rep.exact_waveforms.push_back(temporal_mode_field(b.f, tg, crystal));
    }
  }
  return rep;
}

namespace {

using nlohmann::json;

json complex_array(const Eigen::ArrayXcd& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.push_back({a(i).real(), a(i).imag()});
  return out;
}

Eigen::ArrayXcd complex_array_from(const json& j) {
  Eigen::ArrayXcd out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    out(static_cast<Eigen::Index>(i)) =
        complex<double>(j[i][0].get<double>(), j[i][1].get<double>());
  return out;
}

json real_array(const Eigen::ArrayXd& a) {
  return json(std::vector<double>(a.data(), a.data() + a.size()));
}

Eigen::ArrayXd real_array_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json grid_json(const FrequencyGrid& g) {
  return {{"points", real_array(g.points)},
          {"step", g.step},
          {"band", g.band == Band::MIR ? "MIR" : "NIR"},
          {"omega_max", g.omega_max}};
}

FrequencyGrid grid_from(const json& j) {
  FrequencyGrid g;
  g.points = real_array_from(j.at("points"));
  g.step = j.at("step").get<double>();
  g.band = j.at("band").get<std::string>() == "MIR" ? Band::MIR : Band::NIR;
  g.omega_max = j.at("omega_max").get<double>();
  return g;
}

} // namespace

std::string to_json_report(const ReconstructionReport& report) {
  json j;
  j["schema"] = "eostk-reconstruction-report-v1";
  j["mode_cutoff"] = report.mode_cutoff;
  j["min_symplectic_eigenvalue"] = report.min_symplectic_eigenvalue;
  j["masked_bins"] = report.masked_bins;
  j["time_grid"] = {{"points", real_array(report.time_grid.points)},
                    {"step", report.time_grid.step}};
  j["modes"] = json::array();
  for (std::size_t k = 0; k < report.modes.size(); ++k) {
    const PrincipalMode& m = report.modes[k];
    json jm = {{"index", m.index},
               {"n", m.n},
               {"xx", m.xx},
               {"pp", m.pp},
               {"xp", m.xp},
               {"r", m.r},
               {"psi", m.psi},
               {"impurity", m.impurity},
               {"alpha", {m.alpha.real(), m.alpha.imag()}},
               {"grid", grid_json(m.f.grid)},
               {"f", complex_array(m.f.values)}};
    if (k < report.waveforms.size())
      jm["waveform"] = complex_array(report.waveforms[k]);
    if (k < report.exact_waveforms.size())
      jm["exact_waveform"] = complex_array(report.exact_waveforms[k]);
    if (k < report.wigners.size()) {
      const WignerGrid& w = report.wigners[k];
      jm["wigner"] = {{"x", real_array(w.x)},
                      {"p", real_array(w.p)},
                      {"w", std::vector<double>(w.w.data(), w.w.data() + w.w.size())},
                      {"normalization", w.normalization}};
    }
    j["modes"].push_back(std::move(jm));
  }
  j["comparison"] = json::array();
  for (const ModeComparison& c : report.comparison)
    j["comparison"].push_back(
        {{"overlap", c.overlap}, {"d_xx", c.d_xx}, {"d_pp", c.d_pp}, {"d_r", c.d_r}});
  return j.dump(2);
}

ReconstructionReport from_json_report(const std::string& json_text) {
  const json j = json::parse(json_text);
  if (j.at("schema").get<std::string>() != "eostk-reconstruction-report-v1")
    throw std::runtime_error("from_json_report: unknown schema");
  ReconstructionReport rep;
  rep.mode_cutoff = j.at("mode_cutoff").get<double>();
  rep.min_symplectic_eigenvalue = j.at("min_symplectic_eigenvalue").get<double>();
  rep.masked_bins = j.at("masked_bins").get<std::vector<Eigen::Index>>();
  rep.time_grid.points = real_array_from(j.at("time_grid").at("points"));
  rep.time_grid.step = j.at("time_grid").at("step").get<double>();
  for (const json& jm : j.at("modes")) {
    PrincipalMode m;
    m.index = jm.at("index").get<int>();
    m.n = jm.at("n").get<double>();
    m.xx = jm.at("xx").get<double>();
    m.pp = jm.at("pp").get<double>();
    m.xp = jm.at("xp").get<double>();
    m.r = jm.at("r").get<double>();
    m.psi = jm.at("psi").get<double>();
    m.impurity = jm.at("impurity").get<double>();
    m.alpha = complex<double>(jm.at("alpha")[0].get<double>(),
                              jm.at("alpha")[1].get<double>());
    m.f.grid = grid_from(jm.at("grid"));
    m.f.values = complex_array_from(jm.at("f"));
    rep.modes.push_back(std::move(m));
    if (jm.contains("waveform"))
      rep.waveforms.push_back(complex_array_from(jm.at("waveform")));
    if (jm.contains("exact_waveform"))
      rep.exact_waveforms.push_back(complex_array_from(jm.at("exact_waveform")));
    if (jm.contains("wigner")) {
      WignerGrid w;
      w.x = real_array_from(jm.at("wigner").at("x"));
      w.p = real_array_from(jm.at("wigner").at("p"));
      const auto flat = jm.at("wigner").at("w").get<std::vector<double>>();
      w.w = Eigen::Map<const Eigen::MatrixXd>(flat.data(), w.x.size(), w.p.size());
      w.normalization = jm.at("wigner").at("normalization").get<double>();
      rep.wigners.push_back(std::move(w));
    }
  }
  for (const json& jc : j.at("comparison")) {
    ModeComparison c;
    c.overlap = jc.at("overlap").get<double>();
    c.d_xx = jc.at("d_xx").get<double>();
    c.d_pp = jc.at("d_pp").get<double>();
    c.d_r = jc.at("d_r").get<double>();
    rep.comparison.push_back(c);
  }
  return rep;
}

MeanFieldEstimate estimate_mean_field(const Eigen::ArrayXd& sample_means,
                                      const TimeGrid& tg, double phi,
                                      const ComplexSpectrum& alpha_mir,
                                      const std::vector<PrincipalMode>& modes) {
  const double s = std::sin(phi);
  if (std::abs(s) < 1e-3)
    throw std::invalid_argument("estimate_mean_field: |sin phi| < 1e-3 is ill-conditioned");
  if (sample_means.size() != tg.size())
    throw std::invalid_argument("estimate_mean_field: size mismatch");
  const FrequencyGrid& fg = alpha_mir.grid;
  require_matched(fg, tg, "estimate_mean_field");

  MeanFieldEstimate out;
  out.p_mean = sample_means / (std::sqrt(2.0) * s);

  const Eigen::ArrayXcd transformed =
      dft1(tg, out.p_mean.cast<complex<double>>(), fg.points);
  const double root_dw = std::sqrt(fg.step);
  out.mu.resize(fg.size());
  for (Eigen::Index k = 0; k < fg.size(); ++k) {
    const complex<double> a = alpha_mir.values(k);
    out.mu(k) = (std::abs(a) > 0.0)
                    ? transformed(k) * I * std::sqrt(2.0) * root_dw / (2.0 * pi * a)
                    : complex<double>{0.0, 0.0};
  }
  for (const PrincipalMode& m : modes) {
    const Eigen::VectorXcd v = (m.f.values.conjugate() * root_dw).matrix();
    out.alpha.push_back((v.transpose() * out.mu)(0, 0));
  }
  return out;
}

} // namespace eostk
