#include "eostk/state_io.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace eostk {

namespace {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from(const json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = std::complex<double>(j[i][k][0].get<double>(), j[i][k][1].get<double>());
  return m;
}

} // namespace

void write_state_json(const std::string& path, const GaussianState& state) {
  json j;
  j["schema"] = "eostk-gaussian-state-v1";
  j["grid"] = {
      {"points", std::vector<double>(state.grid.points.data(),
                                     state.grid.points.data() + state.grid.size())},
      {"step", state.grid.step},
      {"band", state.grid.band == Band::MIR ? "MIR" : "NIR"},
      {"omega_max", state.grid.omega_max}};
  j["m"] = matrix_json(state.m);
  j["a"] = matrix_json(state.a);
  json mean = json::array();
  for (Eigen::Index k = 0; k < state.mean.size(); ++k)
    mean.push_back({state.mean(k).real(), state.mean(k).imag()});
  j["mean"] = std::move(mean);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_state_json: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write_state_json: write failed for " + path);
}

GaussianState read_state_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_state_json: cannot open " + path);
  json j;
  in >> j;
  if (j.at("schema").get<std::string>() != "eostk-gaussian-state-v1")
    throw std::runtime_error("read_state_json: unknown schema in " + path);

  GaussianState s;
  const auto pts = j.at("grid").at("points").get<std::vector<double>>();
  s.grid.points =
      Eigen::Map<const Eigen::ArrayXd>(pts.data(), static_cast<Eigen::Index>(pts.size()));
  s.grid.step = j.at("grid").at("step").get<double>();
  s.grid.band = j.at("grid").at("band").get<std::string>() == "MIR" ? Band::MIR : Band::NIR;
  s.grid.omega_max = j.at("grid").at("omega_max").get<double>();
  s.m = matrix_from(j.at("m"));
  s.a = matrix_from(j.at("a"));
  const json& mean = j.at("mean");
  s.mean.resize(static_cast<Eigen::Index>(mean.size()));
  for (std::size_t k = 0; k < mean.size(); ++k)
    s.mean(static_cast<Eigen::Index>(k)) =
        std::complex<double>(mean[k][0].get<double>(), mean[k][1].get<double>());
  return s;
}

} // namespace eostk
