#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end checks of the scenario driver binary: determinism for a fixed
// seed and stage composability through the documented file formats. The
// binary path is injected by the build (EOSTK_CLI_PATH).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(EOSTK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_config(const fs::path& dir) {
  const fs::path p = dir / "scenario.cfg";
  std::ofstream out(p);
  out << "grid.omega_max_thz = 100\n"
         "grid.n_freq = 24\n"
         "nir.n_points = 256\n"
         "state.source = squeezed\n"
         "state.gamma_thz = 12\n"
         "state.r_g = 0.8\n"
         "measure.mode = sampled\n"
         "measure.samples = 500\n"
         "measure.seed = 4242\n";
  out.close();
  return p;
}

} // namespace

TEST_CASE("cli: identical config and seed give byte-identical outputs") {
  TempDir work("eostk_cli_det");
  const fs::path cfg = write_config(work.path);
  for (const char* out : {"a", "b"}) {
    const std::string base =
        "--config " + cfg.string() + " --out " + (work.path / out).string();
    REQUIRE(run("generate " + base) == 0);
    REQUIRE(run("simulate " + base) == 0);
    REQUIRE(run("reconstruct " + base) == 0);
  }
  for (const char* name : {"state.json", "batches.csv", "means.csv", "report.json"})
    CHECK(slurp(work.path / "a" / name) == slurp(work.path / "b" / name));
}

TEST_CASE("cli: reconstruct consumes the simulate stage's files verbatim") {
  TempDir work("eostk_cli_stage");
  const fs::path cfg = write_config(work.path);
  const std::string base_a =
      "--config " + cfg.string() + " --out " + (work.path / "a").string();
  const std::string base_b =
      "--config " + cfg.string() + " --out " + (work.path / "b").string();
  REQUIRE(run("generate " + base_a) == 0);
  REQUIRE(run("simulate " + base_a) == 0);

  // reconstructing from copied intermediate files reproduces the result
  fs::create_directories(work.path / "b");
  for (const char* name : {"state.json", "batches.csv", "means.csv"})
    fs::copy_file(work.path / "a" / name, work.path / "b" / name);
  REQUIRE(run("reconstruct " + base_a) == 0);
  REQUIRE(run("reconstruct " + base_b) == 0);
  CHECK(slurp(work.path / "a" / "report.json") == slurp(work.path / "b" / "report.json"));
}

TEST_CASE("cli: invalid config exits with the validation status code") {
  TempDir work("eostk_cli_err");
  const fs::path p = work.path / "bad.cfg";
  std::ofstream(p) << "grid.n_freq = 4\n";
  const int status = run("generate --config " + p.string() + " --out " +
                         (work.path / "out").string());
  CHECK(WEXITSTATUS(status) == 1);
}

TEST_CASE("cli: seed override changes sampled outputs") {
  TempDir work("eostk_cli_seed");
  const fs::path cfg = write_config(work.path);
  const std::string a = "--config " + cfg.string() + " --out " + (work.path / "a").string();
  const std::string b = "--config " + cfg.string() + " --out " + (work.path / "b").string() +
                        " --seed 999";
  REQUIRE(run("generate " + a) == 0);
  REQUIRE(run("simulate " + a) == 0);
  REQUIRE(run("generate " + b) == 0);
  REQUIRE(run("simulate " + b) == 0);
  CHECK(slurp(work.path / "a" / "batches.csv") != slurp(work.path / "b" / "batches.csv"));
}
