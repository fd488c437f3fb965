#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "friedrichs/experiments.hpp"
#include "oracles.hpp"

using namespace friedrichs;
namespace fs = std::filesystem;

namespace {

std::string out_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tdelay_test_" + name);
  fs::remove_all(p);
  return p.string();
}

int run(const std::string& args) {
  const int status = std::system((std::string(TDELAY_EXE) + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string cfg(const std::string& name) { return std::string(CONFIG_DIR) + "/" + name; }

std::vector<std::vector<double>> read_csv(const std::string& path, std::string* header = nullptr) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# schema-version: 1");
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("malformed config exits 2 and names the field") {
  std::ostringstream log;
  const int rc = run_experiment_guarded("smatrix", cfg("bad_lambdas.ini"), out_dir("bad"), false, log);
  CHECK(rc == kExitValidation);
  CHECK(log.str().find("model.lambdas") != std::string::npos);
  CHECK(run("smatrix --config " + cfg("bad_lambdas.ini") + " --out " + out_dir("bad2")) == 2);
  CHECK(run("smatrix --config /nonexistent.ini --out " + out_dir("bad3")) == 2);
  CHECK(run("frobnicate --config " + cfg("bad_lambdas.ini")) == 2);
}

TEST_CASE("missing fields are validation failures") {
  std::ostringstream log;
  Config c = Config::parse("[grid]\nL = 16\nM = 2048\n[model]\nN = 1\nlambdas = [1]\nvectors = gaussian(0, 1)\n");
  CHECK_THROWS_WITH_AS(run_experiment("smatrix", c, out_dir("miss"), true, log),
                       doctest::Contains("experiment.energy_grid"), PreconditionError);
  c.set("experiment.energy_grid", "-1, 1, 11");
  c.set("grid.M", "2047");
  CHECK_THROWS_AS(run_experiment("smatrix", c, out_dir("miss"), true, log), PreconditionError);
}

TEST_CASE("check only validates") {
  const std::string dir = out_dir("check");
  CHECK(run("smatrix --check --config " + cfg("smatrix_gaussian.ini") + " --out " + dir) == 0);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("smatrix row at zero") {
  const std::string dir = out_dir("smatrix");
  REQUIRE(run("smatrix --config " + cfg("smatrix_gaussian.ini") + " --out " + dir) == 0);
  std::string header;
  const auto rows = read_csv(dir + "/smatrix.csv", &header);
  CHECK(header == "x,Re_S,Im_S,Re_Sprime,Im_Sprime,delay_density,xi_prime");
  REQUIRE(rows.size() == 1001);
  bool found = false;
  for (const auto& r : rows)
    if (std::abs(r[0]) < 1e-12) {
      found = true;
      // about -0.51710 - 0.85593i; 12 significant digits are written
      CHECK(std::abs(r[1] - oracle::S_0_re) <= 1e-10);
      CHECK(std::abs(r[2] - oracle::S_0_im) <= 1e-10);
    }
  CHECK(found);
  CHECK(slurp(dir + "/summary.txt").find("FAIL") == std::string::npos);
}

TEST_CASE("outputs are reproducible") {
  const std::string a = out_dir("rep_a"), b = out_dir("rep_b");
  REQUIRE(run("smatrix --config " + cfg("smatrix_rank3.ini") + " --out " + a) == 0);
  REQUIRE(run("smatrix --config " + cfg("smatrix_rank3.ini") + " --out " + b) == 0);
  CHECK(slurp(a + "/smatrix.csv") == slurp(b + "/smatrix.csv"));
}

TEST_CASE("sweep without interaction has zero delays") {
  const std::string dir = out_dir("sweep_free");
  REQUIRE(run("timedelay-sweep --config " + cfg("sweep_free.ini") + " --out " + dir) == 0);
  std::string header;
  const auto rows = read_csv(dir + "/sweep.csv", &header);
  CHECK(header == "r,T0,T0_S,T_full,tau_in,tau_sym,tau_free,tail_est");
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r[4] == 0.0);
    CHECK(r[5] == 0.0);
    CHECK(r[6] == 0.0);
  }
  const auto summary = read_csv(dir + "/sweep_summary.csv", &header);
  CHECK(header == "tau_inf,beta,fit_residual,ew_value,rel_gap");
  CHECK(summary.at(0).at(0) == 0.0);
}

TEST_CASE("propagation and spectral shift runs") {
  const std::string p = out_dir("prop");
  REQUIRE(run("propagation --config " + cfg("propagation_indicator.ini") + " --out " + p) == 0);
  for (const auto& r : read_csv(p + "/propagation.csv")) CHECK(std::abs(r[1] - 3.0) <= 1e-8);
  const std::string s = out_dir("shift");
  REQUIRE(run("spectral-shift --config " + cfg("spectral_shift_bump.ini") + " --out " + s) == 0);
  CHECK(slurp(s + "/summary.txt").find("integral_identity") != std::string::npos);
}

TEST_CASE("tolerance failure exits 3") {
  // A unitarity tolerance below round-off cannot be met.
  const std::string src = slurp(cfg("smatrix_gaussian.ini")) + "\n[tol]\nunitarity = 1e-30\n";
  const fs::path path = fs::temp_directory_path() / "tdelay_tight.ini";
  std::ofstream(path) << src;
  const std::string dir = out_dir("tight");
  CHECK(run("smatrix --config " + path.string() + " --out " + dir) == 3);
  CHECK(slurp(dir + "/summary.txt").find("FAIL") != std::string::npos);
}
