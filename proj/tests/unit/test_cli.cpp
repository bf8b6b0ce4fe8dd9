// Copyright 2026 The flyqubit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the installed-layout CLI binary end to end.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("flyqubit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Result run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(FLYQUBIT_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("gate fermion at p = c") {
  const Result r = run("gate fermion --pa 0.5 --pb 0.5 --c 1.0");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& out01 = j["basis_outputs"][1];
  CHECK(out01["input"] == "01");
  CHECK(std::abs(out01["concurrence"].get<double>() - 1.0) < 1e-12);
  // 1/(1+i) = (1-i)/2 and i/(1+i) = (1+i)/2
  CHECK(std::abs(out01["output"][1][0].get<double>() - 0.5) < 1e-15);
  CHECK(std::abs(out01["output"][1][1].get<double>() + 0.5) < 1e-15);
  CHECK(std::abs(out01["output"][2][0].get<double>() - 0.5) < 1e-15);
  CHECK(std::abs(out01["output"][2][1].get<double>() - 0.5) < 1e-15);
  CHECK(j["unitarity_residual"].get<double>() < 1e-15);
  CHECK(j["manifest"]["command"] == "gate");
  CHECK(j.contains("makhlin"));
}

TEST_CASE("gate spinless-ideal and free bosons") {
  Result r = run("gate spinless-ideal");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double expect = i != k ? 0.0 : (i == 0 ? -1.0 : 1.0);
      CHECK(j["matrix"][i][k][0].get<double>() == expect);
      CHECK(j["matrix"][i][k][1].get<double>() == 0.0);
    }
  r = run("gate boson --pa 1 --pb 1 --c 0");
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) CHECK(j["matrix"][i][k][0].get<double>() == (i == k ? 1.0 : 0.0));
}

TEST_CASE("gate usage errors") {
  CHECK(run("gate anyon").code == 2);
  CHECK(run("gate boson --pa -1").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("gate boson --bogus 3").code == 2);
}

TEST_CASE("sweep: peak at ratio 1, manifest sidecar, byte-stable reruns") {
  const fs::path csv = scratch() / "sweep.csv";
  const std::string args = "sweep boson --points 41 --samples 5000 --seed 7 --output " + csv.string();
  REQUIRE(run(args).code == 0);
  const std::string first = slurp(csv);
  const auto man1 = nlohmann::json::parse(slurp(csv.string() + ".manifest.json"));
  REQUIRE(run(args).code == 0);
  CHECK(slurp(csv) == first);
  auto man2 = nlohmann::json::parse(slurp(csv.string() + ".manifest.json"));
  man2["timestamp"] = man1["timestamp"];
  CHECK(man1 == man2);
  CHECK(man1["seed"] == 7);
  CHECK(man1["command"] == "sweep");
  CHECK(man1["tool_version"].is_string());

  std::string header;
  const auto rows = parse_csv(first, header);
  CHECK(header == "ratio,entangling_power,stderr,max_concurrence");
  REQUIRE(rows.size() == 41);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i][1] > rows[peak][1]) peak = i;
  CHECK(rows[peak][0] == 1.0);
  CHECK(first.find('\r') == std::string::npos);
}

TEST_CASE("sweep single ratio and empty range") {
  const Result r = run("sweep fermion --ratios 1 --samples 2000");
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_csv(r.out, header);
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(rows[0][3] - 1.0) < 1e-12);
  CHECK(run("sweep boson --points 0").code == 2);
  CHECK(run("sweep boson --ratios 2,1").code == 2);
}

TEST_CASE("oracle: one ratio, and a grid that is too small") {
  const Result r = run("oracle --ratios 1");
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_csv(r.out, header);
  CHECK(header == "c_over_2k,phase_numeric,phase_analytic,abs_error,width_residual");
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(rows[0][2] + M_PI / 2.0) < 1e-15);
  CHECK(rows[0][3] < 5e-3);

  const Result small = run("oracle --ratios 1 --half-width-sigmas 10");
  CHECK(small.code == 3);
  CHECK(small.err.find("boundary") != std::string::npos);
  CHECK(run("oracle --preset medium").code == 2);
}

TEST_CASE("fidelity: quadratic steps, zero spread, precondition") {
  const Result r = run("fidelity boson --ratio 1 --delta-p-over-c 0.01,0.02,0.04");
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_csv(r.out, header);
  CHECK(header == "delta_p,delta_p_over_c,fidelity,infidelity");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][3] / rows[0][3] == doctest::Approx(4.0).epsilon(0.01));
  CHECK(rows[2][3] / rows[1][3] == doctest::Approx(4.0).epsilon(0.01));

  const Result zero = run("fidelity fermion --delta-p-over-c 0");
  REQUIRE(zero.code == 0);
  CHECK(parse_csv(zero.out, header)[0][3] == 0.0);
  CHECK(run("fidelity boson --delta-p-over-c 0.5").code == 2);
}

TEST_CASE("params: bundled config, missing file, malformed key") {
  const Result r = run(std::string("params ") + FLYQUBIT_DATA_DIR + "/rb87.cfg");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& conv : j["conventions"])
    for (const char* key : {"c_corrected_per_m", "c_uncorrected_per_m"}) {
      CHECK(conv[key].get<double>() >= 5e5);
      CHECK(conv[key].get<double>() <= 5e7);
    }
  CHECK(j["manifest"]["command"] == "params");

  const fs::path missing = scratch() / "absent.cfg";
  const Result m = run("params " + missing.string());
  CHECK(m.code == 4);
  CHECK(m.err.find(missing.string()) != std::string::npos);

  const fs::path bad = scratch() / "bad.cfg";
  std::ofstream(bad) << "mass_kg=1.4e-25\nscattering_length=5e-9\n";
  const Result b = run("params " + bad.string());
  CHECK(b.code == 2);
  CHECK(b.err.find("scattering_length") != std::string::npos);
}

TEST_CASE("unwritable output is an I/O error") {
  CHECK(run("gate spinless-ideal --output /nonexistent/dir/out.json").code == 4);
  CHECK(run("fidelity boson --output /nonexistent/dir/out.csv").code == 4);
}
