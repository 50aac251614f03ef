// Copyright 2026 the smfbm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("smfbm_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(std::vector<std::string> args) { return smfbm::cli::run(args); }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("cov writes a bare matrix plus manifest") {
  TempDir tmp;
  const auto out = tmp.file("cov.csv");
  CHECK(run({"cov", "--process", "smfbm", "--a", "1", "--b", "1", "--hurst", "0.7",
             "--grid", "0:1:16", "--out", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 17);
  for (const auto& line : lines) CHECK(split_csv(line).size() == 17);

  const auto manifest = json::parse(slurp(tmp.file("cov.manifest.json")));
  CHECK(manifest.at("command") == "cov");
  CHECK(manifest.at("parameters").at("hurst") == 0.7);
  CHECK(manifest.at("tool") == "smfbm");
}

TEST_CASE("cov at H = 1/2 with pure sfbm weights is a matrix of minima") {
  TempDir tmp;
  const auto out = tmp.file("min.csv");
  CHECK(run({"cov", "--process", "sfbm", "--hurst", "0.5", "--grid", "1:3:2",
             "--out", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 3);  // grid {1, 2, 3}
  CHECK(split_csv(lines[0]) == std::vector<std::string>{"1", "1", "1"});
  CHECK(split_csv(lines[1]) == std::vector<std::string>{"1", "2", "2"});
  CHECK(split_csv(lines[2]) == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("cov rejects (a,b) = (0,0) with exit code 2") {
  TempDir tmp;
  CHECK(run({"cov", "--process", "smfbm", "--a", "0", "--b", "0", "--grid", "0:1:4",
             "--out", tmp.file("x.csv")}) == 2);
  CHECK_FALSE(fs::exists(tmp.file("x.csv")));
}

TEST_CASE("usage errors exit with code 2") {
  TempDir tmp;
  CHECK(run({"simulate", "--paths", "0", "--grid", "0:1:4",
             "--out", tmp.file("x.csv")}) == 2);
  CHECK(run({"made-up-command"}) == 2);
  CHECK(run({"simulate", "--grid", "nonsense", "--out", tmp.file("y.csv")}) == 2);
  CHECK(run({"simulate", "--grid", "0:1:4junk", "--out", tmp.file("y.csv")}) == 2);
  CHECK(run({"diag", "qv", "--n-ladder", "9:2", "--out", tmp.file("z.json")}) == 2);
  CHECK(run({"diag", "qv", "--n-ladder", "2:9x", "--out", tmp.file("z.json")}) == 2);
}

TEST_CASE("explicit grids come from --grid-file") {
  TempDir tmp;
  const auto grid_path = tmp.file("grid.txt");
  {
    std::ofstream g(grid_path);
    g << "0, 0.5\n1.25 2.0\n";
  }
  const auto out = tmp.file("cov.csv");
  REQUIRE(run({"cov", "--process", "bm", "--grid-file", grid_path, "--out", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 4);
  // Brownian covariance: min(s, t) over {0, 0.5, 1.25, 2}
  CHECK(split_csv(lines[2]) == std::vector<std::string>{"0", "0.5", "1.25", "1.25"});
  CHECK(split_csv(lines[0]) == std::vector<std::string>{"0", "0", "0", "0"});
}

TEST_CASE("simulate is byte-identical across reruns and thread counts") {
  TempDir tmp;
  const auto out = tmp.file("p.csv");
  const std::vector<std::string> base{
      "simulate", "--process", "smfbm", "--a", "1",    "--b",   "1",
      "--hurst",  "0.7",       "--grid", "0:1:8", "--paths", "50",
      "--seed",   "42",        "--method", "direct", "--out", out};
  REQUIRE(run(base) == 0);
  const std::string first = slurp(out);

  auto threaded = base;
  threaded.push_back("--threads");
  threaded.push_back("2");
  REQUIRE(run(threaded) == 0);
  CHECK(slurp(out) == first);

  // rerun from the manifest reproduces the same bytes
  REQUIRE(run({"rerun", "--manifest", tmp.file("p.manifest.json")}) == 0);
  CHECK(slurp(out) == first);
  REQUIRE(run({"rerun", "--manifest", tmp.file("p.manifest.json"), "--threads", "2"}) == 0);
  CHECK(slurp(out) == first);

  // different seeds differ
  auto reseeded = base;
  reseeded[14] = "43";
  REQUIRE(reseeded[13] == "--seed");
  REQUIRE(run(reseeded) == 0);
  CHECK(slurp(out) != first);
}

TEST_CASE("simulate writes metadata sidecar") {
  TempDir tmp;
  const auto out = tmp.file("p.csv");
  REQUIRE(run({"simulate", "--process", "sfbm", "--hurst", "0.75", "--grid", "0:1:4",
               "--paths", "3", "--seed", "7", "--method", "constructive", "--out",
               out}) == 0);
  const auto meta = json::parse(slurp(tmp.file("p.meta.json")));
  CHECK(meta.at("method") == "constructive");
  CHECK(meta.at("seed") == 7);
  CHECK(meta.at("spec").at("process") == "sfbm");
  CHECK(meta.at("jitter").get<double>() >= 0.0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 4);
  CHECK(split_csv(lines[0])[0] == "path_id");
  // the pinned t = 0 column is exactly "0"
  CHECK(split_csv(lines[1])[1] == "0");
}

TEST_CASE("simulate --check closes the estimator loop in the sidecar") {
  TempDir tmp;
  const auto out = tmp.file("p.csv");
  REQUIRE(run({"simulate", "--process", "smfbm", "--a", "1", "--b", "1", "--hurst",
               "0.7", "--grid", "0:1:8", "--paths", "4000", "--seed", "5",
               "--method", "direct", "--check", "--out", out}) == 0);
  const auto meta = json::parse(slurp(tmp.file("p.meta.json")));
  REQUIRE(meta.contains("estimator_check"));
  const auto& check = meta.at("estimator_check");
  for (const char* key : {"var_at_end", "cov_mid_end", "realized_qv"}) {
    REQUIRE(check.contains(key));
    const double value = check.at(key).at("value").get<double>();
    const double se = check.at(key).at("std_error").get<double>();
    const double analytic = check.at(key).at("analytic").get<double>();
    CHECK(std::abs(value - analytic) <= 5.0 * se);
  }
  // rerun replays the check block identically
  const std::string meta_bytes = slurp(tmp.file("p.meta.json"));
  REQUIRE(run({"rerun", "--manifest", tmp.file("p.manifest.json")}) == 0);
  CHECK(slurp(tmp.file("p.meta.json")) == meta_bytes);
}

TEST_CASE("distinct methods give distinct samples") {
  TempDir tmp;
  const auto d = tmp.file("d.csv");
  const auto c = tmp.file("c.csv");
  REQUIRE(run({"simulate", "--hurst", "0.7", "--grid", "0:1:8", "--paths", "5",
               "--seed", "1", "--method", "direct", "--out", d}) == 0);
  REQUIRE(run({"simulate", "--hurst", "0.7", "--grid", "0:1:8", "--paths", "5",
               "--seed", "1", "--method", "constructive", "--out", c}) == 0);
  CHECK(slurp(d) != slurp(c));
}

TEST_CASE("diag verdict emits the classification document") {
  TempDir tmp;
  const auto out = tmp.file("v.json");
  REQUIRE(run({"diag", "verdict", "--a", "1", "--b", "1", "--hurst", "0.6", "--out",
               out}) == 0);
  const auto doc = json::parse(slurp(out));
  CHECK(doc.at("operation") == "verdict");
  CHECK(doc.at("outputs").at("is_semimartingale") == false);
  CHECK(doc.at("outputs").at("regime") == "intermediate_not_quasimart");
  CHECK(doc.at("citations").size() >= 1);
  CHECK(doc.at("spec").at("hurst") == 0.6);
}

TEST_CASE("diag qv at H = 1/2 is a constant ladder") {
  TempDir tmp;
  const auto out = tmp.file("qv.json");
  REQUIRE(run({"diag", "qv", "--hurst", "0.5", "--a", "1", "--b", "1", "--t", "1",
               "--n-ladder", "2:16", "--out", out}) == 0);
  const auto doc = json::parse(slurp(out));
  for (const auto& v : doc.at("outputs").at("a_n")) CHECK(v.get<double>() == 2.0);
  CHECK(doc.at("outputs").at("limit_class") == "finite_ab");
  // CSV of (n, value) pairs rides along
  const auto lines = split_lines(slurp(tmp.file("qv.csv")));
  REQUIRE(lines.size() == 16);  // header + 15 ladder rows
  CHECK(lines[0] == "n,a_n");
  CHECK(split_csv(lines[1]) == std::vector<std::string>{"4", "2"});
}

TEST_CASE("diag markov reports a zero defect at H = 1/2") {
  TempDir tmp;
  const auto out = tmp.file("m.json");
  REQUIRE(run({"diag", "markov", "--hurst", "0.5", "--s", "1", "--t", "2", "--u", "3",
               "--out", out}) == 0);
  const auto doc = json::parse(slurp(out));
  CHECK(doc.at("outputs").at("defect").get<double>() == 0.0);
}

TEST_CASE("compare sweep in H flips the gap sign exactly at one half") {
  TempDir tmp;
  const auto out = tmp.file("cmp.csv");
  REQUIRE(run({"compare", "--a", "1", "--b", "1", "--u", "0", "--v", "1", "--s", "1",
               "--t", "2", "--sweep", "hurst", "--range", "0.1:0.9:8", "--out",
               out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 10);
  CHECK(split_csv(lines[0])[9] == "d_gap");
  int sign_changes = 0;
  double prev = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double d = std::stod(split_csv(lines[i])[9]);
    const double hurst = std::stod(split_csv(lines[i])[6]);
    if (hurst < 0.5) CHECK(d > 0.0);
    if (hurst > 0.5) CHECK(d < 0.0);
    if (std::abs(hurst - 0.5) < 1e-12) CHECK(d == 0.0);
    if (i > 1 && prev > 0.0 && d < 0.0) ++sign_changes;
    if (d != 0.0) prev = d;
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("compare lag sweep ratio approaches one") {
  TempDir tmp;
  const auto out = tmp.file("lag.csv");
  REQUIRE(run({"compare", "--a", "0", "--b", "1", "--hurst", "0.7", "--sweep", "n",
               "--range", "2:12", "--lag-p", "0", "--out", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 12);
  double prev = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double ratio = std::stod(split_csv(lines[i])[7]);
    CHECK(ratio > prev);
    CHECK(ratio <= 1.0);
    prev = ratio;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("compare adjacent sweep in a attenuates the sub-mixed correlation") {
  TempDir tmp;
  const auto out = tmp.file("adj.csv");
  REQUIRE(run({"compare", "--b", "1", "--hurst", "0.7", "--u", "0.5", "--r", "1",
               "--sweep", "a", "--range", "0:4:8", "--out", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 10);
  double prev = 1e300;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 12);
    const double rho_m = std::stod(cells[10]);
    const double rho_s = std::stod(cells[11]);
    CHECK(std::abs(rho_s) <= std::abs(rho_m) + 1e-12);
    CHECK(std::abs(rho_s) <= prev + 1e-12);
    prev = std::abs(rho_s);
  }
}

TEST_CASE("json config supplies defaults, flags win") {
  TempDir tmp;
  const auto cfg = tmp.file("conf.json");
  {
    std::ofstream out(cfg);
    out << R"({"simulate": {"paths": 5, "seed": 9, "grid": "0:1:4", "out": ")"
        << tmp.file("cfg.csv") << R"("}})";
  }
  REQUIRE(run({"simulate", "--config", cfg}) == 0);
  auto manifest = json::parse(slurp(tmp.file("cfg.manifest.json")));
  CHECK(manifest.at("parameters").at("paths") == 5);

  REQUIRE(run({"simulate", "--config", cfg, "--paths", "7"}) == 0);
  manifest = json::parse(slurp(tmp.file("cfg.manifest.json")));
  CHECK(manifest.at("parameters").at("paths") == 7);
}

TEST_CASE("rerun of a cov manifest reproduces bytes") {
  TempDir tmp;
  const auto out = tmp.file("cov.csv");
  REQUIRE(run({"cov", "--process", "mfbm", "--a", "1", "--b", "0.5", "--hurst",
               "0.8", "--grid", "0:2:12", "--out", out}) == 0);
  const auto first = slurp(out);
  fs::remove(out);
  REQUIRE(run({"rerun", "--manifest", tmp.file("cov.manifest.json")}) == 0);
  CHECK(slurp(out) == first);
  CHECK(run({"rerun", "--manifest", tmp.file("missing.json")}) == 2);
}
