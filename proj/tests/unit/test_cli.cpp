// Copyright 2026 The Collcone Authors
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


#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

using collcone::cli::parse_and_dispatch;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "collcone");
  std::ostringstream out, err;
  const int code = parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const char* name) { return std::string(COLLCONE_SCENARIO_DIR "/") + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("collcone_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"simulate"}).code == 2);
  CHECK(run({"simulate", "/nonexistent.yaml"}).code == 2);
  CHECK(run({"montecarlo", "--trials", "zero"}).code == 2);
  CHECK(run({"cone", scenario("geometry_biconcave.yaml"), "--planes", "-3"}).code == 2);
}

TEST_CASE("help and version exit 0") {
  const Result h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("simulate") != std::string::npos);
  const Result v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find('.') != std::string::npos);
}

TEST_CASE("validate accepts bundled scenarios and rejects bad ones") {
  const Result ok = run({"validate", scenario("sim1.yaml")});
  CHECK(ok.code == 0);
  CHECK(ok.out == "OK\n");

  const auto bad = scratch("bad.yaml");
  {
    std::ofstream f(bad);
    f << "name: x\nplanes: 0\n";
  }
  const Result r = run({"validate", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("ConfigInvalid") != std::string::npos);
  std::filesystem::remove(bad);
}

TEST_CASE("tangents verb prints the circle case") {
  const Result r = run({"tangents", scenario("tangents_circles.yaml")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"psi\": 1.287") != std::string::npos);
  CHECK(r.out.find("eigen_solve") != std::string::npos);
}

TEST_CASE("tangents verb reports overlapping point clouds as domain errors") {
  const auto path = scratch("inside.yaml");
  {
    std::ofstream f(path);
    f << "a: {center: [0, 0], semi_axes: [2, 2]}\nb_points: [[0, 0], [5, 5]]\n";
  }
  const Result r = run({"tangents", path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("CloudIntersectsEllipse") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("cone verb prints one row per plane") {
  const Result r = run({"cone", scenario("geometry_biconcave.yaml"), "--planes", "6"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && std::isdigit(static_cast<unsigned char>(line[0]))) ++rows;
  }
  CHECK(rows == 6);
  CHECK(r.out.find("any_collision=true") != std::string::npos);
}

TEST_CASE("simulate writes telemetry and summary") {
  const auto dir = scratch("sim");
  const Result r = run({"simulate", scenario("coop_headon.yaml"), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir / "telemetry.csv"));
  CHECK(std::filesystem::exists(dir / "summary.json"));
  std::ifstream csv(dir / "telemetry.csv");
  std::string first;
  std::getline(csv, first);
  CHECK(first == "# collcone-telemetry v1");
  std::filesystem::remove_all(dir);
}

TEST_CASE("simulate with a collision exits 1") {
  const auto dir = scratch("crash");
  const auto path = scratch("crash.yaml");
  {
    std::ofstream f(path);
    f << "name: crash\nplanes: 12\ndt: 0.02\nduration: 8\n"
         "guidance: {accel_limit: 0.001}\n"
         "agent: {shape: {kind: pure, semi_axes: [1, 1, 1]}, position: [0, 0, 0],"
         " speed: 4, heading_deg: [0, 0]}\n"
         "obstacles:\n  - {name: B, shape: {kind: pure, semi_axes: [1, 1, 1]},"
         " position: [30, 0, 0], speed: 4, heading_deg: [180, 0]}\n";
  }
  const Result r = run({"simulate", path.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("CollisionOccurred") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "telemetry.csv"));
  std::filesystem::remove_all(dir);
  std::filesystem::remove(path);
}

TEST_CASE("montecarlo writes its table") {
  const Result r = run({"montecarlo", "--trials", "2", "--planes-list", "6,12", "--threads", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("n,trials,mean_err,max_err,bound") != std::string::npos);
  CHECK(r.out.find("\n12,2,") != std::string::npos);
  CHECK(run({"montecarlo", "--trials", "2", "--planes-list", "400"}).code == 1);
}
