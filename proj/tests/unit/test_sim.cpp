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


#include "collcone/sim.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"

using namespace collcone;

namespace {

Scenario two_spheres(double offset_y, double accel_limit) {
  Scenario sc;
  sc.name = "pair";
  sc.planes = 12;
  sc.dt = 0.02;
  sc.duration = 6.0;
  sc.agent_shape.semi_axes = Vec3::Ones();
  sc.agent_motion.speed = 4.0;
  sc.guidance.accel_limit = accel_limit;
  ObstacleSpec b;
  b.name = "B";
  b.shape = ShapeSpec{};
  b.shape->semi_axes = Vec3::Ones();
  b.motion.position = Vec3(40, offset_y, 0);
  b.motion.speed = 4.0;
  b.motion.azimuth_deg = 180.0;
  sc.obstacles.push_back(b);
  return sc;
}

}  // namespace

TEST_CASE("distant traffic leaves the agent alone") {
  const Telemetry t = run_scenario(two_spheres(60.0, 30.0));
  REQUIRE_FALSE(t.rows.empty());
  for (const TelemetryRow& r : t.rows) {
    CHECK_FALSE(r.engaged);
    CHECK(r.a_a == 0.0);
  }
  const TelemetryRow& last = t.rows.back();
  CHECK((last.agent.position - Vec3(4.0 * last.t, 0, 0)).norm() < 1e-9);
  CHECK_FALSE(t.summary.collision);
  CHECK_FALSE(t.summary.obstacles[0].engaged);
}

TEST_CASE("head-on threat is avoided") {
  const Telemetry t = run_scenario(two_spheres(0.0, 30.0));
  const ObstacleReport& b = t.summary.obstacles.at(0);
  CHECK(b.engaged);
  CHECK(b.cleared);
  CHECK_FALSE(t.summary.collision);
  CHECK(t.summary.min_separation > 0.0);
  CHECK(b.engaged_at == doctest::Approx(0.0));
}

TEST_CASE("insufficient authority ends with contact") {
  const Telemetry t = run_scenario(two_spheres(0.0, 1e-3));
  CHECK(t.summary.collision);
  CHECK(t.summary.obstacles.at(0).contact);
  CHECK(t.summary.end_time < 6.0);
}

TEST_CASE("runs are deterministic") {
  const Scenario sc = load_scenario(COLLCONE_SCENARIO_DIR "/coop.yaml");
  const Telemetry a = run_scenario(sc);
  const Telemetry b = run_scenario(sc);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].agent.position == b.rows[i].agent.position);
    CHECK(a.rows[i].a_a == b.rows[i].a_a);
  }
}

TEST_CASE("cooperative partner applies the shared ratio") {
  const Scenario sc = load_scenario(COLLCONE_SCENARIO_DIR "/coop_headon.yaml");
  const Telemetry t = run_scenario(sc);
  int commanded = 0;
  for (const TelemetryRow& r : t.rows) {
    CHECK(r.a_b == doctest::Approx(sc.guidance.mu * r.a_a).epsilon(1e-12));
    if (r.a_a != 0.0) ++commanded;
  }
  CHECK(commanded > 0);
  CHECK_FALSE(t.summary.collision);
}

TEST_CASE("telemetry csv layout") {
  Scenario sc = two_spheres(0.0, 30.0);
  sc.duration = 0.1;
  const Telemetry t = run_scenario(sc);
  std::ostringstream os;
  write_telemetry_csv(t, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# collcone-telemetry v1");
  std::string header;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (header.empty()) {
      header = line;
      continue;
    }
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == std::count(header.begin(), header.end(), ','));
  }
  CHECK(header.rfind("t,active,engaged,ax,ay,az", 0) == 0);
  CHECK(header.find("B_present") != std::string::npos);
  CHECK(header.find(",y_11,") != std::string::npos);
  CHECK(header.find(",psi_11") != std::string::npos);
  CHECK(rows == static_cast<int>(t.rows.size()));
}

TEST_CASE("summary json fields") {
  const Telemetry t = run_scenario(two_spheres(0.0, 30.0));
  const auto j = nlohmann::json::parse(summary_json(t.summary));
  CHECK(j.at("scenario") == "pair");
  CHECK(j.at("collision") == false);
  CHECK(j.at("obstacles").size() == 1);
  CHECK(j.at("obstacles")[0].contains("reengagements"));
  CHECK(j.at("obstacles")[0].at("cleared") == true);
}
