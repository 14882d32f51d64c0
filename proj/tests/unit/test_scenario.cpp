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


#include "collcone/scenario.hpp"

#include <algorithm>

#include "collcone/error.hpp"
#include "doctest.h"

using namespace collcone;

namespace {

const char* kMinimal = R"(
name: tiny
planes: 12
dt: 0.02
duration: 3
agent:
  shape: {kind: pure, semi_axes: [1, 1, 1]}
  position: [0, 0, 0]
  speed: 2
  heading_deg: [90, 0]
obstacles:
  - name: B
    shape: {kind: pure, semi_axes: [1, 2, 1]}
    position: [0, 30, 0]
    speed: 1
    heading_deg: [-90, 0]
)";

ErrorCode code_of(const std::string& yaml) {
  try {
    parse_scenario(yaml);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::kConfigInvalid;
}

std::string with(const std::string& from, const std::string& to) {
  std::string s = kMinimal;
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("minimal scenario parses with defaults") {
  const Scenario sc = parse_scenario(kMinimal);
  CHECK(sc.name == "tiny");
  CHECK(sc.mode == Mode::kNonCooperative);
  CHECK(sc.planes == 12);
  CHECK(sc.dt == doctest::Approx(0.02));
  REQUIRE(sc.obstacles.size() == 1);
  CHECK(sc.obstacles[0].name == "B");
  CHECK((sc.agent_motion.velocity() - Vec3(0, 2, 0)).norm() < 1e-12);
  CHECK((sc.obstacles[0].motion.velocity() - Vec3(0, -1, 0)).norm() < 1e-12);
  CHECK(sc.guidance.k_gain == doctest::Approx(2.0));
  CHECK(sc.guidance.release_hold == doctest::Approx(1.0));
  CHECK(sc.guidance.coast_outside);
}

TEST_CASE("elevation lifts the heading") {
  MotionSpec m;
  m.speed = 2.0;
  m.azimuth_deg = 0.0;
  m.elevation_deg = 30.0;
  CHECK((m.velocity() - Vec3(std::sqrt(3.0), 0, 1)).norm() < 1e-12);
}

TEST_CASE("unknown and malformed keys are rejected") {
  CHECK(code_of(with("planes: 12", "planes: 12\nplains: 3")) == ErrorCode::kConfigInvalid);
  CHECK(code_of(with("speed: 2", "speed: fast")) == ErrorCode::kConfigInvalid);
  CHECK(code_of(with("kind: pure, semi_axes: [1, 1, 1]", "kind: blob, semi_axes: [1, 1, 1]")) ==
        ErrorCode::kConfigInvalid);
  CHECK(code_of(with("position: [0, 0, 0]", "position: [0, 0]")) == ErrorCode::kConfigInvalid);
  CHECK(code_of(with("dt: 0.02", "dt: -1")) == ErrorCode::kConfigInvalid);
  CHECK(code_of(with("dt: 0.02", "dt: [0.02")) == ErrorCode::kConfigInvalid);
  CHECK(code_of(with("name: tiny", "name: tiny\nguidance: {K: 2, gain: 3}")) ==
        ErrorCode::kConfigInvalid);
  CHECK(code_of(with("name: tiny", "name: tiny\nmode: friendly")) == ErrorCode::kConfigInvalid);
}

TEST_CASE("non-positive axes are config errors") {
  CHECK(code_of(with("semi_axes: [1, 2, 1]", "semi_axes: [1, 0, 1]")) ==
        ErrorCode::kConfigInvalid);
}

TEST_CASE("describe echoes effective settings") {
  const auto lines = describe_scenario(parse_scenario(kMinimal));
  const auto has = [&](const std::string& prefix) {
    return std::any_of(lines.begin(), lines.end(),
                       [&](const std::string& l) { return l.rfind(prefix, 0) == 0; });
  };
  CHECK(has("name=tiny"));
  CHECK(has("planes=12"));
  CHECK(has("guidance.K="));
  CHECK(has("guidance.coast_outside=true"));
}

TEST_CASE("morph ramps the dimple vertex") {
  MorphSpec m{8.0, 12.0, 1.0, 2.5};
  CHECK(m.vertex_at(0.0) == doctest::Approx(1.0));
  CHECK(m.vertex_at(10.0) == doctest::Approx(1.75));
  CHECK(m.vertex_at(20.0) == doctest::Approx(2.5));
}

TEST_CASE("bundled scenarios load") {
  for (const char* name : {"sim1.yaml", "coop.yaml", "coop_headon.yaml"}) {
    CAPTURE(name);
    const Scenario sc = load_scenario(std::string(COLLCONE_SCENARIO_DIR "/") + name);
    CHECK_NOTHROW(validate_scenario(sc));
    for (const ObstacleSpec& o : sc.obstacles) CHECK_NOTHROW(build_body(o, sc.base_dir));
  }
  const Scenario sim1 = load_scenario(COLLCONE_SCENARIO_DIR "/sim1.yaml");
  CHECK(sim1.obstacles.size() == 4);
  const Body e = build_body(sim1.obstacles[3], sim1.base_dir);
  REQUIRE(std::holds_alternative<PointCloud>(e));
  CHECK(std::get<PointCloud>(e).offsets.size() == 1000);
  CHECK(load_scenario(COLLCONE_SCENARIO_DIR "/coop.yaml").mode == Mode::kCooperative);
  CHECK_NOTHROW(load_geometry(COLLCONE_SCENARIO_DIR "/geometry_biconcave.yaml"));
}

TEST_CASE("missing files are config errors") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), Error);
}
