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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collcone/guidance.hpp"
#include "collcone/quadric.hpp"
#include "collcone/sampling.hpp"

namespace collcone {

// Delimiter hyperboloid in the shape's body frame; its quadric class follows
// from the composite kind (one-sheet for biconvex, two-sheet otherwise).
struct DelimiterSpec {
  Vec3 semi_axes = Vec3::Ones();
  Vec3 ypr_deg = Vec3::Zero();
  Vec3 offset = Vec3::Zero();
};

struct ShapeSpec {
  CompositeKind kind = CompositeKind::kPure;
  Vec3 semi_axes = Vec3::Ones();
  Vec3 ypr_deg = Vec3::Zero();
  std::optional<DelimiterSpec> delimiter;
};

// Linear ramp of the delimiter's axial semi-axis (the dimple vertex).
struct MorphSpec {
  double start = 0.0;
  double end = 0.0;
  double vertex_from = 0.0;
  double vertex_to = 0.0;

  double vertex_at(double t) const;
};

struct MotionSpec {
  Vec3 position = Vec3::Zero();
  double speed = 0.0;
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;

  Vec3 velocity() const;
};

struct CloudSpec {
  std::string file;  // resolved against the scenario directory
  // Generated when no file is given.
  double radius = 0.0;
  double half_height = 0.0;
  int count = 1000;
  std::uint64_t seed = 1;
};

struct ObstacleSpec {
  std::string name;
  std::optional<ShapeSpec> shape;
  std::optional<CloudSpec> cloud;
  MotionSpec motion;
  // The obstacle enters the scene at `motion.position` at this time.
  double activation_time = 0.0;
  std::optional<MorphSpec> morph;
};

enum class Mode { kNonCooperative, kCooperative };

const char* mode_name(Mode m);

struct Scenario {
  std::string name = "scenario";
  Mode mode = Mode::kNonCooperative;
  ShapeSpec agent_shape;
  MotionSpec agent_motion;
  std::vector<ObstacleSpec> obstacles;
  GuidanceConfig guidance;
  int planes = 36;
  double dt = 0.01;
  double duration = 20.0;
  std::uint64_t seed = 1;
  std::string base_dir = ".";
};

// Throws kConfigInvalid with the offending key.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& yaml_text, const std::string& base_dir = ".");
void validate_scenario(const Scenario& sc);

// Key/value echo of every effective setting, one per line.
std::vector<std::string> describe_scenario(const Scenario& sc);

// Static two-body case for single cone evaluations: the agent block plus one
// obstacle block, in the scenario file syntax.
struct GeometryCase {
  ShapeSpec agent_shape;
  MotionSpec agent_motion;
  ObstacleSpec obstacle;
  int planes = 36;
  std::string base_dir = ".";
};

GeometryCase load_geometry(const std::string& path);
GeometryCase parse_geometry(const std::string& yaml_text, const std::string& base_dir = ".");

// Obstacle body at its spec position, with the morph evaluated at time t.
Body build_body(const ObstacleSpec& o, const std::string& base_dir, double t = 0.0);

// Delimiter vertex overrides the spec's axial semi-axis when given.
CompositeShape build_shape(const ShapeSpec& s, const Vec3& center,
                           std::optional<double> delimiter_vertex = std::nullopt);

// Offsets of the obstacle's cloud, from file or generated.
std::vector<Vec3> load_cloud(const CloudSpec& c, const std::string& base_dir);

}  // namespace collcone
