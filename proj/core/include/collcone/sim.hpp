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

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "collcone/kinematics.hpp"
#include "collcone/scenario.hpp"

namespace collcone {

inline constexpr int kTelemetrySchemaVersion = 1;
inline constexpr int kSummarySchemaVersion = 1;

struct TelemetryRow {
  double t = 0.0;
  int active = -1;  // obstacle index, -1 when none
  bool engaged = false;
  AgentState agent;
  std::vector<AgentState> obstacles;
  std::vector<bool> present;
  EngagementState engagement;  // agent vs active obstacle
  ControlChannel u_a;
  ControlChannel u_b;
  double a_a = 0.0;  // signed, along the in-plane normal
  double a_b = 0.0;
  int selected_plane = -1;
  double y_sel = std::numeric_limits<double>::quiet_NaN();
  double psi_sel = std::numeric_limits<double>::quiet_NaN();
  double theta_b_sel = std::numeric_limits<double>::quiet_NaN();
  double v_hat_r_sel = std::numeric_limits<double>::quiet_NaN();
  double y_vel = std::numeric_limits<double>::quiet_NaN();
  double psi_vel = std::numeric_limits<double>::quiet_NaN();
  bool any_collision = false;
  bool singular = false;
  std::vector<double> y_planes;
  std::vector<double> psi_planes;
  double min_separation = std::numeric_limits<double>::infinity();
};

struct ObstacleReport {
  std::string name;
  bool activated = false;
  bool engaged = false;
  bool cleared = false;
  bool contact = false;
  double activation_time = 0.0;
  double engaged_at = std::numeric_limits<double>::quiet_NaN();
  double cleared_at = std::numeric_limits<double>::quiet_NaN();
  int reengagements = 0;
  double min_separation = std::numeric_limits<double>::infinity();
  int singular_steps = 0;
  int saturated_steps = 0;
};

struct RunSummary {
  std::string scenario;
  bool collision = false;
  std::string verdict;
  int cleared = 0;
  int total = 0;
  double min_separation = std::numeric_limits<double>::infinity();
  double end_time = 0.0;
  int steps = 0;
  std::vector<ObstacleReport> obstacles;
};

struct Telemetry {
  std::vector<std::string> header;  // config echo, key=value
  std::vector<std::string> obstacle_names;
  int planes = 0;
  std::vector<TelemetryRow> rows;
  RunSummary summary;
};

struct RunOptions {
  int separation_samples = 1000;
  // Extra clearance around bounding spheres inside which separation is sampled.
  double near_margin = 10.0;
};

// Throws kConfigInvalid for scenarios that fail validation. Contact ends the
// run early and is reported through the summary, not thrown.
Telemetry run_scenario(const Scenario& sc, const RunOptions& opts = {});

void write_telemetry_csv(const Telemetry& t, std::ostream& out);
std::string summary_json(const RunSummary& s);

}  // namespace collcone
