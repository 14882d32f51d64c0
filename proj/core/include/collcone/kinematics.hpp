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

#include <functional>

#include "collcone/plane_sections.hpp"

namespace collcone {

struct AgentState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
};

// Line-of-sight spherical state of B relative to A with Cartesian mirrors.
// theta is the LOS azimuth, phi its elevation; V = v_b - v_a is resolved on
// e_r, e_theta = (-sin t, cos t, 0), e_phi = (-sin p cos t, -sin p sin t, cos p).
struct EngagementState {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double v_theta = 0.0;
  double v_phi = 0.0;
  double v_r = 0.0;
  AgentState a;
  AgentState b;
};

// Lateral acceleration of magnitude `accel` along
// (cos gamma cos delta, cos gamma sin delta, sin gamma).
struct ControlChannel {
  double accel = 0.0;
  double delta = 0.0;
  double gamma = 0.0;

  Vec3 vector() const;
};

struct ControlInput {
  ControlChannel a;
  ControlChannel b;
};

struct StateDerivative {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double v_theta = 0.0;
  double v_phi = 0.0;
  double v_r = 0.0;
};

EngagementState make_engagement(const AgentState& a, const AgentState& b);

// Throws kGimbalSingularity when |cos phi| <= 1e-6 or r <= 1e-6.
StateDerivative state_derivatives(const EngagementState& s, const ControlInput& u);

// Returns true when the bodies interpenetrate at the given state.
using OverlapPredicate = std::function<bool(const EngagementState&)>;

// RK4 on both agents' Cartesian states. Each stage re-projects the commanded
// direction normal to the current velocity, keeping its magnitude. Throws
// kStepRejected when `overlap` reports contact at the end of the step.
EngagementState integrate_step(const EngagementState& s, const ControlInput& u,
                               double dt, const OverlapPredicate& overlap = {});

// Lifts the in-plane normal (heading + pi/2) into 3-D. A negative magnitude
// flips the direction; the returned accel is non-negative.
ControlChannel accel_direction_3d(const PlaneFrame& f, double heading_p,
                                  double magnitude);

}  // namespace collcone
