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

#include "collcone/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "collcone/error.hpp"

namespace collcone {

Vec3 ControlChannel::vector() const {
  const double cg = std::cos(gamma);
  return accel * Vec3(cg * std::cos(delta), cg * std::sin(delta), std::sin(gamma));
}

EngagementState make_engagement(const AgentState& a, const AgentState& b) {
  EngagementState s;
  s.a = a;
  s.b = b;
  const Vec3 rel = b.position - a.position;
  const Vec3 v = b.velocity - a.velocity;
  s.r = rel.norm();
  s.theta = std::atan2(rel.y(), rel.x());
  s.phi = s.r > 0.0 ? std::asin(std::clamp(rel.z() / s.r, -1.0, 1.0)) : 0.0;
  const double ct = std::cos(s.theta), st = std::sin(s.theta);
  const double cp = std::cos(s.phi), sp = std::sin(s.phi);
  s.v_r = v.dot(Vec3(cp * ct, cp * st, sp));
  s.v_theta = v.dot(Vec3(-st, ct, 0.0));
  s.v_phi = v.dot(Vec3(-sp * ct, -sp * st, cp));
  return s;
}

StateDerivative state_derivatives(const EngagementState& s, const ControlInput& u) {
  const double cp = std::cos(s.phi);
  if (std::abs(cp) <= 1e-6 || s.r <= 1e-6) {
    throw Error(ErrorCode::kGimbalSingularity, "line of sight is vertical");
  }
  const double sp = std::sin(s.phi);
  const double tp = sp / cp;
  const double r = s.r;
  const auto& ua = u.a;
  const auto& ub = u.b;
  const double cga = std::cos(ua.gamma), sga = std::sin(ua.gamma);
  const double cgb = std::cos(ub.gamma), sgb = std::sin(ub.gamma);
  const double da = ua.delta - s.theta, db = ub.delta - s.theta;

  StateDerivative d;
  d.r = s.v_r;
  d.theta = s.v_theta / (r * cp);
  d.phi = s.v_phi / r;
  d.v_theta = (-s.v_theta * s.v_r + s.v_theta * s.v_phi * tp) / r -
              cga * std::sin(da) * ua.accel + cgb * std::sin(db) * ub.accel;
  d.v_phi = (-s.v_phi * s.v_r - s.v_theta * s.v_theta * tp) / r +
            (cga * sp * std::cos(da) - sga * cp) * ua.accel -
            (cgb * sp * std::cos(db) - sgb * cp) * ub.accel;
  d.v_r = (s.v_theta * s.v_theta + s.v_phi * s.v_phi) / r -
          (cga * cp * std::cos(da) + sga * sp) * ua.accel +
          (cgb * cp * std::cos(db) + sgb * sp) * ub.accel;
  return d;
}

namespace {

struct Deriv {
  Vec3 dp;
  Vec3 dv;
};

Vec3 lateral(const ControlChannel& c, const Vec3& v) {
  const Vec3 cmd = c.vector();
  const double mag = cmd.norm();
  const double speed = v.norm();
  if (!(mag > 0.0) || !(speed > 0.0)) return cmd;
  const Vec3 vh = v / speed;
  const Vec3 normal = cmd - cmd.dot(vh) * vh;
  const double nn = normal.norm();
  return nn > 1e-12 * mag ? Vec3(mag * normal / nn) : Vec3::Zero();
}

AgentState rk4(const AgentState& x, const ControlChannel& c, double dt) {
  const auto f = [&](const Vec3& v) { return Deriv{v, lateral(c, v)}; };
  const Deriv k1 = f(x.velocity);
  const Deriv k2 = f(x.velocity + 0.5 * dt * k1.dv);
  const Deriv k3 = f(x.velocity + 0.5 * dt * k2.dv);
  const Deriv k4 = f(x.velocity + dt * k3.dv);
  AgentState out;
  out.position = x.position + dt / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
  out.velocity = x.velocity + dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  return out;
}

}  // namespace

EngagementState integrate_step(const EngagementState& s, const ControlInput& u,
                               double dt, const OverlapPredicate& overlap) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kConfigInvalid, "dt must be positive");
  const EngagementState next = make_engagement(rk4(s.a, u.a, dt), rk4(s.b, u.b, dt));
  if (overlap && overlap(next)) {
    throw Error(ErrorCode::kStepRejected, "bodies interpenetrate within the step");
  }
  return next;
}

ControlChannel accel_direction_3d(const PlaneFrame& f, double heading_p,
                                  double magnitude) {
  Vec3 dir = std::cos(heading_p + 0.5 * std::numbers::pi) * f.r_x +
             std::sin(heading_p + 0.5 * std::numbers::pi) * f.r_y;
  if (magnitude < 0.0) dir = -dir;
  dir.normalize();
  ControlChannel c;
  c.accel = std::abs(magnitude);
  c.delta = std::atan2(dir.y(), dir.x());
  c.gamma = std::asin(std::clamp(dir.z(), -1.0, 1.0));
  return c;
}

}  // namespace collcone
