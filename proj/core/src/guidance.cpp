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

#include "collcone/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "collcone/error.hpp"

namespace collcone {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

// In-plane relative velocity direction. The transverse component v_theta_p is
// measured clockwise from e_r (along r_x when theta_p = pi/2).
double velocity_angle(const PlanarStates& s) {
  const double v_ccw = -s.v_theta_p;
  return s.theta_p + std::atan2(v_ccw, s.v_rp);
}

struct Inversion {
  GuidanceTerms terms;
  double speed = 0.0;
};

Inversion common_terms(const PlanarStates& s, const PlanarCone& c, const Rates& rates,
                       const GuidanceConfig& cfg, double y_p) {
  Inversion inv;
  GuidanceTerms& g = inv.terms;
  const double vr = s.v_rp;
  const double vt = -s.v_theta_p;
  const double v2 = vr * vr + vt * vt;
  inv.speed = std::sqrt(v2);
  const double delta = s.theta_p - c.theta_b;
  const double ha = s.heading_a - s.theta_p;
  const double hb = s.heading_b - s.theta_p;
  g.psi_rate = rates.psi;
  g.theta_b_rate = rates.theta_b;
  g.d1 = 2.0 * vr * vt * std::cos(2.0 * delta) + (vr * vr - vt * vt) * std::sin(2.0 * delta);
  g.d2 = 2.0 * (vr * std::cos(ha) + vt * std::sin(ha));
  g.n1 = v2 * (2.0 * cfg.k_gain * (cfg.w_ref - y_p) + rates.psi * std::sin(c.psi));
  g.n2 = 2.0 * rates.theta_b * g.d1;
  g.n3 = -(vr * std::cos(hb) + vt * std::sin(hb));
  return inv;
}

void check_denominator(double den, double speed) {
  if (!(std::abs(den) >= 1e-9 * speed * speed * speed)) {
    throw Error(ErrorCode::kSingularInversion, "inversion denominator vanishes");
  }
}

}  // namespace

const char* plane_rule_name(PlaneRule r) {
  return r == PlaneRule::kMaxPsi ? "max_psi" : "min_deviation";
}

PlaneRule parse_plane_rule(const std::string& s) {
  if (s == "max_psi") return PlaneRule::kMaxPsi;
  if (s == "min_deviation") return PlaneRule::kMinDeviation;
  throw Error(ErrorCode::kConfigInvalid, "unknown plane_rule '" + s + "'");
}

void GuidanceConfig::validate() const {
  if (!(k_gain > 0.0)) throw Error(ErrorCode::kConfigInvalid, "K must be positive");
  if (!(w_ref >= 0.0)) throw Error(ErrorCode::kConfigInvalid, "w must be >= 0");
  if (rate_window < 2) throw Error(ErrorCode::kConfigInvalid, "rate_window must be >= 2");
  if (!(accel_limit > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "accel_limit must be positive");
  }
  if (!std::isfinite(mu)) throw Error(ErrorCode::kConfigInvalid, "mu must be finite");
  if (!(release_hold >= 0.0)) throw Error(ErrorCode::kConfigInvalid, "release_hold must be >= 0");
}

constexpr double kPlaneTieTolerance = 1e-6;

int select_plane(const Cone3D& c, PlaneRule rule, int prefer) {
  if (c.planes.empty()) throw Error(ErrorCode::kNoValidPlane, "cone has no planes");
  const int count = static_cast<int>(c.planes.size());
  std::vector<double> scores(count);
  int best = 0;
  for (int j = 0; j < count; ++j) {
    const PlaneResult& p = c.planes[j];
    double& score = scores[j];
    if (rule == PlaneRule::kMaxPsi) {
      score = p.cone.psi;
    } else {
      // Closeness of the relative velocity to the nearer cone edge.
      const double chi = velocity_angle(p.states);
      const double axis = p.cone.theta_b + kPi;
      const double e1 = std::abs(wrap_pi(chi - (axis + 0.5 * p.cone.psi)));
      const double e2 = std::abs(wrap_pi(chi - (axis - 0.5 * p.cone.psi)));
      score = -std::min(e1, e2);
    }
    if (score > scores[best]) best = j;
  }
  // Near-ties keep the previous plane.
  if (prefer >= 0 && prefer < count && scores[prefer] >= scores[best] - kPlaneTieTolerance) {
    return prefer;
  }
  return best;
}

std::pair<double, double> numeric_rates(const std::deque<ConeSample>& history) {
  if (history.size() < 2) return {0.0, 0.0};
  const ConeSample& first = history.front();
  const double span = history.back().t - first.t;
  if (!(span > 0.0)) return {0.0, 0.0};
  double theta = first.theta_b;
  for (std::size_t i = 1; i < history.size(); ++i) {
    theta += wrap_pi(history[i].theta_b - history[i - 1].theta_b);
  }
  return {(history.back().psi - first.psi) / span, (theta - first.theta_b) / span};
}

void RateTracker::push(int plane, const ConeSample& s) {
  if (plane != plane_) {
    history_.clear();
    plane_ = plane;
  }
  history_.push_back(s);
  while (static_cast<int>(history_.size()) > window_) history_.pop_front();
}

AccelCommand noncoop_accel(const PlanarStates& s, const PlanarCone& c, const Rates& rates,
                           const GuidanceConfig& cfg, double y_p) {
  const Inversion inv = common_terms(s, c, rates, cfg, y_p);
  const GuidanceTerms& g = inv.terms;
  const double den = g.d1 * g.d2;
  check_denominator(den, inv.speed);
  AccelCommand out;
  out.terms = g;
  out.a_a = -inv.speed * inv.speed * (g.n1 + g.n2) / den;
  if (std::abs(out.a_a) > cfg.accel_limit) {
    out.a_a = std::copysign(cfg.accel_limit, out.a_a);
    out.saturated = true;
  }
  return out;
}

AccelCommand coop_accels(const PlanarStates& s, const PlanarCone& c, const Rates& rates,
                         const GuidanceConfig& cfg, double y_p) {
  const Inversion inv = common_terms(s, c, rates, cfg, y_p);
  const GuidanceTerms& g = inv.terms;
  const double den = g.d1 * (g.d2 + 2.0 * cfg.mu * g.n3);
  check_denominator(den, inv.speed);
  AccelCommand out;
  out.terms = g;
  out.a_a = -inv.speed * inv.speed * (g.n1 + g.n2) / den;
  const double limit = cfg.accel_limit / std::max(1.0, std::abs(cfg.mu));
  if (std::abs(out.a_a) > limit) {
    out.a_a = std::copysign(limit, out.a_a);
    out.saturated = true;
  }
  out.a_b = cfg.mu * out.a_a;
  return out;
}

}  // namespace collcone
