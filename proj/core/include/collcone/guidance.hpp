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

#include <deque>
#include <string>
#include <utility>

#include "collcone/cone.hpp"

namespace collcone {

enum class PlaneRule { kMaxPsi, kMinDeviation };

const char* plane_rule_name(PlaneRule r);
// Accepts "max_psi" and "min_deviation"; throws kConfigInvalid otherwise.
PlaneRule parse_plane_rule(const std::string& s);

struct GuidanceConfig {
  double k_gain = 2.0;
  double w_ref = 0.05;
  double mu = 0.0;
  PlaneRule plane_rule = PlaneRule::kMaxPsi;
  int rate_window = 3;
  double accel_limit = 30.0;
  // Release after receding outside the cone for this long.
  double release_hold = 1.0;  // s
  bool coast_outside = true;  // no command once y_sel >= w

  // Throws kConfigInvalid.
  void validate() const;
};

struct GuidanceTerms {
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double theta_b_rate = 0.0;
  double psi_rate = 0.0;
};

// Throws kNoValidPlane for an empty cone.
int select_plane(const Cone3D& c, PlaneRule rule, int prefer = -1);

struct ConeSample {
  double t = 0.0;
  double psi = 0.0;
  double theta_b = 0.0;
};

// Backward difference across the window with theta_b unwrapped. Fewer than
// two samples gives zero rates.
std::pair<double, double> numeric_rates(const std::deque<ConeSample>& history);

// Rolling history on the selected plane; a plane switch clears it.
class RateTracker {
 public:
  explicit RateTracker(int window) : window_(window) {}
  void push(int plane, const ConeSample& s);
  void reset() { history_.clear(); }
  // (psi_rate, theta_b_rate)
  std::pair<double, double> rates() const { return numeric_rates(history_); }

 private:
  int window_;
  int plane_ = -1;
  std::deque<ConeSample> history_;
};

struct Rates {
  double psi = 0.0;
  double theta_b = 0.0;
};

struct AccelCommand {
  double a_a = 0.0;
  double a_b = 0.0;
  GuidanceTerms terms;
  bool saturated = false;
};

// Signed a_A along A's in-plane normal (heading_a + pi/2) that drives
// y -> w with rate K. Throws kSingularInversion when |D1 D2| is below
// 1e-9 |V|^3.
AccelCommand noncoop_accel(const PlanarStates& s, const PlanarCone& c,
                           const Rates& rates, const GuidanceConfig& cfg, double y_p);

// Shared effort with a_B = mu a_A, each along its own in-plane normal.
AccelCommand coop_accels(const PlanarStates& s, const PlanarCone& c,
                         const Rates& rates, const GuidanceConfig& cfg, double y_p);

}  // namespace collcone
