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
#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "collcone/error.hpp"

#ifndef COLLCONE_VERSION_STRING
#define COLLCONE_VERSION_STRING "unknown"
#endif

namespace collcone {

namespace {

struct ObstacleRuntime {
  const ObstacleSpec* spec = nullptr;
  AgentState state;
  std::vector<Vec3> cloud_offsets;
  bool present = false;
  bool cleared = false;
  bool engaged = false;
  double release_since = -1.0;
  double last_a = 0.0;
  RateTracker tracker{3};
  int last_plane = -1;
};

Body obstacle_body(const ObstacleRuntime& o, double t) {
  if (o.spec->shape) {
    std::optional<double> vertex;
    if (o.spec->morph) vertex = o.spec->morph->vertex_at(t);
    return build_shape(*o.spec->shape, o.state.position, vertex);
  }
  return PointCloud{o.state.position, o.cloud_offsets};
}

// Minimum over obstacle surface samples of the signed distance to the agent's
// ellipsoid; far bodies get the bounding-sphere lower bound.
double separation(const CanonicalForm& agent_form, double agent_radius, const Body& b,
                  const RunOptions& opts) {
  const double gap = (body_center(b) - agent_form.center).norm() - agent_radius -
                     bounding_radius(b);
  if (gap > opts.near_margin) return gap;
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& p : surface_samples(b, opts.separation_samples)) {
    best = std::min(best, signed_distance_to_ellipsoid(agent_form, p));
  }
  return best;
}

AgentState coast(const AgentState& s, double dt) {
  return AgentState{s.position + dt * s.velocity, s.velocity};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

Telemetry run_scenario(const Scenario& sc, const RunOptions& opts) {
  validate_scenario(sc);
  Telemetry tel;
  tel.planes = sc.planes;
  tel.header = describe_scenario(sc);
  tel.header.insert(tel.header.begin(), std::string("version=") + COLLCONE_VERSION_STRING);

  const GuidanceConfig& g = sc.guidance;
  AgentState agent{sc.agent_motion.position, sc.agent_motion.velocity()};
  std::vector<ObstacleRuntime> obs(sc.obstacles.size());
  RunSummary& sum = tel.summary;
  sum.scenario = sc.name;
  sum.total = static_cast<int>(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const ObstacleSpec& spec = sc.obstacles[i];
    obs[i].spec = &spec;
    obs[i].state = AgentState{spec.motion.position, spec.motion.velocity()};
    obs[i].tracker = RateTracker(g.rate_window);
    if (spec.cloud) obs[i].cloud_offsets = load_cloud(*spec.cloud, sc.base_dir);
    tel.obstacle_names.push_back(spec.name);
    ObstacleReport rep;
    rep.name = spec.name;
    rep.activation_time = spec.activation_time;
    sum.obstacles.push_back(rep);
  }

  const int total_steps = static_cast<int>(std::ceil(sc.duration / sc.dt - 1e-9));
  double last_clear = -1.0;
  double t = 0.0;
  for (int step = 0; step <= total_steps; ++step) {
    t = step * sc.dt;
    const CompositeShape agent_shape = build_shape(sc.agent_shape, agent.position);
    const CanonicalForm agent_form = canonical_form(agent_shape.primary);
    const double agent_radius = bounding_radius(Body(agent_shape));

    TelemetryRow row;
    row.t = t;
    row.agent = agent;

    std::vector<Body> bodies(obs.size(), Body(PointCloud{}));
    for (std::size_t i = 0; i < obs.size(); ++i) {
      ObstacleRuntime& o = obs[i];
      if (!o.present && t + 1e-9 >= o.spec->activation_time) {
        o.present = true;
        sum.obstacles[i].activated = true;
      }
      row.obstacles.push_back(o.state);
      row.present.push_back(o.present);
      if (!o.present) continue;
      bodies[i] = obstacle_body(o, t);
      const double sep = separation(agent_form, agent_radius, bodies[i], opts);
      ObstacleReport& rep = sum.obstacles[i];
      rep.min_separation = std::min(rep.min_separation, sep);
      row.min_separation = std::min(row.min_separation, sep);
      if (sep <= 0.0) rep.contact = true;
    }
    sum.min_separation = std::min(sum.min_separation, row.min_separation);

    const bool contact = std::any_of(sum.obstacles.begin(), sum.obstacles.end(),
                                     [](const ObstacleReport& r) { return r.contact; });
    if (contact) {
      sum.collision = true;
      tel.rows.push_back(std::move(row));
      break;
    }

    // Cones for every live obstacle; the first engaged or threatening one is
    // served, otherwise the first uncleared one is reported.
    std::vector<std::optional<Cone3D>> cones(obs.size());
    int active = -1;
    int fallback = -1;
    for (std::size_t i = 0; i < obs.size(); ++i) {
      ObstacleRuntime& o = obs[i];
      if (!o.present) continue;
      ConeOptions copt;
      copt.check_overlap = false;
      cones[i] = cone_3d(agent_shape, bodies[i], agent.velocity, o.state.velocity,
                         sc.planes, copt);
      if (fallback < 0 && !o.cleared) fallback = static_cast<int>(i);
      if (active < 0 && (o.engaged || cones[i]->any_collision)) active = static_cast<int>(i);
    }
    if (active < 0) active = fallback;

    ControlInput u;
    if (active >= 0) {
      ObstacleRuntime& o = obs[active];
      ObstacleReport& rep = sum.obstacles[active];
      const Cone3D& cone = *cones[active];
      row.active = active;
      row.engagement = make_engagement(agent, o.state);
      row.any_collision = cone.any_collision;
      row.y_vel = cone.velocity_plane.y.y;
      row.psi_vel = cone.velocity_plane.psi;
      for (const PlaneResult& p : cone.planes) {
        row.y_planes.push_back(p.y.y);
        row.psi_planes.push_back(p.cone.psi);
      }
      const int sel = select_plane(cone, g.plane_rule, o.last_plane);
      o.last_plane = sel;
      const PlaneResult& p = cone.planes[sel];
      row.selected_plane = sel;
      row.y_sel = p.y.y;
      row.psi_sel = p.cone.psi;
      row.theta_b_sel = p.cone.theta_b;
      row.v_hat_r_sel = p.y.v_hat_r;

      if (!o.engaged && cone.any_collision) {
        if (o.cleared) {
          o.cleared = false;
          rep.cleared = false;
          ++rep.reengagements;
        }
        o.engaged = true;
        o.release_since = -1.0;
        o.tracker.reset();
        if (!rep.engaged) rep.engaged_at = t;
        rep.engaged = true;
      }
      const bool releasable = !cone.any_collision && row.engagement.v_r > 0.0;
      if (!releasable) {
        o.release_since = -1.0;
      } else if (o.release_since < 0.0) {
        o.release_since = t;
      }
      if (!o.cleared && releasable && t - o.release_since + 1e-9 >= g.release_hold) {
        o.engaged = false;
        o.cleared = true;
        rep.cleared = true;
        rep.cleared_at = t;
        last_clear = t;
      }

      if (o.engaged) {
        row.engaged = true;
        o.tracker.push(sel, ConeSample{t, p.cone.psi, p.cone.theta_b});
        const auto [psi_rate, theta_rate] = o.tracker.rates();
        const Rates rates{psi_rate, theta_rate};
        AccelCommand cmd;
        try {
          cmd = sc.mode == Mode::kCooperative
                    ? coop_accels(p.states, p.cone, rates, g, p.y.y)
                    : noncoop_accel(p.states, p.cone, rates, g, p.y.y);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kSingularInversion) throw;
          // Hold the last command; a cold start picks an arbitrary side.
          row.singular = true;
          ++rep.singular_steps;
          const double limit = g.accel_limit / std::max(1.0, std::abs(g.mu));
          cmd.a_a = o.last_a != 0.0 ? o.last_a : limit;
          cmd.a_b = sc.mode == Mode::kCooperative ? g.mu * cmd.a_a : 0.0;
        }
        if (cmd.saturated) ++rep.saturated_steps;
        if (sc.mode != Mode::kCooperative) cmd.a_b = 0.0;
        o.last_a = cmd.a_a;
        if (g.coast_outside && p.y.y >= g.w_ref) cmd.a_a = cmd.a_b = 0.0;
        row.a_a = cmd.a_a;
        row.a_b = cmd.a_b;
        u.a = accel_direction_3d(p.frame, p.states.heading_a, cmd.a_a);
        if (cmd.a_b != 0.0) u.b = accel_direction_3d(p.frame, p.states.heading_b, cmd.a_b);
      }
    }
    row.u_a = u.a;
    row.u_b = u.b;
    tel.rows.push_back(std::move(row));

    const bool all_cleared =
        !obs.empty() && std::all_of(obs.begin(), obs.end(),
                                    [](const ObstacleRuntime& o) { return o.cleared; });
    if (step == total_steps || (all_cleared && t >= last_clear + 1.0 - 1e-9)) break;

    // Advance: the served pair under control, everything else coasting.
    if (active >= 0) {
      ObstacleRuntime& o = obs[active];
      const auto overlap = [&](const EngagementState& s) {
        const CompositeShape a_next = build_shape(sc.agent_shape, s.a.position);
        ObstacleRuntime probe = o;
        probe.state = s.b;
        const Body b_next = obstacle_body(probe, t + sc.dt);
        return separation(canonical_form(a_next.primary), agent_radius, b_next, opts) <= 0.0;
      };
      EngagementState s = make_engagement(agent, o.state);
      bool advanced = false;
      for (int split = 1; split <= 8 && !advanced; split *= 2) {
        try {
          EngagementState cur = s;
          for (int k = 0; k < split; ++k) {
            cur = integrate_step(cur, u, sc.dt / split, k + 1 == split ? overlap : OverlapPredicate{});
          }
          s = cur;
          advanced = true;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kStepRejected) throw;
        }
      }
      if (!advanced) {
        s = integrate_step(s, u, sc.dt);  // contact is recorded next step
      }
      agent = s.a;
      o.state = s.b;
    } else {
      agent = coast(agent, sc.dt);
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
      if (static_cast<int>(i) != active && obs[i].present) obs[i].state = coast(obs[i].state, sc.dt);
    }
  }

  sum.end_time = t;
  sum.steps = static_cast<int>(tel.rows.size());
  sum.cleared = static_cast<int>(std::count_if(
      sum.obstacles.begin(), sum.obstacles.end(), [](const ObstacleReport& r) { return r.cleared; }));
  if (sum.collision) {
    for (const ObstacleReport& r : sum.obstacles) {
      if (r.contact) {
        sum.verdict = "collision: " + r.name;
        break;
      }
    }
  } else {
    sum.verdict = "cleared: " + std::to_string(sum.cleared) + "/" + std::to_string(sum.total);
  }
  return tel;
}

void write_telemetry_csv(const Telemetry& t, std::ostream& out) {
  out << "# collcone-telemetry v" << kTelemetrySchemaVersion << '\n';
  for (const std::string& h : t.header) out << "# " << h << '\n';
  out << "t,active,engaged,ax,ay,az,avx,avy,avz";
  for (const std::string& n : t.obstacle_names) {
    for (const char* c : {"present", "x", "y", "z", "vx", "vy", "vz"}) out << ',' << n << '_' << c;
  }
  out << ",r,theta,phi,v_r,v_theta,v_phi,a_A,delta_A,gamma_A,a_B,delta_B,gamma_B"
      << ",a_A_signed,a_B_signed,sel_plane,y_sel,psi_sel,theta_b_sel,vhat_r_sel"
      << ",y_vel,psi_vel,any_collision,singular,min_separation";
  for (int j = 0; j < t.planes; ++j) out << ",y_" << j;
  for (int j = 0; j < t.planes; ++j) out << ",psi_" << j;
  out << '\n';
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const TelemetryRow& r : t.rows) {
    out << fmt(r.t) << ',' << r.active << ',' << (r.engaged ? 1 : 0);
    for (int k = 0; k < 3; ++k) out << ',' << fmt(r.agent.position[k]);
    for (int k = 0; k < 3; ++k) out << ',' << fmt(r.agent.velocity[k]);
    for (std::size_t i = 0; i < r.obstacles.size(); ++i) {
      out << ',' << (r.present[i] ? 1 : 0);
      for (int k = 0; k < 3; ++k) out << ',' << fmt(r.obstacles[i].position[k]);
      for (int k = 0; k < 3; ++k) out << ',' << fmt(r.obstacles[i].velocity[k]);
    }
    const bool a = r.active >= 0;
    const EngagementState& e = r.engagement;
    for (double v : {e.r, e.theta, e.phi, e.v_r, e.v_theta, e.v_phi}) out << ',' << fmt(a ? v : nan);
    out << ',' << fmt(r.u_a.accel) << ',' << fmt(r.u_a.delta) << ',' << fmt(r.u_a.gamma);
    out << ',' << fmt(r.u_b.accel) << ',' << fmt(r.u_b.delta) << ',' << fmt(r.u_b.gamma);
    out << ',' << fmt(r.a_a) << ',' << fmt(r.a_b) << ',' << r.selected_plane;
    out << ',' << fmt(r.y_sel) << ',' << fmt(r.psi_sel) << ',' << fmt(r.theta_b_sel) << ','
        << fmt(r.v_hat_r_sel) << ',' << fmt(r.y_vel) << ',' << fmt(r.psi_vel) << ','
        << (r.any_collision ? 1 : 0) << ',' << (r.singular ? 1 : 0) << ','
        << fmt(r.min_separation);
    for (int j = 0; j < t.planes; ++j) {
      out << ',' << fmt(j < static_cast<int>(r.y_planes.size()) ? r.y_planes[j] : nan);
    }
    for (int j = 0; j < t.planes; ++j) {
      out << ',' << fmt(j < static_cast<int>(r.psi_planes.size()) ? r.psi_planes[j] : nan);
    }
    out << '\n';
  }
}

std::string summary_json(const RunSummary& s) {
  const auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["scenario"] = s.scenario;
  j["verdict"] = s.verdict;
  j["collision"] = s.collision;
  j["cleared"] = s.cleared;
  j["total"] = s.total;
  j["min_separation"] = num(s.min_separation);
  j["end_time"] = s.end_time;
  j["steps"] = s.steps;
  j["obstacles"] = nlohmann::json::array();
  for (const ObstacleReport& r : s.obstacles) {
    j["obstacles"].push_back({{"name", r.name},
                              {"activated", r.activated},
                              {"activation_time", r.activation_time},
                              {"engaged", r.engaged},
                              {"engaged_at", num(r.engaged_at)},
                              {"cleared", r.cleared},
                              {"cleared_at", num(r.cleared_at)},
                              {"reengagements", r.reengagements},
                              {"contact", r.contact},
                              {"min_separation", num(r.min_separation)},
                              {"singular_steps", r.singular_steps},
                              {"saturated_steps", r.saturated_steps}});
  }
  return j.dump(2) + "\n";
}

}  // namespace collcone
