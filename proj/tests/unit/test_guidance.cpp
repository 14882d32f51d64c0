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

#include <random>

#include "collcone/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace collcone;

namespace {

// Planar engagement in plane coordinates with A at the origin.
struct Planar {
  Vec2 pa, va, pb, vb;
  double psi, theta_b;
};

Vec2 unit(double a) { return Vec2(std::cos(a), std::sin(a)); }

PlanarStates states_of(const Planar& p) {
  PlanarStates s;
  const Vec2 rel = p.pb - p.pa;
  const Vec2 v = p.vb - p.va;
  s.r_p = rel.norm();
  s.theta_p = std::atan2(rel.y(), rel.x());
  const Vec2 r_hat = rel / s.r_p;
  const Vec2 t_hat(-r_hat.y(), r_hat.x());
  s.v_rp = v.dot(r_hat);
  s.v_theta_p = -v.dot(t_hat);
  s.heading_a = std::atan2(p.va.y(), p.va.x());
  s.heading_b = std::atan2(p.vb.y(), p.vb.x());
  return s;
}

double oracle_y(const Planar& p) {
  const Vec2 v = p.vb - p.va;
  const double off = std::sin(std::atan2(v.y(), v.x()) - p.theta_b);
  const double half = std::sin(0.5 * p.psi);
  return off * off - half * half;
}

// Advances both bodies under constant in-plane normal accelerations and the
// cone angles under constant rates.
Planar advance(Planar p, double a_a, double a_b, const Rates& r, double h) {
  const Vec2 acc_a = a_a * unit(std::atan2(p.va.y(), p.va.x()) + oracle::kPi / 2);
  const Vec2 acc_b = a_b * unit(std::atan2(p.vb.y(), p.vb.x()) + oracle::kPi / 2);
  p.pa += h * p.va + 0.5 * h * h * acc_a;
  p.va += h * acc_a;
  p.pb += h * p.vb + 0.5 * h * h * acc_b;
  p.vb += h * acc_b;
  p.psi += h * r.psi;
  p.theta_b += h * r.theta_b;
  return p;
}

double fd_ydot(const Planar& p, double a_a, double a_b, const Rates& r) {
  // Shrink the step for large commands so the velocity turn stays small.
  const double h = 1e-6 * std::min(1.0, 10.0 / (std::abs(a_a) + std::abs(a_b)));
  return (oracle_y(advance(p, a_a, a_b, r, h)) - oracle_y(advance(p, a_a, a_b, r, -h))) / (2 * h);
}

// B above A, closing inside a cone about the line of centers.
Planar random_in_cone(std::mt19937_64& rng) {
  Planar p;
  p.pa = Vec2::Zero();
  p.pb = Vec2(0, oracle::uniform(rng, 8, 40));
  p.psi = oracle::uniform(rng, 0.3, 2.0);
  p.theta_b = oracle::kPi / 2 + oracle::uniform(rng, -0.2, 0.2);
  const double chi = p.theta_b + oracle::kPi + oracle::uniform(rng, -0.45, 0.45) * p.psi;
  const Vec2 v = oracle::uniform(rng, 2, 15) * unit(chi);
  p.va = oracle::uniform(rng, 2, 10) * unit(oracle::uniform(rng, -3.1, 3.1));
  p.vb = v + p.va;
  return p;
}

PlanarCone cone_of(const Planar& p) {
  PlanarCone c;
  c.psi = p.psi;
  c.theta_b = p.theta_b;
  return c;
}

GuidanceConfig loose_config() {
  GuidanceConfig g;
  g.k_gain = 2.0;
  g.w_ref = 0.05;
  g.accel_limit = 1e9;
  return g;
}

Cone3D cone_with_psis(const std::vector<double>& psis) {
  Cone3D c;
  c.n = static_cast<int>(psis.size());
  for (std::size_t j = 0; j < psis.size(); ++j) {
    PlaneResult p;
    p.frame.index = static_cast<int>(j);
    p.cone.psi = psis[j];
    p.cone.theta_b = oracle::kPi / 2;
    p.states.theta_p = oracle::kPi / 2;
    p.states.v_rp = -1.0;
    c.planes.push_back(p);
  }
  return c;
}

}  // namespace

TEST_CASE("plane rule names round trip") {
  CHECK(parse_plane_rule("max_psi") == PlaneRule::kMaxPsi);
  CHECK(parse_plane_rule(plane_rule_name(PlaneRule::kMinDeviation)) == PlaneRule::kMinDeviation);
  CHECK_THROWS_AS(parse_plane_rule("widest"), Error);
}

TEST_CASE("config validation") {
  GuidanceConfig g;
  CHECK_NOTHROW(g.validate());
  g.k_gain = 0.0;
  CHECK_THROWS_AS(g.validate(), Error);
  g = {};
  g.rate_window = 1;
  CHECK_THROWS_AS(g.validate(), Error);
  g = {};
  g.release_hold = -1.0;
  CHECK_THROWS_AS(g.validate(), Error);
  g = {};
  g.w_ref = -0.1;
  CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("max psi selection and ties") {
  CHECK(select_plane(cone_with_psis({1.0, 2.0, 2.0, 1.0}), PlaneRule::kMaxPsi) == 1);
  CHECK(select_plane(cone_with_psis({0.5, 0.5, 0.5}), PlaneRule::kMaxPsi) == 0);
  CHECK(select_plane(cone_with_psis({1.0, 2.0, 2.0, 1.0}), PlaneRule::kMaxPsi, 2) == 2);
  CHECK(select_plane(cone_with_psis({1.0, 2.0, 2.0 - 1e-9}), PlaneRule::kMaxPsi, 2) == 2);
  CHECK(select_plane(cone_with_psis({1.0, 2.0, 1.5}), PlaneRule::kMaxPsi, 2) == 1);
  CHECK(select_plane(cone_with_psis({1.0, oracle::kPi, 1.5}), PlaneRule::kMaxPsi) == 1);
  CHECK_THROWS_AS(select_plane(Cone3D{}, PlaneRule::kMaxPsi), Error);
}

TEST_CASE("min deviation picks the plane closest to a cone edge") {
  Cone3D c = cone_with_psis({1.0, 1.0, 1.0});
  // Velocity angle straight at A, offset on each plane.
  const double base = -oracle::kPi / 2;
  const double offsets[] = {0.1, 0.45, 0.3};
  for (int j = 0; j < 3; ++j) {
    const double chi = base + offsets[j];
    c.planes[j].states.v_rp = std::cos(chi - oracle::kPi / 2);
    c.planes[j].states.v_theta_p = -std::sin(chi - oracle::kPi / 2);
  }
  CHECK(select_plane(c, PlaneRule::kMinDeviation) == 1);
}

TEST_CASE("elongated obstacle selects the plane through its long axis") {
  const auto body = [](const Vec3& c, const Vec3& ax) {
    return make_composite(CompositeKind::kPure,
                          build_quadric(c, ax, Mat3::Identity(), QuadricClass::kEllipsoid),
                          std::nullopt, c);
  };
  const Cone3D c = cone_3d(body(Vec3::Zero(), Vec3::Ones()), body(Vec3(0, 10, 0), Vec3(1, 1, 4)),
                           Vec3::Zero(), Vec3(0, -1, 0), 12);
  const int j = select_plane(c, PlaneRule::kMaxPsi);
  CHECK(std::abs(c.planes[j].frame.r_x.z()) > 0.99);
}

TEST_CASE("numeric rates") {
  std::deque<ConeSample> h;
  CHECK(numeric_rates(h) == std::pair<double, double>{0.0, 0.0});
  h.push_back({0.0, 1.0, 0.5});
  CHECK(numeric_rates(h) == std::pair<double, double>{0.0, 0.0});
  h.push_back({0.1, 1.0, 0.5});
  h.push_back({0.2, 1.0, 0.5});
  auto [psi_rate, theta_rate] = numeric_rates(h);
  CHECK(psi_rate == 0.0);
  CHECK(theta_rate == 0.0);

  h = {{0.0, 1.0, 0.0}, {0.1, 1.2, 0.3}, {0.2, 1.4, 0.6}};
  std::tie(psi_rate, theta_rate) = numeric_rates(h);
  CHECK(psi_rate == doctest::Approx(2.0));
  CHECK(theta_rate == doctest::Approx(3.0));

  // theta_b crosses the branch cut at pi.
  h = {{0.0, 1.0, oracle::kPi - 0.1}, {0.1, 1.0, -oracle::kPi + 0.1}};
  std::tie(psi_rate, theta_rate) = numeric_rates(h);
  CHECK(theta_rate == doctest::Approx(2.0));
}

TEST_CASE("rate tracker window and plane switches") {
  RateTracker r(3);
  r.push(0, {0.0, 0.0, 0.0});
  r.push(0, {0.1, 5.0, 0.0});
  r.push(0, {0.2, 1.0, 0.0});
  r.push(0, {0.3, 1.1, 0.0});
  CHECK(r.rates().first == doctest::Approx(-19.5));
  r.push(1, {0.4, 7.0, 0.0});
  CHECK(r.rates().first == 0.0);
  r.push(1, {0.5, 7.5, 0.0});
  CHECK(r.rates().first == doctest::Approx(5.0));
}

TEST_CASE("command vanishes at equilibrium") {
  std::mt19937_64 rng(61);
  const GuidanceConfig g = loose_config();
  for (int i = 0; i < 50; ++i) {
    const Planar p = random_in_cone(rng);
    const AccelCommand a = noncoop_accel(states_of(p), cone_of(p), {}, g, g.w_ref);
    CHECK(a.a_a == doctest::Approx(0.0).scale(1.0));
  }
}

TEST_CASE("dynamic inversion tracks the reference rate") {
  std::mt19937_64 rng(67);
  const GuidanceConfig g = loose_config();
  for (int i = 0; i < 300; ++i) {
    const Planar p = random_in_cone(rng);
    const Rates r{oracle::uniform(rng, -0.2, 0.2), oracle::uniform(rng, -0.2, 0.2)};
    const double y = oracle_y(p);
    const AccelCommand a = noncoop_accel(states_of(p), cone_of(p), r, g, y);
    const double want = -g.k_gain * (y - g.w_ref);
    CHECK(fd_ydot(p, a.a_a, 0.0, r) == doctest::Approx(want).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("cooperative inversion tracks the reference rate with a fixed effort ratio") {
  std::mt19937_64 rng(71);
  GuidanceConfig g = loose_config();
  for (int i = 0; i < 300; ++i) {
    const Planar p = random_in_cone(rng);
    g.mu = oracle::uniform(rng, -2, 2);
    const Rates r{oracle::uniform(rng, -0.2, 0.2), oracle::uniform(rng, -0.2, 0.2)};
    const double y = oracle_y(p);
    AccelCommand a;
    try {
      a = coop_accels(states_of(p), cone_of(p), r, g, y);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSingularInversion);
      continue;
    }
    CHECK(a.a_b == doctest::Approx(g.mu * a.a_a).epsilon(1e-15));
    const double want = -g.k_gain * (y - g.w_ref);
    CHECK(fd_ydot(p, a.a_a, a.a_b, r) == doctest::Approx(want).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("zero effort ratio reduces to the non-cooperative law") {
  std::mt19937_64 rng(73);
  const GuidanceConfig g = loose_config();
  for (int i = 0; i < 100; ++i) {
    const Planar p = random_in_cone(rng);
    const double y = oracle_y(p);
    const AccelCommand nc = noncoop_accel(states_of(p), cone_of(p), {0.1, -0.05}, g, y);
    const AccelCommand co = coop_accels(states_of(p), cone_of(p), {0.1, -0.05}, g, y);
    CHECK(co.a_a == doctest::Approx(nc.a_a).epsilon(1e-12));
    CHECK(co.a_b == 0.0);
  }
}

TEST_CASE("mirrored engagement mirrors the command") {
  std::mt19937_64 rng(79);
  const GuidanceConfig g = loose_config();
  const auto mirror = [](Vec2 v) { return Vec2(-v.x(), v.y()); };
  for (int i = 0; i < 100; ++i) {
    const Planar p = random_in_cone(rng);
    Planar m = p;
    m.va = mirror(p.va);
    m.vb = mirror(p.vb);
    m.pb = mirror(p.pb);
    m.theta_b = oracle::kPi - p.theta_b;
    const double y = oracle_y(p);
    CHECK(oracle_y(m) == doctest::Approx(y).epsilon(1e-12).scale(1.0));
    const AccelCommand a = noncoop_accel(states_of(p), cone_of(p), {}, g, y);
    const AccelCommand b = noncoop_accel(states_of(m), cone_of(m), {}, g, y);
    CHECK(b.a_a == doctest::Approx(-a.a_a).epsilon(1e-9));
  }
}

TEST_CASE("saturation and singular inversion") {
  Planar p;
  p.pa = Vec2::Zero();
  p.pb = Vec2(0, 20);
  p.va = Vec2(3, 2);
  p.vb = Vec2(3, -3);
  p.psi = 1.0;
  p.theta_b = oracle::kPi / 2;
  GuidanceConfig g = loose_config();
  // Velocity along the cone axis: the inversion has no authority.
  CHECK_THROWS_AS(noncoop_accel(states_of(p), cone_of(p), {}, g, oracle_y(p)), Error);

  p.theta_b += 0.1;
  g.accel_limit = 0.5;
  const AccelCommand a = noncoop_accel(states_of(p), cone_of(p), {}, g, oracle_y(p));
  CHECK(a.saturated);
  CHECK(std::abs(a.a_a) == doctest::Approx(0.5));
  g.mu = 2.0;
  const AccelCommand c = coop_accels(states_of(p), cone_of(p), {}, g, oracle_y(p));
  CHECK(std::abs(c.a_b) <= 0.5 + 1e-15);
  CHECK(c.a_b == doctest::Approx(2.0 * c.a_a));
}
