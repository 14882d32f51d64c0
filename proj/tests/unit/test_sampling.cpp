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


#include "collcone/sampling.hpp"

#include <filesystem>
#include <fstream>
#include <random>

#include "collcone/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace collcone;

namespace {

CompositeShape ellipsoid(const Vec3& c, const Vec3& axes, const Mat3& rot = Mat3::Identity()) {
  return make_composite(CompositeKind::kPure,
                        build_quadric(c, axes, rot, QuadricClass::kEllipsoid), std::nullopt, c);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("collcone_" + name);
}

}  // namespace

TEST_CASE("fibonacci directions are unit and balanced") {
  const auto d = fibonacci_directions(2000);
  REQUIRE(d.size() == 2000);
  Vec3 sum = Vec3::Zero();
  for (const Vec3& v : d) {
    CHECK(v.norm() == doctest::Approx(1.0));
    sum += v;
  }
  CHECK(sum.norm() / 2000.0 < 1e-3);
}

TEST_CASE("ellipsoid surface samples lie on the surface") {
  std::mt19937_64 rng(83);
  const Mat3 rot = oracle::random_rotation(rng);
  const CompositeShape s = ellipsoid(Vec3(3, -1, 2), Vec3(4, 2, 1), rot);
  const oracle::Ellipsoid o{Vec3(3, -1, 2), rot, Vec3(4, 2, 1)};
  for (const Vec3& p : surface_samples(s, 500)) CHECK(std::abs(o.form(p)) < 1e-9);
}

TEST_CASE("biconcave samples respect the composite surface") {
  const QuadricMatrix sphere(Vec4(1, 1, 1, -1).asDiagonal().toDenseMatrix());
  const QuadricMatrix delim(Vec4(-1, -1, 4, -0.25).asDiagonal().toDenseMatrix());
  const CompositeShape s = make_composite(CompositeKind::kBiconcave, sphere, delim, Vec3::Zero());
  const auto pts = surface_samples(s, 2000);
  CHECK(pts.size() > 500);
  for (const Vec3& p : pts) {
    CHECK(composite_membership(s, p) == Membership::kSurface);
  }
}

TEST_CASE("bipyramid cloud is seeded and on its faces") {
  const auto a = pentagonal_bipyramid_cloud(6.0, 22.0, 1000, 11);
  const auto b = pentagonal_bipyramid_cloud(6.0, 22.0, 1000, 11);
  const auto c = pentagonal_bipyramid_cloud(6.0, 22.0, 1000, 12);
  REQUIRE(a.size() == 1000);
  CHECK(a == b);
  CHECK(a != c);
  for (const Vec3& p : a) {
    const double axial = std::abs(p.z());
    CHECK(axial <= 22.0 + 1e-9);
    // Inside the circumscribed double cone, and outside the inscribed one.
    const double rho = std::hypot(p.x(), p.y());
    const double scale = 1.0 - axial / 22.0;
    CHECK(rho <= 6.0 * scale + 1e-9);
    CHECK(rho >= 6.0 * std::cos(oracle::kPi / 5) * scale - 1e-9);
  }
}

TEST_CASE("point cloud csv round trip") {
  const auto path = temp_file("cloud.csv");
  const std::vector<Vec3> pts{Vec3(1, 2, 3), Vec3(-0.5, 1e-7, 4.25)};
  write_point_cloud_csv(path.string(), pts);
  const auto got = read_point_cloud_csv(path.string());
  REQUIRE(got.size() == 2);
  for (int i = 0; i < 2; ++i) CHECK((got[i] - pts[i]).norm() < 1e-12);
  {
    std::ofstream f(path);
    f << "# comment\nx,y,z\n1,2,3\n\n4,5,6\n";
  }
  CHECK(read_point_cloud_csv(path.string()).size() == 2);
  {
    std::ofstream f(path);
    f << "x,y,z\n1,2\n";
  }
  CHECK_THROWS_AS(read_point_cloud_csv(path.string()), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_point_cloud_csv(path.string()), Error);
}

TEST_CASE("signed distance to an ellipsoid") {
  const CanonicalForm sphere = canonical_form(
      build_quadric(Vec3(1, 0, 0), Vec3::Constant(2.0), Mat3::Identity(), QuadricClass::kEllipsoid));
  CHECK(signed_distance_to_ellipsoid(sphere, Vec3(5, 0, 0)) == doctest::Approx(2.0));
  CHECK(signed_distance_to_ellipsoid(sphere, Vec3(1, 0, 0)) == doctest::Approx(-2.0));
  const CanonicalForm e = canonical_form(
      build_quadric(Vec3::Zero(), Vec3(3, 1, 1), Mat3::Identity(), QuadricClass::kEllipsoid));
  CHECK(signed_distance_to_ellipsoid(e, Vec3(0, 4, 0)) == doctest::Approx(3.0));
  CHECK(signed_distance_to_ellipsoid(e, Vec3(5, 0, 0)) == doctest::Approx(2.0));

  // Brute-force oracle over dense surface samples.
  std::mt19937_64 rng(89);
  const Mat3 rot = oracle::random_rotation(rng);
  const oracle::Ellipsoid o{Vec3(1, 2, 3), rot, Vec3(2, 1.5, 0.7)};
  const CanonicalForm cf =
      canonical_form(build_quadric(o.center, o.axes, rot, QuadricClass::kEllipsoid));
  const auto dirs = oracle::sphere_directions(200000);
  for (int i = 0; i < 20; ++i) {
    const Vec3 p = o.center + oracle::random_unit(rng) * oracle::uniform(rng, 2.5, 6);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& d : dirs) best = std::min(best, (o.point(d) - p).norm());
    CHECK(signed_distance_to_ellipsoid(cf, p) == doctest::Approx(best).epsilon(1e-3));
  }
}

TEST_CASE("overlap detection") {
  const Body a = ellipsoid(Vec3::Zero(), Vec3::Ones());
  const Body near = ellipsoid(Vec3(1.5, 0, 0), Vec3::Ones());
  const Body far = ellipsoid(Vec3(2.5, 0, 0), Vec3::Ones());
  CHECK(bodies_overlap(a, surface_samples(a, 500), near, surface_samples(near, 500)));
  CHECK_FALSE(bodies_overlap(a, surface_samples(a, 500), far, surface_samples(far, 500)));
}

TEST_CASE("translated bodies and bounding radius") {
  PointCloud c;
  c.center = Vec3(1, 1, 1);
  c.offsets = {Vec3(3, 0, 0), Vec3(0, -4, 0)};
  const Body b = translated(Body(c), Vec3(1, 0, 0));
  CHECK((body_center(b) - Vec3(2, 1, 1)).norm() == 0.0);
  CHECK(bounding_radius(b) == doctest::Approx(4.0));
  const Body e = ellipsoid(Vec3::Zero(), Vec3(3, 1, 2));
  CHECK(bounding_radius(e) >= 3.0);
  CHECK(bounding_radius(translated(e, Vec3(5, 5, 5))) == doctest::Approx(bounding_radius(e)));
}
