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
#include <string>
#include <variant>
#include <vector>

#include "collcone/quadric.hpp"

namespace collcone {

// Obstacle known only through surface points, stored as offsets from center.
struct PointCloud {
  Vec3 center = Vec3::Zero();
  std::vector<Vec3> offsets;
};

using Body = std::variant<CompositeShape, PointCloud>;

Vec3 body_center(const Body& b);
Body translated(const Body& b, const Vec3& offset);
// Radius of a sphere about the center that contains the body.
double bounding_radius(const Body& b);

// Quasi-uniform unit vectors on the sphere (golden-angle spiral).
std::vector<Vec3> fibonacci_directions(int count);

// Points on the composite surface: primary samples the delimiter keeps, plus
// delimiter samples inside the primary for the dimple or waist.
std::vector<Vec3> surface_samples(const CompositeShape& s, int count);
std::vector<Vec3> surface_samples(const Body& b, int count);

// Area-uniform samples over the 10 faces of a pentagonal bipyramid with the
// given equatorial circumradius and apex height, seeded.
std::vector<Vec3> pentagonal_bipyramid_cloud(double radius, double half_height,
                                             int count, std::uint64_t seed);

// Reads "x,y,z" rows; '#' lines and a non-numeric header row are skipped.
std::vector<Vec3> read_point_cloud_csv(const std::string& path);
void write_point_cloud_csv(const std::string& path, const std::vector<Vec3>& pts);

// Euclidean distance from p to the ellipsoid surface, negative inside.
double signed_distance_to_ellipsoid(const CanonicalForm& e, const Vec3& p);

// Sampled overlap check: any sample of one body inside the other's solid.
bool bodies_overlap(const Body& a, const std::vector<Vec3>& samples_a,
                    const Body& b, const std::vector<Vec3>& samples_b);

}  // namespace collcone
