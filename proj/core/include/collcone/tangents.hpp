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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "collcone/plane_sections.hpp"

namespace collcone {

enum class TangentProvenance { kEigenSolve, kCornerPoint, kPointCloudSupport };

const char* provenance_name(TangentProvenance p);

// Line a u + b v + c = 0 in plane coordinates with a^2 + b^2 = 1.
struct TangentLine {
  Vec3 coeffs = Vec3::UnitX();
  TangentProvenance provenance = TangentProvenance::kEigenSolve;

  // Throws kDegenerateConic for a line at infinity.
  static TangentLine from_coeffs(const Vec3& l, TangentProvenance p);

  double signed_distance(const Vec2& p) const {
    return coeffs.x() * p.x() + coeffs.y() * p.y() + coeffs.z();
  }
  // Unit direction along the line.
  Vec2 direction() const { return Vec2(coeffs.y(), -coeffs.x()); }
};

// Inner common tangents of two planar sections. Lines are oriented with the
// section-A center on the negative side; lines[0] touches A on the left of
// the A->B center line, lines[1] on the right. Touch points are homogeneous
// with w = 1.
struct TangentSolution {
  std::vector<TangentLine> lines;
  std::vector<Vec3> touch_a;
  std::vector<Vec3> touch_b;
  bool intersecting_sections = false;
};

// Which sign of the delimiter section keeps the primary's boundary: two-sheet
// delimiters keep the positive (center) side, one-sheet tubes the negative.
enum class KeepSide { kPositive, kNegative };

namespace detail {

// Steps 1-5 of the eigen construction: the four homogeneous solutions x of
// x^T c1 x = x^T c2 x = 0, expressed as S rows deprojected through U. Returns
// nullopt when the eigenvalues are complex or no real sign pattern exists.
// Throws kNumericalBreakdown when U fails to diagonalize the pencil.
std::optional<std::array<Vec3, 4>> pencil_common_solutions(const Mat3& c1,
                                                           const Mat3& c2);

}  // namespace detail

// c1, c2 are duals of non-degenerate ellipses.
TangentSolution inner_common_tangents(const ConicMatrix& c1,
                                      const ConicMatrix& c2);

// Real intersection points (2 or 4, w = 1) of an ellipse section and a
// delimiter section. Throws kNoRealIntersection when the curves miss.
std::vector<Vec3> corner_points(const ConicMatrix& m_ellipse,
                                const ConicMatrix& m_delimiter);

// Both tangents from a point outside an ellipse. Throws kPointInsideEllipse.
std::array<TangentLine, 2> point_tangents_to_ellipse(const ConicMatrix& m,
                                                     const Vec3& p);

// Ellipse A against the ellipse section of B optionally cut by B's delimiter
// section. Ellipse tangents whose B touch point falls in the removed region
// are replaced by tangents from the corner points.
TangentSolution tangents_ellipse_vs_biconcave(
    const ConicMatrix& sec_a, const ConicMatrix& sec_b_ellipse,
    const std::optional<ConicMatrix>& sec_b_delimiter,
    KeepSide keep = KeepSide::kPositive);

// Ellipse A against an ordered planar point set. Candidate B points are tried
// from the angular extremes (about A's center) inward.
TangentSolution tangents_ellipse_vs_pointcloud(const ConicMatrix& sec_a,
                                               std::span<const Vec2> boundary);

inline constexpr int kMaxCloudBoundary = 256;

}  // namespace collcone
