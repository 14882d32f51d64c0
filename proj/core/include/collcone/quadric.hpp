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

#include <optional>

#include <Eigen/Core>

namespace collcone {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

enum class QuadricClass {
  kEllipsoid,
  kOneSheetHyperboloid,
  kTwoSheetHyperboloid,
  kDegenerate,
};

const char* quadric_class_name(QuadricClass c);

// Symmetric homogeneous 4x4 matrix Q with rows/cols ordered (x, y, z, 1); the
// surface is [p;1]^T Q [p;1] = 0. Entries are stored exactly as given.
class QuadricMatrix {
 public:
  // Throws kMalformedComposite if m is not symmetric (1e-12 relative) or is
  // identically zero.
  explicit QuadricMatrix(const Mat4& m);

  const Mat4& matrix() const { return m_; }
  Mat3 block() const { return m_.topLeftCorner<3, 3>(); }
  Vec3 linear() const { return m_.block<3, 1>(0, 3); }
  double constant() const { return m_(3, 3); }

 private:
  Mat4 m_;
};

// y-p-r in radians: R = Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 rotation_from_ypr(double yaw, double pitch, double roll);

// Builds the canonical quadric (hyperboloid axes along local z) with the given
// semi-axes, rotated by `orientation` and translated to `center`.
QuadricMatrix build_quadric(const Vec3& center, const Vec3& semi_axes,
                            const Mat3& orientation, QuadricClass kind);

// Classification by eigen-signature of the 3x3 block (after flipping the sign
// so at least two eigenvalues are positive) and the sign of the form at the
// quadric center.
QuadricClass classify_quadric(const QuadricMatrix& q);

// Returns Q or -Q so the 3x3 block has at least two positive eigenvalues. With
// this sign the interior (region holding the center) is negative for
// ellipsoids and one-sheet hyperboloids and positive for two-sheet ones.
QuadricMatrix sign_normalized(const QuadricMatrix& q);

double evaluate(const QuadricMatrix& q, const Vec3& p);

// evaluate() divided by ||Q||_F (1 + ||p||^2).
double relative_value(const QuadricMatrix& q, const Vec3& p);

QuadricMatrix translated(const QuadricMatrix& q, const Vec3& offset);

struct CanonicalForm {
  QuadricClass kind = QuadricClass::kDegenerate;
  Vec3 center = Vec3::Zero();
  // Columns are the principal axes; for hyperboloids the last column is the
  // axis of symmetry. Right-handed.
  Mat3 rotation = Mat3::Identity();
  Vec3 semi_axes = Vec3::Zero();
};

// Recovers center, axes and semi-axes from a non-degenerate quadric.
CanonicalForm canonical_form(const QuadricMatrix& q);

enum class CompositeKind { kPure, kEDH, kHDE, kBiconcave, kBiconvex };

const char* composite_kind_name(CompositeKind k);

enum class Membership { kInterior, kSurface, kExterior };

struct CompositeShape {
  CompositeKind kind = CompositeKind::kPure;
  QuadricMatrix primary;
  std::optional<QuadricMatrix> delimiter;
  Vec3 center = Vec3::Zero();
  QuadricClass primary_class = QuadricClass::kEllipsoid;
};

// Validates the kind/delimiter pairing and stores sign-normalized quadrics.
// Throws kMalformedComposite on a mismatch.
CompositeShape make_composite(CompositeKind kind, const QuadricMatrix& primary,
                              const std::optional<QuadricMatrix>& delimiter,
                              const Vec3& center);

CompositeShape translated(const CompositeShape& s, const Vec3& offset);

// True where the delimiter keeps the primary's surface: the center side of a
// two-sheet hyperboloid, the inside of a one-sheet tube.
bool delimiter_keeps(const CompositeShape& s, const Vec3& p);

Membership composite_membership(const CompositeShape& s, const Vec3& p);

// Signed-volume predicate used by the overlap checks: inside the solid, not
// counting the surface band.
bool inside_solid(const CompositeShape& s, const Vec3& p);

inline constexpr double kSurfaceTolerance = 1e-9;

}  // namespace collcone
