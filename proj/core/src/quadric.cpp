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

#include "collcone/quadric.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "collcone/error.hpp"

namespace collcone {

const char* quadric_class_name(QuadricClass c) {
  switch (c) {
    case QuadricClass::kEllipsoid: return "ellipsoid";
    case QuadricClass::kOneSheetHyperboloid: return "one_sheet";
    case QuadricClass::kTwoSheetHyperboloid: return "two_sheet";
    case QuadricClass::kDegenerate: return "degenerate";
  }
  return "degenerate";
}

const char* composite_kind_name(CompositeKind k) {
  switch (k) {
    case CompositeKind::kPure: return "pure";
    case CompositeKind::kEDH: return "edh";
    case CompositeKind::kHDE: return "hde";
    case CompositeKind::kBiconcave: return "biconcave";
    case CompositeKind::kBiconvex: return "biconvex";
  }
  return "pure";
}

QuadricMatrix::QuadricMatrix(const Mat4& m) : m_(m) {
  const double norm = m.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kMalformedComposite,
                "quadric matrix is zero or non-finite");
  }
  if ((m - m.transpose()).norm() > 1e-12 * norm) {
    throw Error(ErrorCode::kMalformedComposite, "quadric matrix not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
}

Mat3 rotation_from_ypr(double yaw, double pitch, double roll) {
  return (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
          Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
          Eigen::AngleAxisd(roll, Vec3::UnitX()))
      .toRotationMatrix();
}

QuadricMatrix build_quadric(const Vec3& center, const Vec3& semi_axes,
                            const Mat3& orientation, QuadricClass kind) {
  for (int i = 0; i < 3; ++i) {
    if (!(semi_axes[i] > 0.0)) {
      std::ostringstream os;
      os << "semi-axis " << i << " = " << semi_axes[i];
      throw Error(ErrorCode::kNonPositiveAxis, os.str());
    }
  }
  if ((orientation.transpose() * orientation - Mat3::Identity()).norm() >
          1e-9 ||
      std::abs(orientation.determinant() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kBadRotation, "orientation is not a rotation");
  }

  const Vec3 inv_sq = semi_axes.cwiseProduct(semi_axes).cwiseInverse();
  Vec4 diag;
  switch (kind) {
    case QuadricClass::kEllipsoid:
      diag << inv_sq[0], inv_sq[1], inv_sq[2], -1.0;
      break;
    case QuadricClass::kOneSheetHyperboloid:
      diag << inv_sq[0], inv_sq[1], -inv_sq[2], -1.0;
      break;
    case QuadricClass::kTwoSheetHyperboloid:
      diag << inv_sq[0], inv_sq[1], -inv_sq[2], 1.0;
      break;
    case QuadricClass::kDegenerate:
      throw Error(ErrorCode::kUnsupportedShape,
                  "cannot build a degenerate quadric");
  }

  // Homogeneous map from world to body coordinates.
  Mat4 to_body = Mat4::Identity();
  to_body.topLeftCorner<3, 3>() = orientation.transpose();
  to_body.block<3, 1>(0, 3) = -orientation.transpose() * center;
  const Mat4 q = to_body.transpose() * diag.asDiagonal() * to_body;
  return QuadricMatrix(0.5 * (q + q.transpose()));
}

namespace {

struct Signature {
  Vec3 eigenvalues;  // ascending
  Mat3 eigenvectors;
  bool flipped = false;
};

Signature block_signature(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m.topLeftCorner<3, 3>());
  Signature sig{es.eigenvalues(), es.eigenvectors(), false};
  int positive = 0;
  for (int i = 0; i < 3; ++i) positive += sig.eigenvalues[i] > 0.0;
  if (positive < 2) {
    sig.flipped = true;
    sig.eigenvalues = -sig.eigenvalues.reverse().eval();
    sig.eigenvectors = sig.eigenvectors.rowwise().reverse().eval();
  }
  return sig;
}

}  // namespace

QuadricMatrix sign_normalized(const QuadricMatrix& q) {
  return block_signature(q.matrix()).flipped ? QuadricMatrix(-q.matrix()) : q;
}

QuadricClass classify_quadric(const QuadricMatrix& q) {
  const Mat4& m = q.matrix();
  const Signature sig = block_signature(m);
  const double block_norm = sig.eigenvalues.cwiseAbs().maxCoeff();
  if (sig.eigenvalues.cwiseAbs().minCoeff() < 1e-12 * block_norm) {
    return QuadricClass::kDegenerate;
  }
  const Mat4 n = sig.flipped ? Mat4(-m) : m;
  const Mat3 a = n.topLeftCorner<3, 3>();
  const Vec3 b = n.block<3, 1>(0, 3);
  const double center_value = n(3, 3) - b.dot(a.ldlt().solve(b));
  // Determinant test on the form translated to its center, so that distance
  // from the origin does not inflate the norm.
  const double centered_norm = std::hypot(a.norm(), center_value);
  if (std::abs(sig.eigenvalues.prod() * center_value) <
      1e-12 * std::pow(centered_norm, 4)) {
    return QuadricClass::kDegenerate;
  }
  const int positive = (sig.eigenvalues.array() > 0.0).count();
  if (positive == 3) {
    return center_value < 0.0 ? QuadricClass::kEllipsoid
                               : QuadricClass::kDegenerate;
  }
  return center_value < 0.0 ? QuadricClass::kOneSheetHyperboloid
                            : QuadricClass::kTwoSheetHyperboloid;
}

double evaluate(const QuadricMatrix& q, const Vec3& p) {
  const Vec4 h(p.x(), p.y(), p.z(), 1.0);
  return h.dot(q.matrix() * h);
}

double relative_value(const QuadricMatrix& q, const Vec3& p) {
  return evaluate(q, p) / (q.matrix().norm() * (1.0 + p.squaredNorm()));
}

QuadricMatrix translated(const QuadricMatrix& q, const Vec3& offset) {
  Mat4 back = Mat4::Identity();
  back.block<3, 1>(0, 3) = -offset;
  const Mat4 m = back.transpose() * q.matrix() * back;
  return QuadricMatrix(0.5 * (m + m.transpose()));
}

CanonicalForm canonical_form(const QuadricMatrix& q) {
  CanonicalForm out;
  out.kind = classify_quadric(q);
  if (out.kind == QuadricClass::kDegenerate) return out;

  const Signature sig = block_signature(q.matrix());
  const Mat4 n = sig.flipped ? Mat4(-q.matrix()) : q.matrix();
  const Mat3 a = n.topLeftCorner<3, 3>();
  const Vec3 b = n.block<3, 1>(0, 3);
  out.center = -a.ldlt().solve(b);
  const double k = n(3, 3) + b.dot(out.center);

  // Ascending order puts a hyperboloid's single negative eigenvalue first;
  // rotate it into the last slot so local z is the symmetry axis.
  Vec3 lambda = sig.eigenvalues;
  Mat3 axes = sig.eigenvectors;
  if (out.kind != QuadricClass::kEllipsoid) {
    lambda = Vec3(sig.eigenvalues[1], sig.eigenvalues[2], sig.eigenvalues[0]);
    axes.col(0) = sig.eigenvectors.col(1);
    axes.col(1) = sig.eigenvectors.col(2);
    axes.col(2) = sig.eigenvectors.col(0);
  }
  if (axes.determinant() < 0.0) axes.col(2) *= -1.0;
  out.rotation = axes;
  for (int i = 0; i < 3; ++i) {
    out.semi_axes[i] = std::sqrt(std::abs(k / lambda[i]));
  }
  return out;
}

namespace {

bool kind_needs_delimiter(CompositeKind k) { return k != CompositeKind::kPure; }

}  // namespace

CompositeShape make_composite(CompositeKind kind, const QuadricMatrix& primary,
                              const std::optional<QuadricMatrix>& delimiter,
                              const Vec3& center) {
  if (kind_needs_delimiter(kind) != delimiter.has_value()) {
    throw Error(ErrorCode::kMalformedComposite,
                std::string(composite_kind_name(kind)) +
                    (delimiter ? " takes no delimiter" : " needs a delimiter"));
  }
  const QuadricClass primary_class = classify_quadric(primary);
  if (primary_class == QuadricClass::kDegenerate) {
    throw Error(ErrorCode::kMalformedComposite, "degenerate primary quadric");
  }
  if (delimiter) {
    if (primary_class != QuadricClass::kEllipsoid) {
      throw Error(ErrorCode::kMalformedComposite,
                  "composite primary must be an ellipsoid");
    }
    const QuadricClass want = kind == CompositeKind::kBiconvex
                                  ? QuadricClass::kOneSheetHyperboloid
                                  : QuadricClass::kTwoSheetHyperboloid;
    if (classify_quadric(*delimiter) != want) {
      throw Error(ErrorCode::kMalformedComposite,
                  std::string(composite_kind_name(kind)) +
                      " delimiter must be a " + quadric_class_name(want) +
                      " hyperboloid");
    }
  }
  std::optional<QuadricMatrix> delim;
  if (delimiter) delim = sign_normalized(*delimiter);
  return CompositeShape{kind, sign_normalized(primary), delim, center,
                        primary_class};
}

CompositeShape translated(const CompositeShape& s, const Vec3& offset) {
  std::optional<QuadricMatrix> delim;
  if (s.delimiter) delim = translated(*s.delimiter, offset);
  return CompositeShape{s.kind, translated(s.primary, offset), delim,
                        s.center + offset, s.primary_class};
}

namespace {

// Interior of a sign-normalized quadric, meaning the region around its center.
bool quadric_interior(QuadricClass c, double value) {
  return c == QuadricClass::kTwoSheetHyperboloid ? value > 0.0 : value < 0.0;
}

}  // namespace

bool delimiter_keeps(const CompositeShape& s, const Vec3& p) {
  if (!s.delimiter) return true;
  const double h = evaluate(*s.delimiter, p);
  return s.kind == CompositeKind::kBiconvex ? h < 0.0 : h > 0.0;
}

Membership composite_membership(const CompositeShape& s, const Vec3& p) {
  if (kind_needs_delimiter(s.kind) != s.delimiter.has_value()) {
    throw Error(ErrorCode::kMalformedComposite, "kind/delimiter mismatch");
  }
  const double e = relative_value(s.primary, p);
  const bool on_e = std::abs(e) < kSurfaceTolerance;
  const bool in_e =
      !on_e && quadric_interior(s.primary_class, e);

  if (s.kind == CompositeKind::kPure) {
    if (on_e) return Membership::kSurface;
    return in_e ? Membership::kInterior : Membership::kExterior;
  }

  const double h = relative_value(*s.delimiter, p);
  const bool on_h = std::abs(h) < kSurfaceTolerance;
  const bool keep = !on_h && delimiter_keeps(s, p);

  bool surface = false;
  bool interior = false;
  switch (s.kind) {
    case CompositeKind::kEDH:
      surface = on_e && keep;
      interior = in_e && keep;
      break;
    case CompositeKind::kHDE:
      surface = on_h && in_e;
      interior = in_e && !keep && !on_h;
      break;
    case CompositeKind::kBiconcave:
    case CompositeKind::kBiconvex:
      surface = (on_e && keep) || (on_h && in_e);
      interior = in_e && keep;
      break;
    case CompositeKind::kPure:
      break;
  }
  if (surface) return Membership::kSurface;
  return interior ? Membership::kInterior : Membership::kExterior;
}

bool inside_solid(const CompositeShape& s, const Vec3& p) {
  return composite_membership(s, p) == Membership::kInterior;
}

}  // namespace collcone
