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

#include "collcone/error.hpp"

namespace collcone {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPositiveAxis: return "NonPositiveAxis";
    case ErrorCode::kBadRotation: return "BadRotation";
    case ErrorCode::kMalformedComposite: return "MalformedComposite";
    case ErrorCode::kUnsupportedShape: return "UnsupportedShape";
    case ErrorCode::kCoincidentCenters: return "CoincidentCenters";
    case ErrorCode::kDegenerateConic: return "DegenerateConic";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kNoRealIntersection: return "NoRealIntersection";
    case ErrorCode::kPointInsideEllipse: return "PointInsideEllipse";
    case ErrorCode::kCornerFilterEmpty: return "CornerFilterEmpty";
    case ErrorCode::kCloudIntersectsEllipse: return "CloudIntersectsEllipse";
    case ErrorCode::kSearchExhausted: return "SearchExhausted";
    case ErrorCode::kParallelTangents: return "ParallelTangents";
    case ErrorCode::kZeroRelativeSpeed: return "ZeroRelativeSpeed";
    case ErrorCode::kBodiesOverlap: return "BodiesOverlap";
    case ErrorCode::kGimbalSingularity: return "GimbalSingularity";
    case ErrorCode::kStepRejected: return "StepRejected";
    case ErrorCode::kNoValidPlane: return "NoValidPlane";
    case ErrorCode::kSingularInversion: return "SingularInversion";
    case ErrorCode::kCollisionOccurred: return "CollisionOccurred";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
      code_(code) {}

}  // namespace collcone
