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

#include <stdexcept>
#include <string>
#include <string_view>

namespace collcone {

// Every domain failure raised by the library carries one of these codes. The
// CLI maps them to exit status 1 and prints the code name.
enum class ErrorCode {
  kNonPositiveAxis,
  kBadRotation,
  kMalformedComposite,
  kUnsupportedShape,
  kCoincidentCenters,
  kDegenerateConic,
  kNumericalBreakdown,
  kNoRealIntersection,
  kPointInsideEllipse,
  kCornerFilterEmpty,
  kCloudIntersectsEllipse,
  kSearchExhausted,
  kParallelTangents,
  kZeroRelativeSpeed,
  kBodiesOverlap,
  kGimbalSingularity,
  kStepRejected,
  kNoValidPlane,
  kSingularInversion,
  kCollisionOccurred,
  kConfigInvalid,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace collcone
