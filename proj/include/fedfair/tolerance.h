// Copyright 2026 The FedFair Authors
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

#ifndef FEDFAIR_TOLERANCE_H_
#define FEDFAIR_TOLERANCE_H_

#include <algorithm>
#include <cmath>

namespace fedfair {

// Closed-form cross-checks: relative tolerance with an absolute floor, since
// several quantities are legitimately zero.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsFloor = 1e-12;

inline double tolerance_for(double a, double b, double rel = kRelTol,
                            double abs_floor = kAbsFloor) {
  return std::max(abs_floor, rel * std::max(std::fabs(a), std::fabs(b)));
}

inline bool approx_equal(double a, double b, double rel = kRelTol,
                         double abs_floor = kAbsFloor) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tolerance_for(a, b, rel, abs_floor);
}

inline double relative_difference(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

}  // namespace fedfair

#endif  // FEDFAIR_TOLERANCE_H_
