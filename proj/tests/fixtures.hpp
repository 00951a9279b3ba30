// Copyright 2026 The qotto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference values computed once with 30-digit arbitrary precision arithmetic,
// independently of this library.

#pragma once

namespace qotto::fixtures {

inline constexpr double kTanhHalfBetaC = 0.604367777117163;      // tanh(1.4 * 1.0 / 2)
inline constexpr double kTanhHalfBetaH = 0.0897577847471601;     // tanh(0.1 * 1.8 / 2)
inline constexpr double kGroundPopHalfSz = 0.802183888558582;    // 1 / (1 + e^{-1.4})
inline constexpr double kEntropyHalfSz = 0.497359965936436;      // binary entropy of the line above
inline constexpr double kExactWork = -0.102921998474001;         // lambda 0.5, default reservoirs
inline constexpr double kDissipated = -0.158252889153135;
inline constexpr double kNoisyWork = -0.0168178735444396;        // gamma 0.8, t 1
inline constexpr double kCostBound = 0.0676917720884533;         // lambda 0.5, gamma 0.6, t 1
inline constexpr double kHotExcited = 0.410959565941335;         // beta 0.1, eps 1.8
inline constexpr double kHotAngle = 1.74983212664587;
inline constexpr double kHotExcitedZeroBased = 0.455121107626420;  // levels {0, eps}
inline constexpr double kHotAngleZeroBased = 1.66067507225498;
inline constexpr double kColdExcited = 0.0573241758988687;       // beta 1.4, eps 1.0
inline constexpr double kColdAngle = 2.65804615357129;
inline constexpr double kOttoLimit = 0.444444444444444;
inline constexpr double kCarnotLimit = 0.928571428571429;
inline constexpr double kMinusTanh14 = -0.885351648202263;
inline constexpr double kGroundPopSx = 0.942675824101131;        // omega_c sigma_x at beta 1.4

}  // namespace qotto::fixtures
