// Copyright 2026 The ACQC Authors
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

#pragma once

// Defaults shared by every module. Angular frequencies are rad/us with
// hbar = 1; lengths are micrometres.
namespace acqc::defaults {

inline constexpr double kOmegaMax = 15.0;
inline constexpr double kDeltaMax = 17.0;
inline constexpr double kC6 = 5.42e6;  // rad um^6 / us
inline constexpr double kGridSpacing = 5.5;
inline constexpr double kCostA = 2.0;
inline constexpr double kCostB = 1.0;
inline constexpr int kShots = 500;
inline constexpr int kScheduleSamples = 10001;
inline constexpr int kMisVertexCap = 32;
inline constexpr int kMisWitnessLimit = 1024;
inline constexpr int kSimulationQubitCap = 20;
inline constexpr int kDenseQubitCap = 12;
inline constexpr char kUnitConvention[] =
    "angular frequencies in rad/us with hbar=1; lengths in um; times in us";

}  // namespace acqc::defaults
