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

#include <cstdint>
#include <string>
#include <vector>

#include "acqc/graph.hpp"
#include "acqc/schedule.hpp"

namespace acqc {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  /// Multiplies f_y in the gauge check; anything but 1 must fail it.
  double corrupt_fy = 1.0;
  int gauge_times = 10;
  int dense_draws = 20;
  int dense_qubits = 10;
  int zrot_graphs = 5;
  int mis_instances = 50;
  int mis_max_vertices = 16;
};

/// Smooth schedule with a nonzero, non-constant phase for gauge checks.
DriveSchedule phased_smooth_schedule(const HardwareLimits& limits,
                                     double total_time);

CheckResult check_gauge_residual(const VerifyOptions& options);
/// The f_y x 2 residual must stay above 1e-3.
CheckResult check_gauge_negative_control(const VerifyOptions& options);
CheckResult check_dense_equivalence(const VerifyOptions& options);
CheckResult check_single_qubit_cd(const VerifyOptions& options);
CheckResult check_zrot_equivalence(const VerifyOptions& options);
CheckResult check_mis_oracle(const VerifyOptions& options);

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

/// Largest maximum independent set by trying every subset.
int mis_size_by_enumeration(const UnitDiskGraph& graph);

}  // namespace acqc
