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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "acqc/graph.hpp"

namespace acqc {

struct WeightedEnergy {
  double energy = 0.0;
  double weight = 1.0;  // shot count
};

struct EnergyStats {
  double mean = 0.0;
  double min = 0.0;
  double std = 0.0;  // sample standard deviation over shots
  double e_mis = 0.0;
  double approximation_ratio = 0.0;  // mean / e_mis
  double min_ratio = 0.0;            // min / e_mis
  double ci_half_width = 0.0;
  int shots = 0;
};

EnergyStats approximation_ratio(std::span<const WeightedEnergy> samples,
                                const MisSolution& mis);

/// 1.96 s / sqrt(n) for one energy per shot.
double confidence_interval(std::span<const double> energies);
double confidence_interval(std::span<const WeightedEnergy> samples);

struct KdeCurve {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

/// Weighted Gaussian KDE; Silverman bandwidth 1.06 sigma n^(-1/5) unless
/// given. The grid spans the data range padded by four bandwidths.
KdeCurve kde(std::span<const WeightedEnergy> samples,
             std::optional<double> bandwidth = {}, int grid_points = 512);

double trapezoid_integral(std::span<const double> x, std::span<const double> y);

nlohmann::json stats_to_json(const EnergyStats& s);
nlohmann::json kde_to_json(const KdeCurve& k);
std::string kde_to_csv(const KdeCurve& k);

/// min / Q1 / median / Q3 / max with linear interpolation between order
/// statistics.
struct BoxSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  int count = 0;
};

BoxSummary box_summary(std::vector<double> values);

}  // namespace acqc
