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

#include "acqc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "acqc/error.hpp"

namespace acqc {

namespace {

struct Moments {
  double weight = 0.0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased over shots
  double min = 0.0;
  double max = 0.0;
};

Moments moments(std::span<const WeightedEnergy> samples) {
  Moments m;
  if (samples.empty()) return m;
  m.min = m.max = samples.front().energy;
  double sum = 0.0;
  for (const auto& s : samples) {
    if (!(s.weight >= 0.0)) {
      throw Error(ErrorKind::Parameter, "sample weights must be >= 0");
    }
    m.weight += s.weight;
    sum += s.weight * s.energy;
    m.min = std::min(m.min, s.energy);
    m.max = std::max(m.max, s.energy);
  }
  if (!(m.weight > 0.0)) return m;
  m.mean = std::clamp(sum / m.weight, m.min, m.max);
  if (m.min == m.max) return m;
  double ss = 0.0;
  for (const auto& s : samples) {
    ss += s.weight * (s.energy - m.mean) * (s.energy - m.mean);
  }
  m.variance = m.weight > 1.0 ? ss / (m.weight - 1.0) : 0.0;
  return m;
}

}  // namespace

EnergyStats approximation_ratio(std::span<const WeightedEnergy> samples,
                                const MisSolution& mis) {
  if (mis.energy == 0.0) {
    throw Error(ErrorKind::DegenerateInstance,
                "E_MIS = 0; the approximation ratio is undefined");
  }
  const Moments m = moments(samples);
  if (!(m.weight >= 1.0)) {
    throw Error(ErrorKind::InsufficientData, "need at least one shot");
  }
  EnergyStats s;
  s.mean = m.mean;
  s.min = m.min;
  s.std = std::sqrt(m.variance);
  s.e_mis = mis.energy;
  s.approximation_ratio = m.mean / mis.energy;
  s.min_ratio = m.min / mis.energy;
  s.shots = static_cast<int>(std::lround(m.weight));
  s.ci_half_width = s.shots >= 2 ? 1.96 * s.std / std::sqrt(m.weight) : 0.0;
  return s;
}

double confidence_interval(std::span<const WeightedEnergy> samples) {
  const Moments m = moments(samples);
  if (m.weight < 2.0) {
    throw Error(ErrorKind::InsufficientData,
                "confidence interval needs at least two shots");
  }
  return 1.96 * std::sqrt(m.variance) / std::sqrt(m.weight);
}

double confidence_interval(std::span<const double> energies) {
  std::vector<WeightedEnergy> samples;
  samples.reserve(energies.size());
  for (double e : energies) samples.push_back({e, 1.0});
  return confidence_interval(samples);
}

KdeCurve kde(std::span<const WeightedEnergy> samples,
             std::optional<double> bandwidth, int grid_points) {
  const Moments m = moments(samples);
  if (!(m.weight > 0.0)) {
    throw Error(ErrorKind::InsufficientData, "KDE needs at least one sample");
  }
  if (grid_points < 2) {
    throw Error(ErrorKind::Parameter, "KDE grid needs at least two points");
  }
  double h;
  if (bandwidth) {
    if (!(*bandwidth > 0.0)) {
      throw Error(ErrorKind::Parameter, "bandwidth must be positive");
    }
    h = *bandwidth;
  } else {
    // Weighted population spread for Silverman's rule.
    const double sigma = std::sqrt(m.weight > 1.0
                                       ? m.variance * (m.weight - 1) / m.weight
                                       : 0.0);
    h = std::max(1.06 * sigma * std::pow(m.weight, -0.2),
                 1e-9 * (m.max - m.min));
    // Identical energies: fall back to a width relative to their magnitude.
    if (h == 0.0) h = 1e-9 * std::max(1.0, std::abs(m.mean));
  }

  KdeCurve curve;
  curve.bandwidth = h;
  const double lo = m.min - 4 * h;
  const double hi = m.max + 4 * h;
  curve.grid.resize(grid_points);
  curve.density.resize(grid_points);
  const double norm = 1.0 / (m.weight * h * std::sqrt(2 * std::numbers::pi));
  for (int k = 0; k < grid_points; ++k) {
    const double x = lo + (hi - lo) * k / (grid_points - 1);
    double acc = 0.0;
    for (const auto& s : samples) {
      const double u = (x - s.energy) / h;
      acc += s.weight * std::exp(-0.5 * u * u);
    }
    curve.grid[k] = x;
    curve.density[k] = acc * norm;
  }
  return curve;
}

double trapezoid_integral(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::Dimension, "x and y lengths differ");
  }
  double total = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    total += 0.5 * (x[k] - x[k - 1]) * (y[k] + y[k - 1]);
  }
  return total;
}

nlohmann::json stats_to_json(const EnergyStats& s) {
  return {{"mean", s.mean},
          {"min", s.min},
          {"std", s.std},
          {"e_mis", s.e_mis},
          {"approximation_ratio", s.approximation_ratio},
          {"min_ratio", s.min_ratio},
          {"ci_half_width", s.ci_half_width},
          {"shots", s.shots}};
}

nlohmann::json kde_to_json(const KdeCurve& k) {
  return {{"bandwidth", k.bandwidth},
          {"grid", k.grid},
          {"density", k.density}};
}

std::string kde_to_csv(const KdeCurve& k) {
  std::ostringstream os;
  os.precision(17);
  os << "grid,density\n";
  for (std::size_t i = 0; i < k.grid.size(); ++i) {
    os << k.grid[i] << ',' << k.density[i] << '\n';
  }
  return os.str();
}

BoxSummary box_summary(std::vector<double> values) {
  BoxSummary b;
  b.count = static_cast<int>(values.size());
  if (values.empty()) return b;
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * (values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - lo) * (values[hi] - values[lo]);
  };
  b.min = values.front();
  b.q1 = quantile(0.25);
  b.median = quantile(0.5);
  b.q3 = quantile(0.75);
  b.max = values.back();
  return b;
}

}  // namespace acqc
