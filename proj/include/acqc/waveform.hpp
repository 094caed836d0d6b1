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

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace acqc {

/// Real-valued control on [0, T], either a closed-form family or a uniformly
/// sampled table. Cheap to copy; the underlying shape is immutable and
/// shared.
class Waveform {
 public:
  class Shape {
   public:
    explicit Shape(double horizon) : horizon_(horizon) {}
    virtual ~Shape() = default;

    virtual double value(double t) const = 0;
    /// Defaults fall back to central differences of the next-lower order.
    virtual double derivative(double t) const;
    virtual double second_derivative(double t) const;
    virtual std::string kind() const = 0;
    virtual nlohmann::json params() const { return nlohmann::json::object(); }

    double horizon() const { return horizon_; }

   protected:
    double fd_step() const;

   private:
    double horizon_;
  };

  explicit Waveform(std::shared_ptr<const Shape> shape);

  static Waveform constant(double value, double horizon);
  /// v0 + (v1 - v0) t / T.
  static Waveform linear(double v0, double v1, double horizon);
  /// 0 -> peak over ramp_fraction * T, plateau, peak -> 0 over the last
  /// ramp_fraction * T. With smooth_ramps the ramps follow a cubic smoothstep
  /// so the first derivative is continuous.
  static Waveform trapezoid(double peak, double horizon, double ramp_fraction,
                            bool smooth_ramps = false);
  /// omega0 * sin^2((pi/2) sin(pi t / T)).
  static Waveform sine_squared_pulse(double omega0, double horizon);
  /// -delta0 * cos(pi t / T).
  static Waveform cosine_sweep(double delta0, double horizon);
  /// offset + slope t + amplitude sin(angular_frequency t + phase).
  static Waveform sinusoid(double offset, double slope, double amplitude,
                           double angular_frequency, double phase,
                           double horizon);
  /// Uniform samples covering [0, T] endpoints included, cubic Hermite
  /// interpolation with finite-difference node slopes.
  static Waveform table(std::vector<double> samples, double horizon);
  /// clamp(w(t), floor, ceiling).
  static Waveform clamped(Waveform w, double floor, double ceiling);

  double operator()(double t) const { return shape_->value(t); }
  double derivative(double t) const { return shape_->derivative(t); }
  double second_derivative(double t) const {
    return shape_->second_derivative(t);
  }
  std::string kind() const { return shape_->kind(); }
  nlohmann::json params() const { return shape_->params(); }
  double horizon() const { return shape_->horizon(); }

 private:
  std::shared_ptr<const Shape> shape_;
};

/// Slopes of uniformly sampled data: central differences inside, one-sided
/// second-order stencils at both ends.
std::vector<double> finite_difference_slopes(std::span<const double> samples,
                                             double step);

}  // namespace acqc
