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

#include "acqc/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "acqc/error.hpp"

namespace acqc {

namespace {

constexpr double kPi = std::numbers::pi;

// Fifth-order-accurate first derivative; the stencil slides inwards near the
// ends so samples stay inside [0, T].
template <class F>
double stencil_derivative(const F& f, double t, double h, double horizon) {
  if (t - 2 * h >= 0.0 && t + 2 * h <= horizon) {
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) /
           (12 * h);
  }
  if (t - 2 * h < 0.0) {
    return (-25 * f(t) + 48 * f(t + h) - 36 * f(t + 2 * h) +
            16 * f(t + 3 * h) - 3 * f(t + 4 * h)) /
           (12 * h);
  }
  return (25 * f(t) - 48 * f(t - h) + 36 * f(t - 2 * h) - 16 * f(t - 3 * h) +
          3 * f(t - 4 * h)) /
         (12 * h);
}

class ConstantShape final : public Waveform::Shape {
 public:
  ConstantShape(double c, double horizon) : Shape(horizon), c_(c) {}
  double value(double) const override { return c_; }
  double derivative(double) const override { return 0.0; }
  double second_derivative(double) const override { return 0.0; }
  std::string kind() const override { return "constant"; }
  nlohmann::json params() const override { return {{"value", c_}}; }

 private:
  double c_;
};

class LinearShape final : public Waveform::Shape {
 public:
  LinearShape(double v0, double v1, double horizon)
      : Shape(horizon), v0_(v0), v1_(v1) {}
  double value(double t) const override {
    return v0_ + (v1_ - v0_) * (t / horizon());
  }
  double derivative(double) const override { return (v1_ - v0_) / horizon(); }
  double second_derivative(double) const override { return 0.0; }
  std::string kind() const override { return "linear"; }
  nlohmann::json params() const override {
    return {{"start", v0_}, {"end", v1_}};
  }

 private:
  double v0_, v1_;
};

class TrapezoidShape final : public Waveform::Shape {
 public:
  TrapezoidShape(double peak, double horizon, double fraction, bool smooth)
      : Shape(horizon),
        peak_(peak),
        fraction_(fraction),
        ramp_(fraction * horizon),
        smooth_(smooth) {}

  double value(double t) const override {
    const auto [u, sign] = ramp_coordinate(t);
    if (sign == 0) return peak_;
    return peak_ * profile(u);
  }
  double derivative(double t) const override {
    const auto [u, sign] = ramp_coordinate(t);
    if (sign == 0) return 0.0;
    return sign * peak_ * profile_rate(u) / ramp_;
  }
  double second_derivative(double t) const override {
    const auto [u, sign] = ramp_coordinate(t);
    if (sign == 0 || !smooth_) return 0.0;
    return peak_ * (6.0 - 12.0 * u) / (ramp_ * ramp_);
  }
  std::string kind() const override {
    return smooth_ ? "trapezoid-smoothstep" : "trapezoid";
  }
  nlohmann::json params() const override {
    return {{"peak", peak_}, {"ramp_fraction", fraction_}};
  }

 private:
  // Position inside a ramp in [0, 1] and +1 rising / -1 falling / 0 plateau.
  std::pair<double, int> ramp_coordinate(double t) const {
    if (t < ramp_) return {std::max(t, 0.0) / ramp_, +1};
    if (t > horizon() - ramp_) {
      return {std::max(horizon() - t, 0.0) / ramp_, -1};
    }
    return {1.0, 0};
  }
  double profile(double u) const {
    return smooth_ ? u * u * (3.0 - 2.0 * u) : u;
  }
  double profile_rate(double u) const {
    return smooth_ ? 6.0 * u * (1.0 - u) : 1.0;
  }

  double peak_, fraction_, ramp_;
  bool smooth_;
};

class SineSquaredShape final : public Waveform::Shape {
 public:
  SineSquaredShape(double omega0, double horizon)
      : Shape(horizon), omega0_(omega0) {}

  double value(double t) const override {
    const double s = std::sin(kPi / 2 * std::sin(kPi * t / horizon()));
    return omega0_ * s * s;
  }
  double derivative(double t) const override {
    const double w = kPi / horizon();
    const double a = kPi / 2 * std::sin(w * t);
    const double da = kPi / 2 * w * std::cos(w * t);
    return omega0_ * std::sin(2 * a) * da;
  }
  double second_derivative(double t) const override {
    const double w = kPi / horizon();
    const double a = kPi / 2 * std::sin(w * t);
    const double da = kPi / 2 * w * std::cos(w * t);
    const double dda = -kPi / 2 * w * w * std::sin(w * t);
    return omega0_ * (2 * std::cos(2 * a) * da * da + std::sin(2 * a) * dda);
  }
  std::string kind() const override { return "sine-squared"; }
  nlohmann::json params() const override { return {{"amplitude", omega0_}}; }

 private:
  double omega0_;
};

class CosineSweepShape final : public Waveform::Shape {
 public:
  CosineSweepShape(double delta0, double horizon)
      : Shape(horizon), delta0_(delta0) {}

  double value(double t) const override {
    return -delta0_ * std::cos(kPi * t / horizon());
  }
  double derivative(double t) const override {
    const double w = kPi / horizon();
    return delta0_ * w * std::sin(w * t);
  }
  double second_derivative(double t) const override {
    const double w = kPi / horizon();
    return delta0_ * w * w * std::cos(w * t);
  }
  std::string kind() const override { return "cosine-sweep"; }
  nlohmann::json params() const override { return {{"amplitude", delta0_}}; }

 private:
  double delta0_;
};

class SinusoidShape final : public Waveform::Shape {
 public:
  SinusoidShape(double offset, double slope, double amplitude, double freq,
                double phase, double horizon)
      : Shape(horizon),
        offset_(offset),
        slope_(slope),
        amplitude_(amplitude),
        freq_(freq),
        phase_(phase) {}

  double value(double t) const override {
    return offset_ + slope_ * t + amplitude_ * std::sin(freq_ * t + phase_);
  }
  double derivative(double t) const override {
    return slope_ + amplitude_ * freq_ * std::cos(freq_ * t + phase_);
  }
  double second_derivative(double t) const override {
    return -amplitude_ * freq_ * freq_ * std::sin(freq_ * t + phase_);
  }
  std::string kind() const override { return "sinusoid"; }
  nlohmann::json params() const override {
    return {{"offset", offset_},
            {"slope", slope_},
            {"amplitude", amplitude_},
            {"angular_frequency", freq_},
            {"phase", phase_}};
  }

 private:
  double offset_, slope_, amplitude_, freq_, phase_;
};

class TableShape final : public Waveform::Shape {
 public:
  TableShape(std::vector<double> samples, double horizon)
      : Shape(horizon),
        samples_(std::move(samples)),
        step_(horizon / static_cast<double>(samples_.size() - 1)),
        slopes_(finite_difference_slopes(samples_, step_)) {}

  double value(double t) const override {
    const auto [k, s] = locate(t);
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * samples_[k] + h10 * step_ * slopes_[k] +
           h01 * samples_[k + 1] + h11 * step_ * slopes_[k + 1];
  }
  double derivative(double t) const override {
    const auto [k, s] = locate(t);
    const double d00 = 6 * s * s - 6 * s;
    const double d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -d00;
    const double d11 = 3 * s * s - 2 * s;
    return (d00 * samples_[k] + d01 * samples_[k + 1]) / step_ +
           d10 * slopes_[k] + d11 * slopes_[k + 1];
  }
  double second_derivative(double t) const override {
    const auto [k, s] = locate(t);
    const double e00 = 12 * s - 6;
    const double e10 = 6 * s - 4;
    const double e11 = 6 * s - 2;
    return (e00 * (samples_[k] - samples_[k + 1]) / step_ + e10 * slopes_[k] +
            e11 * slopes_[k + 1]) /
           step_;
  }
  std::string kind() const override { return "table"; }
  nlohmann::json params() const override {
    return {{"samples", samples_.size()}};
  }

 private:
  std::pair<std::size_t, double> locate(double t) const {
    const double x = std::clamp(t, 0.0, horizon()) / step_;
    auto k = static_cast<std::size_t>(std::floor(x));
    k = std::min(k, samples_.size() - 2);
    return {k, x - static_cast<double>(k)};
  }

  std::vector<double> samples_;
  double step_;
  std::vector<double> slopes_;
};

class ClampedShape final : public Waveform::Shape {
 public:
  ClampedShape(Waveform inner, double floor, double ceiling)
      : Shape(inner.horizon()),
        inner_(std::move(inner)),
        floor_(floor),
        ceiling_(ceiling) {}

  double value(double t) const override {
    return std::clamp(inner_(t), floor_, ceiling_);
  }
  double derivative(double t) const override {
    return clipped(t) ? 0.0 : inner_.derivative(t);
  }
  double second_derivative(double t) const override {
    return clipped(t) ? 0.0 : inner_.second_derivative(t);
  }
  std::string kind() const override { return "clamped"; }
  nlohmann::json params() const override {
    return {{"floor", floor_}, {"ceiling", ceiling_}, {"inner", inner_.kind()}};
  }

 private:
  bool clipped(double t) const {
    const double v = inner_(t);
    return v > ceiling_ || v < floor_;
  }

  Waveform inner_;
  double floor_, ceiling_;
};

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorKind::Parameter, "waveform horizon must be positive");
  }
}

}  // namespace

double Waveform::Shape::fd_step() const { return 1e-3 * horizon_; }

double Waveform::Shape::derivative(double t) const {
  return stencil_derivative([this](double s) { return value(s); }, t,
                            fd_step(), horizon_);
}

double Waveform::Shape::second_derivative(double t) const {
  return stencil_derivative([this](double s) { return derivative(s); }, t,
                            fd_step(), horizon_);
}

Waveform::Waveform(std::shared_ptr<const Shape> shape)
    : shape_(std::move(shape)) {
  if (!shape_) throw Error(ErrorKind::Parameter, "null waveform shape");
}

Waveform Waveform::constant(double value, double horizon) {
  check_horizon(horizon);
  return Waveform(std::make_shared<ConstantShape>(value, horizon));
}

Waveform Waveform::linear(double v0, double v1, double horizon) {
  check_horizon(horizon);
  return Waveform(std::make_shared<LinearShape>(v0, v1, horizon));
}

Waveform Waveform::trapezoid(double peak, double horizon, double ramp_fraction,
                             bool smooth_ramps) {
  check_horizon(horizon);
  if (!(ramp_fraction > 0.0 && ramp_fraction <= 0.5)) {
    throw Error(ErrorKind::Parameter, "ramp fraction must lie in (0, 0.5]");
  }
  return Waveform(std::make_shared<TrapezoidShape>(peak, horizon,
                                                   ramp_fraction, smooth_ramps));
}

Waveform Waveform::sine_squared_pulse(double omega0, double horizon) {
  check_horizon(horizon);
  return Waveform(std::make_shared<SineSquaredShape>(omega0, horizon));
}

Waveform Waveform::cosine_sweep(double delta0, double horizon) {
  check_horizon(horizon);
  return Waveform(std::make_shared<CosineSweepShape>(delta0, horizon));
}

Waveform Waveform::sinusoid(double offset, double slope, double amplitude,
                            double angular_frequency, double phase,
                            double horizon) {
  check_horizon(horizon);
  return Waveform(std::make_shared<SinusoidShape>(
      offset, slope, amplitude, angular_frequency, phase, horizon));
}

Waveform Waveform::table(std::vector<double> samples, double horizon) {
  check_horizon(horizon);
  if (samples.size() < 2) {
    throw Error(ErrorKind::Parameter, "a table needs at least two samples");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::Parameter, "non-finite waveform sample");
    }
  }
  return Waveform(std::make_shared<TableShape>(std::move(samples), horizon));
}

Waveform Waveform::clamped(Waveform w, double floor, double ceiling) {
  if (!(floor <= ceiling)) {
    throw Error(ErrorKind::Parameter, "clamp floor above ceiling");
  }
  return Waveform(
      std::make_shared<ClampedShape>(std::move(w), floor, ceiling));
}

std::vector<double> finite_difference_slopes(std::span<const double> samples,
                                             double step) {
  const std::size_t n = samples.size();
  std::vector<double> slopes(n, 0.0);
  if (n == 2) {
    slopes[0] = slopes[1] = (samples[1] - samples[0]) / step;
    return slopes;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    slopes[k] = (samples[k + 1] - samples[k - 1]) / (2 * step);
  }
  slopes[0] = (-3 * samples[0] + 4 * samples[1] - samples[2]) / (2 * step);
  slopes[n - 1] =
      (3 * samples[n - 1] - 4 * samples[n - 2] + samples[n - 3]) / (2 * step);
  return slopes;
}

}  // namespace acqc
