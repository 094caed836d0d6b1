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

#include "acqc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "acqc/error.hpp"

namespace acqc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double grid_time(double total_time, int k, int n) {
  return k == n - 1 ? total_time : total_time * k / (n - 1);
}

enum class CdComponent { Omega, Delta, Phase, ZrotDelta };

// Counterdiabatic controls evaluated pointwise from the base schedule. Points
// where Omega~ vanishes leave the phase undefined, so phase and phase rate are
// taken from a neighbouring instant there.
class CdShape final : public Waveform::Shape {
 public:
  CdShape(DriveSchedule base, CdComponent component, bool zero_phase)
      : Shape(base.total_time()),
        base_(std::move(base)),
        component_(component),
        zero_phase_(zero_phase),
        vanishing_(1e-24 * base_.limits().omega_max *
                   base_.limits().omega_max) {
    if (component_ == CdComponent::Phase) build_reference();
  }

  double value(double t) const override {
    switch (component_) {
      case CdComponent::Omega: return point(t).value.omega;
      case CdComponent::Delta: return point(t).value.delta;
      case CdComponent::Phase: return unwrapped_phase(t);
      case CdComponent::ZrotDelta: {
        const CdPoint p = regular_point(t);
        return p.value.delta + p.rate.phi;
      }
    }
    return 0.0;
  }

  double derivative(double t) const override {
    switch (component_) {
      case CdComponent::Omega: return point(t).rate.omega;
      case CdComponent::Delta: return point(t).rate.delta;
      case CdComponent::Phase: return regular_point(t).rate.phi;
      case CdComponent::ZrotDelta: return Shape::derivative(t);
    }
    return 0.0;
  }

  std::string kind() const override {
    switch (component_) {
      case CdComponent::Omega: return "cd-omega";
      case CdComponent::Delta: return "cd-delta";
      case CdComponent::Phase: return "cd-phase";
      case CdComponent::ZrotDelta: return "cd-zrot-delta";
    }
    return "cd";
  }

  nlohmann::json params() const override {
    return {{"base", base_.protocol()}, {"zero_phase_formulas", zero_phase_}};
  }

 private:
  CdPoint point(double t) const {
    const ControlJet jet = base_.jet(t);
    return zero_phase_ ? cd_point_zero_phase(jet) : cd_point(jet);
  }

  CdPoint regular_point(double t) const {
    CdPoint p = point(t);
    if (p.g1 * p.g1 + p.g2 * p.g2 > vanishing_) return p;
    const double nudge = 1e-7 * horizon();
    const double shifted = t + nudge <= horizon() ? t + nudge : t - nudge;
    CdPoint q = point(shifted);
    p.value.phi = q.value.phi;
    p.rate.phi = q.rate.phi;
    return p;
  }

  void build_reference() {
    const int n = defaults::kScheduleSamples;
    reference_.resize(n);
    for (int k = 0; k < n; ++k) {
      reference_[k] = regular_point(grid_time(horizon(), k, n)).value.phi;
    }
    unwrap_phase(reference_);
  }

  // Branch of atan2 chosen to follow the unwrapped reference grid.
  double unwrapped_phase(double t) const {
    const double raw = regular_point(t).value.phi;
    const int n = static_cast<int>(reference_.size());
    const double x = std::clamp(t / horizon(), 0.0, 1.0) * (n - 1);
    const int k = std::min(static_cast<int>(x), n - 2);
    const double s = x - k;
    const double ref = (1 - s) * reference_[k] + s * reference_[k + 1];
    return raw + kTwoPi * std::round((ref - raw) / kTwoPi);
  }

  DriveSchedule base_;
  CdComponent component_;
  bool zero_phase_;
  double vanishing_;
  std::vector<double> reference_;
};

void check_total_time(double total_time) {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw Error(ErrorKind::Parameter, "evolution time must be positive");
  }
}

void check_denominators(const DriveSchedule& base, int n_samples) {
  const double floor = base.limits().denominator_floor();
  for (int k = 0; k < n_samples; ++k) {
    const double t = grid_time(base.total_time(), k, n_samples);
    const ControlPoint c = base.at(t);
    if (c.omega * c.omega + c.delta * c.delta < floor) {
      throw Error(ErrorKind::SingularSchedule,
                  "Omega^2 + Delta^2 below " + format_double(floor) +
                      " at t = " + format_double(t));
    }
  }
}

void check_zero_phase(const DriveSchedule& base, int n_samples) {
  for (int k = 0; k < n_samples; ++k) {
    const double t = grid_time(base.total_time(), k, n_samples);
    if (base.phase()(t) != 0.0 || base.phase().derivative(t) != 0.0) {
      throw Error(ErrorKind::Precondition,
                  "zero-phase transform needs phi == 0, found phi(" +
                      format_double(t) + ") = " +
                      format_double(base.phase()(t)));
    }
  }
}

DriveSchedule finish_cd(const DriveSchedule& base, bool zero_phase,
                        const CdOptions& options) {
  if (options.check_samples < 2) {
    throw Error(ErrorKind::Parameter, "check grid needs at least 2 samples");
  }
  check_denominators(base, options.check_samples);
  const double T = base.total_time();
  Waveform omega(std::make_shared<CdShape>(base, CdComponent::Omega,
                                           zero_phase));
  Waveform delta(std::make_shared<CdShape>(base, CdComponent::Delta,
                                           zero_phase));
  Waveform phase(std::make_shared<CdShape>(base, CdComponent::Phase,
                                           zero_phase));
  DriveSchedule cd(omega, delta, phase, T, base.limits(), "acqc",
                   base.protocol());
  LimitReport report = measure_limits(cd, options.check_samples);
  if (!report.omega_exceeded) return cd.with_limit_report(report);

  switch (options.policy) {
    case LimitPolicy::Reject:
      throw Error(ErrorKind::LimitViolation,
                  "counterdiabatic Omega reaches " +
                      format_double(report.max_omega) + " at t = " +
                      format_double(report.t_max_omega) +
                      ", above omega_max = " +
                      format_double(base.limits().omega_max));
    case LimitPolicy::Report:
      return cd.with_limit_report(report);
    case LimitPolicy::Clamp: {
      int clipped = 0;
      for (int k = 0; k < options.check_samples; ++k) {
        if (omega(grid_time(T, k, options.check_samples)) >
            base.limits().omega_max) {
          ++clipped;
        }
      }
      DriveSchedule clamped(
          Waveform::clamped(omega, 0.0, base.limits().omega_max), delta,
          phase, T, base.limits(), "acqc", base.protocol());
      report.clamped = true;
      report.clipped_fraction =
          static_cast<double>(clipped) / options.check_samples;
      return clamped.with_limit_report(report);
    }
  }
  return cd;
}

}  // namespace

void HardwareLimits::validate() const {
  if (!(omega_max > 0.0) || !(delta_max > 0.0) || !std::isfinite(omega_max) ||
      !std::isfinite(delta_max)) {
    throw Error(ErrorKind::Parameter,
                "omega_max and delta_max must be positive");
  }
}

HardwareLimits limits_in_internal_units(double omega_max, double delta_max,
                                        FrequencyUnit unit) {
  const double factor = unit == FrequencyUnit::Megahertz ? kTwoPi : 1.0;
  HardwareLimits limits{omega_max * factor, delta_max * factor, true};
  limits.validate();
  return limits;
}

DriveSchedule::DriveSchedule(Waveform omega, Waveform delta, Waveform phase,
                             double total_time, HardwareLimits limits,
                             std::string protocol, std::string base)
    : omega_(std::move(omega)),
      delta_(std::move(delta)),
      phase_(std::move(phase)),
      total_time_(total_time),
      limits_(limits),
      protocol_(std::move(protocol)),
      base_(std::move(base)) {
  check_total_time(total_time_);
  limits_.validate();
  const double tol = 1e-9 * total_time_;
  for (const Waveform* w : {&omega_, &delta_, &phase_}) {
    if (std::abs(w->horizon() - total_time_) > tol) {
      throw Error(ErrorKind::Parameter,
                  "waveform horizon does not match the evolution time");
    }
  }
  report_ = measure_limits(*this, check_samples());
}

ControlPoint DriveSchedule::at(double t) const {
  t = std::clamp(t, 0.0, total_time_);
  return {omega_(t), delta_(t), phase_(t)};
}

ControlJet DriveSchedule::jet(double t) const {
  t = std::clamp(t, 0.0, total_time_);
  ControlJet j;
  j.value = {omega_(t), delta_(t), phase_(t)};
  j.rate = {omega_.derivative(t), delta_.derivative(t), phase_.derivative(t)};
  j.accel = {omega_.second_derivative(t), delta_.second_derivative(t),
             phase_.second_derivative(t)};
  return j;
}

DriveSchedule DriveSchedule::with_limit_report(LimitReport report) const {
  DriveSchedule copy = *this;
  copy.report_ = report;
  return copy;
}

LimitReport measure_limits(const DriveSchedule& s, int n_samples) {
  LimitReport r;
  const double omega_slack = 1e-12 * s.limits().omega_max;
  for (int k = 0; k < n_samples; ++k) {
    const double t = grid_time(s.total_time(), k, n_samples);
    const ControlPoint c = s.at(t);
    if (!std::isfinite(c.omega) || !std::isfinite(c.delta) ||
        !std::isfinite(c.phi)) {
      throw Error(ErrorKind::Parameter,
                  "non-finite control at t = " + format_double(t));
    }
    if (c.omega < -omega_slack) {
      throw Error(ErrorKind::Parameter,
                  "negative Rabi frequency at t = " + format_double(t));
    }
    if (c.omega > r.max_omega) {
      r.max_omega = c.omega;
      r.t_max_omega = t;
    }
    if (std::abs(c.delta) > r.max_abs_delta) {
      r.max_abs_delta = std::abs(c.delta);
      r.t_max_abs_delta = t;
    }
  }
  r.omega_exceeded = r.max_omega > s.limits().omega_max + omega_slack;
  r.delta_exceeded =
      r.max_abs_delta > s.limits().delta_max * (1 + 1e-12);
  return r;
}

DriveSchedule linear_schedule(const HardwareLimits& limits, double total_time,
                              const LinearOptions& options) {
  check_total_time(total_time);
  limits.validate();
  return DriveSchedule(
      Waveform::trapezoid(limits.omega_max, total_time, options.ramp_fraction,
                          options.smooth_ramps),
      Waveform::linear(-limits.delta_max, limits.delta_max, total_time),
      Waveform::constant(0.0, total_time), total_time, limits, "linear");
}

DriveSchedule smooth_schedule(const HardwareLimits& limits,
                              double total_time) {
  check_total_time(total_time);
  limits.validate();
  return DriveSchedule(
      Waveform::sine_squared_pulse(limits.omega_max, total_time),
      Waveform::cosine_sweep(limits.delta_max, total_time),
      Waveform::constant(0.0, total_time), total_time, limits, "smooth");
}

CdPoint cd_point(const ControlJet& base) {
  const auto& [om, de, ph] = base.value;
  const auto& [dom, dde, dph] = base.rate;
  const auto& [ddom, ddde, ddph] = base.accel;

  const double d = om * om + de * de;
  const double dd = 2 * (om * dom + de * dde);
  const double w = om * dde - de * dom;
  const double dw = om * ddde - de * ddom;
  const double p = om * de * dph;
  const double dp = dom * de * dph + om * dde * dph + om * de * ddph;
  const double z = om * om * dph;
  const double dz = 2 * om * dom * dph + om * om * ddph;

  CdPoint out;
  out.g1 = om + p / d;
  out.g2 = -w / d;
  const double dg1 = dom + (dp * d - p * dd) / (d * d);
  const double dg2 = -(dw * d - w * dd) / (d * d);

  const double r2 = out.g1 * out.g1 + out.g2 * out.g2;
  const double r = std::sqrt(r2);
  out.value.omega = r;
  out.value.delta = de - z / d;
  out.value.phi = ph - std::atan2(out.g2, out.g1);
  out.rate.omega = r > 0.0 ? (out.g1 * dg1 + out.g2 * dg2) / r : 0.0;
  out.rate.delta = dde - (dz * d - z * dd) / (d * d);
  out.rate.phi = r2 > 0.0 ? dph - (out.g1 * dg2 - out.g2 * dg1) / r2 : dph;
  return out;
}

CdPoint cd_point_zero_phase(const ControlJet& base) {
  const double om = base.value.omega;
  const double de = base.value.delta;
  const double dom = base.rate.omega;
  const double dde = base.rate.delta;

  const double d = om * om + de * de;
  const double g2 = -(om * dde - de * dom) / d;
  // g2' from the quotient rule on (Delta Omega' - Omega Delta') / D.
  const double num_rate = de * base.accel.omega - om * base.accel.delta;
  const double d_rate = 2 * (om * dom + de * dde);
  const double dg2 = (num_rate * d - (de * dom - om * dde) * d_rate) / (d * d);

  CdPoint out;
  out.g1 = om;
  out.g2 = g2;
  const double r2 = om * om + g2 * g2;
  const double r = std::sqrt(r2);
  out.value.omega = r;
  out.value.delta = de;
  out.value.phi = -std::atan2(g2, om);
  out.rate.omega = r > 0.0 ? (om * dom + g2 * dg2) / r : 0.0;
  out.rate.delta = dde;
  out.rate.phi = r2 > 0.0 ? -(om * dg2 - g2 * dom) / r2 : 0.0;
  return out;
}

DriveSchedule cd_transform(const DriveSchedule& base,
                           const CdOptions& options) {
  return finish_cd(base, false, options);
}

DriveSchedule cd_transform_zero_phase(const DriveSchedule& base,
                                      const CdOptions& options) {
  check_zero_phase(base, options.check_samples);
  return finish_cd(base, true, options);
}

DriveSchedule z_rotation_transform(const DriveSchedule& cd,
                                   const CdOptions& options) {
  if (cd.protocol() != "acqc") {
    throw Error(ErrorKind::Precondition,
                "z-rotation expects a counterdiabatic schedule, got '" +
                    cd.protocol() + "'");
  }
  const double T = cd.total_time();
  // Differentiating the wrapped-safe phase rate of the CD phase waveform.
  class ZrotShape final : public Waveform::Shape {
   public:
    ZrotShape(Waveform delta, Waveform phase)
        : Shape(delta.horizon()),
          delta_(std::move(delta)),
          phase_(std::move(phase)) {}
    double value(double t) const override {
      return delta_(t) + phase_.derivative(t);
    }
    std::string kind() const override { return "zrot-delta"; }

   private:
    Waveform delta_, phase_;
  };
  // A clamped CD amplitude keeps its phase; only the detuning changes.
  Waveform delta(std::make_shared<ZrotShape>(cd.delta(), cd.phase()));
  DriveSchedule z(cd.omega(), delta, Waveform::constant(0.0, T), T,
                  cd.limits(), "acqc-zrot", cd.base());
  LimitReport report = measure_limits(z, options.check_samples);
  report.omega_exceeded = cd.limit_report().omega_exceeded;
  report.clamped = cd.limit_report().clamped;
  report.clipped_fraction = cd.limit_report().clipped_fraction;
  if (!report.delta_exceeded) return z.with_limit_report(report);

  const double dmax = cd.limits().delta_max;
  switch (options.policy) {
    case LimitPolicy::Reject:
      throw Error(ErrorKind::LimitViolation,
                  "z-rotated detuning reaches |Delta| = " +
                      format_double(report.max_abs_delta) + " at t = " +
                      format_double(report.t_max_abs_delta) +
                      ", above delta_max = " + format_double(dmax));
    case LimitPolicy::Report:
      return z.with_limit_report(report);
    case LimitPolicy::Clamp: {
      int clipped = 0;
      for (int k = 0; k < options.check_samples; ++k) {
        if (std::abs(delta(grid_time(T, k, options.check_samples))) > dmax) {
          ++clipped;
        }
      }
      DriveSchedule clamped(cd.omega(), Waveform::clamped(delta, -dmax, dmax),
                            Waveform::constant(0.0, T), T, cd.limits(),
                            "acqc-zrot", cd.base());
      report.clamped = true;
      report.clipped_fraction =
          std::max(report.clipped_fraction,
                   static_cast<double>(clipped) / options.check_samples);
      return clamped.with_limit_report(report);
    }
  }
  return z;
}

BoundaryReport validate_boundary(const DriveSchedule& s, double tol) {
  BoundaryReport r;
  const ControlPoint start = s.at(0.0);
  const ControlPoint end = s.at(s.total_time());
  r.omega_start = start.omega;
  r.omega_end = end.omega;
  r.delta_start = start.delta;
  r.delta_end = end.delta;
  r.tolerance = tol;
  r.pass = std::abs(r.omega_start) <= tol && std::abs(r.omega_end) <= tol &&
           r.delta_start <= -tol && r.delta_end >= tol;
  return r;
}

void unwrap_phase(std::vector<double>& phase) {
  double offset = 0.0;
  for (std::size_t k = 1; k < phase.size(); ++k) {
    const double raw_step = phase[k] + offset - phase[k - 1];
    offset -= kTwoPi * std::round(raw_step / kTwoPi);
    phase[k] += offset;
  }
}

std::vector<ScheduleSample> sample_schedule(const DriveSchedule& s,
                                            int n_samples) {
  if (n_samples < 2) {
    throw Error(ErrorKind::Parameter, "need at least two samples");
  }
  std::vector<ScheduleSample> rows(n_samples);
  std::vector<double> phase(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double t = grid_time(s.total_time(), k, n_samples);
    const ControlPoint c = s.at(t);
    rows[k] = {t, c.omega, c.delta, c.phi};
    phase[k] = c.phi;
  }
  unwrap_phase(phase);
  for (int k = 0; k < n_samples; ++k) rows[k].phi = phase[k];
  return rows;
}

nlohmann::json limits_to_json(const HardwareLimits& limits) {
  return {{"omega_max", limits.omega_max},
          {"delta_max", limits.delta_max},
          {"phase_controllable", limits.phase_controllable}};
}

nlohmann::json limit_report_to_json(const LimitReport& r) {
  return {{"max_omega", r.max_omega},
          {"t_max_omega", r.t_max_omega},
          {"max_abs_delta", r.max_abs_delta},
          {"t_max_abs_delta", r.t_max_abs_delta},
          {"omega_exceeded", r.omega_exceeded},
          {"delta_exceeded", r.delta_exceeded},
          {"clamped", r.clamped},
          {"clipped_fraction", r.clipped_fraction}};
}

nlohmann::json schedule_to_json(const DriveSchedule& s, int n_samples) {
  nlohmann::json j;
  j["protocol"] = s.protocol();
  j["T_us"] = s.total_time();
  j["base"] = s.base().empty() ? nlohmann::json(nullptr)
                               : nlohmann::json(s.base());
  j["limits"] = limits_to_json(s.limits());
  j["limit_report"] = limit_report_to_json(s.limit_report());
  j["unit_convention"] = defaults::kUnitConvention;
  j["samples"] = nlohmann::json::array();
  for (const auto& row : sample_schedule(s, n_samples)) {
    j["samples"].push_back(
        {{"t", row.t}, {"omega", row.omega}, {"delta", row.delta},
         {"phi", row.phi}});
  }
  return j;
}

std::string schedule_to_csv(const DriveSchedule& s, int n_samples) {
  std::ostringstream os;
  os.precision(17);
  os << "t,omega,delta,phi\n";
  for (const auto& row : sample_schedule(s, n_samples)) {
    os << row.t << ',' << row.omega << ',' << row.delta << ',' << row.phi
       << '\n';
  }
  return os.str();
}

}  // namespace acqc
