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
#include <string>
#include <vector>

#include <json.hpp>

#include "acqc/defaults.hpp"
#include "acqc/waveform.hpp"

namespace acqc {

struct HardwareLimits {
  double omega_max = defaults::kOmegaMax;  // rad/us
  double delta_max = defaults::kDeltaMax;  // rad/us
  bool phase_controllable = true;

  void validate() const;
  /// Smallest admissible Omega^2 + Delta^2 for the counterdiabatic terms.
  double denominator_floor() const {
    return 1e-9 * (omega_max * omega_max + delta_max * delta_max);
  }
};

/// Conversion of user-facing amplitudes into the internal rad/us unit.
enum class FrequencyUnit { RadPerMicrosecond, Megahertz };
HardwareLimits limits_in_internal_units(double omega_max, double delta_max,
                                        FrequencyUnit unit);

struct ControlPoint {
  double omega = 0.0;
  double delta = 0.0;
  double phi = 0.0;
};

/// Controls with first and second time derivatives at one instant.
struct ControlJet {
  ControlPoint value;
  ControlPoint rate;
  ControlPoint accel;
};

/// What to do when a synthesized waveform leaves the hardware envelope.
enum class LimitPolicy {
  Reject,  // throw a limit-violation error
  Clamp,   // clip to the envelope and record the clipped fraction
  Report,  // keep the waveform, record the excess
};

struct LimitReport {
  double max_omega = 0.0;
  double t_max_omega = 0.0;
  double max_abs_delta = 0.0;
  double t_max_abs_delta = 0.0;
  bool omega_exceeded = false;
  bool delta_exceeded = false;
  bool clamped = false;
  double clipped_fraction = 0.0;
};

class DriveSchedule {
 public:
  DriveSchedule(Waveform omega, Waveform delta, Waveform phase,
                double total_time, HardwareLimits limits, std::string protocol,
                std::string base = "");

  /// Controls at t (clamped into [0, T]). The integrator and every exporter
  /// go through this one entry point.
  ControlPoint at(double t) const;
  ControlJet jet(double t) const;

  const Waveform& omega() const { return omega_; }
  const Waveform& delta() const { return delta_; }
  const Waveform& phase() const { return phase_; }
  double total_time() const { return total_time_; }
  const HardwareLimits& limits() const { return limits_; }
  const std::string& protocol() const { return protocol_; }
  const std::string& base() const { return base_; }
  const LimitReport& limit_report() const { return report_; }

  /// Grid used for invariant checks and limit reports.
  int check_samples() const { return defaults::kScheduleSamples; }

  DriveSchedule with_limit_report(LimitReport report) const;

 private:
  Waveform omega_;
  Waveform delta_;
  Waveform phase_;
  double total_time_;
  HardwareLimits limits_;
  std::string protocol_;
  std::string base_;
  LimitReport report_;
};

LimitReport measure_limits(const DriveSchedule& s, int n_samples);

struct LinearOptions {
  double ramp_fraction = 0.1;
  bool smooth_ramps = false;
};

DriveSchedule linear_schedule(const HardwareLimits& limits, double total_time,
                              const LinearOptions& options = {});
DriveSchedule smooth_schedule(const HardwareLimits& limits, double total_time);

/// Pointwise counterdiabatic controls plus their time derivatives.
struct CdPoint {
  double g1 = 0.0;
  double g2 = 0.0;
  ControlPoint value;  // (Omega~, Delta~, phi~), phi~ not unwrapped
  ControlPoint rate;
};

/// General transform: g1 = Omega (1 + Delta phi' / D),
/// g2 = -(Omega Delta' - Delta Omega') / D, D = Omega^2 + Delta^2.
CdPoint cd_point(const ControlJet& base);
/// Same controls for a zero-phase base via the reduced formulas.
CdPoint cd_point_zero_phase(const ControlJet& base);

struct CdOptions {
  LimitPolicy policy = LimitPolicy::Reject;
  int check_samples = defaults::kScheduleSamples;
};

DriveSchedule cd_transform(const DriveSchedule& base,
                           const CdOptions& options = {});
/// Requires base.phase == 0 everywhere; mirrors cd_transform through the
/// specialised formulas.
DriveSchedule cd_transform_zero_phase(const DriveSchedule& base,
                                      const CdOptions& options = {});
/// Moves the CD phase into the detuning: Delta_z = Delta~ + d phi~/dt,
/// phi_z = 0.
DriveSchedule z_rotation_transform(const DriveSchedule& cd,
                                   const CdOptions& options = {});

struct BoundaryReport {
  double omega_start = 0.0;
  double omega_end = 0.0;
  double delta_start = 0.0;
  double delta_end = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

BoundaryReport validate_boundary(const DriveSchedule& s, double tol);

struct ScheduleSample {
  double t = 0.0;
  double omega = 0.0;
  double delta = 0.0;
  double phi = 0.0;
};

/// Uniform grid with both endpoints; phi is unwrapped along the grid.
std::vector<ScheduleSample> sample_schedule(const DriveSchedule& s,
                                            int n_samples);

/// Removes 2 pi jumps between neighbouring entries in place.
void unwrap_phase(std::vector<double>& phase);

nlohmann::json schedule_to_json(const DriveSchedule& s, int n_samples);
std::string schedule_to_csv(const DriveSchedule& s, int n_samples);
nlohmann::json limits_to_json(const HardwareLimits& limits);
nlohmann::json limit_report_to_json(const LimitReport& report);

}  // namespace acqc
