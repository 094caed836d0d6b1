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

#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "acqc/error.hpp"
#include "acqc/rng.hpp"
#include "acqc/schedule.hpp"
#include "oracles.hpp"

using namespace acqc;
using std::numbers::pi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an acqc::Error");
  return ErrorKind::Parameter;
}

DriveSchedule constant_schedule(double omega, double delta, double phi,
                                double total = 1.0,
                                std::string protocol = "custom") {
  return DriveSchedule(Waveform::constant(omega, total),
                       Waveform::constant(delta, total),
                       Waveform::constant(phi, total), total, HardwareLimits{},
                       std::move(protocol));
}

CdOptions report_only() { return {LimitPolicy::Report, 2001}; }

// Reference CD controls from the closed-form expressions, phase rate taken
// from the base waveform.
ControlPoint cd_reference(const ControlJet& j) {
  const double om = j.value.omega, de = j.value.delta;
  const double d = om * om + de * de;
  const double g1 = om * (1 + de * j.rate.phi / d);
  const double g2 = -(om * j.rate.delta - de * j.rate.omega) / d;
  return {std::hypot(g1, g2), de - om * om * j.rate.phi / d,
          j.value.phi - std::atan2(g2, g1)};
}

double wrap(double a) { return std::remainder(a, 2 * pi); }

}  // namespace

TEST_CASE("waveform families") {
  const double T = 2.0;
  CHECK(Waveform::constant(3.0, T)(0.7) == 3.0);
  CHECK(Waveform::linear(-1.0, 3.0, T)(0.5) == doctest::Approx(0.0));
  const auto pulse = Waveform::sine_squared_pulse(15.0, T);
  CHECK(pulse(0.0) == doctest::Approx(0.0));
  CHECK(pulse(T / 2) == doctest::Approx(15.0));
  const auto sweep = Waveform::cosine_sweep(17.0, T);
  CHECK(sweep(0.0) == doctest::Approx(-17.0));
  CHECK(sweep(T) == doctest::Approx(17.0));
  const auto trap = Waveform::trapezoid(15.0, T, 0.25);
  CHECK(trap(0.25) == doctest::Approx(7.5));
  CHECK(trap(1.0) == 15.0);
  CHECK(trap(1.75) == doctest::Approx(7.5));
  const auto smooth_trap = Waveform::trapezoid(15.0, T, 0.25, true);
  CHECK(smooth_trap(0.25) == doctest::Approx(7.5));
  CHECK(smooth_trap.derivative(0.0) == doctest::Approx(0.0));
  const auto sinus = Waveform::sinusoid(1.0, 0.5, 2.0, 3.0, 0.1, T);
  CHECK(sinus(0.4) == doctest::Approx(1.0 + 0.2 + 2.0 * std::sin(1.3)));
  const auto clip = Waveform::clamped(pulse, 0.0, 10.0);
  CHECK(clip(T / 2) == 10.0);
  CHECK(clip(0.1) == doctest::Approx(pulse(0.1)));
}

TEST_CASE("waveform argument checks") {
  CHECK(kind_of([] { Waveform::constant(1.0, 0.0); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { Waveform::table({1.0}, 1.0); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { Waveform::table({1.0, NAN}, 1.0); }) ==
        ErrorKind::Parameter);
  CHECK(kind_of([] { Waveform::trapezoid(1.0, 1.0, 0.7); }) ==
        ErrorKind::Parameter);
  CHECK(kind_of([] {
          Waveform::clamped(Waveform::constant(0, 1), 1.0, 0.0);
        }) == ErrorKind::Parameter);
}

TEST_CASE("property: analytic derivatives match central differences") {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const double T = 0.1 + 5 * rng.uniform();
    const std::vector<Waveform> shapes{
        Waveform::sine_squared_pulse(1 + 20 * rng.uniform(), T),
        Waveform::cosine_sweep(1 + 20 * rng.uniform(), T),
        Waveform::linear(rng.uniform(), 3 * rng.uniform(), T),
        Waveform::sinusoid(rng.uniform(), rng.uniform(), rng.uniform(),
                           10 * rng.uniform() / T, rng.uniform(), T),
        Waveform::trapezoid(15, T, 0.1 + 0.3 * rng.uniform(), true)};
    for (const auto& w : shapes) {
      for (int s = 0; s < 10; ++s) {
        const double t = T * (0.01 + 0.98 * rng.uniform());
        const double h = T / 1e6;
        const double fd = (w(t + h) - w(t - h)) / (2 * h);
        const double fd2 =
            (w.derivative(t + h) - w.derivative(t - h)) / (2 * h);
        const double scale_1 = std::max(std::abs(w.derivative(t)), 1.0 / T);
        const double scale_2 =
            std::max(std::abs(w.second_derivative(t)), 1.0 / (T * T));
        CAPTURE(w.kind());
        CHECK(std::abs(w.derivative(t) - fd) / scale_1 < 1e-6);
        CHECK(std::abs(w.second_derivative(t) - fd2) / scale_2 < 1e-6);
      }
    }
  }
}

TEST_CASE("tabulated waveform") {
  const double T = 1.0;
  const int n = 2001;
  std::vector<double> samples(n);
  for (int k = 0; k < n; ++k) samples[k] = std::sin(3.0 * k / (n - 1.0));
  const auto w = Waveform::table(samples, T);
  for (int k = 0; k < n; k += 37) {
    CHECK(w(static_cast<double>(k) / (n - 1)) == doctest::Approx(samples[k]).epsilon(1e-14));
  }
  CHECK(w(0.3337) == doctest::Approx(std::sin(3.0 * 0.3337)).epsilon(1e-10));
  CHECK(w.derivative(0.5) == doctest::Approx(3.0 * std::cos(1.5)).epsilon(1e-6));
  CHECK(w.derivative(0.0) == doctest::Approx(3.0).epsilon(1e-5));

  const std::vector<double> line{0.0, 1.0, 2.0, 3.0};
  const auto slopes = finite_difference_slopes(line, 0.5);
  for (double s : slopes) CHECK(s == doctest::Approx(2.0));
}

TEST_CASE("linear schedule") {
  const auto s = linear_schedule(HardwareLimits{}, 2.0);
  CHECK(s.at(0).delta == doctest::Approx(-17.0));
  CHECK(s.at(2.0).delta == doctest::Approx(17.0));
  CHECK(s.at(1.0).delta == doctest::Approx(0.0));
  CHECK(s.at(0).omega == 0.0);
  CHECK(s.at(2.0).omega == doctest::Approx(0.0));
  CHECK(s.at(1.0).omega == 15.0);
  CHECK(s.at(0.1).omega == doctest::Approx(7.5));
  CHECK(s.at(0.7).phi == 0.0);
  CHECK(validate_boundary(s, 1e-9).pass);
  CHECK(kind_of([] { linear_schedule(HardwareLimits{}, 0.0); }) ==
        ErrorKind::Parameter);
  CHECK(kind_of([] { linear_schedule(HardwareLimits{}, -1.0); }) ==
        ErrorKind::Parameter);
  LinearOptions wide;
  wide.ramp_fraction = 0.5;
  CHECK(linear_schedule(HardwareLimits{}, 2.0, wide).at(0.5).omega ==
        doctest::Approx(7.5));
}

TEST_CASE("smooth schedule") {
  const HardwareLimits l;
  const double T = 1.3;
  const auto s = smooth_schedule(l, T);
  CHECK(s.at(T / 2).omega == doctest::Approx(15.0));
  const double quarter = std::pow(std::sin(pi / 2 * std::sqrt(0.5)), 2);
  CHECK(quarter == doctest::Approx(0.8030).epsilon(1e-4));
  CHECK(s.at(T / 4).omega == doctest::Approx(quarter * 15.0));
  CHECK(s.at(T / 4).delta == doctest::Approx(-0.70710678 * 17.0));
  CHECK(s.at(0.37).phi == 0.0);
  CHECK(validate_boundary(s, 1e-9).pass);
  CHECK(kind_of([] { smooth_schedule(HardwareLimits{}, 0.0); }) ==
        ErrorKind::Parameter);
  const auto jet = s.jet(0.4);
  CHECK(jet.rate.omega ==
        doctest::Approx(oracle::derivative(
            [&](double t) { return s.at(t).omega; }, 0.4, 1e-4)));
}

TEST_CASE("hardware limits and units") {
  CHECK(kind_of([] { HardwareLimits{0.0, 1.0}.validate(); }) ==
        ErrorKind::Parameter);
  const auto mhz = limits_in_internal_units(15, 17, FrequencyUnit::Megahertz);
  CHECK(mhz.omega_max == doctest::Approx(2 * pi * 15));
  CHECK(mhz.delta_max == doctest::Approx(2 * pi * 17));
  const auto rad =
      limits_in_internal_units(15, 17, FrequencyUnit::RadPerMicrosecond);
  CHECK(rad.omega_max == 15);
}

TEST_CASE("schedule construction checks") {
  CHECK(kind_of([] { constant_schedule(-1.0, 1.0, 0.0); }) ==
        ErrorKind::Parameter);
  const auto over = constant_schedule(20.0, 1.0, 0.0);
  CHECK(over.limit_report().omega_exceeded);
  CHECK(over.limit_report().max_omega == 20.0);
}

TEST_CASE("CD point examples") {
  ControlJet j;
  j.value = {1.0, 0.0, 0.0};
  j.rate = {0.0, 1.0, 0.0};
  const auto p = cd_point(j);
  CHECK(p.g1 == doctest::Approx(1.0));
  CHECK(p.g2 == doctest::Approx(-1.0));
  CHECK(p.value.omega == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.value.phi == doctest::Approx(pi / 4));
  CHECK(p.value.delta == doctest::Approx(0.0));
  const auto z = cd_point_zero_phase(j);
  CHECK(z.value.omega == doctest::Approx(std::sqrt(2.0)));
  CHECK(z.value.phi == doctest::Approx(pi / 4));

  const double c = 2.0, d = 3.0;
  ControlJet q;
  q.value = {c, c, 0.0};
  q.rate = {0.0, d, 0.0};
  const auto r = cd_point_zero_phase(q);
  CHECK(r.g2 == doctest::Approx(-d / (2 * c)));
  CHECK(r.value.omega == doctest::Approx(std::sqrt(c * c + d * d / (4 * c * c))));
  CHECK(r.value.delta == c);

  ControlJet still;
  still.value = {3.0, -4.0, 0.7};
  const auto id = cd_point(still);
  CHECK(id.value.omega == doctest::Approx(3.0));
  CHECK(id.value.delta == doctest::Approx(-4.0));
  CHECK(id.value.phi == doctest::Approx(0.7));
}

TEST_CASE("CD transform is the identity on static schedules") {
  const auto base = constant_schedule(3.0, -4.0, 0.7);
  const auto cd = cd_transform(base);
  for (double t : {0.0, 0.3, 1.0}) {
    CHECK(std::abs(cd.at(t).omega - 3.0) < 1e-12);
    CHECK(std::abs(cd.at(t).delta + 4.0) < 1e-12);
    CHECK(std::abs(wrap(cd.at(t).phi - 0.7)) < 1e-12);
  }
}

TEST_CASE("CD of the smooth schedule") {
  const HardwareLimits l;
  const double T = 1.0;
  const auto base = smooth_schedule(l, T);

  // The midpoint amplitude exceeds omega_max: Omega0^2 + (pi Delta0/(T Omega0))^2.
  const double mid = std::hypot(15.0, pi * 17.0 / (T * 15.0));
  try {
    cd_transform(base);
    FAIL("expected a limit violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LimitViolation);
    CHECK(std::string(e.what()).find("t = 0.5") != std::string::npos);
  }

  const auto cd = cd_transform(base, report_only());
  CHECK(cd.protocol() == "acqc");
  CHECK(cd.base() == "smooth");
  CHECK(cd.at(T / 2).omega == doctest::Approx(mid));
  CHECK(cd.limit_report().omega_exceeded);
  CHECK(cd.limit_report().max_omega == doctest::Approx(mid));
  CHECK(cd.limit_report().t_max_omega == doctest::Approx(0.5));

  // Boundary preservation.
  CHECK(std::abs(cd.at(0).omega) < 1e-6 * 15);
  CHECK(std::abs(cd.at(T).omega) < 1e-6 * 15);
  CHECK(validate_boundary(cd, 1e-6 * 15).pass);

  const auto rows = sample_schedule(cd, 10001);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const ControlPoint b = base.at(rows[k].t);
    CHECK(rows[k].omega >= b.omega - 1e-12);
    if (k > 0) CHECK(std::abs(rows[k].phi - rows[k - 1].phi) < pi);
  }

  CdOptions clamp{LimitPolicy::Clamp, 2001};
  const auto clipped = cd_transform(base, clamp);
  CHECK(clipped.limit_report().clamped);
  CHECK(clipped.limit_report().clipped_fraction > 0.0);
  CHECK(clipped.limit_report().clipped_fraction < 1.0);
  CHECK(clipped.at(T / 2).omega == 15.0);
  CHECK(clipped.at(0.1).omega == doctest::Approx(cd.at(0.1).omega));

  // The overshoot shrinks with T but never vanishes.
  const auto slow = cd_transform(smooth_schedule(l, 4.0), report_only());
  CHECK(slow.limit_report().max_omega ==
        doctest::Approx(std::hypot(15.0, pi * 17.0 / (4.0 * 15.0))));
}

TEST_CASE("property: general and zero-phase CD agree on random smooth bases") {
  Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    const HardwareLimits l{5 + 20 * rng.uniform(), 5 + 20 * rng.uniform()};
    const double T = 0.2 + 4 * rng.uniform();
    const auto base = smooth_schedule(l, T);
    const auto a = cd_transform(base, report_only());
    const auto b = cd_transform_zero_phase(base, report_only());
    for (int s = 0; s <= 200; ++s) {
      const double t = T * s / 200.0;
      CHECK(std::abs(a.at(t).omega - b.at(t).omega) < 1e-12 * l.omega_max);
      CHECK(std::abs(a.at(t).delta - b.at(t).delta) < 1e-12 * l.delta_max);
      CHECK(std::abs(wrap(a.at(t).phi - b.at(t).phi)) < 1e-12);
      CHECK(a.at(t).omega >= base.at(t).omega - 1e-12);
    }
  }
}

TEST_CASE("CD of a phased base follows the closed form") {
  const double T = 1.7;
  const auto s = smooth_schedule(HardwareLimits{}, T);
  const DriveSchedule base(
      s.omega(), s.delta(),
      Waveform::sinusoid(0.2, 0.8, 0.3, 4.0, 0.5, T), T, HardwareLimits{},
      "phased");
  const auto cd = cd_transform(base, report_only());
  for (int k = 1; k < 40; ++k) {
    const double t = T * k / 40.0;
    const ControlPoint ref = cd_reference(base.jet(t));
    CHECK(cd.at(t).omega == doctest::Approx(ref.omega).epsilon(1e-12));
    CHECK(cd.at(t).delta == doctest::Approx(ref.delta).epsilon(1e-12));
    CHECK(std::abs(wrap(cd.at(t).phi - ref.phi)) < 1e-12);
    // Rates are analytic and agree with differences of the values.
    const double h = 1e-5;
    CHECK(cd.omega().derivative(t) ==
          doctest::Approx((cd.omega()(t + h) - cd.omega()(t - h)) / (2 * h))
              .epsilon(1e-6));
  }
  CHECK(kind_of([&] { cd_transform_zero_phase(base); }) ==
        ErrorKind::Precondition);
}

TEST_CASE("CD rejects singular schedules") {
  const auto zero = constant_schedule(0.0, 0.0, 0.0);
  CHECK(kind_of([&] { cd_transform(zero); }) == ErrorKind::SingularSchedule);
}

TEST_CASE("Z-rotation transform") {
  const double T = 1.0;
  const auto fixed = constant_schedule(3.0, 2.0, 0.4, T, "acqc");
  const auto z0 = z_rotation_transform(fixed);
  CHECK(z0.protocol() == "acqc-zrot");
  CHECK(z0.at(0.3).delta == doctest::Approx(2.0));
  CHECK(z0.at(0.3).phi == 0.0);

  const DriveSchedule ramp(Waveform::constant(3.0, T),
                           Waveform::constant(2.0, T),
                           Waveform::linear(0.0, 1.5, T), T, HardwareLimits{},
                           "acqc");
  const auto z1 = z_rotation_transform(ramp);
  for (double t : {0.0, 0.4, 1.0}) CHECK(z1.at(t).delta == doctest::Approx(3.5));

  CHECK(kind_of([&] {
          z_rotation_transform(constant_schedule(1, 1, 0, T, "smooth"));
        }) == ErrorKind::Precondition);

  const auto cd = cd_transform(smooth_schedule(HardwareLimits{}, 1.0),
                               report_only());
  CHECK(kind_of([&] { z_rotation_transform(cd); }) ==
        ErrorKind::LimitViolation);
  const auto z = z_rotation_transform(cd, report_only());
  CHECK(z.limit_report().delta_exceeded);
  for (int k = 1; k < 50; ++k) {
    const double t = k / 50.0;
    const double h = 1e-6;
    CHECK(z.at(t).phi == 0.0);
    CHECK(z.at(t).omega == cd.at(t).omega);
    const double rate =
        std::remainder(cd.at(t + h).phi - cd.at(t - h).phi, 2 * pi) / (2 * h);
    CHECK(z.at(t).delta == doctest::Approx(cd.at(t).delta + rate).epsilon(1e-6));
  }
  CdOptions clamp{LimitPolicy::Clamp, 2001};
  const auto zc = z_rotation_transform(cd, clamp);
  CHECK(zc.limit_report().clamped);
  for (int k = 0; k <= 100; ++k) {
    CHECK(std::abs(zc.at(k / 100.0).delta) <= 17.0);
  }
}

TEST_CASE("boundary reports") {
  const auto bad = constant_schedule(1.0, -2.0, 0.0);
  const auto r = validate_boundary(bad, 1e-6);
  CHECK_FALSE(r.pass);
  CHECK(r.omega_start == 1.0);
  CHECK(validate_boundary(smooth_schedule(HardwareLimits{}, 2.0), 1e-9).pass);
}

TEST_CASE("sampling and export") {
  const auto s = smooth_schedule(HardwareLimits{}, 1.0);
  const auto two = sample_schedule(s, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].t == 0.0);
  CHECK(two[1].t == 1.0);
  const auto rows = sample_schedule(s, 1001);
  CHECK(rows[500].t == doctest::Approx(0.5));
  CHECK(rows[500].omega == doctest::Approx(15.0));
  CHECK(kind_of([&] { sample_schedule(s, 1); }) == ErrorKind::Parameter);

  // A table sampled on its own grid is reproduced.
  std::vector<double> omega;
  for (const auto& row : rows) omega.push_back(row.omega);
  const DriveSchedule tab(Waveform::table(omega, 1.0), s.delta(), s.phase(),
                          1.0, HardwareLimits{}, "custom");
  const auto again = sample_schedule(tab, 1001);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(again[k].omega == doctest::Approx(rows[k].omega).epsilon(1e-14));
  }

  const auto j = schedule_to_json(s, 11);
  CHECK(j["protocol"] == "smooth");
  CHECK(j["T_us"] == 1.0);
  CHECK(j["samples"].size() == 11);
  CHECK(j["samples"][5]["omega"].get<double>() == doctest::Approx(15.0));
  CHECK(j.contains("limits"));
  CHECK(j.contains("unit_convention"));

  const std::string csv = schedule_to_csv(s, 3);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,omega,delta,phi");
  int n = 0;
  while (std::getline(in, line)) ++n;
  CHECK(n == 3);
}

TEST_CASE("phase unwrapping") {
  std::vector<double> p{3.0, 3.1 - 2 * pi, 3.2 - 2 * pi, 3.3, 3.4 + 4 * pi};
  unwrap_phase(p);
  for (std::size_t k = 0; k < p.size(); ++k) {
    CHECK(p[k] == doctest::Approx(3.0 + 0.1 * k));
  }
}

TEST_CASE("ACQC export has vanishing endpoint amplitude and continuous phase") {
  for (double T : {0.1, 1.0, 4.0}) {
    const auto cd = cd_transform(smooth_schedule(HardwareLimits{}, T),
                                 report_only());
    const auto rows = sample_schedule(cd, 1001);
    CHECK(std::abs(rows.front().omega) < 1e-9);
    CHECK(std::abs(rows.back().omega) < 1e-9);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      CHECK(std::abs(rows[k].phi - rows[k - 1].phi) < pi);
    }
    const auto z = z_rotation_transform(cd, report_only());
    for (const auto& row : sample_schedule(z, 101)) CHECK(row.phi == 0.0);
  }
}
