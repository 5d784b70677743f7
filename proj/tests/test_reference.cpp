#include "sts/reference_times.hpp"

#include <cmath>

#include "doctest.h"
#include "sts/solver.hpp"

using sts::Barrier;
using sts::cplx;
using sts::PhysicalParams;
using sts::TimeFamily;

namespace {
const PhysicalParams kUnit(1.0, 1.0);
}

TEST_CASE("table1_times: values at E = V0/2 for V0 = 100") {
  const Barrier b(100.0, 1.0);
  const TimeFamily f = sts::table1_times(kUnit, b, 50.0);
  // k = kappa = 10, k0^2 = 200
  CHECK(f.tau_larmor == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(f.tau_dwell == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(f.tau_phase == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(f.tau_bl == doctest::Approx(std::sqrt(0.01 + 0.0001)).epsilon(1e-14));
}

TEST_CASE("table1_times: family invariants") {
  const Barrier b(47.0, 2.3);
  for (double frac : {0.05, 0.3, 0.8, 0.99}) {
    const TimeFamily f = sts::table1_times(kUnit, b, frac * b.v0);
    CHECK(f.tau_bl == doctest::Approx(std::hypot(f.tau_larmor, f.tau_dwell)).epsilon(1e-14));
    CHECK(f.tau_complex.imag() == -f.tau_larmor);
    CHECK(std::abs(f.tau_complex) == doctest::Approx(f.tau_bl).epsilon(1e-14));
    // stochastic time: a tau_L^2 + i tau_L with a purely imaginary
    const cplx a = sts::friction_coefficient(kUnit, b, frac * b.v0);
    CHECK(f.tau_stochastic.imag() ==
          doctest::Approx(a.imag() * f.tau_larmor * f.tau_larmor + f.tau_larmor).epsilon(1e-14));
    CHECK(f.tau_stochastic.real() == 0.0);
  }
}

TEST_CASE("table1_times: opaque-barrier limits") {
  const Barrier b(100.0, 1.0);
  const double e = 1e-4 * b.v0;
  const TimeFamily f = sts::table1_times(kUnit, b, e);
  const auto wn = sts::wavenumbers(kUnit, b, e);
  CHECK(f.tau_phase * wn.k * wn.k0 / 2.0 == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(f.tau_larmor * wn.k0 / 1.0 == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(f.tau_dwell / f.tau_larmor ==
        doctest::Approx(2.0 * wn.k / (wn.k0 * wn.k0 * b.length)).epsilon(1e-13));
}

TEST_CASE("table1_times: monotone convergence to the opaque limits") {
  const Barrier b(100.0, 1.0);
  const double k0 = std::sqrt(200.0);
  double prev_phase = std::numeric_limits<double>::infinity();
  double prev_larmor = std::numeric_limits<double>::infinity();
  double prev_dwell = std::numeric_limits<double>::infinity();
  for (double r = 1e-1; r >= 1e-4 / 1.001; r /= 2.0) {
    const double e = r * b.v0;
    const TimeFamily f = sts::table1_times(kUnit, b, e);
    const double k = std::sqrt(2.0 * e);
    const double dev_phase = std::abs(f.tau_phase - 2.0 / (k * k0));
    const double dev_larmor = std::abs(f.tau_larmor - 1.0 / k0);
    CHECK(dev_phase <= prev_phase);
    CHECK(dev_larmor <= prev_larmor);
    CHECK(f.tau_dwell <= prev_dwell);
    prev_phase = dev_phase;
    prev_larmor = dev_larmor;
    prev_dwell = f.tau_dwell;
  }
}

TEST_CASE("table1_times: poles are rejected") {
  const Barrier b(100.0, 1.0);
  CHECK_THROWS_AS(sts::table1_times(kUnit, b, 0.0), std::domain_error);
  CHECK_THROWS_AS(sts::table1_times(kUnit, b, 100.0), std::domain_error);
  CHECK_THROWS_AS(sts::table1_times(kUnit, b, 120.0), std::domain_error);
}

TEST_CASE("buttiker-landauer time tracks the larmor time for a strong barrier") {
  // k0 L = 30 pi
  const double k0 = 30.0 * sts::pi;
  const Barrier b(k0 * k0 / 2.0, 1.0);
  for (double r = 0.1; r <= 0.8001; r += 0.1) {
    const TimeFamily f = sts::table1_times(kUnit, b, r * r * b.v0);
    CHECK(std::abs(f.tau_bl - f.tau_larmor) <= 0.01 * f.tau_larmor);
  }
}

TEST_CASE("friction_coefficient: value and series consistency") {
  const Barrier b(100.0, 1.0);
  CHECK(sts::friction_coefficient(kUnit, b, 0.0) == cplx(0.0, 0.0));
  const cplx a = sts::friction_coefficient(kUnit, b, 10.0);
  CHECK(a.real() == 0.0);
  CHECK(a.imag() == doctest::Approx(100.0 / 1200.0).epsilon(1e-14));

  // a (L/p0)^2 equals the L^2 term of the second-order expansion
  const double e_max = 10.0;
  const cplx a2 = sts::friction_coefficient(kUnit, b, e_max);
  const double p0 = std::sqrt(200.0);
  const double l2_term = (1.0 / 24.0) * (e_max / b.v0) * (e_max / b.v0);  // m L^2/(24 hbar) e^2
  CHECK((a2 * cplx(1.0 / (p0 * p0), 0.0)).imag() == doctest::Approx(l2_term).epsilon(1e-14));
}

TEST_CASE("classical_crossing_time: real above, -i|t| below") {
  const Barrier b(100.0, 1.0);
  const cplx above = sts::classical_crossing_time(kUnit, b, 200.0);
  CHECK(above.real() == doctest::Approx(1.0 / std::sqrt(200.0)).epsilon(1e-14));
  CHECK(above.imag() == 0.0);

  const cplx at_zero = sts::classical_crossing_time(kUnit, b, 0.0);
  CHECK(at_zero.real() == 0.0);
  CHECK(at_zero.imag() == doctest::Approx(-1.0 / std::sqrt(200.0)).epsilon(1e-14));

  // E = 2 V0: kinetic momentum inside equals p0
  const cplx twice = sts::classical_crossing_time(kUnit, b, 200.0);
  CHECK(std::abs(twice) == doctest::Approx(1.0 / std::sqrt(200.0)).epsilon(1e-14));

  CHECK_THROWS_AS(sts::classical_crossing_time(kUnit, b, 100.0), std::domain_error);
}

TEST_CASE("larmor time meets the tunnelling-time anchor at low energy") {
  const Barrier b(100.0, 1.0);
  const double tau_larmor_0 = sts::table1_times(kUnit, b, 1e-10 * b.v0).tau_larmor;
  const double anchor = sts::tunneling_time_closed(kUnit, b, 1e-10 * b.v0).value.imag();
  CHECK(anchor == doctest::Approx(tau_larmor_0).epsilon(1e-8));
  CHECK(anchor == doctest::Approx(sts::tau0(kUnit, b)).epsilon(1e-8));
}
