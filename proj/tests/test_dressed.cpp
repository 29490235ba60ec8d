#include "ccars/dressed.hpp"
#include "ccars/errors.hpp"
#include "ccars/hamiltonian.hpp"
#include "ccars/propagator.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace ccars;

namespace {

HamiltonianSpec reference_scheme(double delta = 0.0, ScheduleMode mode = ScheduleMode::ccars) {
  return canonical_spec({.delta = delta, .mode = mode});
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("mixing angle limits") {
  const auto spec = reference_scheme();
  const double tc = spec.t_center();
  // zero effective detuning: equal superposition
  for (double u : {0.0, 1.0, 50.0}) {
    CHECK(mixing_angle(spec, tc + u) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  }
  // opposite constant chirps sweep x to -infinity after t_c
  const auto co = reference_scheme(0.0, ScheduleMode::constant_opposite);
  CHECK(mixing_angle(co, tc + 4.0 * co.duration()) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
  CHECK(mixing_angle(co, tc - 4.0 * co.duration()) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  // detuned C-CARS ends in the upper bare state
  CHECK(mixing_angle(reference_scheme(0.1), tc + 4.0 * spec.duration()) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
}

TEST_CASE("rotation diagonalizes the two-level Hamiltonian") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> omega(0.05, 10.0);
  std::uniform_real_distribution<double> chirp(-10.0, 10.0);
  std::uniform_real_distribution<double> det(-0.5, 0.5);
  std::uniform_real_distribution<double> frac(-3.0, 3.0);
  for (int i = 0; i < 10000; ++i) {
    const auto spec = canonical_spec({.omega3_peak = omega(rng), .chirp = chirp(rng), .delta = det(rng)});
    const double t = spec.t_center() + frac(rng) * spec.duration();
    const RotationMatrix rot{mixing_angle(spec, t)};
    const Eigen::Matrix2cd tm = rot.matrix().cast<std::complex<double>>();
    const Eigen::Matrix2cd d = tm * h_se(spec, t) * tm.adjoint();
    const auto [l1, l2] = dressed_energies(spec, t);
    const double scale = std::max(1.0, l2);
    REQUIRE(std::abs(d(0, 1)) <= 1e-10 * scale);
    REQUIRE(std::abs(d(0, 0) - l1) <= 1e-10 * scale);
    REQUIRE(std::abs(d(1, 1) - l2) <= 1e-10 * scale);
    REQUIRE((rot.matrix() * rot.matrix().transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <=
            1e-15);
  }
}

TEST_CASE("rotation applied to a density matrix") {
  const RotationMatrix rot{std::numbers::pi / 4};
  const Eigen::Matrix2cd rho = ground_state(2);
  const Eigen::Matrix2cd r = rot.apply(rho);
  CHECK(r(0, 0).real() == doctest::Approx(0.5));
  CHECK(r(1, 0).real() == doctest::Approx(0.5));
  CHECK(std::real(r.trace()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("non-adiabatic parameter matches finite differences") {
  const double h = 1e-4;
  for (double delta : {0.0, 0.1, -0.07}) {
    for (auto mode : {ScheduleMode::ccars, ScheduleMode::constant_opposite}) {
      const auto spec = canonical_spec({.omega3_peak = 1.6, .tau0 = 4.66, .chirp = -3.0, .delta = delta,
                                        .mode = mode});
      const double tc = spec.t_center();
      const double tau = spec.duration();
      for (double f : {-2.5, -1.0, -0.3, -0.01, 0.01, 0.2, 0.9, 2.0}) {
        const double t = tc + f * tau;
        const double fd = (mixing_angle(spec, t + h) - mixing_angle(spec, t - h)) / (2.0 * h);
        REQUIRE(std::abs(nonadiabatic_param(spec, t) - fd) <= 1e-6);
      }
    }
  }
}

TEST_CASE("C-CARS removes non-adiabatic coupling after the switch") {
  const auto spec = reference_scheme();
  const double tc = spec.t_center();
  for (double u : {1e-9, 0.5, 10.0, 75.0, 300.0}) {
    CHECK(theta_dot_numerator(spec, tc + u) == 0.0);
    CHECK(nonadiabatic_param(spec, tc + u) == 0.0);
  }
  // detuned: theta_dot = -delta dW/dt / (delta^2 + 4 W^2)
  const auto det = reference_scheme(0.1);
  for (double u : {3.0, 40.0}) {
    const double w = std::real(omega3_envelope(det, tc + u));
    const double wd = std::real(omega3_envelope_derivative(det, tc + u));
    CHECK(theta_dot_numerator(det, tc + u) != 0.0);
    CHECK(nonadiabatic_param(det, tc + u) == doctest::Approx(-0.1 * wd / (0.01 + 4.0 * w * w)).epsilon(1e-12));
  }
}

TEST_CASE("one-sided limits at the chirp switch") {
  const auto spec = reference_scheme();
  const double tc = spec.t_center();
  const double w = 5.0 / std::sqrt(57.25);
  const double a = spec.schedule.alpha_s();
  const auto lim = theta_dot_limits(spec, tc);
  CHECK(lim.left == doctest::Approx(-a / (2.0 * w)).epsilon(1e-12));
  CHECK(lim.right == 0.0);
  const auto smooth = theta_dot_limits(spec, tc + 10.0);
  CHECK(smooth.left == smooth.right);
}

TEST_CASE("dressed energies") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> frac(-4.0, 4.0);
  for (double delta : {0.0, 0.1, -0.3}) {
    for (auto mode : {ScheduleMode::ccars, ScheduleMode::constant_opposite}) {
      const auto spec = reference_scheme(delta, mode);
      for (int i = 0; i < 200; ++i) {
        const double t = spec.t_center() + frac(rng) * spec.duration();
        const auto [l1, l2] = dressed_energies(spec, t);
        Eigen::SelfAdjointEigenSolver<Operator2> es(h_se(spec, t));
        REQUIRE(std::abs(es.eigenvalues()(0) - l1) <= 1e-12);
        REQUIRE(std::abs(es.eigenvalues()(1) - l2) <= 1e-12);
        REQUIRE(l2 - l1 >= 2.0 * std::real(omega3_envelope(spec, t)) * (1.0 - 1e-15));
        REQUIRE(l1 == -l2);
      }
    }
  }
  // the gap closes to 2 W exactly where the effective detuning vanishes
  const auto spec = reference_scheme();
  const auto [l1, l2] = dressed_energies(spec, spec.t_center());
  CHECK(l2 - l1 == doctest::Approx(2.0 * 5.0 / std::sqrt(57.25)).epsilon(1e-14));
}

TEST_CASE("Landau-Zener ratio") {
  const double alpha_strong = temporal_chirp(-750.0, 10.0);
  CHECK(*landau_zener_ratio(5.0, alpha_strong) == doctest::Approx(25.0 * 572500.0 / 750.0).epsilon(1e-12));
  CHECK(*landau_zener_ratio(5.0, alpha_strong) == doctest::Approx(1.9e4).epsilon(0.01));
  CHECK(*landau_zener_ratio(5.0, -alpha_strong) == *landau_zener_ratio(5.0, alpha_strong));
  CHECK(*landau_zener_ratio(0.0, 0.01) == 0.0);
  const double alpha_weak = temporal_chirp(-0.8 * 625.0, 25.0);
  CHECK(*landau_zener_ratio(0.18, alpha_weak) == doctest::Approx(41.5).epsilon(1e-3));
  CHECK_FALSE(landau_zener_ratio(5.0, 0.0).has_value());
}

TEST_CASE("dressed analysis error cases") {
  auto spec = reference_scheme();
  spec.stark_cancelled = false;
  CHECK_THROWS_AS(mixing_angle(spec, 0.0), InvalidParameter);
  CHECK_THROWS_AS(nonadiabatic_param(spec, 0.0), InvalidParameter);
  CHECK_THROWS_AS(dressed_energies(spec, 0.0), InvalidParameter);

  const auto good = reference_scheme();
  // far tail after the switch: coupling underflows and the probe is unchirped
  const double far = good.t_center() + 60.0 * good.duration();
  REQUIRE(omega3_envelope(good, far) == 0.0);
  CHECK_THROWS_AS(mixing_angle(good, far), UndefinedAngle);
  CHECK_THROWS_AS(nonadiabatic_param(good, far), UndefinedAngle);

  const auto none = canonical_spec({.omega3_peak = 0.0});
  CHECK_THROWS_AS(mixing_angle(none, none.t_center()), UndefinedAngle);
}

TEST_CASE("dressed series") {
  const auto spec = reference_scheme(0.1, ScheduleMode::constant_opposite);
  const double tc = spec.t_center();
  const double tau = spec.duration();
  const auto times = linspace(tc - 4.0 * tau, tc + 4.0 * tau, 2001);
  const auto series = dressed_series(spec, times);
  REQUIRE(series.size() == times.size());
  double worst_jump = 0.0;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    CHECK(s.t == times[i]);
    CHECK(s.e1 == -s.e2);
    CHECK(s.e1 == doctest::Approx(0.5 * effective_detuning(spec, s.t)).epsilon(1e-15));
    if (i > 0) worst_jump = std::max(worst_jump, std::abs(s.theta - series[i - 1].theta));
    worst_ratio = std::max(worst_ratio, std::abs(s.theta_dot) / (s.lambda2 - s.lambda1));
  }
  CHECK(worst_jump < 0.05);
  CHECK(max_nonadiabatic_ratio(spec, times) == worst_ratio);

  Trajectory traj = propagate(spec, ground_state(2), default_grid(spec, 400), {.sample_every = 10});
  attach_dressed(traj, spec);
  CHECK(traj.dressed.size() == traj.size());
}
