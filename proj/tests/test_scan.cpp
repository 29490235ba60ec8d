#include "ccars/errors.hpp"
#include "ccars/scan.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ccars;

namespace {

const SchemeParams kShortPulse{.omega3_peak = 1.6, .tau0 = 4.66};

}  // namespace

TEST_CASE("axis spacing") {
  const ScanAxis ax{AxisName::chirp_dimensionless, -10.0, 10.0, 81};
  CHECK(ax.value(0) == -10.0);
  CHECK(ax.value(40) == 0.0);
  CHECK(ax.value(80) == 10.0);
  CHECK(ax.value(1) == doctest::Approx(-9.75).epsilon(1e-15));
  const ScanAxis single{AxisName::delta, 0.3, 0.3, 1};
  CHECK(single.value(0) == 0.3);
  CHECK_THROWS_AS(validate(ScanAxis{AxisName::delta, 1.0, 0.0, 3}), InvalidParameter);
  CHECK_THROWS_AS(validate(ScanAxis{AxisName::delta, 0.0, 1.0, 0}), InvalidParameter);
  CHECK(to_string(AxisName::chirp_dimensionless) == "chirp");
}

TEST_CASE("single point scan equals a single run") {
  const SchemeParams base{.delta = 0.1};
  const auto r = scan_rabi_chirp(base, {AxisName::omega3_peak, 5.0, 5.0, 1},
                                 {AxisName::chirp_dimensionless, -7.5, -7.5, 1}, Model::two_level);
  REQUIRE(r.values.rows() == 1);
  REQUIRE(r.values.cols() == 1);
  const auto spec = canonical_spec(base);
  const auto traj = propagate(spec, ground_state(2), default_grid(spec));
  CHECK(r.values(0, 0) == final_state(traj).coherence_mag);
  CHECK(r.values(0, 0) <= 0.05);
  CHECK(r.missing.empty());
}

TEST_CASE("operating point of the Raman scheme") {
  const ScanAxis rabi{AxisName::omega3_peak, 5.0, 5.0, 1};
  const ScanAxis chirp{AxisName::chirp_dimensionless, -7.5, -7.5, 1};
  CHECK(scan_rabi_chirp({.delta = 0.0}, rabi, chirp, Model::two_level).values(0, 0) >= 0.49);
  CHECK(scan_rabi_chirp({.delta = 0.1}, rabi, chirp, Model::two_level).values(0, 0) <= 0.05);
  CHECK(scan_rabi_chirp({.delta = 0.0}, rabi, chirp, Model::four_level).values(0, 0) >= 0.49);
}

TEST_CASE("scans are deterministic and reproducible point by point") {
  const ScanAxis rabi{AxisName::omega3_peak, 0.5, 8.0, 5};
  const ScanAxis chirp{AxisName::chirp_dimensionless, -6.0, 6.0, 4};
  ScanSettings one{.n_steps = 8000, .threads = 1};
  ScanSettings many = one;
  many.threads = 3;
  const SchemeParams base{.delta = 0.05};
  const auto a = scan_rabi_chirp(base, rabi, chirp, Model::two_level, one);
  const auto b = scan_rabi_chirp(base, rabi, chirp, Model::two_level, many);
  CHECK(a.values == b.values);
  CHECK(a.model == Model::two_level);

  std::mt19937_64 rng(29);
  for (int k = 0; k < 10; ++k) {
    const auto i = std::uniform_int_distribution<std::size_t>(0, rabi.n - 1)(rng);
    const auto j = std::uniform_int_distribution<std::size_t>(0, chirp.n - 1)(rng);
    SchemeParams p = base;
    p.omega3_peak = rabi.value(i);
    p.chirp = chirp.value(j);
    CHECK(a.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == point_coherence(p, one));
  }
  CHECK(a.values.minCoeff() >= 0.0);
  CHECK(a.values.maxCoeff() <= 0.5 + 1e-6);
}

TEST_CASE("four-level scans derive the pump from the coupling axis") {
  const ScanAxis rabi{AxisName::omega3_peak, 2.0, 6.0, 2};
  const ScanAxis chirp{AxisName::chirp_dimensionless, -8.0, 8.0, 2};
  const auto r4 = scan_rabi_chirp({}, rabi, chirp, Model::four_level, {.n_steps = 20000});
  const auto r2 = scan_rabi_chirp({}, rabi, chirp, Model::two_level, {.n_steps = 20000});
  CHECK(r4.model == Model::four_level);
  CHECK((r4.values - r2.values).cwiseAbs().maxCoeff() <= 0.05);
}

TEST_CASE("detuning scan sign-flip symmetry") {
  const ScanAxis delta{AxisName::delta, -0.4, 0.4, 5};
  const ScanAxis chirp{AxisName::chirp_dimensionless, -10.0, 10.0, 5};
  const auto r = scan_delta_chirp(kShortPulse, delta, chirp);
  for (Eigen::Index i = 0; i < 5; ++i) {
    for (Eigen::Index j = 0; j < 5; ++j) {
      CHECK(std::abs(r.values(i, j) - r.values(4 - i, 4 - j)) <= 1e-3);
    }
  }
  // resonant row stays maximal away from zero chirp
  CHECK(r.values(2, 0) >= 0.45);
  CHECK(r.values(2, 1) >= 0.45);
  CHECK(r.values(2, 3) >= 0.45);
  CHECK(r.values(2, 4) >= 0.45);
}

TEST_CASE("unchirped column is not selective") {
  const ScanAxis delta{AxisName::delta, -0.3, 0.3, 2};
  const ScanAxis chirp{AxisName::chirp_dimensionless, -0.1, 0.1, 3};
  const auto r = scan_delta_chirp(kShortPulse, delta, chirp);
  CHECK(r.values.minCoeff() >= 0.2);
}

TEST_CASE("fixed parameters are recorded") {
  const auto r = scan_delta_chirp(kShortPulse, {AxisName::delta, 0.0, 0.0, 1},
                                  {AxisName::chirp_dimensionless, 1.0, 1.0, 1}, {.n_steps = 1000});
  bool found_tau0 = false;
  for (const auto& [k, v] : r.fixed_params) {
    if (k == "tau0") {
      found_tau0 = true;
      CHECK(v == "4.66");
    }
  }
  CHECK(found_tau0);
}

TEST_CASE("failing points become missing entries or abort the scan") {
  // with ten explicit steps the uncoupled point survives and the strongly
  // coupled one diverges
  const ScanAxis rabi{AxisName::omega3_peak, 0.0, 10.0, 2};
  const ScanAxis chirp{AxisName::chirp_dimensionless, -7.5, -7.5, 1};
  ScanSettings coarse{.method = Method::rk4, .n_steps = 10};

  try {
    scan_rabi_chirp({}, rabi, chirp, Model::two_level, coarse);
    FAIL("expected ScanAborted");
  } catch (const ScanAborted& e) {
    REQUIRE(e.failures().size() == 1);
    CHECK(e.failures()[0].i == 1);
    CHECK(std::string(e.what()).find("omega3_peak=10") != std::string::npos);
  }

  coarse.max_failure_fraction = 0.6;
  const auto r = scan_rabi_chirp({}, rabi, chirp, Model::two_level, coarse);
  REQUIRE(r.missing.size() == 1);
  CHECK(r.missing[0].i == 1);
  CHECK(r.missing[0].j == 0);
  CHECK(!r.missing[0].reason.empty());
  CHECK(std::isnan(r.values(1, 0)));
  CHECK(r.values(0, 0) == 0.0);
}
