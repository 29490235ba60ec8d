#pragma once

// Two-dimensional parameter sweeps of the end-of-pulse coherence |rho_12|.
// Grid points are independent and may be evaluated on any number of worker
// threads; results are written at disjoint indices, so the output does not
// depend on scheduling.

#include "ccars/hamiltonian.hpp"
#include "ccars/propagator.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ccars {

enum class AxisName { omega3_peak, chirp_dimensionless, delta };

std::string_view to_string(AxisName name);

struct ScanAxis {
  AxisName name = AxisName::omega3_peak;
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 1;

  /// Linear spacing; a single-point axis sits at min.
  double value(std::size_t i) const;
};

void validate(const ScanAxis& axis);

struct ScanSettings {
  Method method = Method::expm_midpoint;
  std::size_t n_steps = kDefaultSteps;
  double window = kDefaultWindow;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Fraction of failed points above which the scan is aborted.
  double max_failure_fraction = 0.01;
};

struct MissingPoint {
  std::size_t i;
  std::size_t j;
  std::string reason;
};

struct ScanResult {
  ScanAxis axis1;
  ScanAxis axis2;
  /// n1 x n2; missing points hold NaN and are listed in `missing`.
  Eigen::MatrixXd values;
  Model model = Model::two_level;
  std::vector<std::pair<std::string, std::string>> fixed_params;
  std::vector<MissingPoint> missing;
};

class ScanAborted : public std::runtime_error {
 public:
  ScanAborted(const std::string& what, std::vector<MissingPoint> failures)
      : std::runtime_error(what), failures_(std::move(failures)) {}
  const std::vector<MissingPoint>& failures() const { return failures_; }

 private:
  std::vector<MissingPoint> failures_;
};

/// Final |rho_12| of a single canonical run starting from |1><1|.
double point_coherence(const SchemeParams& params, const ScanSettings& settings);

/// values(i, j) at Omega_3(0) = rabi.value(i), alpha'_s/tau0^2 = chirp.value(j),
/// C-CARS schedule. For the four-level model the pump amplitude follows from
/// pump_amplitude_for.
ScanResult scan_rabi_chirp(const SchemeParams& base, const ScanAxis& rabi,
                           const ScanAxis& chirp, Model model,
                           const ScanSettings& settings = {});

/// values(i, j) at delta = delta_axis.value(i), alpha'_s/tau0^2 = chirp.value(j);
/// model taken from base.
ScanResult scan_delta_chirp(const SchemeParams& base, const ScanAxis& delta_axis,
                            const ScanAxis& chirp, const ScanSettings& settings = {});

}  // namespace ccars
