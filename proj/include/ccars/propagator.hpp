#pragma once

// Fixed-step integration of the Liouville-von Neumann equation
// i d(rho)/dt = [H(t), rho] for 2x2 and 4x4 density matrices.

#include "ccars/dressed_sample.hpp"
#include "ccars/errors.hpp"
#include "ccars/hamiltonian.hpp"
#include "ccars/operators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ccars {

using DensityMatrix = Eigen::MatrixXcd;

/// |1><1| in a dim-dimensional space.
DensityMatrix ground_state(int dim);

/// Throws InvalidInput unless rho is square of dimension 2 or 4, Hermitian,
/// unit trace and positive semidefinite (all within tol).
void validate_density_matrix(const DensityMatrix& rho, double tol = 1e-9);

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  std::size_t n_steps = 2;

  double step() const { return (t_end - t_start) / static_cast<double>(n_steps); }
  double time(std::size_t k) const { return t_start + static_cast<double>(k) * step(); }
};

void validate(const TimeGrid& grid);

constexpr std::size_t kDefaultSteps = 40000;
constexpr double kDefaultWindow = 5.0;

/// [t_c - window tau, t_c + window tau] with tau the chirped duration.
TimeGrid default_grid(const HamiltonianSpec& spec, std::size_t n_steps = kDefaultSteps,
                      double window = kDefaultWindow);

enum class Method { expm_midpoint, rk4 };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

/// Largest deviations from the closed-system invariants seen during a run.
struct InvariantReport {
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double max_purity_drift = 0.0;
};

/// Tolerances beyond which a run is rejected as diverged.
struct InvariantLimits {
  double trace = 1e-9;
  double hermiticity = 1e-9;
  double purity = 1e-6;
};

struct Trajectory {
  int dim = 0;
  std::vector<double> times;
  Eigen::MatrixXd populations;  ///< one row per sample, one column per level
  std::vector<double> coherence_mag;
  std::vector<double> coherence_phase;
  DensityMatrix final_rho;
  InvariantReport invariants;
  std::vector<DressedSample> dressed;  ///< filled on demand by the dressed module

  std::size_t size() const { return times.size(); }
};

struct PropagateOptions {
  Method method = Method::expm_midpoint;
  /// Keep every k-th step; the first and last states are always kept.
  std::size_t sample_every = 1;
  InvariantLimits limits;
};

Trajectory propagate(const HamiltonianSpec& spec, const DensityMatrix& rho0,
                     const TimeGrid& grid, const PropagateOptions& options = {});

Trajectory propagate(const HamiltonianSpec& spec, const DensityMatrix& rho0,
                     const TimeGrid& grid, Method method);

struct FinalState {
  Eigen::VectorXd populations;
  double coherence_mag;
};

/// Throws InvalidInput on an empty trajectory.
FinalState final_state(const Trajectory& traj);

namespace detail {

template <int N>
void record_sample(Trajectory& traj, std::size_t row, double t, const Operator<double, N>& rho) {
  traj.times[row] = t;
  for (int i = 0; i < N; ++i) traj.populations(static_cast<Eigen::Index>(row), i) = std::real(rho(i, i));
  traj.coherence_mag[row] = std::abs(rho(0, 1));
  traj.coherence_phase[row] = std::arg(rho(0, 1));
}

template <int N>
void check_invariants(InvariantReport& report, const InvariantLimits& limits,
                      const Operator<double, N>& rho, double purity0, double t,
                      std::size_t step) {
  const double tr = std::abs(real_trace(rho) - 1.0);
  const double herm = hermiticity_residual(rho);
  const double pur = std::abs(purity(rho) - purity0);
  report.max_trace_error = std::max(report.max_trace_error, tr);
  report.max_hermiticity_error = std::max(report.max_hermiticity_error, herm);
  report.max_purity_drift = std::max(report.max_purity_drift, pur);
  if (!(tr <= limits.trace) || !(herm <= limits.hermiticity) || !(pur <= limits.purity)) {
    throw IntegrationDiverged("density-matrix invariants violated at t = " + std::to_string(t) +
                                  " (step " + std::to_string(step) +
                                  "); reduce the step size",
                              t, step);
  }
}

}  // namespace detail

/// Integrates with an arbitrary Hermitian Hamiltonian source h(t) returning an
/// N x N operator. Used directly by tests and by the spec-driven overloads.
template <int N, typename HamiltonianFn>
Trajectory propagate_with(HamiltonianFn&& hamiltonian, const DensityMatrix& rho0,
                          const TimeGrid& grid, const PropagateOptions& options = {}) {
  using Op = Operator<double, N>;
  validate(grid);
  validate_density_matrix(rho0);
  if (rho0.rows() != N) throw InvalidInput("initial state dimension does not match the model");
  if (options.sample_every == 0) throw InvalidInput("sample_every must be positive");

  const std::size_t n = grid.n_steps;
  const double h = grid.step();
  const std::size_t stride = options.sample_every;
  const std::size_t n_samples = n / stride + 1 + (n % stride != 0 ? 1 : 0);

  Trajectory traj;
  traj.dim = N;
  traj.times.resize(n_samples);
  traj.populations.resize(static_cast<Eigen::Index>(n_samples), N);
  traj.coherence_mag.resize(n_samples);
  traj.coherence_phase.resize(n_samples);

  Op rho = rho0;
  const double purity0 = purity(rho);
  std::size_t row = 0;
  detail::record_sample<N>(traj, row++, grid.t_start, rho);

  for (std::size_t k = 0; k < n; ++k) {
    const double t = grid.time(k);
    if (options.method == Method::expm_midpoint) {
      const Op u = unitary_step<double, N>(hamiltonian(t + 0.5 * h), h);
      rho = (u * rho * u.adjoint()).eval();
    } else {
      const std::complex<double> mi(0.0, -1.0);
      const Op h0 = hamiltonian(t);
      const Op hm = hamiltonian(t + 0.5 * h);
      const Op h1 = hamiltonian(t + h);
      const Op k1 = mi * commutator(h0, rho);
      const Op k2 = mi * commutator(hm, (rho + 0.5 * h * k1).eval());
      const Op k3 = mi * commutator(hm, (rho + 0.5 * h * k2).eval());
      const Op k4 = mi * commutator(h1, (rho + h * k3).eval());
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    detail::check_invariants<N>(traj.invariants, options.limits, rho, purity0, t + h, k + 1);
    if ((k + 1) % stride == 0 || k + 1 == n) {
      detail::record_sample<N>(traj, row++, grid.time(k + 1), rho);
    }
  }
  traj.final_rho = rho;
  return traj;
}

}  // namespace ccars
