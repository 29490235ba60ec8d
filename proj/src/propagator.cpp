#include "ccars/propagator.hpp"

#include <string>

namespace ccars {

DensityMatrix ground_state(int dim) {
  if (dim != 2 && dim != 4) throw InvalidInput("density matrices are 2x2 or 4x4");
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return rho;
}

void validate_density_matrix(const DensityMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || (rho.rows() != 2 && rho.rows() != 4)) {
    throw InvalidInput("density matrices are 2x2 or 4x4");
  }
  if (!rho.allFinite()) throw InvalidInput("density matrix has non-finite entries");
  if (hermiticity_residual(rho) > tol) throw InvalidInput("density matrix is not Hermitian");
  if (std::abs(real_trace(rho) - 1.0) > tol) throw InvalidInput("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw InvalidInput("density matrix is not positive semidefinite");
  }
}

void validate(const TimeGrid& grid) {
  if (!(grid.t_end > grid.t_start) || !std::isfinite(grid.t_start) || !std::isfinite(grid.t_end)) {
    throw InvalidInput("time grid needs t_end > t_start");
  }
  if (grid.n_steps < 2) throw InvalidInput("time grid needs at least 2 steps");
}

TimeGrid default_grid(const HamiltonianSpec& spec, std::size_t n_steps, double window) {
  if (!(window > 0.0)) throw InvalidParameter("integration window must be positive");
  const double tau = spec.duration();
  const double tc = spec.t_center();
  return {tc - window * tau, tc + window * tau, n_steps};
}

std::string_view to_string(Method method) {
  return method == Method::expm_midpoint ? "expm" : "rk4";
}

Method method_from_string(std::string_view name) {
  if (name == "expm" || name == "expm_midpoint") return Method::expm_midpoint;
  if (name == "rk4") return Method::rk4;
  throw InvalidParameter("unknown integration method '" + std::string(name) + "'");
}

Trajectory propagate(const HamiltonianSpec& spec, const DensityMatrix& rho0,
                     const TimeGrid& grid, const PropagateOptions& options) {
  if (rho0.rows() != spec.dim()) {
    throw InvalidInput("initial state dimension does not match the model");
  }
  if (spec.model == Model::two_level) {
    return propagate_with<2>([&spec](double t) { return h_se(spec, t); }, rho0, grid, options);
  }
  return propagate_with<4>([&spec](double t) { return h_ex(spec, t); }, rho0, grid, options);
}

Trajectory propagate(const HamiltonianSpec& spec, const DensityMatrix& rho0,
                     const TimeGrid& grid, Method method) {
  PropagateOptions options;
  options.method = method;
  return propagate(spec, rho0, grid, options);
}

FinalState final_state(const Trajectory& traj) {
  if (traj.size() == 0) throw InvalidInput("empty trajectory");
  const auto last = static_cast<Eigen::Index>(traj.size() - 1);
  return {traj.populations.row(last).transpose(), traj.coherence_mag.back()};
}

}  // namespace ccars
