#pragma once

// Dressed-state analysis of the super-effective two-level system under Stark
// cancellation. With x(t) = -delta + alpha_pr(t) (t - t_c) and W = Omega_3(t),
//
//   H_se = 1/2 [[-x, 2W], [2W, x]],   theta = 1/2 atan2(2W, x),
//
// and the rotation T(theta) = [[cos, -sin], [sin, cos]] takes H_se to
// diag(-s/2, +s/2) with s = sqrt(x^2 + 4W^2).

#include "ccars/dressed_sample.hpp"
#include "ccars/hamiltonian.hpp"
#include "ccars/propagator.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ccars {

struct RotationMatrix {
  double theta = 0.0;

  Eigen::Matrix2d matrix() const;
  /// T rho T^dagger.
  Eigen::Matrix2cd apply(const Eigen::Matrix2cd& rho) const;
};

/// delta - alpha_pr(t) (t - t_c): the bare splitting E1 - E2 once the Stark
/// shifts cancel.
double effective_detuning(const HamiltonianSpec& spec, double t);

/// Principal value in [0, pi/2] for real positive Omega_3. Throws
/// InvalidParameter without Stark cancellation and UndefinedAngle when both
/// Omega_3 and the effective detuning vanish.
double mixing_angle(const HamiltonianSpec& spec, double t);

/// Numerator x dW/dt - alpha_pr W of the non-adiabatic parameter.
double theta_dot_numerator(const HamiltonianSpec& spec, double t);

/// Exact time derivative of mixing_angle. At t = t_c the schedule's
/// first-half chirp is used; see theta_dot_limits for both sides.
double nonadiabatic_param(const HamiltonianSpec& spec, double t);

struct OneSidedLimits {
  double left;
  double right;
};

/// Left and right limits of theta_dot, distinct where the schedule switches.
OneSidedLimits theta_dot_limits(const HamiltonianSpec& spec, double t);

/// (lambda1, lambda2) = (-s/2, +s/2).
std::pair<double, double> dressed_energies(const HamiltonianSpec& spec, double t);

/// Omega_3(0)^2 / |alpha_p|; nullopt signals the adiabatic limit alpha_p = 0.
std::optional<double> landau_zener_ratio(double omega3_peak, double alpha_p_temporal);

/// Samples with theta unwrapped to be continuous along the given times.
std::vector<DressedSample> dressed_series(const HamiltonianSpec& spec,
                                          std::span<const double> times);

/// max over the samples of |theta_dot| / (lambda2 - lambda1).
double max_nonadiabatic_ratio(const HamiltonianSpec& spec, std::span<const double> times);

/// Fills traj.dressed at the trajectory's sample times.
void attach_dressed(Trajectory& traj, const HamiltonianSpec& spec);

}  // namespace ccars
