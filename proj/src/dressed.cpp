#include "ccars/dressed.hpp"

#include "ccars/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ccars {

namespace {

void require_cancellation(const HamiltonianSpec& spec) {
  if (!spec.stark_cancelled) {
    throw InvalidParameter("dressed analysis requires cancelled AC Stark shifts");
  }
}

struct Terms {
  double x;      // -delta + alpha_pr u
  double w;      // Omega_3
  double w_dot;  // dOmega_3/dt
  double alpha_pr;
};

Terms terms(const HamiltonianSpec& spec, double t, double alpha_pr) {
  require_cancellation(spec);
  const double u = t - spec.t_center();
  return {-spec.system.delta + alpha_pr * u, std::real(omega3_envelope(spec, t)),
          std::real(omega3_envelope_derivative(spec, t)), alpha_pr};
}

double theta_dot_from(const Terms& k) {
  const double den = k.x * k.x + 4.0 * k.w * k.w;
  if (den == 0.0) throw UndefinedAngle("non-adiabatic parameter undefined: zero splitting");
  // adding +0 maps a signed zero to +0
  return (k.x * k.w_dot - k.alpha_pr * k.w) / den + 0.0;
}

}  // namespace

Eigen::Matrix2d RotationMatrix::matrix() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d t;
  t << c, -s, s, c;
  return t;
}

Eigen::Matrix2cd RotationMatrix::apply(const Eigen::Matrix2cd& rho) const {
  const Eigen::Matrix2cd t = matrix().cast<std::complex<double>>();
  return t * rho * t.adjoint();
}

double effective_detuning(const HamiltonianSpec& spec, double t) {
  return spec.system.delta - spec.schedule.probe(t) * (t - spec.t_center());
}

double mixing_angle(const HamiltonianSpec& spec, double t) {
  const Terms k = terms(spec, t, spec.schedule.probe(t));
  if (k.w == 0.0 && k.x == 0.0) {
    throw UndefinedAngle("mixing angle undefined: zero coupling at zero detuning");
  }
  return 0.5 * std::atan2(2.0 * k.w, k.x);
}

double theta_dot_numerator(const HamiltonianSpec& spec, double t) {
  const Terms k = terms(spec, t, spec.schedule.probe(t));
  return k.x * k.w_dot - k.alpha_pr * k.w;
}

double nonadiabatic_param(const HamiltonianSpec& spec, double t) {
  return theta_dot_from(terms(spec, t, spec.schedule.probe(t)));
}

OneSidedLimits theta_dot_limits(const HamiltonianSpec& spec, double t) {
  const double before = std::nextafter(t, -std::numeric_limits<double>::infinity());
  const double after = std::nextafter(t, std::numeric_limits<double>::infinity());
  return {theta_dot_from(terms(spec, t, spec.schedule.probe(before))),
          theta_dot_from(terms(spec, t, spec.schedule.probe(after)))};
}

std::pair<double, double> dressed_energies(const HamiltonianSpec& spec, double t) {
  const Terms k = terms(spec, t, spec.schedule.probe(t));
  const double half = 0.5 * std::hypot(k.x, 2.0 * k.w);
  return {-half, half};
}

std::optional<double> landau_zener_ratio(double omega3_peak, double alpha_p_temporal) {
  if (alpha_p_temporal == 0.0) return std::nullopt;
  return omega3_peak * omega3_peak / std::abs(alpha_p_temporal);
}

std::vector<DressedSample> dressed_series(const HamiltonianSpec& spec,
                                          std::span<const double> times) {
  std::vector<DressedSample> out;
  out.reserve(times.size());
  double previous = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    double theta = mixing_angle(spec, t);
    if (i > 0) {
      // T(theta + pi) = -T(theta): same dressed frame, so unwrap modulo pi
      theta += std::numbers::pi * std::round((previous - theta) / std::numbers::pi);
    }
    previous = theta;
    const auto [l1, l2] = dressed_energies(spec, t);
    const double d = effective_detuning(spec, t);
    out.push_back({t, theta, nonadiabatic_param(spec, t), l1, l2, 0.5 * d, -0.5 * d});
  }
  return out;
}

double max_nonadiabatic_ratio(const HamiltonianSpec& spec, std::span<const double> times) {
  double worst = 0.0;
  for (double t : times) {
    const auto [l1, l2] = dressed_energies(spec, t);
    const double gap = l2 - l1;
    if (gap <= 0.0) continue;
    worst = std::max(worst, std::abs(nonadiabatic_param(spec, t)) / gap);
  }
  return worst;
}

void attach_dressed(Trajectory& traj, const HamiltonianSpec& spec) {
  traj.dressed = dressed_series(spec, traj.times);
}

}  // namespace ccars
