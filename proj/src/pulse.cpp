#include "ccars/pulse.hpp"

#include "ccars/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ccars {

namespace {

void require_positive_tau0(double tau0) {
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) {
    throw InvalidParameter("tau0 must be positive and finite, got " + std::to_string(tau0));
  }
}

// 1 + alpha'^2 / tau0^4
double stretch(double alpha_spectral, double tau0) {
  const double r = alpha_spectral / (tau0 * tau0);
  return 1.0 + r * r;
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::pump: return "pump";
    case Role::stokes: return "stokes";
    case Role::probe: return "probe";
    case Role::antistokes: return "antistokes";
  }
  return "?";
}

Role role_from_string(std::string_view name) {
  if (name == "pump") return Role::pump;
  if (name == "stokes") return Role::stokes;
  if (name == "probe") return Role::probe;
  if (name == "antistokes") return Role::antistokes;
  throw InvalidParameter("unknown pulse role '" + std::string(name) + "'");
}

void validate(const PulseParams& p) {
  require_positive_tau0(p.tau0);
  if (!(p.rabi_peak_tl >= 0.0)) {
    throw InvalidParameter("rabi_peak_tl must be non-negative");
  }
  if (p.role == Role::antistokes && p.rabi_peak_tl != 0.0) {
    throw InvalidParameter("the anti-Stokes field is generated, its input amplitude must be 0");
  }
  if (!std::isfinite(p.spectral_chirp) || !std::isfinite(p.t_center) ||
      !std::isfinite(p.omega)) {
    throw InvalidParameter("pulse parameters must be finite");
  }
}

double temporal_chirp(double alpha_spectral, double tau0) {
  require_positive_tau0(tau0);
  const double t2 = tau0 * tau0;
  return alpha_spectral / (t2 * t2 + alpha_spectral * alpha_spectral);
}

double chirped_duration(double alpha_spectral, double tau0) {
  require_positive_tau0(tau0);
  return tau0 * std::sqrt(stretch(alpha_spectral, tau0));
}

double chirped_duration(const PulseParams& p) {
  return chirped_duration(p.spectral_chirp, p.tau0);
}

double chirped_peak(const PulseParams& p) {
  require_positive_tau0(p.tau0);
  return p.rabi_peak_tl / std::sqrt(std::sqrt(stretch(p.spectral_chirp, p.tau0)));
}

double envelope_at(const PulseParams& p, double t) {
  const double tau = chirped_duration(p);
  const double u = t - p.t_center;
  return chirped_peak(p) * std::exp(-u * u / (2.0 * tau * tau));
}

double envelope_derivative(const PulseParams& p, double t) {
  const double tau = chirped_duration(p);
  return -(t - p.t_center) / (tau * tau) * envelope_at(p, t);
}

TransformLimit transform_limit_for(double alpha_temporal, double tau) {
  if (!(tau > 0.0)) throw InvalidParameter("chirped duration must be positive");
  const double r = alpha_temporal * tau * tau;  // alpha' / tau0^2
  const double tau0 = tau / std::sqrt(1.0 + r * r);
  return {tau0, r * tau0 * tau0};
}

std::string_view to_string(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::ccars: return "ccars";
    case ScheduleMode::constant_opposite: return "constant_opposite";
    case ScheduleMode::constant: return "constant";
    case ScheduleMode::custom: return "custom";
  }
  return "?";
}

ScheduleMode schedule_mode_from_string(std::string_view name) {
  if (name == "ccars") return ScheduleMode::ccars;
  if (name == "constant_opposite") return ScheduleMode::constant_opposite;
  if (name == "constant") return ScheduleMode::constant;
  if (name == "custom") return ScheduleMode::custom;
  throw InvalidParameter("unknown chirp schedule '" + std::string(name) + "'");
}

ChirpSchedule ChirpSchedule::ccars(double alpha_s, double t_center, double alpha_s_spectral) {
  ChirpSchedule s;
  s.mode_ = ScheduleMode::ccars;
  s.alpha_s_ = alpha_s;
  s.alpha_s_spectral_ = alpha_s_spectral;
  s.t_center_ = t_center;
  return s;
}

ChirpSchedule ChirpSchedule::constant_opposite(double alpha_s, double t_center,
                                               double alpha_s_spectral) {
  ChirpSchedule s = ccars(alpha_s, t_center, alpha_s_spectral);
  s.mode_ = ScheduleMode::constant_opposite;
  return s;
}

ChirpSchedule ChirpSchedule::constant(double alpha_p, double alpha_s, double t_center,
                                      double alpha_s_spectral) {
  ChirpSchedule s = ccars(alpha_s, t_center, alpha_s_spectral);
  s.mode_ = ScheduleMode::constant;
  s.alpha_p_ = alpha_p;
  return s;
}

ChirpSchedule ChirpSchedule::custom(ChirpFn pump, ChirpFn stokes, double t_center) {
  if (!pump || !stokes) throw InvalidParameter("custom schedule needs pump and stokes chirps");
  ChirpSchedule s;
  s.mode_ = ScheduleMode::custom;
  s.t_center_ = t_center;
  s.pump_fn_ = std::move(pump);
  s.stokes_fn_ = std::move(stokes);
  return s;
}

double ChirpSchedule::pump(double t) const {
  switch (mode_) {
    case ScheduleMode::ccars:
      // t == t_c belongs to the first half
      return t <= t_center_ ? -alpha_s_ : alpha_s_;
    case ScheduleMode::constant_opposite: return -alpha_s_;
    case ScheduleMode::constant: return alpha_p_;
    case ScheduleMode::custom: return pump_fn_(t);
  }
  return 0.0;
}

double ChirpSchedule::stokes(double t) const {
  return mode_ == ScheduleMode::custom ? stokes_fn_(t) : alpha_s_;
}

double instantaneous_chirp(const ChirpSchedule& s, Role role, double t) {
  switch (role) {
    case Role::pump: return s.pump(t);
    case Role::stokes: return s.stokes(t);
    case Role::probe: return s.probe(t);
    case Role::antistokes: break;
  }
  throw InvalidParameter("no chirp is defined for the anti-Stokes field");
}

double wigner_value(const PulseParams& p, double alpha_temporal, double t, double omega) {
  const double tau = chirped_duration(p);
  const double u = t - p.t_center;
  const double sweep = alpha_temporal * u;
  const double pos = omega - p.omega - sweep;
  const double neg = omega + p.omega + sweep;
  const double tau2 = tau * tau;
  return 0.5 * tau * std::sqrt(std::numbers::pi) * p.rabi_peak_tl * std::exp(-u * u / tau2) *
         (std::exp(-tau2 * pos * pos) + std::exp(-tau2 * neg * neg));
}

double wigner_value(const PulseParams& p, double t, double omega) {
  return wigner_value(p, temporal_chirp(p.spectral_chirp, p.tau0), t, omega);
}

double wigner_value(const PulseParams& p, const ChirpSchedule& s, double t, double omega) {
  return wigner_value(p, instantaneous_chirp(s, p.role, t), t, omega);
}

std::vector<WignerSample> wigner_grid(const PulseParams& p, const ChirpSchedule& s,
                                      std::span<const double> times,
                                      std::span<const double> omegas) {
  std::vector<WignerSample> out;
  out.reserve(times.size() * omegas.size());
  for (double t : times) {
    const double alpha = instantaneous_chirp(s, p.role, t);
    for (double w : omegas) out.push_back({t, w, wigner_value(p, alpha, t, w)});
  }
  return out;
}

}  // namespace ccars
