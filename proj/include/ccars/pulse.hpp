#pragma once

// Chirped Gaussian pulses, spectral/temporal chirp relations, piecewise chirp
// schedules and the closed-form Wigner-Ville distribution of a chirped pulse.
//
// Units: frequencies in omega_21, times in 1/omega_21, hbar = 1.

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace ccars {

enum class Role { pump, stokes, probe, antistokes };

std::string_view to_string(Role role);
Role role_from_string(std::string_view name);

struct PulseParams {
  Role role = Role::pump;
  double omega = 0.0;         ///< carrier frequency
  double rabi_peak_tl = 0.0;  ///< transform-limited peak Rabi amplitude
  double tau0 = 1.0;          ///< transform-limited duration
  double spectral_chirp = 0.0;
  double t_center = 0.0;
};

/// Throws InvalidParameter when tau0 <= 0, the amplitude is negative, or an
/// anti-Stokes pulse carries a nonzero input amplitude.
void validate(const PulseParams& p);

/// alpha = alpha' / (tau0^4 + alpha'^2).
double temporal_chirp(double alpha_spectral, double tau0);

/// tau = tau0 sqrt(1 + alpha'^2 / tau0^4).
double chirped_duration(double alpha_spectral, double tau0);
double chirped_duration(const PulseParams& p);

/// Peak of the chirp-reduced envelope, Omega_0 (1 + alpha'^2/tau0^4)^(-1/4).
double chirped_peak(const PulseParams& p);

/// Omega_0 (1 + alpha'^2/tau0^4)^(-1/4) exp(-(t - t_c)^2 / (2 tau^2)).
double envelope_at(const PulseParams& p, double t);

/// d/dt of envelope_at.
double envelope_derivative(const PulseParams& p, double t);

struct TransformLimit {
  double tau0;
  double alpha_spectral;
};

/// Inverse of (temporal_chirp, chirped_duration): recovers (tau0, alpha')
/// from a chirped duration tau and temporal chirp alpha, using
/// alpha' / tau0^2 = alpha tau^2.
TransformLimit transform_limit_for(double alpha_temporal, double tau);

enum class ScheduleMode { ccars, constant_opposite, constant, custom };

std::string_view to_string(ScheduleMode mode);
ScheduleMode schedule_mode_from_string(std::string_view name);

/// Per-role instantaneous temporal chirp alpha_q(t). The probe chirp is never
/// stored: it is always alpha_s(t) - alpha_p(t).
class ChirpSchedule {
 public:
  using ChirpFn = std::function<double(double)>;

  /// pump = -alpha_s for t <= t_c and +alpha_s after; stokes = alpha_s.
  static ChirpSchedule ccars(double alpha_s, double t_center, double alpha_s_spectral = 0.0);
  /// pump = -alpha_s for all t.
  static ChirpSchedule constant_opposite(double alpha_s, double t_center,
                                         double alpha_s_spectral = 0.0);
  static ChirpSchedule constant(double alpha_p, double alpha_s, double t_center,
                                double alpha_s_spectral = 0.0);
  static ChirpSchedule custom(ChirpFn pump, ChirpFn stokes, double t_center);

  ScheduleMode mode() const { return mode_; }
  double alpha_s() const { return alpha_s_; }
  double alpha_s_spectral() const { return alpha_s_spectral_; }
  double t_center() const { return t_center_; }

  double pump(double t) const;
  double stokes(double t) const;
  double probe(double t) const { return stokes(t) - pump(t); }

 private:
  ChirpSchedule() = default;

  ScheduleMode mode_ = ScheduleMode::constant;
  double alpha_s_ = 0.0;
  double alpha_p_ = 0.0;  // constant mode only
  double alpha_s_spectral_ = 0.0;
  double t_center_ = 0.0;
  ChirpFn pump_fn_;
  ChirpFn stokes_fn_;
};

/// Throws InvalidParameter for the anti-Stokes role.
double instantaneous_chirp(const ChirpSchedule& s, Role role, double t);

struct WignerSample {
  double t;
  double omega;
  double value;
};

/// Closed-form Wigner-Ville distribution of a chirped Gaussian pulse with
/// temporal chirp alpha, amplitude scale rabi_peak_tl and duration tau taken
/// from the pulse's spectral chirp.
double wigner_value(const PulseParams& p, double alpha_temporal, double t, double omega);

/// Uses the pulse's own constant temporal chirp.
double wigner_value(const PulseParams& p, double t, double omega);

/// Uses alpha_q(t) from the schedule for the pulse's role.
double wigner_value(const PulseParams& p, const ChirpSchedule& s, double t, double omega);

/// Row-major over times (outer) and omegas (inner).
std::vector<WignerSample> wigner_grid(const PulseParams& p, const ChirpSchedule& s,
                                      std::span<const double> times,
                                      std::span<const double> omegas);

}  // namespace ccars
