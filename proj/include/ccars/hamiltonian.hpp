#pragma once

// Time-dependent Hamiltonians of the chirped CARS system in the
// field-interaction frame: the exact four-level model and its super-effective
// two-level reduction obtained by adiabatic elimination of |3> and |4>.
//
// Basis ordering: |1> ground, |2> vibrational, |3> upper (Stokes side),
// |4> upper (anti-Stokes side).

#include "ccars/operators.hpp"
#include "ccars/pulse.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace ccars {

struct SystemParams {
  double delta_s = 1.0;   ///< one-photon detuning, Stokes side
  double delta_as = 1.0;  ///< one-photon detuning, anti-Stokes side
  double delta = 0.0;     ///< two-photon detuning
};

struct EffectiveRabi {
  double omega1;               ///< AC Stark shift of |1>
  double omega2;               ///< AC Stark shift of |2>
  std::complex<double> omega3; ///< effective two-photon coupling
};

enum class Model { two_level, four_level };

std::string_view to_string(Model model);
int dimension(Model model);

struct PulseSet {
  PulseParams pump{.role = Role::pump};
  PulseParams stokes{.role = Role::stokes};
  PulseParams probe{.role = Role::probe};
  PulseParams antistokes{.role = Role::antistokes};
};

struct HamiltonianSpec {
  Model model = Model::two_level;
  PulseSet pulses;
  ChirpSchedule schedule = ChirpSchedule::ccars(0.0, 0.0);
  SystemParams system;
  /// Set by the builders: Omega_1(t) = Omega_2(t) holds identically.
  bool stark_cancelled = false;

  int dim() const { return dimension(model); }
  double t_center() const { return schedule.t_center(); }
  /// Longest chirped duration among the input pulses.
  double duration() const;
};

/// The canonical C-CARS parametrization: everything derives from the peak
/// effective Rabi frequency, tau0, the dimensionless spectral chirp
/// alpha'_s / tau0^2 and the detunings.
struct SchemeParams {
  double omega3_peak = 5.0;
  double tau0 = 10.0;
  double chirp = -7.5;  ///< alpha'_s / tau0^2
  double delta_s = 1.0;
  double delta_as = 1.0;
  double delta = 0.0;
  ScheduleMode mode = ScheduleMode::ccars;
  Model model = Model::two_level;
  /// Defaults to 5 tau so that the default integration window starts at 0.
  std::optional<double> t_center;
};

/// Omega_s0 = Omega_pr0 = Omega_p0 / sqrt(2), Omega_as0 = 0 with Omega_p0
/// chosen so the transform-limited peak coupling equals omega3_peak. All input
/// pulses share |alpha'_s| so their envelopes coincide in shape.
HamiltonianSpec canonical_spec(const SchemeParams& params);

/// Checks the amplitude and detuning conditions under which the Stark shifts
/// cancel for all t.
bool stark_cancellation_holds(const PulseSet& pulses, const SystemParams& system);

/// Non-empty when a peak Rabi amplitude is not small against the one-photon
/// detunings, i.e. the two-level reduction is questionable.
std::optional<std::string> reduction_warning(const HamiltonianSpec& spec);

EffectiveRabi effective_rabis(const HamiltonianSpec& spec, double t);

/// Omega_3(0) = Omega_p0^2 / (4 sqrt(2) Delta).
double peak_effective_rabi(double omega_p0, double delta);

/// Inverse of peak_effective_rabi.
double pump_amplitude_for(double omega3_target, double delta);

/// Transform-limited peak of Omega_3 for the spec's amplitudes.
std::complex<double> omega3_peak(const HamiltonianSpec& spec);

/// Chirp-reduced Omega_3(t) in closed form (Gaussian with the product of the
/// pump and Stokes reduction factors).
std::complex<double> omega3_envelope(const HamiltonianSpec& spec, double t);
std::complex<double> omega3_envelope_derivative(const HamiltonianSpec& spec, double t);

/// Super-effective two-level Hamiltonian.
Operator2 h_se(const HamiltonianSpec& spec, double t);

/// Four-level field-interaction Hamiltonian.
Operator4 h_ex(const HamiltonianSpec& spec, double t);

}  // namespace ccars
