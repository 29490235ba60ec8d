#include "ccars/hamiltonian.hpp"

#include "ccars/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ccars {

namespace {

constexpr double kReductionRatio = 1.0;

void require_nonzero_detunings(const SystemParams& sys) {
  if (sys.delta_s == 0.0 || sys.delta_as == 0.0) {
    throw SingularReduction("adiabatic elimination requires nonzero one-photon detunings");
  }
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Reduction factor (1 + alpha'^2 / tau0^4)^(-1/4) of a pulse's peak.
double reduction(const PulseParams& p) {
  const double r = p.spectral_chirp / (p.tau0 * p.tau0);
  return 1.0 / std::sqrt(std::sqrt(1.0 + r * r));
}

// Exponent rate k such that Omega_3(t) ~ exp(-k (t - t_c)^2 / 2).
double omega3_rate(const HamiltonianSpec& spec) {
  const double tp = chirped_duration(spec.pulses.pump);
  const double ts = chirped_duration(spec.pulses.stokes);
  return 1.0 / (tp * tp) + 1.0 / (ts * ts);
}

}  // namespace

std::string_view to_string(Model model) {
  return model == Model::two_level ? "two_level" : "four_level";
}

int dimension(Model model) { return model == Model::two_level ? 2 : 4; }

double HamiltonianSpec::duration() const {
  return std::max({chirped_duration(pulses.pump), chirped_duration(pulses.stokes),
                   chirped_duration(pulses.probe)});
}

bool stark_cancellation_holds(const PulseSet& pulses, const SystemParams& system) {
  const auto& p = pulses.pump;
  const auto& s = pulses.stokes;
  const auto& pr = pulses.probe;
  const auto same_shape = [&](const PulseParams& q) {
    return close(q.tau0, p.tau0) && close(std::abs(q.spectral_chirp), std::abs(p.spectral_chirp)) &&
           close(q.t_center, p.t_center);
  };
  return close(system.delta_s, system.delta_as) && pulses.antistokes.rabi_peak_tl == 0.0 &&
         same_shape(s) && same_shape(pr) &&
         close(s.rabi_peak_tl * s.rabi_peak_tl + pr.rabi_peak_tl * pr.rabi_peak_tl,
               p.rabi_peak_tl * p.rabi_peak_tl);
}

HamiltonianSpec canonical_spec(const SchemeParams& params) {
  if (!(params.tau0 > 0.0)) throw InvalidParameter("tau0 must be positive");
  if (!(params.omega3_peak >= 0.0)) throw InvalidParameter("omega3_peak must be non-negative");
  if (!std::isfinite(params.chirp) || !std::isfinite(params.delta)) {
    throw InvalidParameter("chirp and delta must be finite");
  }
  if (params.delta_s <= 0.0 || params.delta_as <= 0.0) {
    throw SingularReduction("canonical scheme requires positive one-photon detunings");
  }

  const double alpha_s_spectral = params.chirp * params.tau0 * params.tau0;
  const double alpha_s = temporal_chirp(alpha_s_spectral, params.tau0);
  const double tau = chirped_duration(alpha_s_spectral, params.tau0);
  const double tc = params.t_center.value_or(5.0 * tau);
  const double omega_p0 = pump_amplitude_for(params.omega3_peak, params.delta_s);

  HamiltonianSpec spec;
  spec.model = params.model;
  spec.system = {params.delta_s, params.delta_as, params.delta};

  const auto make = [&](Role role, double amp, double spectral) {
    return PulseParams{.role = role,
                       .omega = 0.0,
                       .rabi_peak_tl = amp,
                       .tau0 = params.tau0,
                       .spectral_chirp = spectral,
                       .t_center = tc};
  };
  spec.pulses.pump = make(Role::pump, omega_p0, -alpha_s_spectral);
  spec.pulses.stokes = make(Role::stokes, omega_p0 / std::numbers::sqrt2, alpha_s_spectral);
  spec.pulses.probe = make(Role::probe, omega_p0 / std::numbers::sqrt2, alpha_s_spectral);
  spec.pulses.antistokes = make(Role::antistokes, 0.0, 0.0);

  switch (params.mode) {
    case ScheduleMode::ccars:
      spec.schedule = ChirpSchedule::ccars(alpha_s, tc, alpha_s_spectral);
      break;
    case ScheduleMode::constant_opposite:
      spec.schedule = ChirpSchedule::constant_opposite(alpha_s, tc, alpha_s_spectral);
      break;
    case ScheduleMode::constant:
      // same-sign chirp throughout: probe chirp vanishes
      spec.schedule = ChirpSchedule::constant(alpha_s, alpha_s, tc, alpha_s_spectral);
      spec.pulses.pump.spectral_chirp = alpha_s_spectral;
      break;
    case ScheduleMode::custom:
      throw InvalidParameter("custom schedules cannot be built from scheme parameters");
  }
  spec.stark_cancelled = stark_cancellation_holds(spec.pulses, spec.system);
  return spec;
}

std::optional<std::string> reduction_warning(const HamiltonianSpec& spec) {
  const double detuning = std::min(std::abs(spec.system.delta_s), std::abs(spec.system.delta_as));
  const double peak = std::max({chirped_peak(spec.pulses.pump), chirped_peak(spec.pulses.stokes),
                                chirped_peak(spec.pulses.probe)});
  if (peak <= kReductionRatio * detuning) return std::nullopt;
  std::ostringstream os;
  os << "peak Rabi amplitude " << peak << " is not small against the one-photon detuning "
     << detuning << "; the two-level reduction may be inaccurate";
  return os.str();
}

EffectiveRabi effective_rabis(const HamiltonianSpec& spec, double t) {
  require_nonzero_detunings(spec.system);
  const double p = envelope_at(spec.pulses.pump, t);
  const double s = envelope_at(spec.pulses.stokes, t);
  const double pr = envelope_at(spec.pulses.probe, t);
  const double as = envelope_at(spec.pulses.antistokes, t);
  const double ds = 4.0 * spec.system.delta_s;
  const double das = 4.0 * spec.system.delta_as;
  return {p * p / ds + as * as / das, s * s / ds + pr * pr / das, p * s / ds + pr * as / das};
}

double peak_effective_rabi(double omega_p0, double delta) {
  if (delta == 0.0) throw SingularReduction("zero one-photon detuning");
  return omega_p0 * omega_p0 / (4.0 * std::numbers::sqrt2 * delta);
}

double pump_amplitude_for(double omega3_target, double delta) {
  if (!(omega3_target >= 0.0)) throw InvalidParameter("target Omega_3(0) must be non-negative");
  if (!(delta > 0.0)) throw InvalidParameter("one-photon detuning must be positive");
  return std::sqrt(4.0 * std::numbers::sqrt2 * delta * omega3_target);
}

std::complex<double> omega3_peak(const HamiltonianSpec& spec) {
  require_nonzero_detunings(spec.system);
  const auto& pl = spec.pulses;
  return pl.pump.rabi_peak_tl * pl.stokes.rabi_peak_tl / (4.0 * spec.system.delta_s) +
         pl.probe.rabi_peak_tl * pl.antistokes.rabi_peak_tl / (4.0 * spec.system.delta_as);
}

std::complex<double> omega3_envelope(const HamiltonianSpec& spec, double t) {
  const double u = t - spec.t_center();
  const double shape = reduction(spec.pulses.pump) * reduction(spec.pulses.stokes) *
                       std::exp(-0.5 * omega3_rate(spec) * u * u);
  return omega3_peak(spec) * shape;
}

std::complex<double> omega3_envelope_derivative(const HamiltonianSpec& spec, double t) {
  return -omega3_rate(spec) * (t - spec.t_center()) * omega3_envelope(spec, t);
}

Operator2 h_se(const HamiltonianSpec& spec, double t) {
  const auto rabi = effective_rabis(spec, t);
  const auto& sched = spec.schedule;
  const double u = t - spec.t_center();
  const double d = spec.system.delta - (sched.stokes(t) - sched.pump(t)) * u + rabi.omega1 -
                   rabi.omega2;
  const std::complex<double> w3 = omega3_envelope(spec, t);
  Operator2 h;
  h << 0.5 * d, w3, std::conj(w3), -0.5 * d;
  return h;
}

Operator4 h_ex(const HamiltonianSpec& spec, double t) {
  const auto& sched = spec.schedule;
  const auto& sys = spec.system;
  const double u = t - spec.t_center();
  const double ap = sched.pump(t);
  const double p = envelope_at(spec.pulses.pump, t);
  const double s = envelope_at(spec.pulses.stokes, t);
  const double pr = envelope_at(spec.pulses.probe, t);
  const double as = envelope_at(spec.pulses.antistokes, t);

  Operator4 h = Operator4::Zero();
  h(0, 0) = ap * u;
  h(1, 1) = sched.stokes(t) * u - sys.delta;
  h(2, 2) = -sys.delta_s;
  h(3, 3) = ap * u - sys.delta_as;
  h(0, 2) = h(2, 0) = 0.5 * p;
  h(0, 3) = h(3, 0) = 0.5 * as;
  h(1, 2) = h(2, 1) = 0.5 * s;
  h(1, 3) = h(3, 1) = 0.5 * pr;
  return h;
}

}  // namespace ccars
