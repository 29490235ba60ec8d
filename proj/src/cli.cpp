#include "ccars/cli.hpp"

#include "ccars/dressed.hpp"
#include "ccars/errors.hpp"
#include "ccars/hamiltonian.hpp"
#include "ccars/propagator.hpp"
#include "ccars/pulse.hpp"
#include "ccars/scan.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace ccars::cli {

namespace {

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The timestamp is always the first line so round-trip comparisons can skip it.
void write_header(std::ostream& out, const RunConfig& config,
                  const std::vector<std::string>& notes, std::string_view columns) {
  out << "# generated: " << timestamp() << '\n';
  out << "# params:\n";
  for (const auto& [k, v] : config.resolved()) out << "# " << k << " = " << v << '\n';
  out << "# end params\n";
  for (const auto& n : notes) out << "# " << n << '\n';
  out << columns << '\n';
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo
                  : (i + 1 == n ? hi
                                : lo + (hi - lo) * static_cast<double>(i) /
                                           static_cast<double>(n - 1));
  }
  return v;
}

unsigned thread_cap() {
  const char* env = std::getenv("CCARS_THREADS");
  if (env == nullptr) return 0;
  try {
    return static_cast<unsigned>(std::stoul(env));
  } catch (const std::exception&) {
    return 0;
  }
}

void warn_reduction(const HamiltonianSpec& spec, std::ostream& log) {
  if (spec.model != Model::two_level) return;
  if (auto w = reduction_warning(spec)) log << "warning: " << *w << '\n';
}

int simulate(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const HamiltonianSpec spec = canonical_spec(config.scheme());
  warn_reduction(spec, log);
  PropagateOptions options;
  options.method = config.method();
  options.sample_every = config.count("output_stride");
  const auto grid = default_grid(spec, config.count("steps"), config.number("window"));
  const Trajectory traj = propagate(spec, ground_state(spec.dim()), grid, options);

  std::string columns = "t,rho11,rho22";
  if (traj.dim == 4) columns += ",rho33,rho44";
  columns += ",coh_mag,coh_phase";
  write_header(out, config,
               {"max_trace_error = " + format_double(traj.invariants.max_trace_error),
                "max_hermiticity_error = " + format_double(traj.invariants.max_hermiticity_error),
                "max_purity_drift = " + format_double(traj.invariants.max_purity_drift)},
               columns);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << format_double(traj.times[k]);
    for (int i = 0; i < traj.dim; ++i) {
      out << ',' << format_double(traj.populations(static_cast<Eigen::Index>(k), i));
    }
    out << ',' << format_double(traj.coherence_mag[k]) << ','
        << format_double(traj.coherence_phase[k]) << '\n';
  }
  return ok;
}

void write_scan(const RunConfig& config, const ScanResult& r, std::ostream& out,
                std::ostream& log) {
  std::vector<std::string> notes;
  for (const auto& m : r.missing) {
    notes.push_back("missing: " + std::string(to_string(r.axis1.name)) + "=" +
                    format_double(r.axis1.value(m.i)) + " " +
                    std::string(to_string(r.axis2.name)) + "=" +
                    format_double(r.axis2.value(m.j)) + ": " + m.reason);
    log << "warning: " << notes.back() << '\n';
  }
  write_header(out, config, notes,
               std::string(to_string(r.axis1.name)) + "," + std::string(to_string(r.axis2.name)) +
                   ",coherence");
  for (std::size_t i = 0; i < r.axis1.n; ++i) {
    for (std::size_t j = 0; j < r.axis2.n; ++j) {
      const double v = r.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      out << format_double(r.axis1.value(i)) << ',' << format_double(r.axis2.value(j)) << ','
          << (std::isnan(v) ? std::string("nan") : format_double(v)) << '\n';
    }
  }
}

int scan(const RunConfig& config, std::ostream& out, std::ostream& log, bool rabi_axis) {
  ScanSettings settings = config.scan_settings();
  settings.threads = thread_cap();
  const SchemeParams base = config.scheme();
  const ScanAxis chirp{AxisName::chirp_dimensionless, config.number("chirp_min"),
                       config.number("chirp_max"), config.count("chirp_n")};
  ScanResult r;
  if (rabi_axis) {
    const ScanAxis rabi{AxisName::omega3_peak, config.number("rabi_min"),
                        config.number("rabi_max"), config.count("rabi_n")};
    r = scan_rabi_chirp(base, rabi, chirp, base.model, settings);
  } else {
    const ScanAxis delta{AxisName::delta, config.number("delta_min"), config.number("delta_max"),
                         config.count("delta_n")};
    r = scan_delta_chirp(base, delta, chirp, settings);
  }
  write_scan(config, r, out, log);
  return ok;
}

int wigner(const RunConfig& config, std::ostream& out) {
  const double alpha_s = config.number("wigner_alpha_s");
  const double tc = config.number("wigner_tc");
  const TransformLimit tl = transform_limit_for(alpha_s, config.number("wigner_tau"));
  const Role role = role_from_string(config.get("role"));

  ChirpSchedule schedule = ChirpSchedule::ccars(alpha_s, tc, tl.alpha_spectral);
  switch (schedule_mode_from_string(config.get("schedule"))) {
    case ScheduleMode::constant_opposite:
      schedule = ChirpSchedule::constant_opposite(alpha_s, tc, tl.alpha_spectral);
      break;
    case ScheduleMode::constant:
      schedule = ChirpSchedule::constant(alpha_s, alpha_s, tc, tl.alpha_spectral);
      break;
    default: break;
  }

  PulseParams p{.role = role,
                .omega = config.number(role == Role::pump    ? "omega_p"
                                       : role == Role::stokes ? "omega_s"
                                                              : "omega_pr"),
                .rabi_peak_tl = role == Role::pump ? 1.0 : 1.0 / std::numbers::sqrt2,
                .tau0 = tl.tau0,
                .spectral_chirp = tl.alpha_spectral,
                .t_center = tc};
  validate(p);

  const auto times = linspace(config.number("wigner_t_min"), config.number("wigner_t_max"),
                              config.count("wigner_t_n"));
  const auto omegas = linspace(config.number("wigner_w_min"), config.number("wigner_w_max"),
                               config.count("wigner_w_n"));
  write_header(out, config, {}, "t,omega,value");
  for (const auto& s : wigner_grid(p, schedule, times, omegas)) {
    out << format_double(s.t) << ',' << format_double(s.omega) << ',' << format_double(s.value)
        << '\n';
  }
  return ok;
}

int dressed(const RunConfig& config, std::ostream& out) {
  const HamiltonianSpec spec = canonical_spec(config.scheme());
  const auto grid = default_grid(spec, config.count("steps"), config.number("window"));
  const auto times = linspace(grid.t_start, grid.t_end, config.count("dressed_n"));
  const auto series = dressed_series(spec, times);

  const auto lz = landau_zener_ratio(std::abs(omega3_peak(spec)),
                                     temporal_chirp(spec.pulses.pump.spectral_chirp,
                                                    spec.pulses.pump.tau0));
  const auto limits = theta_dot_limits(spec, spec.t_center());
  write_header(out, config,
               {"landau_zener_ratio = " + (lz ? format_double(*lz) : std::string("inf")),
                "max_nonadiabatic_ratio = " + format_double(max_nonadiabatic_ratio(spec, times)),
                "theta_dot_at_tc_left = " + format_double(limits.left),
                "theta_dot_at_tc_right = " + format_double(limits.right)},
               "t,E1,E2,lambda1,lambda2,theta,theta_dot");
  for (const auto& s : series) {
    out << format_double(s.t) << ',' << format_double(s.e1) << ',' << format_double(s.e2) << ','
        << format_double(s.lambda1) << ',' << format_double(s.lambda2) << ','
        << format_double(s.theta) << ',' << format_double(s.theta_dot) << '\n';
  }
  return ok;
}

constexpr const char* kUsage =
    "usage: ccars <simulate|scan-rabi-chirp|scan-delta-chirp|wigner|dressed> [options]\n"
    "       ccars --show-defaults | --recipes\n";

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
  try {
    config.validate();
    const std::string& sub = config.subcommand();
    if (sub == "simulate") return simulate(config, out, log);
    if (sub == "scan-rabi-chirp") return scan(config, out, log, true);
    if (sub == "scan-delta-chirp") return scan(config, out, log, false);
    if (sub == "wigner") return wigner(config, out);
    if (sub == "dressed") return dressed(config, out);
    log << "error: missing or unknown subcommand '" << sub << "'\n" << kUsage;
    return usage_error;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const InvalidParameter& e) {
    log << "error: invalid parameter: " << e.what() << '\n';
    return usage_error;
  } catch (const SingularReduction& e) {
    log << "error: invalid parameter: " << e.what() << '\n';
    return usage_error;
  } catch (const IntegrationDiverged& e) {
    log << "error: integration diverged: " << e.what() << '\n';
    return numerical_error;
  } catch (const ScanAborted& e) {
    log << "error: " << e.what() << '\n';
    return numerical_error;
  } catch (const UndefinedAngle& e) {
    log << "error: " << e.what() << '\n';
    return numerical_error;
  }
}

std::string show_defaults() {
  std::ostringstream os;
  for (const auto& d : default_table()) {
    os << d.key << " = " << d.value;
    if (!d.help.empty()) os << "  # " << d.help;
    os << '\n';
  }
  return os.str();
}

std::string recipes() {
  const std::string strong =
      "--set omega3_peak=5.0 --set tau0=10 --set delta_s=1.0 --set delta_as=1.0 --set chirp=-7.5";
  const std::string map = "--set tau0=10 --set delta_s=1.0 --set delta_as=1.0";
  const std::string weak = "--set omega3_peak=0.18 --set tau0=25 --set chirp=-0.8";
  const std::string short_pulse = "--set omega3_peak=1.6 --set tau0=4.66";
  std::ostringstream os;
  os << "# Wigner distributions of the pump, Stokes and probe pulses\n";
  for (const char* role : {"pump", "stokes", "probe"}) {
    os << "ccars wigner --set role=" << role
       << " --set omega_p=4.0 --set omega_s=3.0 --set omega_pr=4.0 --set wigner_tau=3.0"
          " --set wigner_alpha_s=-0.2 --set wigner_tc=7.5 --out wigner_"
       << role << ".csv\n";
  }
  os << "# populations and coherence, resonant and detuned, both chirp schedules\n"
     << "ccars simulate " << strong << " --set delta=0 --out ccars_resonant.csv\n"
     << "ccars simulate " << strong << " --set delta=0.1 --out ccars_detuned.csv\n"
     << "ccars simulate " << strong << " --set schedule=constant_opposite --set delta=0 --out opposite_resonant.csv\n"
     << "ccars simulate " << strong << " --set schedule=constant_opposite --set delta=0.1 --out opposite_detuned.csv\n";
  os << "# coherence vs Omega_3(0) and chirp, two- and four-level models\n"
     << "ccars scan-rabi-chirp --model 2 " << map << " --set delta=0 --out rabi_chirp_2l_resonant.csv\n"
     << "ccars scan-rabi-chirp --model 2 " << map << " --set delta=0.1 --out rabi_chirp_2l_detuned.csv\n"
     << "ccars scan-rabi-chirp --model 4 " << map << " --set delta=0 --out rabi_chirp_4l_resonant.csv\n"
     << "ccars scan-rabi-chirp --model 4 " << map << " --set delta=0.1 --out rabi_chirp_4l_detuned.csv\n";
  os << "# bare and dressed energies with the non-adiabatic parameter\n"
     << "ccars dressed " << strong << " --set delta=0 --out dressed_ccars_resonant.csv\n"
     << "ccars dressed " << strong << " --set delta=0.1 --out dressed_ccars_detuned.csv\n"
     << "ccars dressed " << strong << " --set schedule=constant_opposite --set delta=0 --out dressed_opposite_resonant.csv\n"
     << "ccars dressed " << strong << " --set schedule=constant_opposite --set delta=0.1 --out dressed_opposite_detuned.csv\n";
  os << "# weak effective Rabi frequency\n"
     << "ccars dressed " << weak << " --set delta=0 --out weak_dressed_resonant.csv\n"
     << "ccars simulate " << weak << " --set delta=0 --out weak_resonant.csv\n"
     << "ccars dressed " << weak << " --set delta=0.1 --out weak_dressed_detuned.csv\n"
     << "ccars simulate " << weak << " --set delta=0.1 --out weak_detuned.csv\n";
  os << "# coherence vs two-photon detuning and chirp\n"
     << "ccars scan-delta-chirp " << short_pulse << " --out delta_chirp.csv\n";
  return os.str();
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chirped CARS control simulator", "ccars"};
  std::string subcommand;
  std::string config_path;
  std::string out_path;
  std::string model;
  std::string method;
  std::string steps;
  std::vector<std::string> sets;
  bool defaults_flag = false;
  bool recipes_flag = false;

  app.add_option("subcommand", subcommand,
                 "simulate | scan-rabi-chirp | scan-delta-chirp | wigner | dressed");
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--out", out_path, "output CSV path (default stdout)");
  app.add_option("--model", model, "2 or 4");
  app.add_option("--method", method, "expm or rk4");
  app.add_option("--steps", steps, "time steps per propagation");
  app.add_option("--set", sets, "override a parameter, key=value")->take_all();
  app.add_flag("--show-defaults", defaults_flag, "print the defaults table");
  app.add_flag("--recipes", recipes_flag, "print ready-to-run command lines for the standard data sets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << kUsage;
    return usage_error;
  }

  if (defaults_flag) {
    out << show_defaults();
    return ok;
  }
  if (recipes_flag) {
    out << recipes();
    return ok;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config.load_file(config_path);
    if (!subcommand.empty()) config.set("subcommand", subcommand, "command line");
    if (!model.empty()) config.set("model", model, "--model");
    if (!method.empty()) config.set("method", method, "--method");
    if (!steps.empty()) config.set("steps", steps, "--steps");
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("--set", "", "expected key=value, got '" + kv + "'");
      }
      config.set(kv.substr(0, eq), kv.substr(eq + 1), "--set");
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    if (e.field() == "subcommand") err << kUsage;
    return usage_error;
  }

  if (config.subcommand().empty()) {
    err << "error: no subcommand given\n" << kUsage;
    return usage_error;
  }

  if (out_path.empty()) return run(config, out, err);

  std::ostringstream buffer;
  const int code = run(config, buffer, err);
  if (code != ok) return code;
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << out_path << '\n';
    return io_error;
  }
  file << buffer.str();
  return file ? ok : io_error;
}

}  // namespace ccars::cli
