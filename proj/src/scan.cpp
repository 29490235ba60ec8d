#include "ccars/scan.hpp"

#include "ccars/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

namespace ccars {

namespace {

std::string format(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::pair<std::string, std::string>> record(const SchemeParams& p,
                                                        const ScanSettings& s) {
  std::vector<std::pair<std::string, std::string>> r = {
      {"model", std::string(to_string(p.model))},
      {"schedule", std::string(to_string(p.mode))},
      {"omega3_peak", format(p.omega3_peak)},
      {"tau0", format(p.tau0)},
      {"chirp", format(p.chirp)},
      {"delta_s", format(p.delta_s)},
      {"delta_as", format(p.delta_as)},
      {"delta", format(p.delta)},
      {"method", std::string(to_string(s.method))},
      {"steps", std::to_string(s.n_steps)},
      {"window", format(s.window)},
  };
  return r;
}

using PointFn = std::function<SchemeParams(double, double)>;

ScanResult run_grid(const SchemeParams& base, const ScanAxis& ax1, const ScanAxis& ax2,
                    const ScanSettings& settings, const PointFn& point) {
  validate(ax1);
  validate(ax2);
  ScanResult result;
  result.axis1 = ax1;
  result.axis2 = ax2;
  result.model = base.model;
  result.fixed_params = record(base, settings);
  result.values = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(ax1.n),
                                            static_cast<Eigen::Index>(ax2.n),
                                            std::numeric_limits<double>::quiet_NaN());

  const std::size_t total = ax1.n * ax2.n;
  unsigned workers = settings.threads != 0 ? settings.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::max<std::size_t>(total, 1)));

  std::atomic<std::size_t> next{0};
  std::mutex failures_mutex;
  std::vector<MissingPoint> failures;

  auto work = [&] {
    for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const std::size_t i = idx / ax2.n;
      const std::size_t j = idx % ax2.n;
      try {
        const double v = point_coherence(point(ax1.value(i), ax2.value(j)), settings);
        result.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      } catch (const std::exception& e) {
        std::lock_guard lock(failures_mutex);
        failures.push_back({i, j, e.what()});
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::sort(failures.begin(), failures.end(), [](const MissingPoint& a, const MissingPoint& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  if (static_cast<double>(failures.size()) >
      settings.max_failure_fraction * static_cast<double>(total)) {
    const auto& f = failures.front();
    throw ScanAborted("scan aborted: " + std::to_string(failures.size()) + " of " +
                          std::to_string(total) + " points failed; first at (" +
                          to_string(ax1.name).data() + "=" + format(ax1.value(f.i)) + ", " +
                          to_string(ax2.name).data() + "=" + format(ax2.value(f.j)) +
                          "): " + f.reason,
                      std::move(failures));
  }
  result.missing = std::move(failures);
  return result;
}

}  // namespace

std::string_view to_string(AxisName name) {
  switch (name) {
    case AxisName::omega3_peak: return "omega3_peak";
    case AxisName::chirp_dimensionless: return "chirp";
    case AxisName::delta: return "delta";
  }
  return "?";
}

double ScanAxis::value(std::size_t i) const {
  if (n <= 1) return min;
  if (i + 1 == n) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void validate(const ScanAxis& axis) {
  if (axis.n < 1) throw InvalidParameter("scan axis needs at least one point");
  if (!(axis.min <= axis.max)) throw InvalidParameter("scan axis needs min <= max");
}

double point_coherence(const SchemeParams& params, const ScanSettings& settings) {
  const HamiltonianSpec spec = canonical_spec(params);
  PropagateOptions options;
  options.method = settings.method;
  options.sample_every = settings.n_steps;
  const auto traj = propagate(spec, ground_state(spec.dim()),
                              default_grid(spec, settings.n_steps, settings.window), options);
  return final_state(traj).coherence_mag;
}

ScanResult scan_rabi_chirp(const SchemeParams& base, const ScanAxis& rabi,
                           const ScanAxis& chirp, Model model, const ScanSettings& settings) {
  SchemeParams fixed = base;
  fixed.model = model;
  fixed.mode = ScheduleMode::ccars;
  return run_grid(fixed, rabi, chirp, settings, [fixed](double w3, double c) {
    SchemeParams p = fixed;
    p.omega3_peak = w3;
    p.chirp = c;
    return p;
  });
}

ScanResult scan_delta_chirp(const SchemeParams& base, const ScanAxis& delta_axis,
                            const ScanAxis& chirp, const ScanSettings& settings) {
  SchemeParams fixed = base;
  fixed.mode = ScheduleMode::ccars;
  return run_grid(fixed, delta_axis, chirp, settings, [fixed](double d, double c) {
    SchemeParams p = fixed;
    p.delta = d;
    p.chirp = c;
    return p;
  });
}

}  // namespace ccars
