#include "ccars/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ccars {

namespace {

// clang-format off
constexpr ParamDefault kDefaults[] = {
  {"model",          "2",      ParamKind::choice, "2|4", "2 = super-effective two-level, 4 = exact four-level"},
  {"method",         "expm",   ParamKind::choice, "expm|rk4", "integrator"},
  {"steps",          "40000",  ParamKind::count,  "", "uniform time steps per propagation"},
  {"window",         "5",      ParamKind::number, "", "half-width of the time window in chirped durations"},
  {"schedule",       "ccars",  ParamKind::choice, "ccars|constant_opposite|constant", "chirp schedule"},
  {"omega3_peak",    "5",      ParamKind::number, "", "transform-limited peak effective Rabi frequency"},
  {"tau0",           "10",     ParamKind::number, "", "transform-limited pulse duration"},
  {"chirp",          "-7.5",   ParamKind::number, "", "dimensionless spectral chirp alpha'_s/tau0^2"},
  {"delta_s",        "1",      ParamKind::number, "", "one-photon detuning (Stokes side)"},
  {"delta_as",       "1",      ParamKind::number, "", "one-photon detuning (anti-Stokes side)"},
  {"delta",          "0",      ParamKind::number, "", "two-photon detuning"},
  {"t_center",       "auto",   ParamKind::number_or_auto, "", "pulse center; auto = 5 tau"},
  {"output_stride",  "10",     ParamKind::count,  "", "simulate: write every k-th time step"},
  {"rabi_min",       "0.5",    ParamKind::number, "", "scan-rabi-chirp: Omega_3(0) axis"},
  {"rabi_max",       "10",     ParamKind::number, "", ""},
  {"rabi_n",         "61",     ParamKind::count,  "", ""},
  {"chirp_min",      "-10",    ParamKind::number, "", "scans: alpha'_s/tau0^2 axis"},
  {"chirp_max",      "10",     ParamKind::number, "", ""},
  {"chirp_n",        "81",     ParamKind::count,  "", ""},
  {"delta_min",      "-0.4",   ParamKind::number, "", "scan-delta-chirp: two-photon detuning axis"},
  {"delta_max",      "0.4",    ParamKind::number, "", ""},
  {"delta_n",        "81",     ParamKind::count,  "", ""},
  {"role",           "stokes", ParamKind::choice, "pump|stokes|probe", "wigner: which input pulse"},
  {"omega_p",        "4",      ParamKind::number, "", "wigner: pump carrier"},
  {"omega_s",        "3",      ParamKind::number, "", "wigner: Stokes carrier"},
  {"omega_pr",       "4",      ParamKind::number, "", "wigner: probe carrier"},
  {"wigner_tau",     "3",      ParamKind::number, "", "wigner: chirped duration"},
  {"wigner_alpha_s", "-0.2",   ParamKind::number, "", "wigner: Stokes temporal chirp"},
  {"wigner_tc",      "7.5",    ParamKind::number, "", "wigner: central time"},
  {"wigner_t_min",   "0",      ParamKind::number, "", "wigner: time grid"},
  {"wigner_t_max",   "15",     ParamKind::number, "", ""},
  {"wigner_t_n",     "151",    ParamKind::count,  "", ""},
  {"wigner_w_min",   "0",      ParamKind::number, "", "wigner: frequency grid"},
  {"wigner_w_max",   "8",      ParamKind::number, "", ""},
  {"wigner_w_n",     "401",    ParamKind::count,  "", ""},
  {"dressed_n",      "2001",   ParamKind::count,  "", "dressed: number of time samples"},
};
// clang-format on

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const ParamDefault* find_default(std::string_view key) {
  for (const auto& d : kDefaults) {
    if (d.key == key) return &d;
  }
  return nullptr;
}

bool in_choices(std::string_view choices, std::string_view value) {
  std::size_t pos = 0;
  while (pos <= choices.size()) {
    const auto bar = choices.find('|', pos);
    const auto item = choices.substr(pos, bar == std::string_view::npos ? bar : bar - pos);
    if (item == value) return true;
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  return false;
}

std::string normalize(const ParamDefault& d, std::string_view raw, const std::string& where) {
  const std::string key(d.key);
  const auto bad = [&](const std::string& msg) { return ConfigError(where, key, msg); };
  switch (d.kind) {
    case ParamKind::choice:
      if (!in_choices(d.choices, raw)) {
        throw bad("invalid value '" + std::string(raw) + "' (expected " + std::string(d.choices) +
                  ")");
      }
      return std::string(raw);
    case ParamKind::count: {
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (ec != std::errc() || ptr != raw.data() + raw.size()) {
        throw bad("expected a non-negative integer, got '" + std::string(raw) + "'");
      }
      return std::to_string(v);
    }
    case ParamKind::number_or_auto:
      if (raw == "auto") return "auto";
      [[fallthrough]];
    case ParamKind::number: {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (ec != std::errc() || ptr != raw.data() + raw.size() || !std::isfinite(v)) {
        throw bad("expected a finite number, got '" + std::string(raw) + "'");
      }
      return format_double(v);
    }
  }
  return std::string(raw);
}

}  // namespace

std::span<const ParamDefault> default_table() { return kDefaults; }

ConfigError::ConfigError(const std::string& where, const std::string& field,
                         const std::string& message)
    : std::runtime_error(where + ": " + (field.empty() ? "" : field + ": ") + message),
      field_(field) {}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

RunConfig::RunConfig() {
  for (const auto& d : kDefaults) values_.emplace_back(std::string(d.key), std::string(d.value));
}

void RunConfig::set(std::string_view key, std::string_view value, const std::string& where) {
  key = trim(key);
  value = trim(value);
  if (key == "subcommand") {
    if (std::find(std::begin(kSubcommands), std::end(kSubcommands), value) ==
        std::end(kSubcommands)) {
      throw ConfigError(where, "subcommand", "unknown subcommand '" + std::string(value) + "'");
    }
    subcommand_ = std::string(value);
    return;
  }
  const ParamDefault* d = find_default(key);
  if (d == nullptr) throw ConfigError(where, std::string(key), "unknown key");
  const std::string normalized = normalize(*d, value, where);
  for (auto& [k, v] : values_) {
    if (k == key) v = normalized;
  }
}

void RunConfig::load_text(std::string_view text, const std::string& source) {
  bool in_params = false;
  bool params_done = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);

    // a CSV written by the CLI: everything after its params block is data
    if (params_done) break;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      if (body == "params:") {
        in_params = true;
        continue;
      }
      if (body == "end params") {
        in_params = false;
        params_done = true;
        continue;
      }
      if (!in_params) continue;
      line = body;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where, "", "expected 'key = value', got '" + std::string(line) + "'");
    }
    set(line.substr(0, eq), line.substr(eq + 1), where);
  }
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "", "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path.string());
}

const std::string& RunConfig::get(std::string_view key) const {
  for (const auto& [k, v] : values_) {
    if (k == key) return v;
  }
  throw ConfigError("config", std::string(key), "unknown key");
}

double RunConfig::number(std::string_view key) const {
  const std::string& s = get(key);
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::size_t RunConfig::count(std::string_view key) const {
  const std::string& s = get(key);
  std::size_t v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

void RunConfig::validate() const {
  const auto fail = [](std::string_view field, const std::string& msg) {
    throw ConfigError("config", std::string(field), msg);
  };
  const auto positive = [&](std::string_view key) {
    if (!(number(key) > 0.0)) fail(key, "must be positive");
  };
  const auto at_least = [&](std::string_view key, std::size_t n) {
    if (count(key) < n) fail(key, "must be at least " + std::to_string(n));
  };
  const auto ordered = [&](std::string_view lo, std::string_view hi) {
    if (!(number(lo) <= number(hi))) fail(lo, "must not exceed " + std::string(hi));
  };

  positive("tau0");
  positive("window");
  positive("delta_s");
  positive("delta_as");
  positive("wigner_tau");
  if (number("omega3_peak") < 0.0) fail("omega3_peak", "must be non-negative");
  if (number("rabi_min") < 0.0) fail("rabi_min", "must be non-negative");
  at_least("steps", 2);
  at_least("output_stride", 1);
  at_least("rabi_n", 1);
  at_least("chirp_n", 1);
  at_least("delta_n", 1);
  at_least("wigner_t_n", 1);
  at_least("wigner_w_n", 1);
  at_least("dressed_n", 2);
  ordered("rabi_min", "rabi_max");
  ordered("chirp_min", "chirp_max");
  ordered("delta_min", "delta_max");
  ordered("wigner_t_min", "wigner_t_max");
  ordered("wigner_w_min", "wigner_w_max");
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(values_.size() + 1);
  out.emplace_back("subcommand", subcommand_);
  out.insert(out.end(), values_.begin(), values_.end());
  return out;
}

SchemeParams RunConfig::scheme() const {
  SchemeParams p;
  p.omega3_peak = number("omega3_peak");
  p.tau0 = number("tau0");
  p.chirp = number("chirp");
  p.delta_s = number("delta_s");
  p.delta_as = number("delta_as");
  p.delta = number("delta");
  p.mode = schedule_mode_from_string(get("schedule"));
  p.model = get("model") == "4" ? Model::four_level : Model::two_level;
  if (get("t_center") != "auto") p.t_center = number("t_center");
  return p;
}

Method RunConfig::method() const { return method_from_string(get("method")); }

ScanSettings RunConfig::scan_settings() const {
  ScanSettings s;
  s.method = method();
  s.n_steps = count("steps");
  s.window = number("window");
  return s;
}

}  // namespace ccars
