#pragma once

// Flat `key = value` run configuration. Every key and its default lives in a
// single table; values are normalized on assignment so that a resolved config
// prints identically however it was spelled on input.

#include "ccars/hamiltonian.hpp"
#include "ccars/propagator.hpp"
#include "ccars/scan.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ccars {

enum class ParamKind { number, count, choice, number_or_auto };

struct ParamDefault {
  std::string_view key;
  std::string_view value;
  ParamKind kind;
  std::string_view choices;  ///< '|'-separated, choice kind only
  std::string_view help;
};

std::span<const ParamDefault> default_table();

inline constexpr std::string_view kSubcommands[] = {"simulate", "scan-rabi-chirp",
                                                    "scan-delta-chirp", "wigner", "dressed"};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Shortest round-trip decimal representation.
std::string format_double(double v);

class RunConfig {
 public:
  RunConfig();

  /// Assigns one key. `where` is used in diagnostics (e.g. "run.cfg:12").
  void set(std::string_view key, std::string_view value, const std::string& where = "--set");

  /// Parses `key = value` lines; `#` starts a comment line except inside a
  /// `# params:` ... `# end params` block, whose `# key = value` lines are
  /// read as entries. This lets a CSV written by the CLI be re-fed as config.
  void load_text(std::string_view text, const std::string& source);
  void load_file(const std::filesystem::path& path);

  const std::string& subcommand() const { return subcommand_; }
  const std::string& get(std::string_view key) const;
  double number(std::string_view key) const;
  std::size_t count(std::string_view key) const;

  /// Cross-field checks that single-key normalization cannot do.
  void validate() const;

  /// Key/value pairs in table order, subcommand first.
  std::vector<std::pair<std::string, std::string>> resolved() const;

  SchemeParams scheme() const;
  ScanSettings scan_settings() const;
  Method method() const;

 private:
  std::string subcommand_;
  std::vector<std::pair<std::string, std::string>> values_;
};

}  // namespace ccars
