#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "helson/gridquad.hpp"

namespace helson {

std::string version();

enum class Command { Matrix, Spectrum, Curve, CriticalA, MellinCheck, Residual, Equivalence, Report };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

/// Flat run configuration. Keys are the member names; command-line flags use
/// the same names with '-' in place of '_'.
struct RunConfig {
  Command command = Command::Spectrum;

  // operator block
  std::string family = "mult-hilbert";
  std::optional<double> a;
  int N = 512;
  std::optional<int> n_min;

  GridSpec grid = kReferenceGrid;

  // command parameters
  double a_min = 0.05;
  double a_max = 2.0;
  int a_steps = 40;
  double tol = 0.02;
  double k = 0.5;
  std::string function = "log-gaussian";
  double u_min = -14.0;
  double u_max = 14.0;
  int points = 4096;
  double b = 0.5;
  int trials = 100;
  double alpha = 1.0;
  double beta = 2.0;

  // output block
  std::string format = "csv";
  std::string path = ".";
  std::string cache_dir = ".helson-cache";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  /// a = 1 for parameterized families, empty otherwise; n_min from the family.
  void fill_defaults();
  /// log-spaced a values for the curve command.
  std::vector<double> a_values() const;
};

/// Ordered list of all configuration keys.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError.
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Applies string values to a config (unknown key or type mismatch -> ConfigError).
void apply_values(RunConfig& config, const std::map<std::string, std::string>& values);

/// Throws ConfigError with a field-path message on the first violation.
void validate(const RunConfig& config);

/// Parses argv (program name excluded): a command, flags and an optional
/// --config file whose values the flags override. Returns a validated config
/// with defaults filled. Throws ConfigError on usage errors.
RunConfig parse_config(const std::vector<std::string>& args);

/// Canonical `key=value` text, sorted by key, reals at 17 significant digits.
std::string canonical_text(const RunConfig& config);

/// 16 hex digits: FNV-1a 64 of the canonical text and the version string.
std::string cache_key(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

}  // namespace helson
