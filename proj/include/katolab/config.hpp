#pragma once

// Flat key = value experiment configuration with per-subcommand schemas.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace katolab {

struct ParamSpec {
  std::string key;
  std::string default_value;
  std::string help;
};

/// Known subcommands in a fixed order.
const std::vector<std::string>& subcommands();
/// Schema for one subcommand; fails with "unknown subcommand".
const std::vector<ParamSpec>& schema(const std::string& subcommand);

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;  ///< every schema key, defaults filled in
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "json";  ///< json or csv

  std::string get(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_int(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;
  std::vector<long> get_int_list(const std::string& key) const;
};

/// Parses `key = value` lines. '#' starts a comment, values may be quoted.
/// The reserved keys are subcommand, seed, out and format.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Builds a validated config. Unknown keys fail with
/// "unknown config key: <subcommand>.<key>".
ExperimentConfig make_config(const std::string& subcommand, const std::map<std::string, std::string>& values);

/// Applies KATOLAB_SEED when it is set.
void apply_seed_override(ExperimentConfig& config);

// Sweep axes --------------------------------------------------------------

/// A value of the form lin(a, b, n), log(a, b, n) or list(v1, v2, ...).
bool is_ranged(const std::string& value);
/// Expands a ranged value into plain values, formatted to round-trip.
std::vector<std::string> expand_range(const std::string& value);
/// Name of the single ranged parameter, if any; fails with
/// "one sweep axis only" when more than one is ranged.
std::optional<std::string> sweep_axis(const ExperimentConfig& config);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace katolab
