#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "levyreflect/barriers.hpp"
#include "levyreflect/levy_models.hpp"

namespace levyreflect::cli {

// Bad flag, bad config file line or bad value. The message names where the
// offending value came from.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { Clt, Passage, Rate, Overshoot, Asym, Bounds };

std::string_view to_string(Subcommand sub) noexcept;
std::optional<Subcommand> parse_subcommand(std::string_view name) noexcept;

/*
 * Fully resolved run configuration. Precedence, lowest first: built-in
 * defaults, LEVY_REFLECT_SEED (seed only), the config file (top-level keys,
 * then the section named after the subcommand), command line flags.
 */
struct RunConfig {
  Subcommand subcommand = Subcommand::Clt;
  std::string model = "cp:3,exp:1,-1";
  std::string barrier = "zero";
  std::string barrier_model;  // Levy barrier Y; replaces `barrier` when set
  std::vector<double> levels{400.0};
  double c = 0.5;
  std::string g = "median";
  std::size_t replications = 10000;
  std::uint64_t seed = 0;
  std::string seed_source = "default";
  unsigned workers = 1;
  std::string out = "levyreflect";
  std::optional<double> tilt;
  std::optional<double> horizon;
  double grid_step = 0.01;
  std::string config_file;

  /// key = value pairs in a fixed order; written into every output header.
  /// `workers` is left out on purpose: it never changes the results.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Parses `cp:LAMBDA,JUMP,DRIFT` (JUMP is exp:A, gamma:K,A or unit),
/// `bm:MU,SIGMA` and `sum(cp:...,bm:...)`.
LevyModel parse_model(std::string_view text);

// Raw string settings with the place each came from.
struct Setting {
  std::string value;
  std::string origin;
};
using SettingMap = std::map<std::string, Setting>;

/// Reads a `key = value` file with optional `[section]` headers. Keys before
/// any section and keys under `[<subcommand>]` are kept; sections for other
/// subcommands are skipped.
void merge_config_file(const std::string& path, Subcommand sub, SettingMap& settings);

/// Converts raw settings; the subcommand has already been chosen.
RunConfig resolve(Subcommand sub, const SettingMap& settings);

/// Parses argv (program name first). Throws ConfigError. Returns nullopt
/// after printing help.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv);

}  // namespace levyreflect::cli
