#include "levyreflect_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "levyreflect/error.hpp"
#include "levyreflect/format.hpp"

namespace levyreflect::cli {
namespace {

constexpr std::string_view kSubcommands[] = {"clt", "passage", "rate", "overshoot", "asym", "bounds"};
constexpr std::string_view kSubcommandHelp[] = {
    "KS distance of first-passage z-scores to N(0,1)",
    "P(tau(u) <= g) against the normal approximation",
    "tilted estimate of (1/u) log P(tau(u) <= f^-1(cu))",
    "overshoot atoms at the floor-square barrier",
    "exact underline probability against its asymptotic bound",
    "Monte Carlo estimate between the underline and Cramer bounds",
};

// Accepted keys, spelled as on the command line (without the dashes).
const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {"model", "barrier", "barrier-model", "u",       "c",
                                                "g",     "n",       "seed",          "workers", "out",
                                                "tilt",  "horizon", "grid-step"};
  return keys;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double number(std::string_view token, std::string_view what) {
  const auto v = parse_double(token);
  if (!v || !std::isfinite(*v)) {
    throw ConfigError(std::string(what) + " expects a number, got '" + std::string(token) + "'");
  }
  return *v;
}

JumpDistribution parse_jump(const std::vector<std::string_view>& tok, std::size_t& i) {
  if (i >= tok.size()) throw ConfigError("missing jump law");
  const std::string_view head = tok[i++];
  if (head.rfind("exp:", 0) == 0) return JumpDistribution::exponential(number(head.substr(4), "exp rate"));
  if (head == "unit") return JumpDistribution::unit();
  if (head.rfind("unit:", 0) == 0) return JumpDistribution::unit(number(head.substr(5), "unit size"));
  if (head.rfind("gamma:", 0) == 0) {
    const double k = number(head.substr(6), "gamma shape");
    if (k != std::floor(k) || k < 1.0 || k > 1000.0) throw ConfigError("gamma shape must be a positive integer");
    if (i >= tok.size()) throw ConfigError("gamma jump needs a rate: gamma:K,A");
    return JumpDistribution::gamma(static_cast<int>(k), number(tok[i++], "gamma rate"));
  }
  throw ConfigError("unknown jump law '" + std::string(head) + "' (exp:A, gamma:K,A or unit)");
}

CompoundPoissonPart parse_cp(std::string_view body) {
  const auto tok = split(body, ',');
  std::size_t i = 0;
  CompoundPoissonPart part;
  part.intensity = number(tok[i++], "intensity");
  part.jump = parse_jump(tok, i);
  if (i + 1 != tok.size()) throw ConfigError("cp model is cp:LAMBDA,JUMP,DRIFT");
  part.drift = number(tok[i], "drift");
  return part;
}

BrownianPart parse_bm(std::string_view body) {
  const auto tok = split(body, ',');
  if (tok.size() != 2) throw ConfigError("bm model is bm:MU,SIGMA");
  return BrownianPart{number(tok[0], "bm drift"), number(tok[1], "bm volatility")};
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

std::string normalise_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

template <class T>
T unsigned_value(const Setting& s, std::string_view key) {
  const std::string_view text = trim(s.value);
  T v{};
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(s.origin + ": " + std::string(key) + " expects a nonnegative integer, got '" + s.value + "'");
  }
  return v;
}

double real_value(const Setting& s, std::string_view key) {
  try {
    return number(trim(s.value), key);
  } catch (const ConfigError& e) {
    throw ConfigError(s.origin + ": " + e.what());
  }
}

std::string join_levels(const std::vector<double>& levels) {
  std::string out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) out += ',';
    out += format_double(levels[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(Subcommand sub) noexcept { return kSubcommands[static_cast<int>(sub)]; }

std::optional<Subcommand> parse_subcommand(std::string_view name) noexcept {
  for (std::size_t i = 0; i < std::size(kSubcommands); ++i) {
    if (kSubcommands[i] == name) return static_cast<Subcommand>(i);
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("subcommand", std::string(to_string(subcommand)));
  kv.emplace_back("model", model);
  if (barrier_model.empty()) {
    kv.emplace_back("barrier", barrier);
  } else {
    kv.emplace_back("barrier-model", barrier_model);
  }
  kv.emplace_back("u", join_levels(levels));
  kv.emplace_back("c", format_double(c));
  kv.emplace_back("g", g);
  kv.emplace_back("n", std::to_string(replications));
  kv.emplace_back("seed", std::to_string(seed));
  kv.emplace_back("seed-source", seed_source);
  kv.emplace_back("tilt", tilt ? format_double(*tilt) : "default");
  kv.emplace_back("horizon", horizon ? format_double(*horizon) : "default");
  kv.emplace_back("grid-step", format_double(grid_step));
  if (!config_file.empty()) kv.emplace_back("config", config_file);
  return kv;
}

LevyModel parse_model(std::string_view text) {
  text = trim(text);
  if (starts_with(text, "sum(") && !text.empty() && text.back() == ')') {
    const std::string_view inner = trim(text.substr(4, text.size() - 5));
    const std::size_t pos = inner.find(",bm:");
    if (!starts_with(inner, "cp:") || pos == std::string_view::npos) {
      throw ConfigError("sum model is sum(cp:...,bm:...)");
    }
    return LevyModel::sum(parse_cp(inner.substr(3, pos - 3)), parse_bm(inner.substr(pos + 4)));
  }
  if (starts_with(text, "cp:")) {
    const CompoundPoissonPart p = parse_cp(text.substr(3));
    return LevyModel::compound_poisson(p.intensity, p.jump, p.drift);
  }
  if (starts_with(text, "bm:")) {
    const BrownianPart p = parse_bm(text.substr(3));
    return LevyModel::brownian(p.drift, p.volatility);
  }
  throw ConfigError("unknown model '" + std::string(text) + "' (cp:..., bm:... or sum(...))");
}

void merge_config_file(const std::string& path, Subcommand sub, SettingMap& settings) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config file " + std::string(e.what()));
  }
  auto take = [&](const std::string& key, const std::string& value, const std::string& origin) {
    const std::string k = normalise_key(key);
    if (std::find(known_keys().begin(), known_keys().end(), k) == known_keys().end()) {
      throw ConfigError(origin + ": unknown key '" + key + "'");
    }
    settings[k] = Setting{value, origin};
  };
  // Top-level keys first so that the section can override them.
  for (const auto& [key, node] : tree) {
    // An empty [section] looks like a key without a value.
    if (node.empty() && !parse_subcommand(key)) take(key, node.data(), path + ": " + key);
  }
  for (const auto& [section, node] : tree) {
    if (node.empty()) continue;
    if (!parse_subcommand(section)) throw ConfigError(path + ": unknown section [" + section + "]");
    if (section != to_string(sub)) continue;
    for (const auto& [key, leaf] : node) take(key, leaf.data(), path + ": [" + section + "] " + key);
  }
}

RunConfig resolve(Subcommand sub, const SettingMap& settings) {
  RunConfig cfg;
  cfg.subcommand = sub;
  auto find = [&](const std::string& key) -> const Setting* {
    const auto it = settings.find(key);
    return it == settings.end() ? nullptr : &it->second;
  };
  auto checked = [](const Setting& s, auto&& parse) {
    try {
      parse();
    } catch (const ConfigError& e) {
      throw ConfigError(s.origin + ": " + e.what());
    } catch (const Error& e) {
      throw ConfigError(s.origin + ": " + e.what());
    }
  };
  if (const auto* s = find("model")) cfg.model = std::string(trim(s->value));
  if (const auto* s = find("barrier")) cfg.barrier = std::string(trim(s->value));
  if (const auto* s = find("barrier-model")) cfg.barrier_model = std::string(trim(s->value));
  checked(find("model") ? *find("model") : Setting{cfg.model, "default model"}, [&] { parse_model(cfg.model); });
  if (cfg.barrier_model.empty()) {
    checked(find("barrier") ? *find("barrier") : Setting{cfg.barrier, "default barrier"},
            [&] { parse_barrier(cfg.barrier); });
  } else {
    checked(*find("barrier-model"), [&] { parse_model(cfg.barrier_model); });
  }
  if (const auto* s = find("u")) {
    cfg.levels.clear();
    for (std::string_view part : split(s->value, ',')) {
      const double u = real_value(Setting{std::string(part), s->origin}, "u");
      if (u < 0.0) throw ConfigError(s->origin + ": u must be nonnegative");
      cfg.levels.push_back(u);
    }
  }
  if (const auto* s = find("c")) {
    cfg.c = real_value(*s, "c");
    if (!(cfg.c > 0.0 && cfg.c < 1.0)) throw ConfigError(s->origin + ": c must lie in (0, 1)");
  }
  if (const auto* s = find("g")) cfg.g = std::string(trim(s->value));
  if (const auto* s = find("n")) {
    cfg.replications = unsigned_value<std::size_t>(*s, "n");
    if (cfg.replications == 0) throw ConfigError(s->origin + ": n must be positive");
  }
  if (const auto* s = find("seed")) {
    cfg.seed = unsigned_value<std::uint64_t>(*s, "seed");
    cfg.seed_source = s->origin == "LEVY_REFLECT_SEED" ? "env" : (s->origin.rfind("--", 0) == 0 ? "flag" : "config");
  }
  if (const auto* s = find("workers")) {
    cfg.workers = unsigned_value<unsigned>(*s, "workers");
    if (cfg.workers == 0 || cfg.workers > 1024) throw ConfigError(s->origin + ": workers must lie in [1, 1024]");
  }
  if (const auto* s = find("out")) cfg.out = std::string(trim(s->value));
  if (const auto* s = find("tilt")) cfg.tilt = real_value(*s, "tilt");
  if (const auto* s = find("horizon")) {
    cfg.horizon = real_value(*s, "horizon");
    if (!(*cfg.horizon > 0.0)) throw ConfigError(s->origin + ": horizon must be positive");
  }
  if (const auto* s = find("grid-step")) {
    cfg.grid_step = real_value(*s, "grid-step");
    if (!(cfg.grid_step > 0.0)) throw ConfigError(s->origin + ": grid-step must be positive");
  }
  return cfg;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Monte Carlo and quadrature experiments for reflected Levy processes"};
  app.require_subcommand(1);
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  struct Flag {
    const char* key;
    const char* help;
  };
  static constexpr Flag kFlags[] = {
      {"model", "cp:LAMBDA,JUMP,DRIFT | bm:MU,SIGMA | sum(cp:...,bm:...)"},
      {"barrier", "zero | linear:b[,f0] | power:p[,s] | floorsq"},
      {"barrier-model", "independent Levy barrier Y (replaces --barrier)"},
      {"u", "level or comma separated levels"},
      {"c", "fraction c in (0, 1)"},
      {"g", "passage time: median | z:X | cinv | a number"},
      {"n", "replications"},
      {"seed", "seed (falls back to LEVY_REFLECT_SEED)"},
      {"workers", "worker threads"},
      {"out", "output prefix for <out>_samples.csv and <out>_summary.csv"},
      {"tilt", "exponential tilt theta"},
      {"horizon", "censoring horizon"},
      {"grid-step", "grid step for Brownian parts"},
  };
  std::vector<CLI::App*> subs;
  std::vector<std::map<std::string, CLI::Option*>> sub_options(std::size(kSubcommands));
  for (std::size_t i = 0; i < std::size(kSubcommands); ++i) {
    CLI::App* sub = app.add_subcommand(std::string(kSubcommands[i]), std::string(kSubcommandHelp[i]));
    for (const auto& f : kFlags) {
      sub_options[i][f.key] = sub->add_option("--" + std::string(f.key), raw[f.key], f.help);
    }
    sub->add_option("--config", config_path, "key = value file with [section] headers");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  std::size_t chosen = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) chosen = i;
  }
  const Subcommand sub = static_cast<Subcommand>(chosen);
  SettingMap settings;
  if (const char* env = std::getenv("LEVY_REFLECT_SEED"); env != nullptr && *env != '\0') {
    settings["seed"] = Setting{env, "LEVY_REFLECT_SEED"};
  }
  if (!config_path.empty()) merge_config_file(config_path, sub, settings);
  for (const auto& [key, opt] : sub_options[chosen]) {
    if (opt->count() > 0) settings[key] = Setting{raw[key], "--" + key};
  }
  RunConfig cfg = resolve(sub, settings);
  cfg.config_file = config_path;
  return cfg;
}

}  // namespace levyreflect::cli
