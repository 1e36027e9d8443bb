#include "dicke/cli.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace dicke::cli {

namespace {

void reject_unknown_keys(const YAML::Node& node, const std::string& prefix,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      const std::string field = prefix.empty() ? key : prefix + "." + key;
      throw ValidationError(field, "unknown field '" + field + "' (line " +
                                       std::to_string(kv.first.Mark().line + 1) + ")");
    }
  }
}

YAML::Node require_map(const YAML::Node& parent, const std::string& key, const std::string& field) {
  const YAML::Node node = parent[key];
  if (!node) throw ValidationError(field, "missing required section '" + field + "'");
  if (!node.IsMap()) throw ValidationError(field, "'" + field + "' must be a mapping");
  return node;
}

template <typename T>
T scalar_as(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) throw ValidationError(field, "'" + field + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion&) {
    throw ValidationError(field, "'" + field + "' has an invalid value '" + node.Scalar() +
                                     "' (line " + std::to_string(node.Mark().line + 1) + ")");
  }
}

template <typename T>
std::optional<T> optional_field(const YAML::Node& parent, const std::string& key,
                                const std::string& field) {
  const YAML::Node node = parent[key];
  if (!node) return std::nullopt;
  return scalar_as<T>(node, field);
}

template <typename T>
T required_field(const YAML::Node& parent, const std::string& key, const std::string& field) {
  auto v = optional_field<T>(parent, key, field);
  if (!v) throw ValidationError(field, "missing required field '" + field + "'");
  return *v;
}

double finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw ValidationError(field, "'" + field + "' must be finite");
  return v;
}

double positive(double v, const std::string& field) {
  if (!(finite(v, field) > 0.0)) throw ValidationError(field, "'" + field + "' must be positive");
  return v;
}

Command parse_command(const std::string& s) {
  if (s == "eliminate") return Command::Eliminate;
  if (s == "variants") return Command::Variants;
  if (s == "flow") return Command::Flow;
  if (s == "compare") return Command::Compare;
  if (s == "sweep") return Command::Sweep;
  throw ValidationError("command", "unknown command '" + s +
                                       "' (expected eliminate, variants, flow, compare or sweep)");
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Eliminate:
      return "eliminate";
    case Command::Variants:
      return "variants";
    case Command::Flow:
      return "flow";
    case Command::Compare:
      return "compare";
    case Command::Sweep:
      return "sweep";
  }
  return "eliminate";
}

std::string_view to_string(Spacing s) noexcept { return s == Spacing::Log ? "log" : "linear"; }

std::string_view to_string(Format f) noexcept { return f == Format::Json ? "json" : "csv"; }

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

RunConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.mark.line + 1, "malformed configuration at line " +
                                          std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ParseError(0, "configuration must be a mapping at top level");

  reject_unknown_keys(root, "",
                      {"command", "params", "space", "sweep", "q_max", "variant", "tolerances",
                       "output"});

  RunConfig cfg;
  cfg.command = parse_command(required_field<std::string>(root, "command", "command"));
  const bool is_sweep = cfg.command == Command::Sweep;

  const YAML::Node params = require_map(root, "params", "params");
  reject_unknown_keys(params, "params", {"omega0", "omega1", "g"});
  cfg.params.omega0 = positive(required_field<double>(params, "omega0", "params.omega0"),
                               "params.omega0");
  cfg.params.g = finite(required_field<double>(params, "g", "params.g"), "params.g");
  if (cfg.params.g < 0.0) throw ValidationError("params.g", "'params.g' must be non-negative");
  if (const auto w1 = optional_field<double>(params, "omega1", "params.omega1")) {
    cfg.params.omega1 = positive(*w1, "params.omega1");
  } else if (!is_sweep) {
    throw ValidationError("params.omega1", "missing required field 'params.omega1'");
  } else {
    cfg.params.omega1 = cfg.params.omega0;
  }

  const YAML::Node space = require_map(root, "space", "space");
  reject_unknown_keys(space, "space", {"two_s", "n_max"});
  cfg.two_s = required_field<int>(space, "two_s", "space.two_s");
  cfg.n_max = required_field<int>(space, "n_max", "space.n_max");
  if (cfg.two_s < 0) throw ValidationError("space.two_s", "'space.two_s' must be non-negative");
  if (cfg.n_max < 0) throw ValidationError("space.n_max", "'space.n_max' must be non-negative");
  try {
    (void)cfg.space();
  } catch (const Overflow& e) {
    throw ValidationError("space", e.what());
  }

  cfg.q_max = optional_field<int>(root, "q_max", "q_max").value_or(cfg.n_max);
  if (cfg.q_max < 0 || cfg.q_max > cfg.n_max) {
    throw ValidationError("q_max", "'q_max' must lie in 0..n_max");
  }

  if (const auto v = optional_field<std::string>(root, "variant", "variant")) {
    const auto id = parse_variant(*v);
    if (!id) throw ValidationError("variant", "unknown variant '" + *v + "'");
    cfg.variant = *id;
  }

  if (root["sweep"]) {
    const YAML::Node sw = require_map(root, "sweep", "sweep");
    reject_unknown_keys(sw, "sweep", {"delta_min", "delta_max", "points", "spacing"});
    SweepSpec s;
    s.points = required_field<int>(sw, "points", "sweep.points");
    if (s.points < 2) throw ValidationError("points", "'sweep.points' must be at least 2");
    s.delta_min = positive(required_field<double>(sw, "delta_min", "sweep.delta_min"),
                           "sweep.delta_min");
    s.delta_max = positive(required_field<double>(sw, "delta_max", "sweep.delta_max"),
                           "sweep.delta_max");
    if (!(s.delta_max > s.delta_min)) {
      throw ValidationError("sweep.delta_max", "'sweep.delta_max' must exceed 'sweep.delta_min'");
    }
    const auto spacing = optional_field<std::string>(sw, "spacing", "sweep.spacing").value_or("log");
    if (spacing == "log") {
      s.spacing = Spacing::Log;
    } else if (spacing == "linear") {
      s.spacing = Spacing::Linear;
    } else {
      throw ValidationError("sweep.spacing", "'sweep.spacing' must be linear or log");
    }
    cfg.sweep = s;
  } else if (is_sweep) {
    throw ValidationError("sweep", "missing required section 'sweep'");
  }

  if (root["tolerances"]) {
    const YAML::Node tol = require_map(root, "tolerances", "tolerances");
    reject_unknown_keys(tol, "tolerances", {"tol_gap", "tol_offdiag"});
    if (const auto v = optional_field<double>(tol, "tol_gap", "tolerances.tol_gap")) {
      cfg.tolerances.tol_gap = positive(*v, "tolerances.tol_gap");
    }
    if (const auto v = optional_field<double>(tol, "tol_offdiag", "tolerances.tol_offdiag")) {
      cfg.tolerances.tol_offdiag = positive(*v, "tolerances.tol_offdiag");
    }
  }

  if (root["output"]) {
    const YAML::Node out = require_map(root, "output", "output");
    reject_unknown_keys(out, "output", {"path", "format"});
    cfg.output.path = optional_field<std::string>(out, "path", "output.path").value_or("");
    if (const auto f = optional_field<std::string>(out, "format", "output.format")) {
      const auto fmt = parse_format(*f);
      if (!fmt) throw ValidationError("output.format", "'output.format' must be csv or json");
      cfg.output.format = *fmt;
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open configuration file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<double> sweep_deltas(const SweepSpec& sweep) {
  std::vector<double> out;
  const int last = sweep.points - 1;
  for (int i = 0; i <= last; ++i) {
    if (i == 0) {
      out.push_back(sweep.delta_min);
    } else if (i == last) {
      out.push_back(sweep.delta_max);
    } else {
      const double t = static_cast<double>(i) / last;
      out.push_back(sweep.spacing == Spacing::Log
                        ? sweep.delta_min * std::pow(sweep.delta_max / sweep.delta_min, t)
                        : sweep.delta_min + t * (sweep.delta_max - sweep.delta_min));
    }
  }
  return out;
}

}  // namespace dicke::cli
