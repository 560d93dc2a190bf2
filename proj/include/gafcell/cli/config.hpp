#pragma once

// Run configuration: line-based `key = value` text with [section] headers.
// Precedence, lowest first: built-in defaults, config file, GAFCELL_<SECTION>_<KEY>
// environment variables, --set section.key=value flags.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gafcell/bounds.hpp"
#include "gafcell/error.hpp"
#include "gafcell/sim.hpp"

namespace gafcell::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct KeySpec {
  std::string_view section;
  std::string_view key;
  std::string_view unit;
  std::string_view default_value;
  std::string_view description;

  std::string name() const { return std::string(section) + "." + std::string(key); }
};

inline constexpr std::array<KeySpec, 29> kConfigKeys = {{
    {"field", "dimension", "-", "2", "field dimension, 2 or 3"},
    {"field", "extent", "length", "10", "side lengths, one value for all axes or one per axis"},
    {"field", "origin", "length", "0", "lower corner, one value for all axes or one per axis"},
    {"scheme", "protocol", "-", "gaf", "gaf | hgaf | ehgaf"},
    {"scheme", "shape", "-", "square", "square | triangle | hexagon | cube"},
    {"scheme", "size", "length", "max", "cell size parameter, or max for the binding maximum"},
    {"scheme", "size_factor", "-", "1", "multiplier applied to size"},
    {"scheme", "subcells", "count", "0", "subcells per axis r/d; 0 selects infinitesimal subcells"},
    {"scheme", "rotation_epoch", "time", "60", "time between hgaf rotations / ehgaf slides"},
    {"scheme", "rotation_points", "count", "2", "ideal hgaf active points per axis (infinitesimal subcells)"},
    {"protocol", "t_discovery", "time", "1", "discovery window T_d"},
    {"protocol", "t_active", "time", "60", "longest active tenure T_a"},
    {"protocol", "t_sleep", "time", "30", "sleep period T_s"},
    {"protocol", "draw_sleeping", "energy/time", "0.01", "power draw while sleeping"},
    {"protocol", "draw_discovery", "energy/time", "1", "power draw in discovery"},
    {"protocol", "draw_active", "energy/time", "1", "power draw while active"},
    {"protocol", "battery", "energy", "1000", "initial battery per node"},
    {"sim", "range", "length (absolute)", "1", "communication range R"},
    {"sim", "absolute_units", "bool", "false", "read field and size lengths as absolute instead of multiples of R"},
    {"sim", "nodes", "count", "100", "deployed node count N"},
    {"sim", "seed", "-", "1", "deployment seed"},
    {"sim", "time_step", "time", "0", "fixed step; 0 selects T_d/10"},
    {"sim", "max_time", "time", "10000", "simulation horizon"},
    {"sim", "audit_interval", "time", "10", "time between requirement audits"},
    {"sim", "lifetime_scope", "-", "all", "all | interior: cells watched for first-cell-death"},
    {"sim", "audit_mode", "-", "candidates", "candidates | elected: active positions audited"},
    {"sim", "stop_at_first_death", "bool", "true", "end the run at the first cell death"},
    {"sim", "strict", "bool", "false", "reject cells larger than the binding maximum"},
    {"sim", "label", "-", "", "free-form name used in comparison tables"},
}};

inline const KeySpec* find_key(std::string_view section, std::string_view key) {
  for (const KeySpec& k : kConfigKeys) {
    if (k.section == section && k.key == key) return &k;
  }
  return nullptr;
}

inline std::string keys_help() {
  std::ostringstream os;
  os << "Config keys (section.key [unit] default: description).\n"
     << "Lengths are multiples of sim.range unless sim.absolute_units = true.\n"
     << "Override with GAFCELL_<SECTION>_<KEY> or --set section.key=value.\n";
  for (const KeySpec& k : kConfigKeys) {
    os << "  " << k.name() << " [" << k.unit << "] default "
       << (k.default_value.empty() ? std::string("\"\"") : std::string(k.default_value)) << ": " << k.description
       << "\n";
  }
  return os.str();
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& name, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw ConfigError("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(name + ": expected a number, got '" + v + "'");
  }
}

inline long long parse_integer(const std::string& name, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used != v.size()) throw ConfigError("");
    return i;
  } catch (const std::exception&) {
    throw ConfigError(name + ": expected an integer, got '" + v + "'");
  }
}

inline bool parse_bool(const std::string& name, const std::string& v) {
  std::string l = v;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
  if (l == "false" || l == "0" || l == "no" || l == "off") return false;
  throw ConfigError(name + ": expected true or false, got '" + v + "'");
}

inline std::vector<double> parse_list(const std::string& name, const std::string& v, int dimension) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(name, trim(item)));
  if (out.size() == 1) out.assign(static_cast<std::size_t>(dimension), out.front());
  if (out.size() != static_cast<std::size_t>(dimension)) {
    throw ConfigError(name + ": expected 1 or " + std::to_string(dimension) + " values, got " +
                      std::to_string(out.size()));
  }
  return out;
}

}  // namespace detail

class RunConfig {
 public:
  RunConfig() {
    for (const KeySpec& k : kConfigKeys) values_[k.name()] = std::string(k.default_value);
  }

  static RunConfig parse(std::istream& in, const std::string& source = "<config>") {
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find_first_of("#;");
      std::string s = detail::trim(hash == std::string::npos ? line : line.substr(0, hash));
      if (s.empty()) continue;
      const std::string where = source + ":" + std::to_string(lineno);
      if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError(where + ": malformed section header");
        section = detail::trim(s.substr(1, s.size() - 2));
        const bool known = std::any_of(kConfigKeys.begin(), kConfigKeys.end(),
                                       [&](const KeySpec& k) { return k.section == section; });
        if (!known) throw ConfigError(where + ": unknown section [" + section + "]");
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
      if (section.empty()) throw ConfigError(where + ": key outside any section");
      const std::string key = detail::trim(s.substr(0, eq));
      if (!find_key(section, key)) throw ConfigError(where + ": unknown key " + section + "." + key);
      cfg.values_[section + "." + key] = detail::trim(s.substr(eq + 1));
    }
    return cfg;
  }

  static RunConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse(in, path);
  }

  // `assignment` is section.key=value.
  void set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected section.key=value, got '" + std::string(assignment) + "'");
    set(detail::trim(assignment.substr(0, eq)), detail::trim(assignment.substr(eq + 1)));
  }

  void set(const std::string& name, const std::string& value) {
    const auto dot = name.find('.');
    if (dot == std::string::npos || !find_key(name.substr(0, dot), name.substr(dot + 1))) {
      throw ConfigError("unknown config key " + name);
    }
    values_[name] = value;
  }

  void apply_environment(const std::function<const char*(const char*)>& getenv_fn) {
    for (const KeySpec& k : kConfigKeys) {
      std::string var = "GAFCELL_" + std::string(k.section) + "_" + std::string(k.key);
      std::transform(var.begin(), var.end(), var.begin(), [](unsigned char c) { return std::toupper(c); });
      if (const char* v = getenv_fn(var.c_str())) values_[k.name()] = v;
    }
  }

  void apply_environment() {
    apply_environment([](const char* name) -> const char* { return std::getenv(name); });
  }

  const std::string& get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw ConfigError("unknown config key " + name);
    return it->second;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

  double number(const std::string& name) const { return detail::parse_double(name, get(name)); }
  long long integer(const std::string& name) const { return detail::parse_integer(name, get(name)); }
  bool flag(const std::string& name) const { return detail::parse_bool(name, get(name)); }

  const std::string& label() const { return get("sim.label"); }

  SimConfig to_sim_config() const {
    SimConfig c;
    c.range = number("sim.range");
    detail_check(c.range > 0.0, "sim.range must be positive");
    const double unit = flag("sim.absolute_units") ? 1.0 : c.range;

    c.field.dimension = static_cast<int>(integer("field.dimension"));
    detail_check(c.field.dimension == 2 || c.field.dimension == 3, "field.dimension must be 2 or 3");
    const auto extent = detail::parse_list("field.extent", get("field.extent"), c.field.dimension);
    const auto origin = detail::parse_list("field.origin", get("field.origin"), c.field.dimension);
    for (int a = 0; a < c.field.dimension; ++a) {
      c.field.extent[a] = extent[a] * unit;
      c.field.origin[a] = origin[a] * unit;
    }
    if (c.field.dimension == 2) c.field.extent.z = 0.0;

    auto& s = c.scheme;
    const auto protocol = parse_protocol(get("scheme.protocol"));
    detail_check(protocol.has_value(), "scheme.protocol: unknown protocol '" + get("scheme.protocol") + "'");
    s.protocol = *protocol;
    const auto shape = parse_shape_kind(get("scheme.shape"));
    detail_check(shape.has_value(), "scheme.shape: unknown shape '" + get("scheme.shape") + "'");
    s.shape = *shape;
    const long long m = integer("scheme.subcells");
    detail_check(m >= 0, "scheme.subcells must be >= 0");
    if (m > 0) s.subcells = static_cast<int>(m);
    s.rotation_epoch = number("scheme.rotation_epoch");
    c.rotation_points = static_cast<int>(integer("scheme.rotation_points"));
    if (get("scheme.size") == "max") {
      const ConstraintReport rep = s.subcells ? max_cell_for_quotient(s.protocol, s.shape, c.range, *s.subcells)
                                              : max_cell(s.protocol, s.shape, c.range);
      s.size_param = rep.combined_max_size_param;
    } else {
      s.size_param = number("scheme.size") * unit;
    }
    s.size_param *= number("scheme.size_factor");

    auto& p = c.params;
    p.t_discovery = number("protocol.t_discovery");
    p.t_active = number("protocol.t_active");
    p.t_sleep = number("protocol.t_sleep");
    p.draw_sleeping = number("protocol.draw_sleeping");
    p.draw_discovery = number("protocol.draw_discovery");
    p.draw_active = number("protocol.draw_active");
    p.battery = number("protocol.battery");

    const long long nodes = integer("sim.nodes");
    detail_check(nodes >= 1, "sim.nodes must be at least 1");
    c.nodes = static_cast<std::size_t>(nodes);
    const long long seed = integer("sim.seed");
    detail_check(seed >= 0, "sim.seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
    const double dt = number("sim.time_step");
    detail_check(dt >= 0.0, "sim.time_step must be >= 0");
    if (dt > 0.0) c.time_step = dt;
    c.max_time = number("sim.max_time");
    c.audit_interval = number("sim.audit_interval");
    const auto scope = parse_lifetime_scope(get("sim.lifetime_scope"));
    detail_check(scope.has_value(), "sim.lifetime_scope must be all or interior");
    c.lifetime_scope = *scope;
    const auto mode = parse_audit_mode(get("sim.audit_mode"));
    detail_check(mode.has_value(), "sim.audit_mode must be candidates or elected");
    c.audit_mode = *mode;
    c.stop_at_first_death = flag("sim.stop_at_first_death");
    c.strict = flag("sim.strict");
    c.validate();
    return c;
  }

 private:
  static void detail_check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
  }

  std::map<std::string, std::string> values_;
};

}  // namespace gafcell::cli
