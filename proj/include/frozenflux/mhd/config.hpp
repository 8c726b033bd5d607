#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <toml.hpp>

#include "frozenflux/errors.hpp"
#include "frozenflux/mhd/params.hpp"
#include "frozenflux/spectral/grid.hpp"

namespace frozenflux {

struct IcConfig {
  std::string type = "shear";  // shear | two_mode | file
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
  int mode = 1;
  std::vector<std::string> paths;
};

struct Tolerances {
  double cons = 1e-6;   // algebraic identities
  double div = 1e-8;    // div H
  double mean = 1e-12;  // drift of mean b

  Tolerances scaled(double s) const { return {cons * s, div * s, mean * s}; }
};

struct RunSettings {
  double t_final = 1.0;
  /// fixed step; 0 selects the CFL-limited step
  double dt = 0.0;
  long dump_every = 0;
  long ledger_every = 1;
  std::string output_dir = "out";
};

struct RunConfig {
  int n = 64;
  double length = 2.0 * std::numbers::pi;
  Params params;
  IcConfig ic;
  RunSettings run;
  Tolerances tol;

  Grid grid() const { return Grid(n, length); }

  void validate() const {
    try {
      (void)grid();
    } catch (const InvalidArgument& e) {
      throw ConfigError("grid", e.what());
    }
    params.validate();
    if (ic.type != "shear" && ic.type != "two_mode" && ic.type != "file")
      throw ConfigError("ic.type", "ic.type must be shear, two_mode or file");
    if (!std::isfinite(ic.epsilon) || ic.epsilon < 0.0) throw ConfigError("ic.epsilon", "epsilon must be >= 0");
    if (ic.type == "shear" && (ic.mode < 1 || ic.mode >= n / 2)) throw ConfigError("ic.mode", "shear mode out of range");
    if (ic.type == "file" && ic.paths.size() != 1 && ic.paths.size() != 4)
      throw ConfigError("ic.paths", "file ic needs 1 state dump or 4 fields (d1, d2, u1, u2)");
    if (!std::isfinite(run.t_final) || run.t_final < 0.0) throw ConfigError("run.t_final", "t_final must be >= 0");
    if (!std::isfinite(run.dt) || run.dt < 0.0) throw ConfigError("run.dt", "dt must be >= 0");
    if (run.dump_every < 0) throw ConfigError("run.dump_every", "dump_every must be >= 0");
    if (run.ledger_every < 1) throw ConfigError("run.ledger_every", "ledger_every must be >= 1");
    if (run.output_dir.empty()) throw ConfigError("run.output_dir", "output_dir must not be empty");
    for (double t : {tol.cons, tol.div, tol.mean})
      if (!(t > 0.0)) throw ConfigError("tolerances", "tolerances must be positive");
  }
};

namespace detail {

inline void reject_unknown(const toml::table& t, const std::string& where, std::set<std::string> allowed) {
  for (auto&& [k, v] : t) {
    if (!allowed.count(std::string(k.str())))
      throw ConfigError("unknown_key", "unknown key '" + std::string(k.str()) + "' in " + where);
  }
}

inline const toml::table* section(const toml::table& root, const char* name) {
  const toml::node* n = root.get(name);
  if (!n) return nullptr;
  if (!n->is_table()) throw ConfigError(name, std::string("[") + name + "] must be a table");
  return n->as_table();
}

inline double get_number(const toml::table& t, const char* key, double fallback, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return fallback;
  if (auto v = n->value<double>()) return *v;
  throw ConfigError(where + "." + key, where + "." + key + " must be a number");
}

inline std::int64_t get_int(const toml::table& t, const char* key, std::int64_t fallback, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return fallback;
  if (n->is_integer()) return *n->value<std::int64_t>();
  throw ConfigError(where + "." + key, where + "." + key + " must be an integer");
}

inline std::string get_string(const toml::table& t, const char* key, std::string fallback, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return fallback;
  if (auto v = n->value<std::string>()) return *v;
  throw ConfigError(where + "." + key, where + "." + key + " must be a string");
}

inline bool get_bool(const toml::table& t, const char* key, bool fallback, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return fallback;
  if (auto v = n->value<bool>()) return *v;
  throw ConfigError(where + "." + key, where + "." + key + " must be a boolean");
}

}  // namespace detail

inline RunConfig parse_config(const toml::table& root) {
  using namespace detail;
  reject_unknown(root, "config", {"grid", "params", "ic", "run", "tolerances"});
  RunConfig c;
  if (const auto* g = section(root, "grid")) {
    reject_unknown(*g, "[grid]", {"n", "length"});
    c.n = static_cast<int>(get_int(*g, "n", c.n, "grid"));
    c.length = get_number(*g, "length", c.length, "grid");
  }
  if (const auto* p = section(root, "params")) {
    reject_unknown(*p, "[params]", {"mu", "lambda", "rho_floor", "cfl", "dealias", "nonlinear"});
    c.params.mu = get_number(*p, "mu", c.params.mu, "params");
    c.params.lambda = get_number(*p, "lambda", c.params.lambda, "params");
    c.params.rho_floor = get_number(*p, "rho_floor", c.params.rho_floor, "params");
    c.params.cfl = get_number(*p, "cfl", c.params.cfl, "params");
    c.params.dealias = parse_dealias(get_string(*p, "dealias", "two_thirds", "params"));
    c.params.nonlinear = get_bool(*p, "nonlinear", true, "params");
  }
  if (const auto* ic = section(root, "ic")) {
    reject_unknown(*ic, "[ic]", {"type", "epsilon", "seed", "mode", "paths"});
    c.ic.type = get_string(*ic, "type", c.ic.type, "ic");
    c.ic.epsilon = get_number(*ic, "epsilon", c.ic.epsilon, "ic");
    const std::int64_t seed = get_int(*ic, "seed", 0, "ic");
    if (seed < 0) throw ConfigError("ic.seed", "seed must be nonnegative");
    c.ic.seed = static_cast<std::uint64_t>(seed);
    c.ic.mode = static_cast<int>(get_int(*ic, "mode", c.ic.mode, "ic"));
    if (const toml::node* n = ic->get("paths")) {
      const toml::array* arr = n->as_array();
      if (!arr) throw ConfigError("ic.paths", "ic.paths must be an array of strings");
      for (const auto& e : *arr) {
        auto s = e.value<std::string>();
        if (!s) throw ConfigError("ic.paths", "ic.paths must be an array of strings");
        c.ic.paths.push_back(*s);
      }
    }
  }
  if (const auto* r = section(root, "run")) {
    reject_unknown(*r, "[run]", {"t_final", "dt", "dump_every", "ledger_every", "output_dir"});
    c.run.t_final = get_number(*r, "t_final", c.run.t_final, "run");
    c.run.dt = get_number(*r, "dt", c.run.dt, "run");
    c.run.dump_every = get_int(*r, "dump_every", c.run.dump_every, "run");
    c.run.ledger_every = get_int(*r, "ledger_every", c.run.ledger_every, "run");
    c.run.output_dir = get_string(*r, "output_dir", c.run.output_dir, "run");
  }
  if (const auto* t = section(root, "tolerances")) {
    reject_unknown(*t, "[tolerances]", {"cons", "div", "mean"});
    c.tol.cons = get_number(*t, "cons", c.tol.cons, "tolerances");
    c.tol.div = get_number(*t, "div", c.tol.div, "tolerances");
    c.tol.mean = get_number(*t, "mean", c.tol.mean, "tolerances");
  }
  c.validate();
  return c;
}

inline RunConfig parse_config_string(std::string_view text, std::string_view source = "config") {
  try {
    return parse_config(toml::parse(text, source));
  } catch (const toml::parse_error& e) {
    throw ConfigError("toml", std::string(e.description()));
  }
}

}  // namespace frozenflux
