#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "frozenflux/frozenflux.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using namespace frozenflux;

namespace {

struct CheckFailure {
  std::string key, message;
};

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

int fail(const std::string& command, const std::string& key, const std::string& message, int code) {
  std::cerr << "error=" << key << " command=" << command << " exit=" << code << " message=" << quoted(message) << '\n';
  return code;
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw ConfigError("config_open", "cannot open " + p.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::uint64_t file_checksum(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return csv_checksum(is);
}

struct Common {
  std::string config;
  std::string out;
  int threads = -1;
  std::optional<std::uint64_t> seed;
  double tol_scale = 1.0;

  int thread_count() const { return resolve_threads(threads < 0 ? 0 : threads); }
};

Tolerances scaled_tolerances(const Tolerances& t, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("tol_scale", "--tol-scale must be positive");
  return t.scaled(scale);
}

int cmd_run(const Common& o) {
  if (o.config.empty()) throw ConfigError("config", "run needs --config");
  const fs::path cfg_path(o.config);
  const std::string text = read_file(cfg_path);
  RunConfig c = parse_config_string(text, cfg_path.string());
  for (auto& p : c.ic.paths)
    if (fs::path(p).is_relative()) p = (cfg_path.parent_path() / p).lexically_normal().string();
  if (!o.out.empty()) c.run.output_dir = o.out;
  if (o.seed) c.ic.seed = *o.seed;
  c.tol = scaled_tolerances(c.tol, o.tol_scale);
  c.validate();
  const int threads = o.thread_count();

  const fs::path dir(c.run.output_dir);
  fs::create_directories(dir);
  nlohmann::ordered_json m;
  m["command"] = "run";
  m["config_path"] = cfg_path.string();
  m["config_sha1"] = cli::git_blob_sha1(text);
  m["config"] = cli::to_json(c);
  m["tolerances"] = cli::to_json(c.tol);
  m["tol_scale"] = o.tol_scale;
  m["ledger_columns"] = ledger_columns;
  auto write_manifest = [&] {
    std::ofstream os(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    os << m.dump(2) << '\n';
  };
  write_manifest();

  auto finish = [&](const std::string& status) {
    m["status"] = status;
    if (fs::exists(dir / "ledger.csv")) {
      const std::string sum = hex64(file_checksum(dir / "ledger.csv"));
      m["ledger_checksum"] = sum;
      std::cerr << "csv_checksum=" << sum << " file=" << (dir / "ledger.csv").string() << '\n';
    }
    write_manifest();
  };

  RunResult r;
  try {
    r = run(c, threads);
  } catch (const Error& e) {
    finish(e.key());
    throw;
  }
  m["steps"] = r.steps;
  m["t_final"] = r.final_state.t;
  m["ledger_rows"] = r.rows.size();
  if (r.violation) {
    const Violation& v = *r.violation;
    m["violation"] = {{"quantity", v.quantity}, {"t", v.t}, {"value", v.value}, {"tolerance", v.tolerance}};
    finish("tolerance_exceeded");
    throw CheckFailure{"tolerance_exceeded", v.quantity + " = " + format_number(v.value) + " exceeds " +
                                                 format_number(v.tolerance) + " at t = " + format_number(v.t)};
  }
  finish("ok");
  std::cout << "steps=" << r.steps << " t=" << format_number(r.final_state.t) << " X=" << format_number(r.rows.back().X)
            << " out=" << dir.string() << '\n';
  return 0;
}

int cmd_analyze_linear(const Common& o, int rmax, int angles) {
  const auto rows = regime_sweep(rmax, angles);
  std::ostringstream csv;
  write_regime_csv(csv, rows);
  const std::string text = csv.str();
  if (o.out.empty()) {
    std::cout << text;
  } else {
    fs::create_directories(o.out);
    const fs::path p = fs::path(o.out) / "regimes.csv";
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os << text;
    if (!os) throw InvalidArgument("output", "cannot write " + p.string());
  }
  std::istringstream is(text);
  std::cerr << "csv_checksum=" << hex64(csv_checksum(is)) << " rows=" << rows.size() << '\n';
  return 0;
}

int cmd_check_identities(const Common& o, const std::string& state_path) {
  Tolerances tol;
  if (!o.config.empty()) tol = parse_config_string(read_file(o.config), o.config).tol;
  tol = scaled_tolerances(tol, o.tol_scale);
  const MhdState s = read_state_file(state_path);
  const Residuals r = compute_residuals(s);
  nlohmann::ordered_json j;
  j["n"] = s.grid().n();
  j["res_frozen"] = r.frozen_law;
  j["res_rho_detA"] = r.mass_jacobian;
  j["res_H1"] = r.h1_identity;
  j["res_H2"] = r.h2_identity;
  j["res_trace"] = r.trace_identity;
  j["res_divH"] = r.div_H;
  j["mean_b"] = s.b().mean().real();
  j["tolerances"] = cli::to_json(tol);
  const bool ok = r.max_identity() <= tol.cons && r.div_H <= tol.div;
  j["ok"] = ok;
  std::cout << j.dump(2) << '\n';
  if (!ok) throw CheckFailure{"tolerance_exceeded", "identity residuals exceed tolerances"};
  return 0;
}

int cmd_norms(const std::string& field_path, int record, bool csv) {
  std::ifstream is(field_path, std::ios::binary);
  if (!is) throw InvalidArgument("fflx_open", "cannot open " + field_path);
  if (record < 0) throw ConfigError("record", "--record must be >= 0");
  SpectralField f;
  for (int i = 0; i <= record; ++i) f = fflx::read_spectral(is);
  const LittlewoodPaley lp(f.grid);
  if (csv) {
    write_csv(std::cout, block_spectrum(lp, f));
  } else {
    std::cout << to_json(make_norm_report(lp, f)).dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frozenflux: periodic pseudospectral compressible MHD with frozen-law diagnostics"};
  app.require_subcommand(1);
  Common o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "TOML config file");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--threads", o.threads, "worker threads (0 = auto; default FROZENFLUX_THREADS or auto)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "override [ic] seed");
    sub->add_option("--tol-scale", o.tol_scale, "multiply all residual tolerances");
  };

  auto* run_cmd = app.add_subcommand("run", "integrate a configured problem");
  add_common(run_cmd);

  int rmax = 8, angles = 90;
  auto* lin = app.add_subcommand("analyze-linear", "sweep the linear symbol and write the regime CSV");
  add_common(lin);
  lin->add_option("--rmax", rmax, "radii 1..rmax")->check(CLI::PositiveNumber);
  lin->add_option("--angles", angles, "angles in [0, pi/2], endpoints included")->check(CLI::Range(2, 100000));

  std::string state_path;
  auto* ids = app.add_subcommand("check-identities", "print the identity residuals of a state dump");
  add_common(ids);
  ids->add_option("state", state_path, "state dump (9 FFLX1 records)")->required();

  std::string field_path;
  int record = 0;
  bool csv = false;
  auto* nrm = app.add_subcommand("norms", "print the Besov norm report of a field dump");
  add_common(nrm);
  nrm->add_option("field", field_path, "FFLX1 file")->required();
  nrm->add_option("--record", record, "record index inside the file (0 = first)");
  nrm->add_flag("--csv", csv, "print the block spectrum as q,k,value instead");

  auto* st = app.add_subcommand("selftest", "run the built-in closed-form checks");
  add_common(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("parse", "usage", e.what(), 2);
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (run_cmd->parsed()) return cmd_run(o);
    if (lin->parsed()) return cmd_analyze_linear(o, rmax, angles);
    if (ids->parsed()) return cmd_check_identities(o, state_path);
    if (nrm->parsed()) return cmd_norms(field_path, record, csv);
    if (st->parsed()) {
      const int failures = run_selftest(std::cout);
      if (failures) return fail(name, "selftest", std::to_string(failures) + " check(s) failed", 1);
      return 0;
    }
  } catch (const CheckFailure& e) {
    return fail(name, e.key, e.message, 1);
  } catch (const ConfigError& e) {
    return fail(name, e.key(), e.what(), 2);
  } catch (const InvalidArgument& e) {
    return fail(name, e.key(), e.what(), 2);
  } catch (const NumericalFault& e) {
    return fail(name, e.key(), e.what(), 3);
  } catch (const std::exception& e) {
    return fail(name, "runtime", e.what(), 3);
  }
  return 0;
}
