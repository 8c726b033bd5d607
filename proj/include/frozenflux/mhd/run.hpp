#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frozenflux/diagnostics/ledger.hpp"
#include "frozenflux/mhd/config.hpp"
#include "frozenflux/mhd/initial_conditions.hpp"
#include "frozenflux/mhd/stepper.hpp"

namespace frozenflux {

/// First row at which a monitored residual exceeded its tolerance.
struct Violation {
  std::string quantity;
  double t = 0.0;
  double value = 0.0;
  double tolerance = 0.0;
};

struct RunResult {
  std::vector<LedgerRow> rows;
  MhdState final_state;
  long steps = 0;
  std::optional<Violation> violation;
};

inline MhdState make_initial_state(const RunConfig& c) {
  const Grid g = c.grid();
  if (c.ic.type == "shear") return shear_ic(g, c.ic.epsilon, c.ic.mode, c.params);
  if (c.ic.type == "two_mode") return two_mode_ic(g, c.ic.epsilon, c.ic.seed, c.params);
  if (c.ic.paths.size() == 4) {
    SpectralField f[4];
    for (int i = 0; i < 4; ++i) {
      f[i] = fflx::read_spectral_file(c.ic.paths[i]);
      require_same_grid(g, f[i].grid);
    }
    return make_consistent_ic(f[0], f[1], f[2], f[3], c.params);
  }
  MhdState s = read_state_file(c.ic.paths.at(0));
  require_same_grid(g, s.grid());
  require_consistent(s, c.tol.cons);
  s.t = 0.0;
  return s;
}

namespace detail {

inline std::optional<Violation> check_row(const LedgerRow& r, const Tolerances& tol) {
  const Residuals& e = r.residuals;
  const std::pair<const char*, double> cons[] = {{"res_frozen", e.frozen_law},
                                                 {"res_rho_detA", e.mass_jacobian},
                                                 {"res_H1", e.h1_identity},
                                                 {"res_H2", e.h2_identity},
                                                 {"res_trace", e.trace_identity}};
  for (auto [name, v] : cons)
    if (!(v <= tol.cons)) return Violation{name, r.t, v, tol.cons};
  if (!(e.div_H <= tol.div)) return Violation{"res_divH", r.t, e.div_H, tol.div};
  if (!(e.mean_b <= tol.mean)) return Violation{"mean_b_drift", r.t, e.mean_b, tol.mean};
  return std::nullopt;
}

}  // namespace detail

/// Ledger row for the current state: norms, residuals, and the accumulated X ingredients.
inline LedgerRow make_ledger_row(const LittlewoodPaley& lp, const MhdState& s, double mean_b0, XAccumulator& acc) {
  LedgerRow row;
  row.t = s.t;
  row.norms = sample_norms(lp, s);
  row.residuals = compute_residuals(s);
  row.residuals.mean_b = std::abs(s.b().mean().real() - mean_b0);
  acc.add(row.t, row.norms);
  fill_accumulated(row, acc);
  return row;
}

/// Integrates the configured problem to t_final, writing ledger.csv and state
/// dumps into the output directory. The ledger is flushed row by row, so a
/// failing run leaves the rows computed so far.
inline RunResult run(const RunConfig& c, int threads = 1) {
  c.validate();
  namespace fs = std::filesystem;
  const fs::path dir(c.run.output_dir);
  fs::create_directories(dir);
  std::ofstream ledger(dir / "ledger.csv", std::ios::binary | std::ios::trunc);
  if (!ledger) throw InvalidArgument("output", "cannot write " + (dir / "ledger.csv").string());
  ledger << ledger_header() << '\n';

  RunResult res;
  MhdState s = make_initial_state(c);
  const Grid g = s.grid();
  const LittlewoodPaley lp(g);
  const Stepper stepper(g, c.params, threads);
  const double mean_b0 = s.b().mean().real();
  XAccumulator acc;

  auto record = [&] {
    LedgerRow row = make_ledger_row(lp, s, mean_b0, acc);
    write_ledger_row(ledger, row);
    ledger.flush();
    if (!res.violation) res.violation = detail::check_row(row, c.tol);
    res.rows.push_back(row);
  };
  auto dump = [&](long step) {
    char name[64];
    std::snprintf(name, sizeof name, "state_%06ld.fflx", step);
    write_state_file((dir / name).string(), s);
  };

  record();
  if (c.run.dump_every > 0) dump(0);
  const double T = c.run.t_final;
  long step = 0;
  bool recorded = true;
  while (s.t < T) {
    double h;
    double t_next;
    if (c.run.dt > 0.0) {
      t_next = std::min(T, (step + 1) * c.run.dt);
      h = t_next - s.t;
    } else {
      const double remaining = T - s.t;
      const double n_needed = std::ceil(remaining / cfl_dt(s, c.params));
      h = remaining / n_needed;
      t_next = n_needed == 1.0 ? T : s.t + h;
    }
    s = stepper.step(s, h);
    s.t = t_next;
    ++step;
    recorded = false;
    if (step % c.run.ledger_every == 0 || s.t >= T) {
      record();
      recorded = true;
    }
    if (c.run.dump_every > 0 && step % c.run.dump_every == 0) dump(step);
  }
  if (!recorded) record();
  write_state_file((dir / "state_final.fflx").string(), s);
  res.final_state = std::move(s);
  res.steps = step;
  return res;
}

}  // namespace frozenflux
