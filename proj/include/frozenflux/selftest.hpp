#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "frozenflux/besov/norms.hpp"
#include "frozenflux/besov/product_law.hpp"
#include "frozenflux/diagnostics/energy.hpp"
#include "frozenflux/diagnostics/helmholtz.hpp"
#include "frozenflux/diagnostics/ledger.hpp"
#include "frozenflux/mhd/run.hpp"
#include "frozenflux/symbol/linear_mode.hpp"

namespace frozenflux {

struct SelfCheck {
  std::string name;
  std::function<bool()> run;
};

namespace selftest_detail {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool near(const Mat2& a, const Mat2& b, double tol) { return (a - b).max_abs() <= tol; }

inline SpectralField cos_x1(const Grid& g) {
  return forward(sample(g, [](double x1, double) { return std::cos(x1); }));
}

inline BlockSpectrum single_block(const Grid& g, int q, int k, double v) {
  BlockSpectrum s(DyadicRanges::for_grid(g));
  s.at(q, k) = v;
  return s;
}

}  // namespace selftest_detail

/// The small closed-form examples of every module.
inline std::vector<SelfCheck> selftest_checks() {
  using namespace selftest_detail;
  const Grid g(32);
  std::vector<SelfCheck> c;

  // spectral_core
  c.push_back({"transform_constant", [g] {
                 const SpectralField f = forward(sample(g, [](double, double) { return 1.0; }));
                 double rest = 0.0;
                 for (std::size_t m = 1; m < g.size(); ++m) rest = std::max(rest, std::abs(f.coeffs[m]));
                 return near(f(0, 0).real(), 1.0, 1e-15) && rest <= 1e-15;
               }});
  c.push_back({"transform_cos_x1", [g] {
                 const SpectralField f = cos_x1(g);
                 double rest = 0.0;
                 for (int i1 = 0; i1 < g.n(); ++i1)
                   for (int i2 = 0; i2 < g.n(); ++i2)
                     if (!((i1 == 1 || i1 == g.n() - 1) && i2 == 0)) rest = std::max(rest, std::abs(f(i1, i2)));
                 return near(f(1, 0).real(), 0.5, 1e-15) && near(f(g.n() - 1, 0).real(), 0.5, 1e-15) && rest <= 1e-15;
               }});
  c.push_back({"multiplier_lambda2", [g] {
                 const SpectralField f = cos_x1(g);
                 return max_abs(lambda_pow(f, 2.0) - f) <= 1e-14;
               }});
  c.push_back({"multiplier_lambda_inv", [g] {
                 const SpectralField f = forward(sample(g, [](double, double x2) { return std::sin(2 * x2); }));
                 return max_abs(lambda_pow(f, -1.0) - 0.5 * f) <= 1e-15;
               }});
  c.push_back({"lp_support_annulus", [g] {
                 const LittlewoodPaley lp(g);
                 const SpectralField f = cos_x1(g);
                 const DyadicRanges& r = lp.ranges();
                 for (int q = r.q_min; q <= r.q_max; ++q) {
                   const double s = std::ldexp(1.0, q);
                   if (!(s * 5.0 / 6.0 > 1.0 || s * 2.4 < 1.0)) continue;
                   if (max_abs(lp.block(f, q, std::nullopt)) > 1e-15) return false;
                 }
                 return true;
               }});
  c.push_back({"derivative_cos", [g] {
                 return max_abs(dx1(cos_x1(g)) - forward(sample(g, [](double x1, double) { return -std::sin(x1); }))) <=
                        1e-15;
               }});
  c.push_back({"dealias_keeps_low", [g] {
                 const SpectralField f = cos_x1(g);
                 return max_abs(dealias(f, DealiasRule::two_thirds) - f) <= 1e-15;
               }});
  c.push_back({"dealias_drops_high", [g] {
                 const SpectralField f = forward(sample(g, [](double x1, double) { return std::cos(12 * x1); }));
                 return max_abs(dealias(f, DealiasRule::two_thirds)) <= 1e-15;
               }});

  // besov_norms
  c.push_back({"report_zero", [g] {
                 const NormReport r = make_norm_report(LittlewoodPaley(g), SpectralField(g));
                 for (auto [s, v] : r.hatB)
                   if (v != 0.0) return false;
                 for (auto [s, v] : r.tildeB)
                   if (v != 0.0) return false;
                 for (auto [s, v] : r.checkB)
                   if (v != 0.0) return false;
                 return r.linf == 0.0;
               }});
  c.push_back({"hatB_single_block", [g] {
                 return norm_hatB(BlockSpectrum(DyadicRanges::for_grid(g)), 1.0) == 0.0 &&
                        near(norm_hatB(single_block(g, 2, 1, 1.0), 1.0), 4.0, 1e-15);
               }});
  c.push_back({"tildeB_predicate", [g] {
                 return near(norm_tildeB(single_block(g, 1, 1, 1.0), 1.0, 7.0), 2.0, 1e-15) &&
                        near(norm_tildeB(single_block(g, 3, 1, 1.0), 9.0, 1.0), 32.0, 1e-13);
               }});
  c.push_back({"checkB_single_block", [g] {
                 return norm_checkB(BlockSpectrum(DyadicRanges::for_grid(g)), 1.0) == 0.0 &&
                        near(norm_checkB(single_block(g, 2, 1, 1.0), 1.0), 8.0, 1e-15);
               }});
  c.push_back({"product_law_resamples", [] {
                 int calls = 0;
                 const RatioStatistics st =
                     sample_pair_ratios(Grid(16), 3, 1, [&](const SpectralField&, const SpectralField&) {
                       return ++calls == 1 ? std::pair{0.0, 0.0} : std::pair{1.0, 2.0};
                     });
                 return st.ratios.size() == 3 && calls == 4 && st.median == 0.5;
               }});

  // symbol_lab
  c.push_back({"Q_axes", [] {
                 return near(symbol_Q({1, 0}), Mat2{-1, 0, 0, -1}, 1e-15) && near(symbol_Q({0, 1}), Mat2{0, 0, 0, -2}, 1e-15);
               }});
  c.push_back({"lambda_axes", [] {
                 const LambdaPair a = eigen_lambda({0, 1}), b = eigen_lambda({1, 0});
                 return near(a.minus, 0, 1e-15) && near(a.plus, 2, 1e-15) && near(b.minus, 1, 1e-15) &&
                        near(b.plus, 1, 1e-15);
               }});
  c.push_back({"P_axis", [] { return near(projector_P({0, 1}), Mat2{-1, 0, 0, 1}, 1e-15); }});
  c.push_back({"roots_kernel_branch", [] {
                 const auto r = characteristic_roots({0, 1});
                 return std::abs(r[0]) <= 1e-15 && std::abs(r[1] + 1.0) <= 1e-15;
               }});
  c.push_back({"classify_mixed", [] {
                 const RegimePair a = classify_mode({0, 1}), b = classify_mode({3, 0});
                 return a.minus == Regime::overdamped && a.plus == Regime::underdamped && b.minus == Regime::overdamped &&
                        b.plus == Regime::overdamped;
               }});
  c.push_back({"linear_mode_zero", [] {
                 return norm(evolve_linear_mode({1, 1}, ModeVector{}, 1.0, 1e-2).y_final) == 0.0;
               }});

  // mhd_solver
  c.push_back({"ic_identity_map", [g] {
                 const SpectralField z(g);
                 const MhdState s = make_consistent_ic(z, z, z, z, Params{});
                 for (const auto& f : s.f)
                   if (max_abs(f) != 0.0) return false;
                 return true;
               }});
  c.push_back({"rhs_equilibrium", [g] {
                 for (const auto& f : rhs(MhdState(g), Params{}).f)
                   if (max_abs(f) > 1e-14) return false;
                 return true;
               }});
  c.push_back({"step_equilibrium", [g] {
                 const Stepper st(g, Params{});
                 const MhdState s(g);
                 const MhdState a = st.step_unchecked(s, 0.01), b = st.step_unchecked(s, 3.0);
                 for (int i = 0; i < MhdState::count; ++i)
                   if (max_abs(a.f[i]) != 0.0 || max_abs(b.f[i]) != 0.0) return false;
                 return true;
               }});
  c.push_back({"run_t0_single_row", [] {
                 RunConfig cfg;
                 cfg.n = 16;
                 cfg.run.t_final = 0.0;
                 const auto dir = std::filesystem::temp_directory_path() / "frozenflux_selftest_run";
                 cfg.run.output_dir = dir.string();
                 const RunResult r = run(cfg);
                 std::filesystem::remove_all(dir);
                 return r.rows.size() == 1 && r.rows[0].t == 0.0;
               }});

  // diagnostics
  c.push_back({"helmholtz_gradient", [g] {
                 const SpectralField phi = forward(sample(g, [](double x1, double x2) { return std::sin(x1 + x2); }));
                 return max_abs(helmholtz_split(dx1(phi), dx2(phi)).omega) <= 1e-14;
               }});
  c.push_back({"script_H_zero", [g] {
                 const ScriptH sh = compute_script_H(MhdState(g));
                 return max_abs(sh.h1) == 0.0 && max_abs(sh.h2) == 0.0 && max_abs(sh.weighted1) == 0.0 &&
                        max_abs(sh.weighted2) == 0.0;
               }});
  c.push_back({"residuals_equilibrium", [g] {
                 const Residuals r = compute_residuals(MhdState(g));
                 return r.max_identity() == 0.0 && r.div_H == 0.0 && r.mean_b == 0.0;
               }});
  c.push_back({"residuals_injected_fault", [g] {
                 MhdState s(g);
                 s.H2()(0, 0) = 1e-3;
                 return compute_residuals(s).h2_identity == 1e-3;
               }});
  c.push_back({"X_zero_trajectory", [] {
                 std::vector<LedgerRow> rows(3);
                 for (int i = 0; i < 3; ++i) rows[i].t = 0.5 * i;
                 for (double x : compute_X(rows))
                   if (x != 0.0) return false;
                 return true;
               }});
  c.push_back({"X_frozen_fields", [g] {
                 const SpectralField z(g);
                 const MhdState s = make_consistent_ic(
                     forward(sample(g, [](double, double x2) { return 1e-2 * std::sin(x2); })), z, z, z, Params{});
                 std::vector<LedgerRow> rows(2);
                 rows[0].norms = rows[1].norms = sample_norms(LittlewoodPaley(g), s);
                 rows[1].t = 1.0;
                 const auto X = compute_X(rows);
                 return X[0] == X[1];
               }});
  c.push_back({"energy_zero_and_iota0", [g] {
                 const LittlewoodPaley lp(g);
                 if (energy_fqk(make_linear_variables(MhdState(g)), lp, 0, 0, Branch::minus, 0.1) != 0.0) return false;
                 MhdState s(g);
                 s.u1() = forward(sample(g, [](double x1, double x2) { return std::sin(x1 + x2); }));
                 s.b() = forward(sample(g, [](double x1, double x2) { return std::cos(x1 - x2); }));
                 const LinearVariables lv = make_linear_variables(s);
                 const double a = l2_norm(lp.block(lv.u, 0, 0)), w = l2_norm(lp.block(lv.h.weighted1, 0, 0));
                 return near(energy_fqk(lv, lp, 0, 0, Branch::minus, 0.0), std::hypot(a, w), 1e-12) && a > 0.0;
               }});
  c.push_back({"dissipation_single_and_constant", [] {
                 std::vector<LedgerRow> rows(1);
                 rows[0].norms.u_hatB2 = 2.5;
                 if (accumulate_dissipation(rows).u_L1_hatB2 != 0.0) return false;
                 rows.resize(5);
                 for (int i = 0; i < 5; ++i) {
                   rows[i].t = 0.25 * i;
                   rows[i].norms.u_hatB2 = 2.5;
                 }
                 return near(accumulate_dissipation(rows).u_L1_hatB2, 2.5, 1e-15);
               }});
  return c;
}

/// Runs every check, printing "PASS name" or "FAIL name". Returns the number of failures.
inline int run_selftest(std::ostream& os) {
  int failures = 0;
  for (const auto& check : selftest_checks()) {
    bool ok = false;
    std::string why;
    try {
      ok = check.run();
    } catch (const std::exception& e) {
      why = std::string(" (") + e.what() + ")";
    }
    os << (ok ? "PASS " : "FAIL ") << check.name << why << '\n';
    failures += ok ? 0 : 1;
  }
  return failures;
}

}  // namespace frozenflux
