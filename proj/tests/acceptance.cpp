// One PASS/FAIL line per primary criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "frozenflux/frozenflux.hpp"

using namespace frozenflux;
namespace fs = std::filesystem;

namespace {

// tolerances, pinned
constexpr double kSymbolTol = 1e-10;
constexpr double kSymbolSeconds = 5.0;
constexpr double kPartitionTol = 1e-12;
constexpr double kParsevalBand = 0.02;
constexpr double kLpSeconds = 10.0;
constexpr double kRateTol = 0.02;
constexpr double kKernelTol = 1e-8;
constexpr double kLinearSeconds = 5.0;
constexpr double kConsTol = 1e-6;
constexpr double kDivTol = 1e-8;
constexpr double kMeanTol = 1e-12;
constexpr double kConservationSeconds = 120.0;
constexpr double kSlope = 2.0;
constexpr double kSlopeTol = 0.1;
constexpr double kSlopeSeconds = 60.0;
constexpr double kMinOrder = 3.8;
constexpr double kOrderSeconds = 300.0;
constexpr double kXGrowth = 3.0;
constexpr double kRipple = 0.05;
constexpr double kRatioSpread = 10.0;
constexpr double kProductSeconds = 120.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("frozenflux_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

double state_max(const MhdState& s) {
  double m = 0.0;
  for (const auto& f : s.f) m = std::max(m, max_abs(f));
  return m;
}

double state_distance(const MhdState& a, const MhdState& b) {
  double m = 0.0;
  for (int i = 0; i < MhdState::count; ++i) m = std::max(m, max_abs(a.f[i] - b.f[i]));
  return m;
}

Outcome symbol_suite() {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(100.0)), ang(0.0, 2 * std::numbers::pi);
  double e_inv = 0, e_sym = 0, e_diag = 0, e_root = 0;
  double lm_lo = 1, lm_hi = 0, lp_lo = 10, lp_hi = 0;
  for (int i = 0; i < 10000; ++i) {
    const double r = std::exp(logr(rng)), th = ang(rng);
    const Frequency xi{r * std::cos(th), r * std::sin(th)};
    const Mat2 p = projector_P(xi);
    e_inv = std::max(e_inv, (p * p - Mat2::identity()).max_abs());
    e_sym = std::max(e_sym, (p - p.transpose()).max_abs());
    const Mat2 d = -(p.transpose() * symbol_Q(xi) * p);
    const LambdaPair l = eigen_lambda(xi);
    e_diag = std::max({e_diag, std::abs(d.a12), std::abs(d.a21), std::abs(d.a11 - l.minus), std::abs(d.a22 - l.plus)});
    const auto roots = characteristic_roots(xi);
    const double a = xi.norm2();
    for (int j = 0; j < 4; ++j) {
      const double lam = j < 2 ? l.minus : l.plus;
      const auto eta = roots[j];
      e_root = std::max(e_root, std::abs(eta * eta + a * eta + lam) / std::max(1.0, a * a));
    }
    if (xi.xi1 != 0.0) {
      lm_lo = std::min(lm_lo, l.minus / (xi.xi1 * xi.xi1));
      lm_hi = std::max(lm_hi, l.minus / (xi.xi1 * xi.xi1));
    }
    lp_lo = std::min(lp_lo, l.plus / a);
    lp_hi = std::max(lp_hi, l.plus / a);
  }
  const bool ok = e_inv <= kSymbolTol && e_sym <= kSymbolTol && e_diag <= kSymbolTol && e_root <= kSymbolTol &&
                  lm_lo >= 0.5 && lm_hi <= 1.0 && lp_lo >= 1.0 && lp_hi <= 2.0;
  return {ok, fmt("P^2-I %.1e, P-P^T %.1e, diag %.1e, root %.1e, lambda-/xi1^2 in [%.4f,%.4f], lambda+/|xi|^2 in [%.4f,%.4f]",
                  e_inv, e_sym, e_diag, e_root, lm_lo, lm_hi, lp_lo, lp_hi)};
}

Outcome lp_suite() {
  const Grid g(128);
  const LittlewoodPaley lp(g);
  const DyadicRanges& r = lp.ranges();
  double e_pu = 0.0;
  for (std::size_t m = 1; m < g.size(); ++m) {
    double sq = 0.0, sk = 0.0, sqk = 0.0;
    for (int q = r.q_min; q <= r.q_max; ++q) sq += lp.block_weight(m, q, std::nullopt);
    for (int k = r.k_min; k <= r.k_max; ++k) sk += lp.block_weight(m, std::nullopt, k);
    for (int q = r.q_min; q <= r.q_max; ++q)
      for (int k = r.k_min; k <= r.k_max; ++k) sqk += lp.block_weight(m, q, k);
    e_pu = std::max({e_pu, std::abs(sq - 1), std::abs(sk - 1), std::abs(sqk - 1)});
  }
  std::mt19937_64 rng(7);
  const SpectralField f = random_field(g, rng);
  SpectralField sum(g);
  for (int q = r.q_min; q <= r.q_max; ++q)
    for (int k = r.k_min; k <= r.k_max; ++k) sum += lp.block(f, q, k);
  const double e_sum = max_abs(inverse(sum - f)) / max_abs(inverse(f));
  const double catch_all = l2_norm(lp.block(f, std::nullopt, r.k_min));
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const SpectralField h = random_field(g, rng);
    worst = std::max(worst, std::abs(block_spectrum(lp, h).energy() / std::pow(l2_norm(h), 2) - 1.0));
  }
  const bool ok = e_pu <= kPartitionTol && e_sum <= kPartitionTol && catch_all > 0.0 && worst <= kParsevalBand;
  return {ok, fmt("partition %.1e, reconstruction %.1e (catch-all block norm %.3g), Parseval deviation %.4f", e_pu, e_sum,
                  catch_all, worst)};
}

Outcome linear_modes() {
  double worst = 0.0;
  std::string where;
  bool ok = true;
  for (Frequency xi : {Frequency{0, 1}, Frequency{1, 0}, Frequency{1, 1}, Frequency{3, 1}}) {
    const auto roots = characteristic_roots(xi);
    const double dt = 0.05 / std::max(1.0, xi.norm2());
    for (int b = 0; b < 2; ++b) {
      const auto eta = roots[2 * b];  // larger real part of the branch
      if (eta.real() == 0.0) continue;  // kernel mode, checked below
      const double T = std::min(20.0, 8.0 / std::abs(eta.real()));
      const auto res = evolve_linear_mode(xi, branch_eigenvector(xi, static_cast<Branch>(b), 0), T, dt);
      const double err = res.fitted_rate ? std::abs(*res.fitted_rate / eta.real() - 1.0) : 1.0;
      if (err > worst) {
        worst = err;
        where = fmt("(%g,%g) %s", xi.xi1, xi.xi2, b ? "plus" : "minus");
      }
    }
  }
  ok = worst <= kRateTol;
  const Frequency axis{0, 1};
  const ModeVector y0 = branch_eigenvector(axis, Branch::minus, 0);
  const auto res = evolve_linear_mode(axis, y0, 10.0, 0.01);
  double drift = 0.0;
  for (double v : res.norms) drift = std::max(drift, std::abs(v - norm(y0)));
  ok = ok && drift <= kKernelTol;
  return {ok, fmt("worst rate error %.2f%% at %s, kernel drift %.1e over T=10", 100 * worst, where.c_str(), drift)};
}

Outcome conservation_run() {
  RunConfig c;
  c.n = 64;
  c.ic.type = "shear";
  c.ic.epsilon = 1e-3;
  c.run.t_final = 1.0;
  c.run.output_dir = scratch("conservation").string();
  const RunResult r = run(c, 1);
  double cons = 0, div = 0, mean = 0;
  for (const auto& row : r.rows) {
    cons = std::max(cons, row.residuals.max_identity());
    div = std::max(div, row.residuals.div_H);
    mean = std::max(mean, row.residuals.mean_b);
  }
  const bool ok = cons <= kConsTol && div <= kDivTol && mean <= kMeanTol && r.final_state.t == 1.0;
  return {ok, fmt("%ld CFL steps, max identity residual %.1e, div H %.1e, mean-b drift %.1e", r.steps, cons, div, mean)};
}

Outcome linearization_slope() {
  const Grid g(64);
  const Params p;
  const double eps[] = {1e-3, 1e-4, 1e-5};
  double res[3];
  for (int i = 0; i < 3; ++i) {
    const MhdState s = two_mode_ic(g, eps[i], 3, p);
    res[i] = state_max(rhs(s, p).axpy(-1.0, linear_rhs(s, p)));
  }
  const double s1 = std::log10(res[0] / res[1]), s2 = std::log10(res[1] / res[2]);
  const bool ok = std::abs(s1 - kSlope) <= kSlopeTol && std::abs(s2 - kSlope) <= kSlopeTol;
  return {ok, fmt("residuals %.2e %.2e %.2e, slopes %.3f %.3f", res[0], res[1], res[2], s1, s2)};
}

Outcome self_convergence() {
  const Grid g(32);
  const Params p;
  const MhdState s0 = two_mode_ic(g, 1e-2, 5, p);
  const Stepper st(g, p, 1);
  const double T = 1.0;
  auto integrate = [&](int steps) {
    MhdState s = s0;
    for (int i = 0; i < steps; ++i) s = st.step_unchecked(s, T / steps);
    return s;
  };
  int base = 1;
  while (T / base > cfl_dt(s0, p)) base *= 2;
  MhdState prev = integrate(base), cur = integrate(2 * base);
  double d_prev = state_distance(prev, cur);
  double worst = 1e9;
  std::string orders;
  for (int m = 4; m <= 8; m *= 2) {
    const MhdState next = integrate(m * base);
    const double d = state_distance(cur, next);
    const double order = std::log2(d_prev / d);
    worst = std::min(worst, order);
    orders += fmt(" %.3f", order);
    d_prev = d;
    cur = next;
  }
  return {worst >= kMinOrder, fmt("dt = 1/%d..1/%d (CFL %.4f), observed orders%s", base, 8 * base, cfl_dt(s0, p), orders.c_str())};
}

Outcome small_data() {
  RunConfig c;
  c.n = 64;
  c.ic.type = "shear";
  c.ic.mode = 3;
  c.ic.epsilon = 1e-3;
  c.run.t_final = 10.0;
  c.run.output_dir = scratch("small_data").string();
  const RunResult r = run(c, resolve_threads(0));
  const double x0 = r.rows.front().X, xT = r.rows.back().X;
  double floor_u = -1.0, ripple = 0.0;
  for (const auto& row : r.rows) {
    if (row.t < 1.0) continue;
    const double u = row.norms.u_hatB0;
    if (floor_u >= 0.0) ripple = std::max(ripple, u / floor_u - 1.0);
    floor_u = floor_u < 0.0 ? u : std::min(floor_u, u);
  }
  const bool ok = xT <= kXGrowth * x0 && ripple <= kRipple;
  return {ok, fmt("shear mode 3: X(T)/X(0+) = %.3f, largest rise of ||u||_B0 above its running minimum after t=1: %.2f%%",
                  xT / x0, 100 * ripple)};
}

Outcome product_laws() {
  const Grid g(64);
  bool ok = true;
  std::string d;
  auto judge = [&](const char* name, const RatioStatistics& st) {
    const bool good = st.all_finite() && st.ratios.size() == 100 && st.min > 0.0 && st.max <= kRatioSpread * st.median;
    ok = ok && good;
    d += fmt("%s max/median %.2f; ", name, st.max / st.median);
  };
  judge("(1,0)", product_law_ratio(g, 100, 1.0, 0.0, 101));
  judge("(1,1)", product_law_ratio(g, 100, 1.0, 1.0, 102));
  judge("(1/2,1/2)", product_law_ratio(g, 100, 0.5, 0.5, 103));
  judge("hybrid", hybrid_product_ratio(g, 100, 104));
  judge("check", check_product_ratio(g, 100, 105));
  d.resize(d.size() - 2);
  return {ok, d};
}

Outcome determinism() {
#ifdef FROZENFLUX_CLI
  const std::string cli = FROZENFLUX_CLI;
#else
  const std::string cli = "frozenflux";
#endif
  const fs::path dir = scratch("determinism");
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "cfg.toml");
    os << "[grid]\nn = 32\n[ic]\ntype = \"two_mode\"\nepsilon = 1e-2\nseed = 11\n[run]\nt_final = 0.3\n";
  }
  auto run_cli = [&](const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + (dir / "log.txt").string() + "\" 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };
  const std::string cfg = (dir / "cfg.toml").string();
  const int a = run_cli("run --config \"" + cfg + "\" --threads 1 --out \"" + (dir / "a").string() + "\"");
  const int b = run_cli("run --config \"" + cfg + "\" --threads 3 --out \"" + (dir / "b").string() + "\"");
  const std::string la = slurp(dir / "a" / "ledger.csv"), lb = slurp(dir / "b" / "ledger.csv");
  const bool same = !la.empty() && la == lb;
  const int st = run_cli("selftest");
  return {a == 0 && b == 0 && same && st == 0,
          fmt("run exits %d/%d, ledgers %s (%zu bytes), selftest exit %d", a, b, same ? "byte-identical" : "DIFFER",
              la.size(), st)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double seconds;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {1, "symbol suite", kSymbolSeconds, symbol_suite},
      {2, "Littlewood-Paley suite", kLpSeconds, lp_suite},
      {3, "linear-mode validation", kLinearSeconds, linear_modes},
      {4, "nonlinear conservation run", kConservationSeconds, conservation_run},
      {5, "linearization slope", kSlopeSeconds, linearization_slope},
      {6, "self-convergence", kOrderSeconds, self_convergence},
      {7, "small-data boundedness", 0.0, small_data},
      {8, "product-law statistics", kProductSeconds, product_laws},
      {9, "determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.seconds == 0.0 || secs < c.seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.1f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_time ? "" : fmt(" > %.0f s budget", c.seconds).c_str());
    std::fflush(stdout);
  }
  return failures;
}
