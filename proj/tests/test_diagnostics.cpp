#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <tuple>

#include "frozenflux/diagnostics/energy.hpp"
#include "frozenflux/diagnostics/helmholtz.hpp"
#include "frozenflux/diagnostics/ledger.hpp"
#include "frozenflux/mhd/run.hpp"

using namespace frozenflux;
using namespace std::complex_literals;

namespace {

SpectralField field(const Grid& g, auto fn) { return forward(sample(g, fn)); }

SpectralField random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  PhysicalField p(g);
  for (double& v : p.values) v = nd(rng);
  SpectralField f = forward(p);
  f(0, 0) = 0.0;
  return f;
}

MhdState random_state(const Grid& g, std::mt19937_64& rng) {
  MhdState s(g);
  for (auto& f : s.f) f = random_field(g, rng);
  return s;
}

double l2(const SpectralField& a, const SpectralField& b) { return std::hypot(l2_norm(a), l2_norm(b)); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST(Helmholtz, GradientHasNoVorticity) {
  const Grid g(32);
  const SpectralField phi = field(g, [](double x1, double x2) { return std::sin(x1 + x2); });
  const Helmholtz h = helmholtz_split(dx1(phi), dx2(phi));
  EXPECT_LE(max_abs(h.omega), 1e-14);
  EXPECT_GT(max_abs(h.d), 0.5);
}

TEST(Helmholtz, ShearModeSymbol) {
  const Grid g(32);
  const SpectralField u1 = field(g, [](double, double x2) { return std::sin(x2); });
  const Helmholtz h = helmholtz_split(u1, SpectralField(g));
  EXPECT_LE(max_abs(h.d), 1e-15);
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
      const double r = std::hypot(k1, k2);
      const Complex want = r > 0 ? 1i * g.odd_wavenumber(i2) * u1(i1, i2) / r : 0.0;
      EXPECT_LE(std::abs(h.omega(i1, i2) - want), 1e-15);
    }
}

TEST(Helmholtz, OrthogonalDecompositionAndReconstruction) {
  const Grid g(32);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    SpectralField u1 = dealias(random_field(g, rng), DealiasRule::two_thirds);
    SpectralField u2 = dealias(random_field(g, rng), DealiasRule::two_thirds);
    const Helmholtz h = helmholtz_split(u1, u2);
    EXPECT_NEAR(l2(h.d, h.omega), l2(u1, u2), 1e-12 * l2(u1, u2));
    const auto back = helmholtz_reconstruct(h);
    EXPECT_LE(max_abs(back[0] - u1), 1e-12);
    EXPECT_LE(max_abs(back[1] - u2), 1e-12);
  }
}

TEST(ScriptH, ZeroInputGivesZero) {
  const Grid g(16);
  const ScriptH sh = compute_script_H(MhdState(g));
  for (const auto* f : {&sh.h1, &sh.h2, &sh.weighted1, &sh.weighted2}) EXPECT_EQ(max_abs(*f), 0.0);
}

TEST(ScriptH, AxisModeHasNoFirstComponent) {
  const Grid g(16);
  SpectralField b(g);
  b(0, 1) = 1.0;
  b(0, g.n() - 1) = 1.0;
  const ScriptH sh = compute_script_H(b, SpectralField(g), SpectralField(g));
  EXPECT_EQ(max_abs(sh.h1), 0.0);
  EXPECT_EQ(max_abs(sh.weighted1), 0.0);
  EXPECT_NEAR(std::abs(sh.h2(0, 1)), 1.0, 1e-15);
}

TEST(ScriptH, PlancherelTransfer) {
  const Grid g(32);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const MhdState s = random_state(g, rng);
    const ScriptH sh = compute_script_H(s);
    const SpectralField f1 = dx1(s.b());
    const SpectralField f2 = dx2(s.b() + s.H1()) - dx1(s.H2());
    EXPECT_NEAR(l2(sh.h1, sh.h2), l2(f1, f2), 1e-12 * l2(f1, f2));
    const auto pu = diagonal_velocity(s.u1(), s.u2());
    EXPECT_NEAR(l2(pu[0], pu[1]), l2(s.u1(), s.u2()), 1e-12 * l2(s.u1(), s.u2()));
  }
}

TEST(ScriptH, FusedSymbolMatchesWeightedProjection) {
  const Grid g(32);
  std::mt19937_64 rng(3);
  const MhdState s = random_state(g, rng);
  const ScriptH sh = compute_script_H(s);
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double k1 = g.odd_wavenumber(i1), k2 = g.odd_wavenumber(i2);
      if (k1 == 0.0) continue;
      const LambdaPair lam = eigen_lambda({k1, k2});
      EXPECT_LE(std::abs(sh.weighted1(i1, i2) * std::sqrt(lam.minus) - sh.h1(i1, i2)), 1e-13);
      EXPECT_LE(std::abs(sh.weighted2(i1, i2) * std::sqrt(lam.plus) - sh.h2(i1, i2)), 1e-13);
    }
}

TEST(ScriptH, FusedSymbolSmallXi1Limit) {
  // one-sided limits as xi1 -> 0+ and 0- are -+ i (1, -1, 0) / sqrt 2; the value on the axis is their mean
  const Complex lim = -1i / std::numbers::sqrt2;
  for (double k2 : {1.0, -3.0, 0.25}) {
    for (double d : {1e-4, 1e-6, 1e-8}) {
      for (double sgn : {1.0, -1.0}) {
        const auto w = detail::fused_weighted_h1(sgn * d, k2);
        EXPECT_LE(std::abs(w[0] - sgn * lim), 2 * d / std::abs(k2));
        EXPECT_LE(std::abs(w[1] + sgn * lim), 2 * d / std::abs(k2));
        EXPECT_LE(std::abs(w[2]), 2 * d / std::abs(k2));
      }
    }
    const auto w0 = detail::fused_weighted_h1(0.0, k2);
    for (const auto& c : w0) EXPECT_EQ(c, Complex(0.0));
  }
  for (double k1 : {1e-3, 0.5, 7.0}) {
    const auto w = detail::fused_weighted_h1(k1, 0.0);
    EXPECT_LE(std::abs(w[0] - lim), 1e-15);
    EXPECT_EQ(w[1], Complex(0.0));
    EXPECT_LE(std::abs(w[2] - lim), 1e-15);
  }
}

TEST(ScriptH, WeightedSymbolsAreBounded) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ud(-50.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto w = detail::fused_weighted_h1(ud(rng), ud(rng));
    for (const auto& c : w) worst = std::max(worst, std::abs(c));
  }
  EXPECT_LE(worst, 1.0);
}

TEST(Residuals, EquilibriumIsZero) {
  const Residuals r = compute_residuals(MhdState(Grid(16)));
  EXPECT_EQ(r.max_identity(), 0.0);
  EXPECT_EQ(r.div_H, 0.0);
  EXPECT_EQ(r.mean_b, 0.0);
}

TEST(Residuals, InjectedFaultIsMeasuredExactly) {
  MhdState s(Grid(16));
  s.H2()(0, 0) = 1e-3;
  const Residuals r = compute_residuals(s);
  EXPECT_EQ(r.h2_identity, 1e-3);
  EXPECT_EQ(r.h1_identity, 0.0);
  EXPECT_EQ(r.mass_jacobian, 0.0);

  MhdState t = shear_ic(Grid(32), 1e-3, 1, Params{});
  t.H2()(0, 0) += 1e-3;
  EXPECT_NEAR(compute_residuals(t).h2_identity, 1e-3, 1e-15);
}

TEST(Residuals, EachIdentityIsSensitive) {
  const Grid g(16);
  const MhdState base = two_mode_ic(g, 1e-2, 1, Params{});
  MhdState s = base;
  s.A(1, 1)(0, 0) += 1e-4;
  Residuals r = compute_residuals(s);
  EXPECT_GT(r.h1_identity, 0.9e-4);
  EXPECT_GT(r.mass_jacobian, 0.9e-4);
  EXPECT_GT(r.trace_identity, 0.9e-4);
  s = base;
  s.A(0, 0)(0, 0) += 1e-4;
  r = compute_residuals(s);
  EXPECT_GT(r.frozen_law, 0.9e-4);
  EXPECT_EQ(r.h1_identity, compute_residuals(base).h1_identity);
  s = base;
  s.H1() += 1e-4 * dx1(field(g, [](double x1, double x2) { return std::cos(x1 + x2); }));
  EXPECT_GT(compute_residuals(s).div_H, 0.9e-4);
}

TEST(Accumulator, ZeroTrajectory) {
  std::vector<LedgerRow> rows(3);
  for (int i = 0; i < 3; ++i) rows[i].t = i * 0.5;
  for (double x : compute_X(rows)) EXPECT_EQ(x, 0.0);
  EXPECT_THROW(compute_X({}), InvalidArgument);
}

TEST(Accumulator, FrozenDeformationKeepsX) {
  const Grid g(16);
  const SpectralField z(g);
  MhdState s = make_consistent_ic(field(g, [](double, double x2) { return 1e-2 * std::sin(x2); }), z, z, z, Params{});
  EXPECT_LE(std::sqrt([&] {
              double m = 0;
              for (const auto& f : rhs(s, Params{}).f) m = std::max(m, max_abs(f));
              return m;
            }()),
            1e-7);
  const LittlewoodPaley lp(g);
  std::vector<LedgerRow> rows(2);
  rows[0].norms = rows[1].norms = sample_norms(lp, s);
  rows[1].t = 1.0;
  const auto X = compute_X(rows);
  EXPECT_EQ(X[0], X[1]);
  EXPECT_GT(X[0], 0.0);
}

TEST(Accumulator, RejectsNonIncreasingTime) {
  XAccumulator acc;
  acc.add(0.0, {});
  EXPECT_THROW(acc.add(0.0, {}), InvalidArgument);
}

TEST(Dissipation, SingleRowAndConstant) {
  std::vector<LedgerRow> rows(1);
  rows[0].norms.u_hatB2 = 3.0;
  DissipationIntegrals d = accumulate_dissipation(rows);
  EXPECT_EQ(d.u_L1_hatB2, 0.0);
  rows.resize(11);
  for (int i = 0; i < 11; ++i) {
    rows[i].t = i * 0.1;
    rows[i].norms.u_hatB2 = 3.0;
  }
  d = accumulate_dissipation(rows);
  EXPECT_NEAR(d.u_L1_hatB2, 3.0, 1e-14);
}

TEST(Dissipation, ExponentialClosedForm) {
  std::vector<LedgerRow> rows(2001);
  for (int i = 0; i <= 2000; ++i) {
    rows[i].t = i * 1e-3;
    rows[i].norms.b_hatB1 = std::exp(-rows[i].t);
  }
  const DissipationIntegrals d = accumulate_dissipation(rows);
  EXPECT_NEAR(d.b_L2_hatB1, std::sqrt((1 - std::exp(-4.0)) / 2), 1e-4);
  EXPECT_NEAR(d.b_L2_hatB1, 0.70066, 1e-4);
}

TEST(Ledger, CsvRoundTripIsExact) {
  LedgerRow r;
  r.t = 0.1;
  r.norms.A_hatB1 = 1.0 / 3.0;
  r.norms.u_hatB2 = std::exp(1.0);
  r.residuals.frozen_law = 1e-17;
  r.X = 2.0 / 7.0;
  std::stringstream ss;
  ss << ledger_header() << '\n';
  write_ledger_row(ss, r);
  const auto rows = read_ledger(ss);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(ledger_values(rows[0]), ledger_values(r));
  EXPECT_EQ(ledger_columns.size(), 26u);
  EXPECT_EQ(std::string(ledger_columns.front()), "t");
  EXPECT_EQ(std::string(ledger_columns.back()), "X");

  std::stringstream bad("t,X\n0,0\n");
  EXPECT_THROW(read_ledger(bad), InvalidArgument);
}

TEST(Energy, ZeroStateAndIotaZero) {
  const Grid g(16);
  const LittlewoodPaley lp(g);
  const LinearVariables zero = make_linear_variables(MhdState(g));
  EXPECT_EQ(energy_fqk(zero, lp, 0, 0, Branch::minus, 0.1), 0.0);
  EXPECT_EQ(energy_fqk(zero, lp, 0, 0, Branch::plus, 0.1), 0.0);

  std::mt19937_64 rng(2);
  const LinearVariables lv = make_linear_variables(random_state(g, rng));
  const DyadicRanges& r = lp.ranges();
  int checked = 0;
  for (int q = r.q_min; q <= r.q_max; ++q)
    for (int k = r.k_min; k <= r.k_max; ++k) {
      if (k + 1 >= 2 * q) {
        const double a = l2_norm(lp.block(lv.u, q, k)), c = l2_norm(lp.block(lv.h.weighted1, q, k));
        EXPECT_NEAR(energy_fqk(lv, lp, q, k, Branch::minus, 0.0), std::hypot(a, c), 1e-12 * (1 + std::hypot(a, c)));
        ++checked;
      }
      if (q <= 1) {
        const double a = l2_norm(lp.block(lv.w, q, k)), c = l2_norm(lp.block(lv.h.weighted2, q, k));
        EXPECT_NEAR(energy_fqk(lv, lp, q, k, Branch::plus, 0.0), std::hypot(a, c), 1e-12 * (1 + std::hypot(a, c)));
        ++checked;
      }
    }
  EXPECT_GT(checked, 10);
}

TEST(Energy, PositivitySweep) {
  const Grid g(16);
  const LittlewoodPaley lp(g);
  const DyadicRanges& r = lp.ranges();
  // a block counts for a branch when it holds a mode where that branch's form is not identically zero;
  // the minus form off the iota range vanishes on xi1 = 0, the kernel of lambda_-
  std::vector<std::tuple<int, int, Branch>> nonempty;
  for (int q = r.q_min; q <= r.q_max; ++q)
    for (int k = r.k_min; k <= r.k_max; ++k)
      for (Branch b : {Branch::minus, Branch::plus}) {
        const bool needs_xi1 = b == Branch::minus && k + 1 < 2 * q;
        for (int i1 = 0; i1 < g.n(); ++i1)
          for (int i2 = 0; i2 < g.n(); ++i2) {
            const double k1 = g.odd_wavenumber(i1), k2 = g.odd_wavenumber(i2);
            if ((k1 == 0.0 && k2 == 0.0) || (needs_xi1 && k1 == 0.0)) continue;
            if (lp.block_weight(g.index(i1, i2), q, k) > 0.0) {
              nonempty.emplace_back(q, k, b);
              i1 = g.n();
              break;
            }
          }
      }
  ASSERT_GT(nonempty.size(), 20u);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const LinearVariables lv = make_linear_variables(random_state(g, rng));
    for (auto [q, k, b] : nonempty) EXPECT_GT(energy_fqk(lv, lp, q, k, b, 0.1), 0.0);
  }
}

TEST(Energy, ReportsIndefiniteFormAndRange) {
  const Grid g(16);
  const LittlewoodPaley lp(g);
  std::mt19937_64 rng(4);
  const LinearVariables lv = make_linear_variables(random_state(g, rng));
  auto key_of = [&](int q, int k, Branch b, double iota) {
    try {
      energy_fqk(lv, lp, q, k, b, iota);
    } catch (const InvalidArgument& e) {
      return e.key();
    }
    return std::string("ok");
  };
  EXPECT_EQ(key_of(1, 1, Branch::plus, 100.0), "indefinite_form");
  EXPECT_EQ(key_of(lp.ranges().q_max + 1, 0, Branch::minus, 0.0), "dyadic_range");
}

TEST(MagneticControl, MagneticNormsControlledByDiagonalVariables) {
  RunConfig c;
  c.n = 16;
  c.ic.type = "two_mode";
  c.ic.epsilon = 1e-3;
  c.run.t_final = 0.5;
  c.run.output_dir = (std::filesystem::temp_directory_path() / "frozenflux_test_magnetic").string();
  const RunResult res = run(c);
  std::vector<double> ratio;
  for (const auto& row : res.rows) {
    const NormSample& n = row.norms;
    EXPECT_LE(n.A_hatB1, 0.1);
    const double num = std::max(n.b_hatB0, n.b_hatB1) + std::max(n.H_hatB0, n.H_hatB1);
    const double den = n.wH1_tildeB01 + std::max(n.wH2_hatB0, n.wH2_hatB1);
    ASSERT_GT(den, 0.0);
    ratio.push_back(num / den);
  }
  EXPECT_LE(*std::max_element(ratio.begin(), ratio.end()), 5 * median(ratio));
}
