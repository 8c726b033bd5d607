#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "frozenflux/diagnostics/residuals.hpp"
#include "frozenflux/errors.hpp"
#include "frozenflux/mhd/params.hpp"
#include "frozenflux/mhd/state.hpp"
#include "frozenflux/spectral/field_io.hpp"
#include "frozenflux/spectral/multiplier.hpp"

namespace frozenflux {

/// Builds a state satisfying the frozen-flux compatibility conditions from a
/// label map alpha(x) = x + d(x) and an initial velocity:
///   A0 = grad alpha,  rho0 = det A0,  B0 = (A0_22, -A0_21),
/// so b = rho0 - 1, H = B0 - h0 and script-A = grad d.
inline MhdState make_consistent_ic(const SpectralField& d1, const SpectralField& d2, const SpectralField& u1,
                                   const SpectralField& u2, const Params& p) {
  const Grid& g = d1.grid;
  require_same_grid(g, d2.grid);
  require_same_grid(g, u1.grid);
  require_same_grid(g, u2.grid);
  for (const SpectralField* d : {&d1, &d2}) {
    if (std::abs(d->mean()) > 1e-12 * std::max(1.0, max_abs(*d)))
      throw InvalidArgument("displacement_mean", "displacement must be mean-zero");
  }
  MhdState s(g);
  const SpectralField* d[2] = {&d1, &d2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s.A(i, j) = partial(*d[i], j);
  for (auto& f : s.f) symmetrize(f);

  const PhysicalField a11 = inverse(s.A(0, 0)), a12 = inverse(s.A(0, 1));
  const PhysicalField a21 = inverse(s.A(1, 0)), a22 = inverse(s.A(1, 1));
  PhysicalField b(g);
  double det_min = 1.0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double det = (1.0 + a11.values[m]) * (1.0 + a22.values[m]) - a12.values[m] * a21.values[m];
    det_min = std::min(det_min, det);
    b.values[m] = a11.values[m] + a22.values[m] + (a11.values[m] * a22.values[m] - a12.values[m] * a21.values[m]);
  }
  if (det_min < p.rho_floor) throw InvalidArgument("density_floor", "det(grad alpha) falls below rho_floor");
  s.b() = forward(b);
  symmetrize(s.b());
  s.H1() = s.A(1, 1);
  s.H2() = -1.0 * s.A(1, 0);
  s.u1() = u1;
  s.u2() = u2;
  symmetrize(s.u1());
  symmetrize(s.u2());
  return s;
}

/// The shear x -> x + (0, eps sin(mode kappa x1)) at rest.
inline MhdState shear_ic(const Grid& g, double eps, int mode, const Params& p) {
  if (mode < 1 || mode >= g.n() / 2) throw InvalidArgument("mode", "shear mode out of range");
  const double k = mode * g.kappa();
  SpectralField d2 = forward(sample(g, [&](double x1, double) { return eps * std::sin(k * x1); }));
  d2(0, 0) = 0.0;
  const SpectralField zero(g);
  return make_consistent_ic(zero, d2, zero, zero, p);
}

/// Two-mode displacement and velocity with seeded phases:
///   d = eps (cos(k(x1 + 2 x2) + p0), sin(k(2 x1 - x2) + p1)),
///   u = eps (sin(k x2 + p2), sin(k x1 + p3)).
inline MhdState two_mode_ic(const Grid& g, double eps, std::uint64_t seed, const Params& p) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  double ph[4];
  for (double& x : ph) x = phase(rng);
  const double k = g.kappa();
  auto f = [&](auto fn) {
    SpectralField x = forward(sample(g, fn));
    x(0, 0) = 0.0;
    return x;
  };
  const SpectralField d1 = f([&](double x1, double x2) { return eps * std::cos(k * (x1 + 2 * x2) + ph[0]); });
  const SpectralField d2 = f([&](double x1, double x2) { return eps * std::sin(k * (2 * x1 - x2) + ph[1]); });
  const SpectralField u1 = f([&](double, double x2) { return eps * std::sin(k * x2 + ph[2]); });
  const SpectralField u2 = f([&](double x1, double) { return eps * std::sin(k * x1 + ph[3]); });
  return make_consistent_ic(d1, d2, u1, u2, p);
}

/// State dumps are nine consecutive FFLX1 spectral records in slot order
/// b, u1, u2, H1, H2, A11, A12, A21, A22.
inline void write_state(std::ostream& os, const MhdState& s) {
  for (const auto& f : s.f) fflx::write(os, f);
}

inline void write_state_file(const std::string& path, const MhdState& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("output", "cannot open " + path);
  write_state(os, s);
  if (!os) throw InvalidArgument("output", "failed writing " + path);
}

inline MhdState read_state(std::istream& is) {
  MhdState s;
  for (auto& f : s.f) f = fflx::read_spectral(is);
  for (const auto& f : s.f) require_same_grid(s.f[0].grid, f.grid);
  return s;
}

inline MhdState read_state_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("fflx_open", "cannot open " + path);
  return read_state(is);
}

/// Accepts externally supplied data only if it already satisfies the identities.
inline void require_consistent(const MhdState& s, double tol) {
  const Residuals r = compute_residuals(s);
  if (!(r.max_identity() <= tol) || !(r.div_H <= tol))
    throw InvalidArgument("inconsistent_ic", "initial state violates the frozen-flux identities");
}

}  // namespace frozenflux
