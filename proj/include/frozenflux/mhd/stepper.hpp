#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "frozenflux/mhd/rhs.hpp"

namespace frozenflux {

/// Largest |xi| kept by the dealiasing rule.
inline double retained_wavenumber(const Grid& g, DealiasRule rule) {
  return g.kappa() * dealias_cutoff_index(g, rule) * std::numbers::sqrt2;
}

/// dt bound cfl * min(1 / (k_max (max|u| + max rho + max|B| / sqrt(rho_floor))), 1).
/// The sound speed is rho (P'(rho) = rho^2) and the Alfven speed |B|/sqrt(rho).
inline double cfl_dt(const MhdState& s, const Params& p) {
  const PhysicalField b = inverse(s.b());
  const PhysicalField u1 = inverse(s.u1()), u2 = inverse(s.u2());
  const PhysicalField h1 = inverse(s.H1()), h2 = inverse(s.H2());
  double umax = 0.0, rmax = 0.0, bmax = 0.0;
  for (std::size_t m = 0; m < b.values.size(); ++m) {
    umax = std::max(umax, std::hypot(u1.values[m], u2.values[m]));
    rmax = std::max(rmax, 1.0 + b.values[m]);
    bmax = std::max(bmax, std::hypot(1.0 + h1.values[m], h2.values[m]));
  }
  const double speed = umax + rmax + bmax / std::sqrt(p.rho_floor);
  const double kmax = retained_wavenumber(s.grid(), p.dealias);
  return p.cfl * std::min(1.0 / (kmax * speed), 1.0);
}

/// Fourth-order Runge-Kutta in Lawson (integrating factor) form. The viscous
/// symbol V = mu|xi|^2 I + (lambda+mu) xi xi^T acting on u is propagated by its
/// exact exponential
///   E(h) = e^{-mu|xi|^2 h} (I - n n^T) + e^{-(2mu+lambda)|xi|^2 h} n n^T,  n = xi/|xi|,
/// every other term is explicit.
class Stepper {
 public:
  Stepper(const Grid& g, const Params& p, int threads = 1) : grid_(g), params_(p), threads_(threads) { p.validate(); }

  const Params& params() const noexcept { return params_; }

  /// Applies E(h) to the velocity of s in place.
  void propagate(MhdState& s, double h) const {
    const Factor& f = factor(h);
    for (std::size_t m = 0; m < grid_.size(); ++m) {
      const Complex v1 = s.u1().coeffs[m], v2 = s.u2().coeffs[m];
      const Complex dot = f.n1[m] * v1 + f.n2[m] * v2;
      const double diff = f.par[m] - f.perp[m];
      s.u1().coeffs[m] = f.perp[m] * v1 + diff * f.n1[m] * dot;
      s.u2().coeffs[m] = f.perp[m] * v2 + diff * f.n2[m] * dot;
    }
  }

  MhdState tendency(const MhdState& s) const { return explicit_tendency(s, params_, threads_); }

  /// One step without the CFL and floor checks.
  MhdState step_unchecked(const MhdState& y, double h) const {
    const MhdState k1 = tendency(y);
    MhdState ya = y;
    ya.axpy(h / 2, k1);
    propagate(ya, h / 2);
    const MhdState k2 = tendency(ya);

    MhdState yb = y;
    propagate(yb, h / 2);
    yb.axpy(h / 2, k2);
    const MhdState k3 = tendency(yb);

    MhdState yc = y;
    propagate(yc, h);
    MhdState k3e = k3;
    propagate(k3e, h / 2);
    yc.axpy(h, k3e);
    const MhdState k4 = tendency(yc);

    // y_{n+1} = E(h) y + h/6 [E(h) k1 + 2 E(h/2)(k2 + k3) + k4]
    MhdState mid = k2;
    mid.axpy(1.0, k3);
    propagate(mid, h / 2);
    MhdState out = y;
    out.axpy(h / 6, k1);
    propagate(out, h);
    out.axpy(h / 3, mid);
    out.axpy(h / 6, k4);
    symmetrize(out);
    out.t = y.t + h;
    return out;
  }

  /// One checked step: dt must respect the CFL bound of the current state, and
  /// the new state must respect the density floor.
  MhdState step(const MhdState& y, double h) const {
    if (!(h > 0.0)) throw InvalidArgument("dt", "time step must be positive");
    const double bound = cfl_dt(y, params_);
    if (h > bound * (1.0 + 1e-12)) throw NumericalFault("cfl", "dt exceeds the CFL bound");
    MhdState out = step_unchecked(y, h);
    throw_if_nonfinite(out);
    if (min_density(inverse(out.b())) < params_.rho_floor)
      throw NumericalFault("density_floor", "density fell below rho_floor");
    return out;
  }

 private:
  struct Factor {
    std::vector<double> perp, par, n1, n2;
  };

  const Factor& factor(double h) const {
    auto it = cache_.find(h);
    if (it != cache_.end()) return it->second;
    if (cache_.size() > 16) cache_.clear();
    Factor f;
    const std::size_t size = grid_.size();
    f.perp.resize(size);
    f.par.resize(size);
    f.n1.resize(size);
    f.n2.resize(size);
    for (int i1 = 0; i1 < grid_.n(); ++i1)
      for (int i2 = 0; i2 < grid_.n(); ++i2) {
        const std::size_t m = grid_.index(i1, i2);
        const double k1 = grid_.wavenumber(i1), k2 = grid_.wavenumber(i2);
        const double r2 = k1 * k1 + k2 * k2;
        const double r = std::sqrt(r2);
        f.perp[m] = std::exp(-params_.mu * r2 * h);
        f.par[m] = std::exp(-(2 * params_.mu + params_.lambda) * r2 * h);
        f.n1[m] = r > 0 ? k1 / r : 0.0;
        f.n2[m] = r > 0 ? k2 / r : 0.0;
      }
    return cache_.emplace(h, std::move(f)).first->second;
  }

  static void throw_if_nonfinite(const MhdState& s) {
    for (const auto& x : s.f)
      for (const auto& c : x.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NumericalFault("nonfinite", "state is not finite");
  }

  Grid grid_;
  Params params_;
  int threads_;
  mutable std::map<double, Factor> cache_;
};

}  // namespace frozenflux
