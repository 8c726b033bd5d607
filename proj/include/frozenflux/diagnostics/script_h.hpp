#pragma once

#include <array>
#include <cmath>

#include "frozenflux/mhd/state.hpp"
#include "frozenflux/spectral/multiplier.hpp"
#include "frozenflux/symbol/symbols.hpp"

namespace frozenflux {

/// Diagonalized magnetic variables: script-H = P(D) h with h = grad(b + H1) - d1 H,
/// and the weighted components lambda_-^{-1/2} script-H_1, lambda_+^{-1/2} script-H_2.
struct ScriptH {
  SpectralField h1, h2;
  SpectralField weighted1, weighted2;
};

namespace detail {

/// Symbol of lambda_-^{-1/2} script-H_1 as a map (b, H1, H2) -> value. Bounded:
/// script-H_1 carries a factor xi1 and lambda_-^{1/2} = |xi1| / sqrt(1 + s).
/// On xi1 = 0 the value is set to 0 (script-H_1 itself vanishes there).
inline std::array<Complex, 3> fused_weighted_h1(double k1, double k2) {
  using namespace std::complex_literals;
  if (k1 == 0.0) return {0.0, 0.0, 0.0};
  const double sgn1 = k1 > 0 ? 1.0 : -1.0;
  if (k2 == 0.0) {
    const Complex v = -1i * sgn1 / std::numbers::sqrt2;
    return {v, 0.0, v};
  }
  const double r = std::hypot(k1, k2);
  const double s = std::abs(k2) / r;
  const double c = s / (1.0 + s);
  const double sigma = k2 > 0 ? 1.0 : -1.0;
  const double nrm = std::sqrt(k2 * k2 + k1 * k1 * c * c);
  const Complex pre = 1i * (sigma * sgn1 * std::sqrt(1.0 + s) / nrm);
  return {pre * (k2 * (-1.0 / (1.0 + s))), pre * (c * k2), pre * (-c * k1)};
}

}  // namespace detail

inline ScriptH compute_script_H(const SpectralField& b, const SpectralField& H1, const SpectralField& H2) {
  using namespace std::complex_literals;
  const Grid& g = b.grid;
  require_same_grid(g, H1.grid);
  require_same_grid(g, H2.grid);
  ScriptH out{SpectralField(g), SpectralField(g), SpectralField(g), SpectralField(g)};
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const double k1 = g.odd_wavenumber(i1);
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double k2 = g.odd_wavenumber(i2);
      if (k1 == 0.0 && k2 == 0.0) continue;
      const std::size_t m = g.index(i1, i2);
      const Complex bb = b.coeffs[m], x1 = H1.coeffs[m], x2 = H2.coeffs[m];
      const Complex f1 = 1i * k1 * bb;
      const Complex f2 = 1i * k2 * (bb + x1) - 1i * k1 * x2;
      const Frequency xi{k1, k2};
      const Mat2 p = projector_P(xi);
      out.h1.coeffs[m] = p.a11 * f1 + p.a12 * f2;
      out.h2.coeffs[m] = p.a21 * f1 + p.a22 * f2;
      const auto w = detail::fused_weighted_h1(k1, k2);
      out.weighted1.coeffs[m] = w[0] * bb + w[1] * x1 + w[2] * x2;
      out.weighted2.coeffs[m] = out.h2.coeffs[m] / std::sqrt(eigen_lambda(xi).plus);
    }
  }
  return out;
}

inline ScriptH compute_script_H(const MhdState& s) { return compute_script_H(s.b(), s.H1(), s.H2()); }

/// P(D) u = (u, w): velocity in the diagonalizing frame.
inline std::array<SpectralField, 2> diagonal_velocity(const SpectralField& u1, const SpectralField& u2) {
  const Grid& g = u1.grid;
  require_same_grid(g, u2.grid);
  std::array<SpectralField, 2> out{SpectralField(g), SpectralField(g)};
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const double k1 = g.odd_wavenumber(i1);
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double k2 = g.odd_wavenumber(i2);
      const std::size_t m = g.index(i1, i2);
      if (k1 == 0.0 && k2 == 0.0) {
        out[0].coeffs[m] = u1.coeffs[m];
        out[1].coeffs[m] = u2.coeffs[m];
        continue;
      }
      const Mat2 p = projector_P({k1, k2});
      out[0].coeffs[m] = p.a11 * u1.coeffs[m] + p.a12 * u2.coeffs[m];
      out[1].coeffs[m] = p.a21 * u1.coeffs[m] + p.a22 * u2.coeffs[m];
    }
  }
  return out;
}

}  // namespace frozenflux
