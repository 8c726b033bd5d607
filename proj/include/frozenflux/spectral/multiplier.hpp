#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "frozenflux/spectral/fft.hpp"

namespace frozenflux {

/// Applies the Fourier multiplier m(k1, k2) (wavenumbers, not lattice indices).
/// The value at xi = 0 is never evaluated; `zero_value` is used instead.
template <class Symbol>
SpectralField apply_multiplier(const SpectralField& f, Symbol&& m, Complex zero_value = Complex{}) {
  const Grid& g = f.grid;
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const double k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const std::size_t idx = g.index(i1, i2);
      if (i1 == 0 && i2 == 0) {
        out.coeffs[idx] = zero_value * f.coeffs[idx];
        continue;
      }
      const Complex v = m(k1, g.wavenumber(i2));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw InvalidArgument("multiplier", "symbol is not finite at lattice point (" + std::to_string(g.lattice(i1)) +
                                                ", " + std::to_string(g.lattice(i2)) + ")");
      }
      out.coeffs[idx] = v * f.coeffs[idx];
    }
  }
  return out;
}

/// Applies a 2x2 matrix symbol {m11, m12, m21, m22} to the vector field (f1, f2).
/// The xi = 0 output is zero.
template <class Symbol>
std::array<SpectralField, 2> apply_multiplier(const SpectralField& f1, const SpectralField& f2, Symbol&& m) {
  require_same_grid(f1.grid, f2.grid);
  const Grid& g = f1.grid;
  std::array<SpectralField, 2> out{SpectralField(g), SpectralField(g)};
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const double k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.n(); ++i2) {
      if (i1 == 0 && i2 == 0) continue;
      const std::size_t idx = g.index(i1, i2);
      const std::array<Complex, 4> v = m(k1, g.wavenumber(i2));
      for (const auto& e : v) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
          throw InvalidArgument("multiplier", "matrix symbol is not finite at a nonzero lattice point");
        }
      }
      out[0].coeffs[idx] = v[0] * f1.coeffs[idx] + v[1] * f2.coeffs[idx];
      out[1].coeffs[idx] = v[2] * f1.coeffs[idx] + v[3] * f2.coeffs[idx];
    }
  }
  return out;
}

namespace detail {

/// Loops over modes handing the callback (index, odd k1, odd k2, |xi|).
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const double k1 = g.odd_wavenumber(i1);
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double k2 = g.odd_wavenumber(i2);
      fn(g.index(i1, i2), k1, k2);
    }
  }
}

}  // namespace detail

inline SpectralField dx1(const SpectralField& f) {
  SpectralField out(f.grid);
  detail::for_each_mode(f.grid, [&](std::size_t i, double k1, double) {
    out.coeffs[i] = Complex(0.0, k1) * f.coeffs[i];
  });
  return out;
}

inline SpectralField dx2(const SpectralField& f) {
  SpectralField out(f.grid);
  detail::for_each_mode(f.grid, [&](std::size_t i, double, double k2) {
    out.coeffs[i] = Complex(0.0, k2) * f.coeffs[i];
  });
  return out;
}

inline SpectralField partial(const SpectralField& f, int axis) { return axis == 0 ? dx1(f) : dx2(f); }

/// Lambda^s = |D|^s. For s < 0 the xi = 0 coefficient is set to zero; for s = 0 it is the identity.
inline SpectralField lambda_pow(const SpectralField& f, double s) {
  const Complex zero = s == 0.0 ? Complex(1.0) : Complex{};
  return apply_multiplier(f, [s](double k1, double k2) { return Complex(std::pow(std::hypot(k1, k2), s)); }, zero);
}

inline SpectralField laplacian(const SpectralField& f) {
  return apply_multiplier(f, [](double k1, double k2) { return Complex(-(k1 * k1 + k2 * k2)); });
}

inline SpectralField divergence(const SpectralField& u1, const SpectralField& u2) { return dx1(u1) + dx2(u2); }

/// Lambda^{-1} div u, i.e. i xi . u_hat / |xi|; zero mode set to 0.
inline SpectralField lambda_inv_div(const SpectralField& u1, const SpectralField& u2) {
  require_same_grid(u1.grid, u2.grid);
  const Grid& g = u1.grid;
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) {
      if (i1 == 0 && i2 == 0) continue;
      const std::size_t i = g.index(i1, i2);
      const double r = std::hypot(g.wavenumber(i1), g.wavenumber(i2));
      out.coeffs[i] = Complex(0.0, 1.0 / r) * (g.odd_wavenumber(i1) * u1.coeffs[i] + g.odd_wavenumber(i2) * u2.coeffs[i]);
    }
  }
  return out;
}

/// Lambda^{-1} curl u with curl u = d2 u1 - d1 u2; zero mode set to 0.
inline SpectralField lambda_inv_curl(const SpectralField& u1, const SpectralField& u2) {
  require_same_grid(u1.grid, u2.grid);
  const Grid& g = u1.grid;
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) {
      if (i1 == 0 && i2 == 0) continue;
      const std::size_t i = g.index(i1, i2);
      const double r = std::hypot(g.wavenumber(i1), g.wavenumber(i2));
      out.coeffs[i] = Complex(0.0, 1.0 / r) * (g.odd_wavenumber(i2) * u1.coeffs[i] - g.odd_wavenumber(i1) * u2.coeffs[i]);
    }
  }
  return out;
}

enum class DealiasRule { two_thirds, half };

inline double dealias_fraction(DealiasRule rule) { return rule == DealiasRule::two_thirds ? 2.0 / 3.0 : 0.5; }

/// Largest lattice value kept by the rule.
inline int dealias_cutoff_index(const Grid& g, DealiasRule rule) {
  return static_cast<int>(std::floor(dealias_fraction(rule) * (g.n() / 2)));
}

/// Zeroes every mode with max(|xi1|, |xi2|) > fraction * (n/2) * kappa.
inline void dealias_in_place(SpectralField& f, DealiasRule rule) {
  const Grid& g = f.grid;
  const double cut = dealias_fraction(rule) * (g.n() / 2);
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const bool drop1 = std::abs(g.lattice(i1)) > cut;
    for (int i2 = 0; i2 < g.n(); ++i2) {
      if (drop1 || std::abs(g.lattice(i2)) > cut) f(i1, i2) = Complex{};
    }
  }
}

inline SpectralField dealias(SpectralField f, DealiasRule rule) {
  dealias_in_place(f, rule);
  return f;
}

/// Pointwise product formed on the grid, then dealiased.
inline SpectralField product(const SpectralField& f, const SpectralField& g, DealiasRule rule) {
  require_same_grid(f.grid, g.grid);
  PhysicalField a = inverse(f);
  const PhysicalField b = inverse(g);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] *= b.values[i];
  return dealias(forward(a), rule);
}

}  // namespace frozenflux
