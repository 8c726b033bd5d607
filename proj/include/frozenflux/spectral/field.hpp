#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "frozenflux/spectral/grid.hpp"

namespace frozenflux {

using Complex = std::complex<double>;

/// Real samples of a field on the grid.
struct PhysicalField {
  Grid grid;
  std::vector<double> values;

  PhysicalField() = default;
  explicit PhysicalField(const Grid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}
  PhysicalField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
      throw InvalidArgument("dimension", "physical array size does not match grid");
    }
  }

  double& operator()(int i1, int i2) { return values[grid.index(i1, i2)]; }
  double operator()(int i1, int i2) const { return values[grid.index(i1, i2)]; }
};

/// Fourier coefficients of a (real) field over the full wavenumber lattice.
/// Normalization: the forward transform divides by n^2, so a constant field c
/// has coefficient c at xi = 0.
struct SpectralField {
  Grid grid;
  std::vector<Complex> coeffs;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.size(), Complex{}) {}
  SpectralField(const Grid& g, std::vector<Complex> c) : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != grid.size()) {
      throw InvalidArgument("dimension", "spectral array size does not match grid");
    }
  }

  Complex& operator()(int i1, int i2) { return coeffs[grid.index(i1, i2)]; }
  const Complex& operator()(int i1, int i2) const { return coeffs[grid.index(i1, i2)]; }

  Complex mean() const { return coeffs.front(); }

  SpectralField& operator+=(const SpectralField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  SpectralField& operator*=(double s) {
    for (auto& c : coeffs) c *= s;
    return *this;
  }
  /// this += s * o
  SpectralField& axpy(double s, const SpectralField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += s * o.coeffs[i];
    return *this;
  }
};

inline SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
inline SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
inline SpectralField operator*(double s, SpectralField a) { return a *= s; }

/// Largest deviation from Hermitian symmetry, relative to the largest coefficient.
inline double hermitian_defect(const SpectralField& f) {
  const Grid& g = f.grid;
  double worst = 0.0;
  double scale = 0.0;
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const Complex a = f(i1, i2);
      const Complex b = std::conj(f(g.mirror(i1), g.mirror(i2)));
      worst = std::max(worst, std::abs(a - b));
      scale = std::max(scale, std::abs(a));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

/// Projects onto the Hermitian-symmetric (real-field) subspace.
inline void symmetrize(SpectralField& f) {
  const Grid& g = f.grid;
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const int m1 = g.mirror(i1);
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const int m2 = g.mirror(i2);
      const std::size_t a = g.index(i1, i2);
      const std::size_t b = g.index(m1, m2);
      if (b < a) continue;
      const Complex avg = 0.5 * (f.coeffs[a] + std::conj(f.coeffs[b]));
      f.coeffs[a] = avg;
      f.coeffs[b] = std::conj(avg);
    }
  }
}

inline double max_abs(const PhysicalField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
  return m;
}

/// L^2(torus) norm through Plancherel: ||f||^2 = length^2 * sum |f_hat|^2.
inline double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs) s += std::norm(c);
  return f.grid.length() * std::sqrt(s);
}

/// L^2(torus) norm from samples: ||f||^2 = h^2 * sum f^2.
inline double l2_norm(const PhysicalField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return f.grid.spacing() * std::sqrt(s);
}

}  // namespace frozenflux
