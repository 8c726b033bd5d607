#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "frozenflux/errors.hpp"

namespace frozenflux {

/// Uniform n x n grid on the periodic square [0, length)^2.
///
/// Storage is row-major with the x1 index outermost: entry (i1, i2) sits at
/// i1 * n + i2 and corresponds to x = (i1 h, i2 h), h = length / n. The same
/// layout is used for Fourier coefficients, where index i maps to the integer
/// lattice value i for i <= n/2 and i - n otherwise, so the lattice runs over
/// {-n/2+1, ..., n/2} and wavenumbers are that value times 2 pi / length.
class Grid {
 public:
  Grid() = default;
  explicit Grid(int n, double length = 2.0 * std::numbers::pi) : n_(n), length_(length) {
    if (n < 16 || (n & (n - 1)) != 0) {
      throw InvalidArgument("grid_n", "grid size must be a power of two >= 16, got " + std::to_string(n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
      throw InvalidArgument("grid_length", "grid length must be positive and finite");
    }
  }

  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }
  double spacing() const noexcept { return length_ / n_; }
  /// Wavenumber of lattice value 1.
  double kappa() const noexcept { return 2.0 * std::numbers::pi / length_; }

  std::size_t index(int i1, int i2) const noexcept {
    return static_cast<std::size_t>(i1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i2);
  }

  /// Integer lattice value of storage index i.
  int lattice(int i) const noexcept { return i <= n_ / 2 ? i : i - n_; }
  /// Storage index holding lattice value -lattice(i).
  int mirror(int i) const noexcept { return (n_ - i) % n_; }
  bool is_nyquist(int i) const noexcept { return i == n_ / 2; }

  double wavenumber(int i) const noexcept { return kappa() * lattice(i); }
  /// Wavenumber used by odd symbols (i xi_j): zero on the Nyquist line so the
  /// symbol stays reality preserving.
  double odd_wavenumber(int i) const noexcept { return is_nyquist(i) ? 0.0 : wavenumber(i); }

  double coordinate(int i) const noexcept { return spacing() * i; }

  /// Largest |xi| over the lattice (the corner (n/2, n/2)).
  double max_wavenumber_norm() const noexcept { return kappa() * (n_ / 2) * std::numbers::sqrt2; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  int n_ = 16;
  double length_ = 2.0 * std::numbers::pi;
};

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) {
    throw InvalidArgument("grid_mismatch", "fields live on different grids");
  }
}

}  // namespace frozenflux
