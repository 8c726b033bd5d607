#pragma once

#include <array>
#include <string_view>

#include "frozenflux/spectral/field.hpp"

namespace frozenflux {

/// Perturbation variables about (rho, u, B, A) = (1, 0, h0, I), all spectral:
/// b = rho - 1, u, H = B - h0 and the inverse deformation gradient perturbation
/// script-A = A - I.
struct MhdState {
  enum Slot : int { b_ = 0, u1_, u2_, H1_, H2_, A11_, A12_, A21_, A22_, count };
  static constexpr std::array<std::string_view, count> names{"b", "u1", "u2", "H1", "H2", "A11", "A12", "A21", "A22"};

  double t = 0.0;
  std::array<SpectralField, count> f;

  MhdState() = default;
  explicit MhdState(const Grid& g, double time = 0.0) : t(time) {
    for (auto& x : f) x = SpectralField(g);
  }

  const Grid& grid() const { return f[0].grid; }

  SpectralField& b() { return f[b_]; }
  SpectralField& u1() { return f[u1_]; }
  SpectralField& u2() { return f[u2_]; }
  SpectralField& H1() { return f[H1_]; }
  SpectralField& H2() { return f[H2_]; }
  /// script-A_{ij}, i, j in {0, 1}
  SpectralField& A(int i, int j) { return f[A11_ + 2 * i + j]; }
  const SpectralField& b() const { return f[b_]; }
  const SpectralField& u1() const { return f[u1_]; }
  const SpectralField& u2() const { return f[u2_]; }
  const SpectralField& H1() const { return f[H1_]; }
  const SpectralField& H2() const { return f[H2_]; }
  const SpectralField& A(int i, int j) const { return f[A11_ + 2 * i + j]; }
  const SpectralField& u(int i) const { return f[u1_ + i]; }
  const SpectralField& H(int i) const { return f[H1_ + i]; }
  SpectralField& u(int i) { return f[u1_ + i]; }
  SpectralField& H(int i) { return f[H1_ + i]; }

  /// this += s * o on every field (time untouched)
  MhdState& axpy(double s, const MhdState& o) {
    for (int i = 0; i < count; ++i) f[i].axpy(s, o.f[i]);
    return *this;
  }
};

inline void symmetrize(MhdState& s) {
  for (auto& x : s.f) symmetrize(x);
}

}  // namespace frozenflux
