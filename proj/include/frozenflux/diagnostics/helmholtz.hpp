#pragma once

#include <array>

#include "frozenflux/spectral/multiplier.hpp"

namespace frozenflux {

struct Helmholtz {
  SpectralField d;      // Lambda^{-1} div u
  SpectralField omega;  // Lambda^{-1} curl u, curl u = d2 u1 - d1 u2
};

inline Helmholtz helmholtz_split(const SpectralField& u1, const SpectralField& u2) {
  return {lambda_inv_div(u1, u2), lambda_inv_curl(u1, u2)};
}

/// u = -Lambda^{-1} grad d - Lambda^{-1} grad^perp omega with grad^perp = (d2, -d1).
/// Exact for mean-zero fields without content on the Nyquist lines.
inline std::array<SpectralField, 2> helmholtz_reconstruct(const Helmholtz& h) {
  const SpectralField a = lambda_pow(h.d, -1.0);
  const SpectralField b = lambda_pow(h.omega, -1.0);
  return {-1.0 * (dx1(a) + dx2(b)), -1.0 * (dx2(a) - dx1(b))};
}

}  // namespace frozenflux
