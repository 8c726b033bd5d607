#pragma once

#include <algorithm>
#include <cmath>

#include "frozenflux/mhd/state.hpp"
#include "frozenflux/spectral/multiplier.hpp"

namespace frozenflux {

/// L-infinity residuals of the algebraic identities carried by generated data.
struct Residuals {
  double frozen_law = 0.0;      // |rho^{-1} A B - h0|
  double mass_jacobian = 0.0;   // |(1 + b) - det A|
  double h1_identity = 0.0;     // |H1 - A22|
  double h2_identity = 0.0;     // |H2 + A21|
  double trace_identity = 0.0;  // |b - tr A - det A| (script-A)
  double div_H = 0.0;
  double mean_b = 0.0;  // |mean of b|

  /// largest of the five algebraic residuals
  double max_identity() const {
    return std::max({frozen_law, mass_jacobian, h1_identity, h2_identity, trace_identity});
  }
};

inline Residuals compute_residuals(const MhdState& s) {
  const PhysicalField b = inverse(s.b());
  const PhysicalField h1 = inverse(s.H1()), h2 = inverse(s.H2());
  const PhysicalField a11 = inverse(s.A(0, 0)), a12 = inverse(s.A(0, 1));
  const PhysicalField a21 = inverse(s.A(1, 0)), a22 = inverse(s.A(1, 1));
  const PhysicalField divh = inverse(divergence(s.H1(), s.H2()));
  Residuals r;
  for (std::size_t m = 0; m < b.values.size(); ++m) {
    const double rho = 1.0 + b.values[m];
    const double A[2][2] = {{1.0 + a11.values[m], a12.values[m]}, {a21.values[m], 1.0 + a22.values[m]}};
    const double B[2] = {1.0 + h1.values[m], h2.values[m]};
    const double f1 = (A[0][0] * B[0] + A[0][1] * B[1]) / rho - 1.0;
    const double f2 = (A[1][0] * B[0] + A[1][1] * B[1]) / rho;
    const double det_a = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    const double det_pert = a11.values[m] * a22.values[m] - a12.values[m] * a21.values[m];
    r.frozen_law = std::max(r.frozen_law, std::hypot(f1, f2));
    r.mass_jacobian = std::max(r.mass_jacobian, std::abs(rho - det_a));
    r.h1_identity = std::max(r.h1_identity, std::abs(h1.values[m] - a22.values[m]));
    r.h2_identity = std::max(r.h2_identity, std::abs(h2.values[m] + a21.values[m]));
    r.trace_identity =
        std::max(r.trace_identity, std::abs(b.values[m] - (a11.values[m] + a22.values[m]) - det_pert));
    r.div_H = std::max(r.div_H, std::abs(divh.values[m]));
  }
  r.mean_b = std::abs(s.b().mean());
  return r;
}

}  // namespace frozenflux
