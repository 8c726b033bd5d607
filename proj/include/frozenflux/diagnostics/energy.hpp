#pragma once

#include <cmath>

#include "frozenflux/diagnostics/script_h.hpp"
#include "frozenflux/errors.hpp"
#include "frozenflux/spectral/littlewood_paley.hpp"
#include "frozenflux/symbol/linear_mode.hpp"

namespace frozenflux {

/// Velocity in the diagonal frame (u, w) = P(D) u together with script-H and its weightings.
struct LinearVariables {
  SpectralField u, w;
  ScriptH h;
};

inline LinearVariables make_linear_variables(const MhdState& s) {
  auto pu = diagonal_velocity(s.u1(), s.u2());
  return {std::move(pu[0]), std::move(pu[1]), compute_script_H(s)};
}

/// Block energy f_{q,k} of one branch.
///
/// minus, k + 1 >= 2q: |D u|^2 + |D lam_-^{-1/2} H1|^2 + iota 2^{2q-2k+1} (D u | D H1)
/// minus, k + 1 <  2q: 2|Lam^{-2} lam_- D u|^2 + |D H1|^2 + 2 (Lam^{-2} lam_- D u | D H1)
/// plus,  q <= 1:      |D w|^2 + |D lam_+^{-1/2} H2|^2 + 2 iota (D w | D H2)
/// plus,  q >  1:      2|Lam^{-2} lam_+ D w|^2 + |D H2|^2 + 2 (Lam^{-2} lam_+ D w | D H2)
///
/// with D = Delta_{q,k}. The forms with iota are checked mode by mode for
/// positivity; an indefinite form throws.
inline double energy_fqk(const LinearVariables& lv, const LittlewoodPaley& lp, int q, int k, Branch branch,
                         double iota) {
  const Grid& g = lp.grid();
  const DyadicRanges& r = lp.ranges();
  if (q < r.q_min || q > r.q_max || k < r.k_min || k > r.k_max)
    throw InvalidArgument("dyadic_range", "block outside configured range");
  const bool minus = branch == Branch::minus;
  const bool with_iota = minus ? (k + 1 >= 2 * q) : (q <= 1);
  const SpectralField& vel = minus ? lv.u : lv.w;
  const SpectralField& hh = minus ? lv.h.h1 : lv.h.h2;
  const SpectralField& wh = minus ? lv.h.weighted1 : lv.h.weighted2;
  const double cross = minus ? iota * std::exp2(2 * q - 2 * k + 1) : 2.0 * iota;

  double sum = 0.0;
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const double k1 = g.odd_wavenumber(i1);
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double k2 = g.odd_wavenumber(i2);
      const std::size_t m = g.index(i1, i2);
      const double wgt = lp.block_weight(m, q, k);
      if (wgt == 0.0 || (k1 == 0.0 && k2 == 0.0)) continue;
      const LambdaPair lam = eigen_lambda({k1, k2});
      const double l = minus ? lam.minus : lam.plus;
      const Complex a = wgt * vel.coeffs[m];
      const Complex c = wgt * hh.coeffs[m];
      if (with_iota) {
        const double beta = cross * std::sqrt(l);
        if (!(beta < 2.0)) throw InvalidArgument("indefinite_form", "iota too large: block energy is indefinite");
        const Complex cw = wgt * wh.coeffs[m];
        sum += std::norm(a) + std::norm(cw) + cross * (a * std::conj(c)).real();
      } else {
        const Complex as = (l / (k1 * k1 + k2 * k2)) * a;
        sum += 2.0 * std::norm(as) + std::norm(c) + 2.0 * (as * std::conj(c)).real();
      }
    }
  }
  const double f2 = g.length() * g.length() * sum;
  return std::sqrt(std::max(f2, 0.0));
}

}  // namespace frozenflux
