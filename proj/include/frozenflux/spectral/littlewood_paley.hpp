#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "frozenflux/spectral/field.hpp"

namespace frozenflux {

namespace lp {

/// exp(-1/s) for s > 0, else 0.
inline double smooth_step_seed(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

/// Smooth cutoff: 1 on [0, 1], 0 on [6/5, inf).
inline double chi(double t) {
  const double a = smooth_step_seed(6.0 / 5.0 - t);
  const double b = smooth_step_seed(t - 1.0);
  return a / (a + b);
}

/// Annulus profile psi(r) = chi(r/2) - chi(r), supported in [1, 12/5].
inline double psi(double r) { return chi(0.5 * r) - chi(r); }

}  // namespace lp

/// Scale ranges of the double decomposition. q indexes the isotropic annuli
/// |xi| ~ 2^q, k the x1-direction shells |xi1| ~ 2^k. The bottom k shell is a
/// catch-all low-pass chi(2^{-k_min} |xi1| / 2), which on the lattice holds the
/// xi1 = 0 modes, so that the k-sum is the identity.
struct DyadicRanges {
  int q_min = -2;
  int q_max = 4;
  int k_min = -2;
  int k_max = 4;

  int q_count() const noexcept { return q_max - q_min + 1; }
  int k_count() const noexcept { return k_max - k_min + 1; }

  /// Ranges covering every lattice mode of the grid.
  static DyadicRanges for_grid(const Grid& g) {
    DyadicRanges r;
    const int low = static_cast<int>(std::floor(std::log2(g.kappa() / 1.2))) - 1;
    r.q_min = low;
    r.k_min = low;
    r.q_max = static_cast<int>(std::ceil(std::log2(g.max_wavenumber_norm()))) - 1;
    r.k_max = static_cast<int>(std::ceil(std::log2(g.kappa() * (g.n() / 2)))) - 1;
    return r;
  }
};

/// Isotropic weight psi(2^{-q} |xi|).
inline double isotropic_weight(int q, double norm_xi) { return lp::psi(std::ldexp(norm_xi, -q)); }

/// Anisotropic weight in the x1 direction; k == k_min is the catch-all bucket.
inline double anisotropic_weight(int k, double abs_xi1, int k_min) {
  const double t = std::ldexp(abs_xi1, -k);
  return k == k_min ? lp::chi(0.5 * t) : lp::psi(t);
}

/// Per-mode table of nonzero dyadic weights, shared by block projections and block spectra.
class LittlewoodPaley {
 public:
  struct Weight {
    int index = 0;
    double value = 0.0;
  };
  struct ModeWeights {
    std::array<Weight, 3> q{};
    std::array<Weight, 3> k{};
    int nq = 0;
    int nk = 0;
  };

  explicit LittlewoodPaley(const Grid& g) : LittlewoodPaley(g, DyadicRanges::for_grid(g)) {}

  LittlewoodPaley(const Grid& g, const DyadicRanges& r) : grid_(g), ranges_(r), modes_(g.size()) {
    if (r.q_min > r.q_max || r.k_min > r.k_max) {
      throw InvalidArgument("dyadic_range", "empty dyadic range");
    }
    for (int i1 = 0; i1 < g.n(); ++i1) {
      const double k1 = g.wavenumber(i1);
      for (int i2 = 0; i2 < g.n(); ++i2) {
        ModeWeights& m = modes_[g.index(i1, i2)];
        const double nrm = std::hypot(k1, g.wavenumber(i2));
        if (nrm > 0.0) {
          for (int q = r.q_min; q <= r.q_max && m.nq < 3; ++q) {
            const double w = isotropic_weight(q, nrm);
            if (w != 0.0) m.q[m.nq++] = {q, w};
          }
        }
        for (int k = r.k_min; k <= r.k_max && m.nk < 3; ++k) {
          const double w = anisotropic_weight(k, std::abs(k1), r.k_min);
          if (w != 0.0) m.k[m.nk++] = {k, w};
        }
      }
    }
  }

  const Grid& grid() const noexcept { return grid_; }
  const DyadicRanges& ranges() const noexcept { return ranges_; }
  const ModeWeights& weights(std::size_t mode) const { return modes_[mode]; }

  /// Multiplier of block (q, k) at a mode (either index may be omitted).
  double block_weight(std::size_t mode, std::optional<int> q, std::optional<int> k) const {
    const ModeWeights& m = modes_[mode];
    double wq = 1.0;
    if (q) {
      wq = 0.0;
      for (int a = 0; a < m.nq; ++a) {
        if (m.q[a].index == *q) wq = m.q[a].value;
      }
    }
    double wk = 1.0;
    if (k) {
      wk = 0.0;
      for (int b = 0; b < m.nk; ++b) {
        if (m.k[b].index == *k) wk = m.k[b].value;
      }
    }
    return wq * wk;
  }

  /// Delta_q Delta^1_k f, with std::nullopt standing for "all scales" in that direction.
  SpectralField block(const SpectralField& f, std::optional<int> q, std::optional<int> k) const {
    require_same_grid(grid_, f.grid);
    if (q && (*q < ranges_.q_min || *q > ranges_.q_max)) {
      throw InvalidArgument("dyadic_range", "q = " + std::to_string(*q) + " outside configured range");
    }
    if (k && (*k < ranges_.k_min || *k > ranges_.k_max)) {
      throw InvalidArgument("dyadic_range", "k = " + std::to_string(*k) + " outside configured range");
    }
    SpectralField out(f.grid);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) out.coeffs[i] = block_weight(i, q, k) * f.coeffs[i];
    return out;
  }

 private:
  Grid grid_;
  DyadicRanges ranges_;
  std::vector<ModeWeights> modes_;
};

/// Free-function form of LittlewoodPaley::block using ranges covering the grid.
inline SpectralField dyadic_block(const SpectralField& f, std::optional<int> q, std::optional<int> k) {
  return LittlewoodPaley(f.grid).block(f, q, k);
}

}  // namespace frozenflux
