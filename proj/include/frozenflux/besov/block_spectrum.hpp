#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "frozenflux/spectral/littlewood_paley.hpp"

namespace frozenflux {

/// L^2 norms of the dyadic blocks Delta_q Delta^1_k f over the full (q, k) table.
struct BlockSpectrum {
  DyadicRanges ranges;
  std::vector<double> entries;  // q-major

  BlockSpectrum() = default;
  explicit BlockSpectrum(const DyadicRanges& r)
      : ranges(r), entries(static_cast<std::size_t>(r.q_count()) * static_cast<std::size_t>(r.k_count()), 0.0) {}

  std::size_t slot(int q, int k) const {
    return static_cast<std::size_t>(q - ranges.q_min) * static_cast<std::size_t>(ranges.k_count()) +
           static_cast<std::size_t>(k - ranges.k_min);
  }
  double& at(int q, int k) { return entries[slot(q, k)]; }
  double at(int q, int k) const { return entries[slot(q, k)]; }

  /// sum of squared entries
  double energy() const {
    double s = 0.0;
    for (double e : entries) s += e * e;
    return s;
  }
};

/// Block spectrum of a vector-valued field: each entry is the L^2 norm of the
/// block of the vector (square root of the summed squared component norms).
inline BlockSpectrum block_spectrum(const LittlewoodPaley& lp, std::span<const SpectralField* const> components) {
  BlockSpectrum out(lp.ranges());
  const DyadicRanges& r = lp.ranges();
  for (const SpectralField* f : components) {
    require_same_grid(lp.grid(), f->grid);
    for (std::size_t i = 0; i < f->coeffs.size(); ++i) {
      const double a = std::norm(f->coeffs[i]);
      if (a == 0.0) continue;
      const auto& w = lp.weights(i);
      for (int x = 0; x < w.nq; ++x) {
        for (int y = 0; y < w.nk; ++y) {
          const double m = w.q[x].value * w.k[y].value;
          out.entries[static_cast<std::size_t>(w.q[x].index - r.q_min) * static_cast<std::size_t>(r.k_count()) +
                      static_cast<std::size_t>(w.k[y].index - r.k_min)] += m * m * a;
        }
      }
    }
  }
  const double length = lp.grid().length();
  for (double& e : out.entries) e = length * std::sqrt(e);
  return out;
}

inline BlockSpectrum block_spectrum(const LittlewoodPaley& lp, const SpectralField& f) {
  const SpectralField* p = &f;
  return block_spectrum(lp, std::span<const SpectralField* const>(&p, 1));
}

inline BlockSpectrum block_spectrum(const SpectralField& f) { return block_spectrum(LittlewoodPaley(f.grid), f); }

}  // namespace frozenflux
