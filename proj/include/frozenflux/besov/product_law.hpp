#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "frozenflux/besov/norms.hpp"
#include "frozenflux/spectral/multiplier.hpp"

namespace frozenflux {

/// Random real mean-zero field: i.i.d. complex Gaussian coefficients on the
/// lattice modes with 1 <= |l| <= n/4, then Hermitian-symmetrized.
template <class Rng>
SpectralField random_field(const Grid& g, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField f(g);
  const double rmax = g.n() / 4.0;
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double r = std::hypot(g.lattice(i1), g.lattice(i2));
      const double re = normal(rng);
      const double im = normal(rng);
      if (r >= 1.0 && r <= rmax) f(i1, i2) = Complex(re, im);
    }
  }
  symmetrize(f);
  f(0, 0) = Complex{};
  return f;
}

inline SpectralField without_mean(SpectralField f) {
  f.coeffs.front() = Complex{};
  return f;
}

struct RatioStatistics {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::vector<double> ratios;

  bool all_finite() const {
    return std::all_of(ratios.begin(), ratios.end(), [](double r) { return std::isfinite(r); });
  }
};

inline RatioStatistics summarize(std::vector<double> ratios) {
  RatioStatistics st;
  st.ratios = ratios;
  if (ratios.empty()) return st;
  std::sort(ratios.begin(), ratios.end());
  st.min = ratios.front();
  st.max = ratios.back();
  const std::size_t m = ratios.size() / 2;
  st.median = ratios.size() % 2 ? ratios[m] : 0.5 * (ratios[m - 1] + ratios[m]);
  return st;
}

/// Draws `count` pairs (f, g) from the random ensemble and collects
/// numerator/denominator ratios from `measure(f, g) -> std::pair<num, den>`.
/// Pairs with a zero denominator are redrawn.
template <class Measure>
RatioStatistics sample_pair_ratios(const Grid& g, int count, std::uint64_t seed, Measure&& measure) {
  std::mt19937_64 rng(seed);
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(std::max(count, 0)));
  int redraws = 0;
  while (static_cast<int>(ratios.size()) < count) {
    SpectralField f = random_field(g, rng);
    SpectralField h = random_field(g, rng);
    const auto [num, den] = measure(f, h);
    if (!(den > 0.0)) {
      if (++redraws > 1000) throw InvalidArgument("degenerate_sample", "could not draw a nondegenerate sample");
      continue;
    }
    ratios.push_back(num / den);
  }
  return summarize(std::move(ratios));
}

/// ||fg||_{B^{s+t-1}} / (||f||_{B^s} ||g||_{B^t}) over a seeded ensemble.
/// Products are formed on the grid with two-thirds dealiasing; the mean of fg is
/// dropped (the homogeneous norms do not see it).
inline RatioStatistics product_law_ratio(const Grid& g, int sample_count, double s, double t, std::uint64_t seed) {
  if (!(s <= 1.0 && t <= 1.0 && s + t > 0.0)) {
    throw InvalidArgument("product_law_range", "product law requires s, t <= 1 and s + t > 0");
  }
  const LittlewoodPaley lp(g);
  return sample_pair_ratios(g, sample_count, seed, [&](const SpectralField& f, const SpectralField& h) {
    const SpectralField fh = without_mean(product(f, h, DealiasRule::two_thirds));
    const double num = norm_hatB(block_spectrum(lp, fh), s + t - 1.0);
    const double den = norm_hatB(block_spectrum(lp, f), s) * norm_hatB(block_spectrum(lp, h), t);
    return std::pair{num, den};
  });
}

/// ||fg||_{B~^{0,1}} / (||f||_{B~^{0,1}} ||g||_{B^1})
inline RatioStatistics hybrid_product_ratio(const Grid& g, int sample_count, std::uint64_t seed) {
  const LittlewoodPaley lp(g);
  return sample_pair_ratios(g, sample_count, seed, [&](const SpectralField& f, const SpectralField& h) {
    const SpectralField fh = without_mean(product(f, h, DealiasRule::two_thirds));
    const double num = norm_tildeB(block_spectrum(lp, fh), 0.0, 1.0);
    const double den = norm_tildeB(block_spectrum(lp, f), 0.0, 1.0) * norm_hatB(block_spectrum(lp, h), 1.0);
    return std::pair{num, den};
  });
}

/// ||fg||_{C^1} / (||f||_{B^1} ||g||_{C^1})
inline RatioStatistics check_product_ratio(const Grid& g, int sample_count, std::uint64_t seed) {
  const LittlewoodPaley lp(g);
  return sample_pair_ratios(g, sample_count, seed, [&](const SpectralField& f, const SpectralField& h) {
    const SpectralField fh = without_mean(product(f, h, DealiasRule::two_thirds));
    const double num = norm_checkB(block_spectrum(lp, fh), 1.0);
    const double den = norm_hatB(block_spectrum(lp, f), 1.0) * norm_checkB(block_spectrum(lp, h), 1.0);
    return std::pair{num, den};
  });
}

/// ||f||_{L^inf} / ||f||_{B~^{0,1}} over single random fields.
inline RatioStatistics linf_embedding_ratio(const Grid& g, int sample_count, std::uint64_t seed) {
  const LittlewoodPaley lp(g);
  return sample_pair_ratios(g, sample_count, seed, [&](const SpectralField& f, const SpectralField&) {
    return std::pair{max_abs(inverse(f)), norm_tildeB(block_spectrum(lp, f), 0.0, 1.0)};
  });
}

}  // namespace frozenflux
