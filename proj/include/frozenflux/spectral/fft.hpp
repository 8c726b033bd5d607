#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "frozenflux/spectral/field.hpp"

namespace frozenflux {

namespace detail {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

/// Estimate-mode, alignment-agnostic plans, created once per grid size.
/// Executing a plan with fftw_execute_dft is thread safe; planning is not, hence the lock.
inline const PlanPair& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto pair = std::make_unique<PlanPair>();
  std::vector<Complex> a(static_cast<std::size_t>(n) * n), b(a.size());
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  pair->forward = fftw_plan_dft_2d(n, n, pa, pb, FFTW_FORWARD, flags);
  pair->backward = fftw_plan_dft_2d(n, n, pa, pb, FFTW_BACKWARD, flags);
  return *cache.emplace(n, std::move(pair)).first->second;
}

}  // namespace detail

/// Physical samples -> Fourier coefficients (divides by n^2).
inline SpectralField forward(const PhysicalField& f) {
  const Grid& g = f.grid;
  if (f.values.size() != g.size()) {
    throw InvalidArgument("dimension", "physical array size does not match grid");
  }
  std::vector<Complex> in(f.values.begin(), f.values.end());
  SpectralField out(g);
  fftw_execute_dft(detail::plans_for(g.n()).forward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.coeffs.data()));
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

/// Fourier coefficients -> physical samples (no scaling). The imaginary part,
/// which vanishes for Hermitian input, is discarded.
inline PhysicalField inverse(const SpectralField& f) {
  const Grid& g = f.grid;
  if (f.coeffs.size() != g.size()) {
    throw InvalidArgument("dimension", "spectral array size does not match grid");
  }
  std::vector<Complex> in(f.coeffs);
  std::vector<Complex> out(g.size());
  fftw_execute_dft(detail::plans_for(g.n()).backward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  PhysicalField p(g);
  for (std::size_t i = 0; i < out.size(); ++i) p.values[i] = out[i].real();
  return p;
}

/// Samples a callable f(x1, x2) on the grid.
template <class Fn>
PhysicalField sample(const Grid& g, Fn&& fn) {
  PhysicalField p(g);
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) p(i1, i2) = fn(g.coordinate(i1), g.coordinate(i2));
  }
  return p;
}

}  // namespace frozenflux
