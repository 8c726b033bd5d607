#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string_view>

#include "frozenflux/errors.hpp"
#include "frozenflux/symbol/mat2.hpp"

namespace frozenflux {

/// A nonzero frequency vector.
struct Frequency {
  double xi1 = 0.0;
  double xi2 = 0.0;

  double norm2() const { return xi1 * xi1 + xi2 * xi2; }
  double norm() const { return std::hypot(xi1, xi2); }
};

namespace detail {
inline void require_nonzero(const Frequency& xi) {
  if (xi.xi1 == 0.0 && xi.xi2 == 0.0) throw InvalidArgument("zero_frequency", "symbol undefined at xi = 0");
}
}  // namespace detail

/// Symbol of Q(D) = grad div + (0, Laplacian) acting on the second component.
inline Mat2 symbol_Q(const Frequency& xi) {
  detail::require_nonzero(xi);
  const double a = xi.xi1, b = xi.xi2;
  return {-a * a, -a * b, -a * b, -(a * a + b * b) - b * b};
}

struct LambdaPair {
  double minus = 0.0;
  double plus = 0.0;
};

/// Eigenvalues of -Q: |xi|^2 (1 -+ sqrt(1 - xi1^2/|xi|^2)). With s = |xi2|/|xi| the
/// slow one is written xi1^2 / (1 + s), which avoids cancellation as xi1 -> 0.
inline LambdaPair eigen_lambda(const Frequency& xi) {
  detail::require_nonzero(xi);
  const double r2 = xi.norm2();
  const double s = std::abs(xi.xi2) / xi.norm();
  return {xi.xi1 * xi.xi1 / (1.0 + s), r2 * (1.0 + s)};
}

/// r(x) = sum_{n>=2} binom(1/2, n) (-1)^n x^{n-1}, truncated to `terms` terms.
inline double r_series(double x, int terms) {
  double binom = 0.5;  // binom(1/2, 1)
  double xp = 1.0;     // x^{n-1}
  double sum = 0.0;
  for (int n = 2; n < terms + 2; ++n) {
    binom *= (0.5 - (n - 1)) / n;
    xp *= x;
    sum += ((n % 2) ? -binom : binom) * xp;
  }
  return sum;
}

/// Closed form of r: (sqrt(1 - x) - 1 + x/2) / x, evaluated as 1/2 - 1/(1 + sqrt(1 - x)).
inline double r_closed(double x) { return 0.5 - 1.0 / (1.0 + std::sqrt(1.0 - x)); }

namespace detail {

/// The diagonalizing matrix built from a given value of 1/2 + r, with the
/// half-plane sign that makes it even in xi.
inline Mat2 projector_from(const Frequency& xi, double half_plus_r) {
  if (xi.xi2 == 0.0) {
    const double h = 1.0 / std::sqrt(2.0);
    return {-h, h, h, h};
  }
  const double sigma = xi.xi2 > 0.0 ? 1.0 : -1.0;
  const double off = xi.xi1 * half_plus_r;
  const double scale = sigma / std::sqrt(xi.xi2 * xi.xi2 + off * off);
  return {-xi.xi2 * scale, off * scale, off * scale, xi.xi2 * scale};
}

}  // namespace detail

/// Orthonormal symmetric involution with -P^T Q P = diag(lambda_-, lambda_+).
///
/// Columns follow the matrix display (-xi2, xi1(1/2 + r)), (xi1(1/2 + r), xi2),
/// multiplied by sign(xi2) so that P(-xi) = P(xi). On xi2 = 0 the eigenvalues
/// coincide and P = [[-1, 1], [1, 1]] / sqrt(2).
inline Mat2 projector_P(const Frequency& xi) {
  detail::require_nonzero(xi);
  const double s = std::abs(xi.xi2) / xi.norm();
  return detail::projector_from(xi, s / (1.0 + s));
}

/// Same matrix with r taken from the truncated binomial series.
inline Mat2 projector_P_series(const Frequency& xi, int series_terms = 32) {
  detail::require_nonzero(xi);
  if (series_terms < 8) throw InvalidArgument("series_terms", "series needs at least 8 terms");
  const double x = xi.xi1 * xi.xi1 / xi.norm2();
  return detail::projector_from(xi, 0.5 + r_series(x, series_terms));
}

/// Roots eta of eta^2 + |xi|^2 eta + lambda_j = 0 (the scalar form of
/// eta^2 I + |xi|^2 eta I - Q = 0 on each eigendirection), ordered
/// {branch -: larger real part first, branch +: same}.
inline std::array<std::complex<double>, 4> characteristic_roots(const Frequency& xi) {
  const LambdaPair lam = eigen_lambda(xi);
  const double a = xi.norm2();
  std::array<std::complex<double>, 4> out;
  auto solve = [a](double l, std::complex<double>& r0, std::complex<double>& r1) {
    const double disc = a * a - 4.0 * l;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      r0 = -2.0 * l / (a + sq) + 0.0;
      r1 = -0.5 * (a + sq);
    } else {
      const double im = 0.5 * std::sqrt(-disc);
      r0 = {-0.5 * a, im};
      r1 = {-0.5 * a, -im};
    }
  };
  solve(lam.minus, out[0], out[1]);
  solve(lam.plus, out[2], out[3]);
  return out;
}

enum class Regime { overdamped, underdamped, critical };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::overdamped: return "overdamped";
    case Regime::underdamped: return "underdamped";
    case Regime::critical: return "critical";
  }
  return "unknown";
}

inline constexpr double critical_band = 1e-12;

inline Regime classify_branch(double norm2_xi, double lambda) {
  const double disc = norm2_xi * norm2_xi - 4.0 * lambda;
  if (std::abs(disc) <= critical_band) return Regime::critical;
  return disc > 0.0 ? Regime::overdamped : Regime::underdamped;
}

struct RegimePair {
  Regime minus;
  Regime plus;
};

inline RegimePair classify_mode(const Frequency& xi) {
  const LambdaPair lam = eigen_lambda(xi);
  return {classify_branch(xi.norm2(), lam.minus), classify_branch(xi.norm2(), lam.plus)};
}

struct SymbolSample {
  Frequency xi;
  Mat2 Q;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  Mat2 P;
  std::array<std::complex<double>, 4> roots;
  Regime regime_minus = Regime::critical;
  Regime regime_plus = Regime::critical;
};

inline SymbolSample sample_symbol(const Frequency& xi) {
  SymbolSample s;
  s.xi = xi;
  s.Q = symbol_Q(xi);
  const LambdaPair lam = eigen_lambda(xi);
  s.lambda_minus = lam.minus;
  s.lambda_plus = lam.plus;
  s.P = projector_P(xi);
  s.roots = characteristic_roots(xi);
  const RegimePair reg = classify_mode(xi);
  s.regime_minus = reg.minus;
  s.regime_plus = reg.plus;
  return s;
}

}  // namespace frozenflux
