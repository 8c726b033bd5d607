#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "frozenflux/errors.hpp"
#include "frozenflux/symbol/symbols.hpp"

namespace frozenflux {

/// Fourier coefficients of one linear mode, ordered (b, u1, u2, H1, H2).
using ModeVector = std::array<std::complex<double>, 5>;
using ModeMatrix = std::array<std::array<std::complex<double>, 5>, 5>;

enum class Branch { minus = 0, plus = 1 };

inline double norm(const ModeVector& y) {
  double s = 0.0;
  for (const auto& c : y) s += std::norm(c);
  return std::sqrt(s);
}

/// Generator of the linearized system about (rho, u, B) = (1, 0, h0) with
/// h0 = (1, 0) and pressure rho^3/3:
///   b' = -i xi.u
///   u' = -mu|xi|^2 u - (lambda+mu) xi (xi.u) + i xi1 H - i xi (b + H1)
///   H' = -h0 (i xi.u) + i xi1 u
inline ModeMatrix mode_matrix(const Frequency& xi, double mu = 1.0, double lambda = -1.0) {
  detail::require_nonzero(xi);
  using namespace std::complex_literals;
  const double k[2] = {xi.xi1, xi.xi2};
  const double r2 = xi.norm2();
  ModeMatrix m{};
  m[0][1] = -1i * k[0];
  m[0][2] = -1i * k[1];
  for (int j = 0; j < 2; ++j) {
    const int row = 1 + j;
    m[row][0] = -1i * k[j];
    for (int l = 0; l < 2; ++l) m[row][1 + l] = -(lambda + mu) * k[j] * k[l];
    m[row][row] += -mu * r2;
    m[row][3 + j] += 1i * k[0];
    m[row][3] += -1i * k[j];
  }
  m[3][2] = -1i * k[1];
  m[4][2] = 1i * k[0];
  return m;
}

inline ModeVector apply_mode_matrix(const ModeMatrix& m, const ModeVector& y) {
  ModeVector out{};
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) out[r] += m[r][c] * y[c];
  return out;
}

/// xi . H for a mode vector.
inline std::complex<double> divergence_constraint(const Frequency& xi, const ModeVector& y) {
  return xi.xi1 * y[3] + xi.xi2 * y[4];
}

/// Eigenvector of the generator (mu = 1, lambda = -1) carried by one root of one
/// branch: u is the branch's column of P, and (b, H) follow from the transport
/// rows. For a zero root (branch - on xi1 = 0) the kernel vector b = 1, H1 = -1 is
/// returned.
inline ModeVector branch_eigenvector(const Frequency& xi, Branch branch, int root) {
  const auto roots = characteristic_roots(xi);
  const std::complex<double> eta = roots[2 * static_cast<int>(branch) + root];
  if (std::abs(eta) == 0.0) return {1.0, 0.0, 0.0, -1.0, 0.0};
  using namespace std::complex_literals;
  const Mat2 p = projector_P(xi);
  const double v1 = branch == Branch::minus ? p.a11 : p.a12;
  const double v2 = branch == Branch::minus ? p.a21 : p.a22;
  ModeVector y{};
  y[1] = v1;
  y[2] = v2;
  y[0] = -1i * (xi.xi1 * v1 + xi.xi2 * v2) / eta;
  y[3] = -1i * xi.xi2 * v2 / eta;
  y[4] = 1i * xi.xi1 * v2 / eta;
  return y;
}

/// Diagonalized variables of a mode: (P u, P h) with h = i xi (b + H1) - i xi1 H.
struct ModeDiagonal {
  std::array<std::complex<double>, 2> pu;
  std::array<std::complex<double>, 2> script_h;
};

inline ModeDiagonal diagonalize(const Frequency& xi, const ModeVector& y) {
  using namespace std::complex_literals;
  const Mat2 p = projector_P(xi);
  const std::complex<double> h1 = 1i * xi.xi1 * (y[0] + y[3]) - 1i * xi.xi1 * y[3];
  const std::complex<double> h2 = 1i * xi.xi2 * (y[0] + y[3]) - 1i * xi.xi1 * y[4];
  ModeDiagonal d;
  d.pu = {p.a11 * y[1] + p.a12 * y[2], p.a21 * y[1] + p.a22 * y[2]};
  d.script_h = {p.a11 * h1 + p.a12 * h2, p.a21 * h1 + p.a22 * h2};
  return d;
}

/// |(Pu)_j|^2 + |(P h)_j|^2 / lambda_j, the undamped energy of branch j. Requires lambda_j > 0.
inline double branch_energy(const Frequency& xi, const ModeVector& y, Branch branch) {
  const LambdaPair lam = eigen_lambda(xi);
  const double l = branch == Branch::minus ? lam.minus : lam.plus;
  if (!(l > 0.0)) throw InvalidArgument("zero_lambda", "branch energy needs lambda > 0");
  const ModeDiagonal d = diagonalize(xi, y);
  const int j = static_cast<int>(branch);
  return std::norm(d.pu[j]) + std::norm(d.script_h[j]) / l;
}

struct LinearModeResult {
  ModeVector y_final{};
  std::vector<double> times;
  std::vector<double> norms;
  /// Least-squares slope of log|y| over [T/2, T]; empty when the trajectory vanishes.
  std::optional<double> fitted_rate;
  /// max_t |xi.H(t)| relative to max(1, |y0|).
  double constraint_drift = 0.0;
};

inline std::optional<double> fit_decay_rate(const std::vector<double>& t, const std::vector<double>& v, double t_from) {
  double n = 0, st = 0, sl = 0, stt = 0, stl = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_from) continue;
    if (!(v[i] > 0.0)) return std::nullopt;
    const double l = std::log(v[i]);
    n += 1;
    st += t[i];
    sl += l;
    stt += t[i] * t[i];
    stl += t[i] * l;
  }
  const double den = n * stt - st * st;
  if (n < 2 || den == 0.0) return std::nullopt;
  return (n * stl - st * sl) / den;
}

/// Integrate y' = M(xi) y with classical RK4 on a uniform grid of step <= dt.
inline LinearModeResult evolve_linear_mode(const Frequency& xi, const ModeVector& y0, double T, double dt,
                                           double mu = 1.0, double lambda = -1.0) {
  detail::require_nonzero(xi);
  if (!(T >= 0.0) || !std::isfinite(T)) throw InvalidArgument("final_time", "T must be finite and nonnegative");
  if (!(dt > 0.0) || dt > 0.1 / std::max(1.0, xi.norm2()))
    throw InvalidArgument("dt_too_large", "dt must satisfy 0 < dt <= 0.1/max(1,|xi|^2)");
  const double scale = std::max(1.0, norm(y0));
  if (std::abs(divergence_constraint(xi, y0)) > 1e-12 * scale * std::max(1.0, xi.norm()))
    throw InvalidArgument("constraint", "initial data violates xi.H = 0");

  const ModeMatrix m = mode_matrix(xi, mu, lambda);
  const long steps = T == 0.0 ? 0 : static_cast<long>(std::ceil(T / dt - 1e-9));
  const double h = steps ? T / steps : 0.0;

  LinearModeResult res;
  ModeVector y = y0;
  res.times.reserve(steps + 1);
  res.norms.reserve(steps + 1);
  res.times.push_back(0.0);
  res.norms.push_back(norm(y));
  auto axpy = [](const ModeVector& a, double s, const ModeVector& b) {
    ModeVector o;
    for (int i = 0; i < 5; ++i) o[i] = a[i] + s * b[i];
    return o;
  };
  for (long n = 1; n <= steps; ++n) {
    const ModeVector k1 = apply_mode_matrix(m, y);
    const ModeVector k2 = apply_mode_matrix(m, axpy(y, h / 2, k1));
    const ModeVector k3 = apply_mode_matrix(m, axpy(y, h / 2, k2));
    const ModeVector k4 = apply_mode_matrix(m, axpy(y, h, k3));
    for (int i = 0; i < 5; ++i) y[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    res.times.push_back(n * h);
    res.norms.push_back(norm(y));
    res.constraint_drift = std::max(res.constraint_drift, std::abs(divergence_constraint(xi, y)) / scale);
  }
  res.y_final = y;
  res.fitted_rate = fit_decay_rate(res.times, res.norms, T / 2);
  return res;
}

}  // namespace frozenflux
