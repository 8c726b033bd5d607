#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "frozenflux/errors.hpp"
#include "frozenflux/mhd/params.hpp"
#include "frozenflux/mhd/state.hpp"
#include "frozenflux/spectral/multiplier.hpp"
#include "frozenflux/spectral/parallel.hpp"

namespace frozenflux {

/// mu Laplacian u + (lambda + mu) grad div u, with the even symbol evaluated at
/// the true wavenumbers so that it matches the integrating factor exactly.
inline std::array<SpectralField, 2> viscous_term(const SpectralField& u1, const SpectralField& u2, const Params& p) {
  const double mu = p.mu, lm = p.lambda + p.mu;
  return apply_multiplier(u1, u2, [mu, lm](double k1, double k2) {
    const double r2 = k1 * k1 + k2 * k2;
    return std::array<Complex, 4>{-mu * r2 - lm * k1 * k1, -lm * k1 * k2, -lm * k1 * k2, -mu * r2 - lm * k2 * k2};
  });
}

/// Linear, non-viscous part of the tendency (the linearization about equilibrium
/// minus the viscous symbol):
///   b' = -div u,  u' = d1 H - grad(b + H1),  H' = -h0 div u + d1 u,  A' = -grad u.
inline MhdState linear_tendency(const MhdState& s) {
  MhdState out(s.grid(), s.t);
  out.b() = -1.0 * divergence(s.u1(), s.u2());
  const SpectralField grad_b[2] = {dx1(s.b()), dx2(s.b())};
  const SpectralField grad_h1[2] = {dx1(s.H1()), dx2(s.H1())};
  for (int i = 0; i < 2; ++i) out.u(i) = dx1(s.H(i)) - grad_h1[i] - grad_b[i];
  out.H1() = -1.0 * dx2(s.u2());
  out.H2() = dx1(s.u2());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.A(i, j) = -1.0 * partial(s.u(i), j);
  return out;
}

/// The full linearized tendency, viscous term included.
inline MhdState linear_rhs(const MhdState& s, const Params& p) {
  MhdState out = linear_tendency(s);
  const auto visc = viscous_term(s.u1(), s.u2(), p);
  out.u1() += visc[0];
  out.u2() += visc[1];
  return out;
}

/// min over the grid of 1 + b
inline double min_density(const PhysicalField& b) {
  double m = b.values.empty() ? 0.0 : b.values.front();
  for (double v : b.values) m = std::min(m, v);
  return 1.0 + m;
}

/// Everything in the tendency except the viscous term mu Lap u + (lambda+mu) grad div u,
/// which the stepper integrates exactly. Products are formed pointwise and
/// dealiased after the forward transform.
inline MhdState explicit_tendency(const MhdState& s, const Params& p, int threads = 1) {
  MhdState out = linear_tendency(s);
  if (!p.nonlinear) return out;

  const Grid& g = s.grid();
  const auto visc_hat = viscous_term(s.u1(), s.u2(), p);

  // Spectral inputs of the pointwise products, in a fixed order.
  enum : int { B, U1, U2, H1, H2, A11, A12, A21, A22, DU, DB = DU + 4, DH = DB + 2, DA = DH + 4, VISC = DA + 8, N = VISC + 2 };
  std::vector<const SpectralField*> src(N, nullptr);
  std::vector<SpectralField> derived;
  derived.reserve(N);
  for (int i = 0; i < MhdState::count; ++i) src[i] = &s.f[i];
  auto add = [&](int slot, SpectralField f) {
    derived.push_back(std::move(f));
    src[slot] = &derived.back();
  };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) add(DU + 2 * i + j, partial(s.u(i), j));
  for (int j = 0; j < 2; ++j) add(DB + j, partial(s.b(), j));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) add(DH + 2 * i + j, partial(s.H(i), j));
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) add(DA + 4 * i + 2 * k + j, partial(s.A(i, k), j));
  add(VISC, visc_hat[0]);
  add(VISC + 1, visc_hat[1]);

  std::vector<PhysicalField> x(N);
  parallel_for(N, threads, [&](std::size_t i) { x[i] = inverse(*src[i]); });

  if (min_density(x[B]) < p.rho_floor) throw NumericalFault("density_floor", "density fell below rho_floor");

  enum : int { FB1, FB2, NU1, NU2, NH1, NH2, NA11, NA12, NA21, NA22, M };
  std::vector<PhysicalField> prod(M, PhysicalField(g));
  const std::size_t size = g.size();
  for (std::size_t m = 0; m < size; ++m) {
    const double b = x[B].values[m];
    const double u[2] = {x[U1].values[m], x[U2].values[m]};
    const double h[2] = {x[H1].values[m], x[H2].values[m]};
    auto du = [&](int i, int j) { return x[DU + 2 * i + j].values[m]; };
    auto dh = [&](int i, int j) { return x[DH + 2 * i + j].values[m]; };
    auto a = [&](int i, int k) { return x[A11 + 2 * i + k].values[m]; };
    auto da = [&](int i, int k, int j) { return x[DA + 4 * i + 2 * k + j].values[m]; };
    const double div_u = du(0, 0) + du(1, 1);
    const double slow = -b / (1.0 + b);  // 1/rho - 1

    prod[FB1].values[m] = b * u[0];
    prod[FB2].values[m] = b * u[1];
    for (int i = 0; i < 2; ++i) {
      const double adv_u = u[0] * du(i, 0) + u[1] * du(i, 1);
      const double f_lin = dh(i, 0) - dh(0, i);
      const double f_quad = h[0] * dh(i, 0) + h[1] * dh(i, 1) - (h[0] * dh(0, i) + h[1] * dh(1, i));
      prod[NU1 + i].values[m] =
          -adv_u + slow * (x[VISC + i].values[m] + f_lin + f_quad) + f_quad - b * x[DB + i].values[m];
      const double adv_h = u[0] * dh(i, 0) + u[1] * dh(i, 1);
      prod[NH1 + i].values[m] = -adv_h - h[i] * div_u + h[0] * du(i, 0) + h[1] * du(i, 1);
      for (int j = 0; j < 2; ++j) {
        const double adv_a = u[0] * da(i, j, 0) + u[1] * da(i, j, 1);
        prod[NA11 + 2 * i + j].values[m] = -adv_a - (a(i, 0) * du(0, j) + a(i, 1) * du(1, j));
      }
    }
  }

  std::vector<SpectralField> hat(M);
  parallel_for(M, threads, [&](std::size_t i) { hat[i] = dealias(forward(prod[i]), p.dealias); });

  out.b() -= divergence(hat[FB1], hat[FB2]);
  out.u1() += hat[NU1];
  out.u2() += hat[NU2];
  out.H1() += hat[NH1];
  out.H2() += hat[NH2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.A(i, j) += hat[NA11 + 2 * i + j];
  return out;
}

/// Time derivative of every field:
///   b' = -div(rho u)
///   u' = -u.grad u + [mu Lap u + (lambda+mu) grad div u + B.grad B - grad(rho^3/3 + |B|^2/2)] / rho
///   H' = -u.grad H - B div u + B.grad u
///   A' = -u.grad A - (I + A) grad u
inline MhdState rhs(const MhdState& s, const Params& p, int threads = 1) {
  MhdState out = explicit_tendency(s, p, threads);
  const auto visc = viscous_term(s.u1(), s.u2(), p);
  out.u1() += visc[0];
  out.u2() += visc[1];
  return out;
}

}  // namespace frozenflux
