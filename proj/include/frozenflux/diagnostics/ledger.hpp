#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "frozenflux/besov/norms.hpp"
#include "frozenflux/diagnostics/residuals.hpp"
#include "frozenflux/diagnostics/script_h.hpp"
#include "frozenflux/errors.hpp"
#include "frozenflux/io/csv.hpp"
#include "frozenflux/mhd/state.hpp"

namespace frozenflux {

/// Instantaneous norms entering the global functional X(t).
struct NormSample {
  double A_hatB1 = 0.0;
  double u_hatB0 = 0.0;
  double wH1_tildeB01 = 0.0;
  double wH2_hatB0 = 0.0;
  double wH2_hatB1 = 0.0;
  double b_hatB0 = 0.0;
  double b_hatB1 = 0.0;
  double H_hatB0 = 0.0;
  double H_hatB1 = 0.0;
  double u_hatB2 = 0.0;
};

inline NormSample sample_norms(const LittlewoodPaley& lp, const MhdState& s) {
  const ScriptH sh = compute_script_H(s);
  const SpectralField* a[] = {&s.A(0, 0), &s.A(0, 1), &s.A(1, 0), &s.A(1, 1)};
  const SpectralField* u[] = {&s.u1(), &s.u2()};
  const SpectralField* h[] = {&s.H1(), &s.H2()};
  const BlockSpectrum sa = block_spectrum(lp, a), su = block_spectrum(lp, u), sh_ = block_spectrum(lp, h);
  const BlockSpectrum sw1 = block_spectrum(lp, sh.weighted1), sw2 = block_spectrum(lp, sh.weighted2);
  const BlockSpectrum sb = block_spectrum(lp, s.b());
  NormSample n;
  n.A_hatB1 = norm_hatB(sa, 1.0);
  n.u_hatB0 = norm_hatB(su, 0.0);
  n.wH1_tildeB01 = norm_tildeB(sw1, 0.0, 1.0);
  n.wH2_hatB0 = norm_hatB(sw2, 0.0);
  n.wH2_hatB1 = norm_hatB(sw2, 1.0);
  n.b_hatB0 = norm_hatB(sb, 0.0);
  n.b_hatB1 = norm_hatB(sb, 1.0);
  n.H_hatB0 = norm_hatB(sh_, 0.0);
  n.H_hatB1 = norm_hatB(sh_, 1.0);
  n.u_hatB2 = norm_hatB(su, 2.0);
  return n;
}

/// Running suprema and trapezoidal time integrals behind X(t). The same object
/// is used online and when replaying a ledger, so both give identical bits.
class XAccumulator {
 public:
  void add(double t, const NormSample& n) {
    if (started_) {
      if (!(t > t_)) throw InvalidArgument("ledger_time", "ledger times must be strictly increasing");
      const double h = t - t_;
      int_u_ += 0.5 * h * (last_.u_hatB2 + n.u_hatB2);
      int_b2_ += 0.5 * h * (last_.b_hatB1 * last_.b_hatB1 + n.b_hatB1 * n.b_hatB1);
      int_h2_ += 0.5 * h * (last_.H_hatB1 * last_.H_hatB1 + n.H_hatB1 * n.H_hatB1);
    }
    sup_a_ = std::max(sup_a_, n.A_hatB1);
    sup_u_ = std::max(sup_u_, n.u_hatB0);
    sup_w1_ = std::max(sup_w1_, n.wH1_tildeB01);
    sup_w2_ = std::max(sup_w2_, std::max(n.wH2_hatB0, n.wH2_hatB1));
    started_ = true;
    t_ = t;
    last_ = n;
  }

  bool empty() const noexcept { return !started_; }
  double sup_A() const noexcept { return sup_a_; }
  double sup_u() const noexcept { return sup_u_; }
  double sup_wH1() const noexcept { return sup_w1_; }
  double sup_wH2() const noexcept { return sup_w2_; }
  /// int ||u||_{B^2} dt
  double int_u() const noexcept { return int_u_; }
  /// int ||b||_{B^1}^2 dt
  double int_b_sq() const noexcept { return int_b2_; }
  /// int ||H||_{B^1}^2 dt
  double int_H_sq() const noexcept { return int_h2_; }

  double X() const {
    if (!started_) throw InvalidArgument("empty_ledger", "X needs at least one ledger row");
    return sup_a_ + sup_u_ + sup_w1_ + sup_w2_ + int_u_ + std::sqrt(int_b2_) + std::sqrt(int_h2_);
  }

 private:
  bool started_ = false;
  double t_ = 0.0;
  NormSample last_;
  double sup_a_ = 0.0, sup_u_ = 0.0, sup_w1_ = 0.0, sup_w2_ = 0.0;
  double int_u_ = 0.0, int_b2_ = 0.0, int_h2_ = 0.0;
};

struct LedgerRow {
  double t = 0.0;
  NormSample norms;
  double sup_A_hatB1 = 0.0, sup_u_hatB0 = 0.0, sup_wH1_tildeB01 = 0.0, sup_wH2_hatB01 = 0.0;
  Residuals residuals;  // residuals.mean_b holds the drift |mean b(t) - mean b(0)|
  double int_u_hatB2 = 0.0, int_b_hatB1_sq = 0.0, int_H_hatB1_sq = 0.0;
  double X = 0.0;
};

inline constexpr std::array<const char*, 26> ledger_columns{
    "t",          "A_hatB1",        "u_hatB0",        "wH1_tildeB01",     "wH2_hatB0",      "wH2_hatB1",
    "b_hatB0",    "b_hatB1",        "H_hatB0",        "H_hatB1",          "u_hatB2",        "sup_A_hatB1",
    "sup_u_hatB0", "sup_wH1_tildeB01", "sup_wH2_hatB01", "res_frozen",     "res_rho_detA",   "res_H1",
    "res_H2",     "res_trace",      "res_divH",       "mean_b_drift",     "int_u_hatB2",    "int_b_hatB1_sq",
    "int_H_hatB1_sq", "X"};

inline std::string ledger_header() {
  std::string h;
  for (std::size_t i = 0; i < ledger_columns.size(); ++i) {
    if (i) h += ',';
    h += ledger_columns[i];
  }
  return h;
}

inline std::array<double, 26> ledger_values(const LedgerRow& r) {
  const NormSample& n = r.norms;
  const Residuals& e = r.residuals;
  return {r.t,          n.A_hatB1,        n.u_hatB0,        n.wH1_tildeB01,     n.wH2_hatB0,      n.wH2_hatB1,
          n.b_hatB0,    n.b_hatB1,        n.H_hatB0,        n.H_hatB1,          n.u_hatB2,        r.sup_A_hatB1,
          r.sup_u_hatB0, r.sup_wH1_tildeB01, r.sup_wH2_hatB01, e.frozen_law,     e.mass_jacobian,  e.h1_identity,
          e.h2_identity, e.trace_identity, e.div_H,          e.mean_b,           r.int_u_hatB2,    r.int_b_hatB1_sq,
          r.int_H_hatB1_sq, r.X};
}

inline LedgerRow ledger_row_from(const std::array<double, 26>& v) {
  LedgerRow r;
  NormSample& n = r.norms;
  Residuals& e = r.residuals;
  double* dst[26] = {&r.t,          &n.A_hatB1,        &n.u_hatB0,        &n.wH1_tildeB01,   &n.wH2_hatB0,
                     &n.wH2_hatB1,  &n.b_hatB0,        &n.b_hatB1,        &n.H_hatB0,        &n.H_hatB1,
                     &n.u_hatB2,    &r.sup_A_hatB1,    &r.sup_u_hatB0,    &r.sup_wH1_tildeB01, &r.sup_wH2_hatB01,
                     &e.frozen_law, &e.mass_jacobian,  &e.h1_identity,    &e.h2_identity,    &e.trace_identity,
                     &e.div_H,      &e.mean_b,         &r.int_u_hatB2,    &r.int_b_hatB1_sq, &r.int_H_hatB1_sq,
                     &r.X};
  for (std::size_t i = 0; i < 26; ++i) *dst[i] = v[i];
  return r;
}

inline void write_ledger_row(std::ostream& os, const LedgerRow& r) {
  const auto v = ledger_values(r);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << format_number(v[i]);
  }
  os << '\n';
}

inline std::vector<LedgerRow> read_ledger(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != ledger_header())
    throw InvalidArgument("ledger_header", "ledger header does not match the expected schema");
  std::vector<LedgerRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, 26> v{};
    std::size_t col = 0, pos = 0;
    while (true) {
      const std::size_t next = line.find(',', pos);
      if (col >= v.size()) throw InvalidArgument("ledger_row", "too many columns in ledger row");
      const std::string cell = line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      std::size_t used = 0;
      try {
        v[col++] = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw InvalidArgument("ledger_row", "unparsable ledger cell '" + cell + "'");
      }
      if (used != cell.size()) throw InvalidArgument("ledger_row", "unparsable ledger cell '" + cell + "'");
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (col != v.size()) throw InvalidArgument("ledger_row", "too few columns in ledger row");
    rows.push_back(ledger_row_from(v));
  }
  return rows;
}

/// Fills the running and integral columns of `row` from the accumulator after it has seen row.norms.
inline void fill_accumulated(LedgerRow& row, const XAccumulator& acc) {
  row.sup_A_hatB1 = acc.sup_A();
  row.sup_u_hatB0 = acc.sup_u();
  row.sup_wH1_tildeB01 = acc.sup_wH1();
  row.sup_wH2_hatB01 = acc.sup_wH2();
  row.int_u_hatB2 = acc.int_u();
  row.int_b_hatB1_sq = acc.int_b_sq();
  row.int_H_hatB1_sq = acc.int_H_sq();
  row.X = acc.X();
}

/// X(t_i) recomputed from the time and norm columns of a ledger.
inline std::vector<double> compute_X(const std::vector<LedgerRow>& rows) {
  if (rows.empty()) throw InvalidArgument("empty_ledger", "X needs at least one ledger row");
  XAccumulator acc;
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    acc.add(r.t, r.norms);
    out.push_back(acc.X());
  }
  return out;
}

struct DissipationIntegrals {
  double u_L1_hatB2 = 0.0;  // int ||u||_{B^2}
  double b_L2_hatB1 = 0.0;  // (int ||b||_{B^1}^2)^{1/2}
  double H_L2_hatB1 = 0.0;  // (int ||H||_{B^1}^2)^{1/2}
};

/// Trapezoidal dissipation integrals over a ledger.
inline DissipationIntegrals accumulate_dissipation(const std::vector<LedgerRow>& rows) {
  XAccumulator acc;
  for (const auto& r : rows) acc.add(r.t, r.norms);
  return {acc.int_u(), std::sqrt(acc.int_b_sq()), std::sqrt(acc.int_H_sq())};
}

}  // namespace frozenflux
