#pragma once

#include <numbers>
#include <ostream>
#include <vector>

#include "frozenflux/errors.hpp"
#include "frozenflux/io/csv.hpp"
#include "frozenflux/symbol/symbols.hpp"

namespace frozenflux {

inline constexpr const char* regime_csv_header =
    "xi1,xi2,lambda_minus,lambda_plus,re_root_1,re_root_2,re_root_3,re_root_4,"
    "im_root_1,im_root_2,im_root_3,im_root_4,regime_minus,regime_plus";

/// Polar sweep of the first quadrant: radii 1..rmax, `angles` angles from 0 to
/// pi/2 inclusive. Both axes are hit exactly. Rows ordered radius-major.
inline std::vector<SymbolSample> regime_sweep(int rmax, int angles) {
  if (rmax < 1) throw InvalidArgument("rmax", "rmax must be >= 1");
  if (angles < 2) throw InvalidArgument("angles", "angles must be >= 2");
  std::vector<SymbolSample> out;
  out.reserve(static_cast<std::size_t>(rmax) * angles);
  for (int i = 1; i <= rmax; ++i)
    for (int j = 0; j < angles; ++j) {
      Frequency xi{static_cast<double>(i), 0.0};
      if (j == angles - 1) {
        xi = {0.0, static_cast<double>(i)};
      } else if (j > 0) {
        const double th = 0.5 * std::numbers::pi * j / (angles - 1);
        xi = {i * std::cos(th), i * std::sin(th)};
      }
      out.push_back(sample_symbol(xi));
    }
  return out;
}

inline void write_regime_csv(std::ostream& os, const std::vector<SymbolSample>& rows) {
  os << regime_csv_header << '\n';
  for (const auto& s : rows) {
    os << format_number(s.xi.xi1) << ',' << format_number(s.xi.xi2) << ',' << format_number(s.lambda_minus) << ','
       << format_number(s.lambda_plus);
    for (const auto& r : s.roots) os << ',' << format_number(r.real());
    for (const auto& r : s.roots) os << ',' << format_number(r.imag());
    os << ',' << to_string(s.regime_minus) << ',' << to_string(s.regime_plus) << '\n';
  }
}

}  // namespace frozenflux
