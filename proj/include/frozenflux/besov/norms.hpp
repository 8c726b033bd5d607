#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frozenflux/besov/block_spectrum.hpp"
#include "frozenflux/spectral/fft.hpp"

namespace frozenflux {

// All three norms sum in ascending q, then ascending k.

/// sum_{q,k} 2^{qs} ||Delta_{q,k} f||
inline double norm_hatB(const BlockSpectrum& spec, double s) {
  const DyadicRanges& r = spec.ranges;
  double sum = 0.0;
  for (int q = r.q_min; q <= r.q_max; ++q) {
    const double w = std::exp2(q * s);
    for (int k = r.k_min; k <= r.k_max; ++k) sum += w * spec.at(q, k);
  }
  return sum;
}

/// Hybrid norm: weight 2^{qs} on blocks with k + 1 >= 2q, 2^{(2q-k)t} elsewhere.
inline double norm_tildeB(const BlockSpectrum& spec, double s, double t) {
  const DyadicRanges& r = spec.ranges;
  double sum = 0.0;
  for (int q = r.q_min; q <= r.q_max; ++q) {
    for (int k = r.k_min; k <= r.k_max; ++k) {
      const double w = (k + 1 >= 2 * q) ? std::exp2(q * s) : std::exp2((2 * q - k) * t);
      sum += w * spec.at(q, k);
    }
  }
  return sum;
}

/// sum_{q,k} 2^{(2q-k)s} ||Delta_{q,k} f||
inline double norm_checkB(const BlockSpectrum& spec, double s) {
  const DyadicRanges& r = spec.ranges;
  double sum = 0.0;
  for (int q = r.q_min; q <= r.q_max; ++q) {
    for (int k = r.k_min; k <= r.k_max; ++k) sum += std::exp2((2 * q - k) * s) * spec.at(q, k);
  }
  return sum;
}

/// max of the two hat norms (norm of the intersection space)
inline double norm_hatB_intersection(const BlockSpectrum& spec, double s, double t) {
  return std::max(norm_hatB(spec, s), norm_hatB(spec, t));
}

struct NormReport {
  std::map<double, double> hatB;
  std::map<std::pair<double, double>, double> tildeB;
  std::map<double, double> checkB;
  double linf = 0.0;
};

struct NormSelection {
  std::vector<double> hat{0.0, 1.0, 2.0};
  std::vector<std::pair<double, double>> tilde{{0.0, 1.0}};
  std::vector<double> check{0.0, 1.0};
};

inline NormReport make_norm_report(const LittlewoodPaley& lp, const SpectralField& f, const NormSelection& sel = {}) {
  const BlockSpectrum spec = block_spectrum(lp, f);
  NormReport rep;
  for (double s : sel.hat) rep.hatB[s] = norm_hatB(spec, s);
  for (auto st : sel.tilde) rep.tildeB[st] = norm_tildeB(spec, st.first, st.second);
  for (double s : sel.check) rep.checkB[s] = norm_checkB(spec, s);
  rep.linf = max_abs(inverse(f));
  return rep;
}

namespace detail {
inline std::string number_key(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace detail

inline nlohmann::json to_json(const NormReport& rep) {
  nlohmann::json j;
  j["hatB"] = nlohmann::json::object();
  for (auto [s, v] : rep.hatB) j["hatB"][detail::number_key(s)] = v;
  j["tildeB"] = nlohmann::json::object();
  for (auto [st, v] : rep.tildeB) j["tildeB"][detail::number_key(st.first) + "," + detail::number_key(st.second)] = v;
  j["checkB"] = nlohmann::json::object();
  for (auto [s, v] : rep.checkB) j["checkB"][detail::number_key(s)] = v;
  j["linf"] = rep.linf;
  return j;
}

/// CSV rows "q,k,value" in ascending (q, k) order, with a header row.
inline void write_csv(std::ostream& os, const BlockSpectrum& spec) {
  os << "q,k,value\n";
  char buf[64];
  for (int q = spec.ranges.q_min; q <= spec.ranges.q_max; ++q) {
    for (int k = spec.ranges.k_min; k <= spec.ranges.k_max; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", spec.at(q, k));
      os << q << ',' << k << ',' << buf << '\n';
    }
  }
}

}  // namespace frozenflux
