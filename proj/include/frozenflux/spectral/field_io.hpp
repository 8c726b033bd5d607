#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <variant>

#include "frozenflux/spectral/fft.hpp"

namespace frozenflux {

static_assert(std::endian::native == std::endian::little, "FFLX1 I/O assumes a little-endian host");

/// FFLX1 record: "FFLX1", u32 n, f64 length, u8 kind, payload of n*n f64
/// (kind 0, row-major physical samples) or n*n interleaved (re, im) f64 pairs
/// (kind 1, spectral coefficients). Little-endian throughout.
namespace fflx {

inline constexpr std::array<char, 5> magic{'F', 'F', 'L', 'X', '1'};
enum class Kind : std::uint8_t { physical = 0, spectral = 1 };

namespace detail {

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw InvalidArgument("fflx_truncated", "unexpected end of FFLX1 stream");
  return v;
}

inline void header(std::ostream& os, const Grid& g, Kind kind) {
  os.write(magic.data(), magic.size());
  put(os, static_cast<std::uint32_t>(g.n()));
  put(os, g.length());
  put(os, static_cast<std::uint8_t>(kind));
}

}  // namespace detail

inline void write(std::ostream& os, const PhysicalField& f) {
  detail::header(os, f.grid, Kind::physical);
  os.write(reinterpret_cast<const char*>(f.values.data()), static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

inline void write(std::ostream& os, const SpectralField& f) {
  detail::header(os, f.grid, Kind::spectral);
  // std::complex<double> is layout-compatible with double[2].
  os.write(reinterpret_cast<const char*>(f.coeffs.data()), static_cast<std::streamsize>(f.coeffs.size() * 2 * sizeof(double)));
}

using Record = std::variant<PhysicalField, SpectralField>;

inline Record read(std::istream& is) {
  std::array<char, 5> m{};
  is.read(m.data(), m.size());
  if (!is || m != magic) throw InvalidArgument("fflx_magic", "not an FFLX1 record");
  const auto n = detail::get<std::uint32_t>(is);
  const auto length = detail::get<double>(is);
  const auto kind = detail::get<std::uint8_t>(is);
  const Grid g(static_cast<int>(n), length);
  if (kind == static_cast<std::uint8_t>(Kind::physical)) {
    PhysicalField f(g);
    is.read(reinterpret_cast<char*>(f.values.data()), static_cast<std::streamsize>(g.size() * sizeof(double)));
    if (!is) throw InvalidArgument("fflx_truncated", "FFLX1 payload truncated");
    return f;
  }
  if (kind == static_cast<std::uint8_t>(Kind::spectral)) {
    SpectralField f(g);
    is.read(reinterpret_cast<char*>(f.coeffs.data()), static_cast<std::streamsize>(g.size() * 2 * sizeof(double)));
    if (!is) throw InvalidArgument("fflx_truncated", "FFLX1 payload truncated");
    return f;
  }
  throw InvalidArgument("fflx_kind", "unknown FFLX1 kind " + std::to_string(kind));
}

/// Reads one record and returns it in spectral form regardless of its kind.
inline SpectralField read_spectral(std::istream& is) {
  Record r = read(is);
  if (auto* p = std::get_if<PhysicalField>(&r)) return forward(*p);
  return std::get<SpectralField>(std::move(r));
}

inline SpectralField read_spectral_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("fflx_open", "cannot open " + path);
  return read_spectral(is);
}

}  // namespace fflx

}  // namespace frozenflux
