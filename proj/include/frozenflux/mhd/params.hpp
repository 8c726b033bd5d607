#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "frozenflux/errors.hpp"
#include "frozenflux/spectral/multiplier.hpp"

namespace frozenflux {

/// Coefficients of the simulated system. Pressure is fixed to rho^3/3 and the
/// background field to h0 = (1, 0).
struct Params {
  double mu = 1.0;
  double lambda = -1.0;
  double rho_floor = 0.1;
  double cfl = 0.4;
  DealiasRule dealias = DealiasRule::two_thirds;
  /// When false only the linearization about the equilibrium is integrated.
  bool nonlinear = true;

  void validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("mu", "mu must be positive");
    if (!std::isfinite(lambda) || mu + lambda < 0.0) throw ConfigError("lambda", "mu + lambda must be nonnegative");
    if (!(rho_floor > 0.0) || rho_floor >= 1.0) throw ConfigError("rho_floor", "rho_floor must lie in (0, 1)");
    if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("cfl", "cfl must lie in (0, 1]");
  }
};

inline DealiasRule parse_dealias(std::string_view s) {
  if (s == "two_thirds") return DealiasRule::two_thirds;
  if (s == "half") return DealiasRule::half;
  throw ConfigError("dealias", "unknown dealias rule '" + std::string(s) + "'");
}

inline std::string_view to_string(DealiasRule r) { return r == DealiasRule::two_thirds ? "two_thirds" : "half"; }

}  // namespace frozenflux
