#pragma once

#include "frozenflux/besov/norms.hpp"
#include "frozenflux/besov/product_law.hpp"
#include "frozenflux/diagnostics/energy.hpp"
#include "frozenflux/diagnostics/helmholtz.hpp"
#include "frozenflux/diagnostics/ledger.hpp"
#include "frozenflux/diagnostics/residuals.hpp"
#include "frozenflux/diagnostics/script_h.hpp"
#include "frozenflux/io/csv.hpp"
#include "frozenflux/mhd/config.hpp"
#include "frozenflux/mhd/run.hpp"
#include "frozenflux/selftest.hpp"
#include "frozenflux/spectral/field_io.hpp"
#include "frozenflux/symbol/linear_mode.hpp"
#include "frozenflux/symbol/regime_map.hpp"
