// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hillcert/errors.hpp"
#include "hillcert/projection.hpp"

namespace hillcert {

/// Command line or config file cannot be interpreted (unknown key, malformed
/// value, missing required option, contradictory options). Mapped to exit
/// code 1 by the CLI driver.
struct usage_error : error {
  using error::error;
};

/// Everything a tool run needs, merged from a TOML config file and command
/// line flags (flags win). Numeric system parameters live in `params` and are
/// interpreted by the selected system: scalar uses beta/gamma/omega, Mathieu
/// uses delta/eps/omega, Duffing uses alpha/beta/delta/F/omega.
struct RunConfig {
  // --- system selection -----------------------------------------------
  std::string system;         ///< scalar | mathieu | duffing | duffing1 | duffing2
  std::string series_file;    ///< coefficient-series JSON input
  std::string solution_file;  ///< harmonic-balance solution JSON input
  std::map<std::string, double> params;  ///< user-set numeric parameters

  // --- analysis --------------------------------------------------------
  std::optional<int> N;         ///< truncation order (exactly one of N/E_des for analyze)
  std::optional<double> E_des;  ///< desired accuracy; derives N*
  Formulation formulation = Formulation::Subharmonic;
  std::optional<double> t;      ///< bound target time; default one period
  std::optional<double> env_a;  ///< explicit envelope amplitude
  std::optional<double> env_b;  ///< explicit envelope decay rate
  // Pseudospectrum sampling densities. The defaults are dense because the
  // certificates are Lipschitz-margin sampled checks: near a stability
  // boundary the clearance between the pseudospectrum and the sampled set
  // shrinks, and coarse grids drop an otherwise-certifiable verdict to the
  // numeric fallback. sigma_min of the small monodromy matrices is cheap, so
  // dense defaults cost little next to the Hill-matrix exponential.
  int circle_samples = 262144;  ///< unit-circle pseudospectrum samples
  int axis_samples = 131072;    ///< real-axis pseudospectrum samples

  // --- sweep grid ------------------------------------------------------
  double delta_min = -1.0;
  double delta_max = 8.0;
  int delta_count = 200;
  double eps_min = 0.0;
  double eps_max = 5.0;
  int eps_count = 125;

  // --- validate --------------------------------------------------------
  int n_max = 60;  ///< largest truncation order in a validation table

  // --- xi --------------------------------------------------------------
  std::vector<int> tuple;  ///< harmonic index tuple for the xi table
  double t_max = 0.0;      ///< xi table endpoint; 0 = one period
  int samples = 200;       ///< xi table sample count

  // --- harmonic balance --------------------------------------------------
  int n_h = 45;  ///< retained harmonics for the Duffing solve

  // --- output ------------------------------------------------------------
  std::string out;  ///< artifact path; empty = stdout
};

/// Parse a flat TOML subset: `key = value` lines, `#` comments, quoted or
/// bare strings, numbers, and integer arrays `[1, -2]`. Section headers and
/// duplicate keys are rejected.
///
/// \throws usage_error
std::map<std::string, std::string> parse_toml_lite(const std::string& text);

/// Apply one key/value pair (config-file key or flag spelled with '-'
/// replaced by '_') onto the config.
///
/// \throws usage_error for unknown keys or malformed values
void apply_option(RunConfig& config, const std::string& key,
                  const std::string& value);

/// Merge a config file (when --config is present) and the remaining flags,
/// flags winning over file values.
///
/// \throws usage_error
RunConfig parse_run_config(const std::vector<std::string>& args);

/// Worker cap from HILLCERT_THREADS (>= 1); hardware concurrency when the
/// variable is unset or unparsable.
int threads_from_env();

}  // namespace hillcert
