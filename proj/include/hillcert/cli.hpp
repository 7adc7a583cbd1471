// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "hillcert/config.hpp"

namespace hillcert {

/// Stability report for one system: JSON with monodromy matrix, multipliers,
/// exponents, certificate bound, truncation order used (N, or N* derived from
/// E_des), and verdict.
///
/// \throws usage_error / envelope_error / numeric errors (driver maps codes)
int cmd_analyze(const RunConfig& config);

/// Ince-Strutt sweep over the (delta, eps) grid: one CSV row per point with
/// delta, epsilon, the largest multiplier modulus, and the verdict. Rows are
/// emitted row-major (delta outer, epsilon inner) regardless of parallelism.
int cmd_sweep(const RunConfig& config);

/// Truncation-order validation table: CSV rows (N, actual_error, bound) for
/// N = 1..n_max against the adaptive RK reference, followed by comment rows
/// with N_num (first N with actual error < E_des) and N* (first N with
/// certified bound <= E_des).
int cmd_validate(const RunConfig& config);

/// Tabulate one oscillatory integral factor: CSV rows (t, Re xi, Im xi,
/// polynomial bound) over [0, t_max].
int cmd_xi(const RunConfig& config);

/// Solve the forced Duffing oscillator by harmonic balance and write the
/// solution JSON (harmonics + parameters), importable by cmd_analyze.
int cmd_duffing(const RunConfig& config);

/// Parse argv, dispatch to the subcommand, and map failures to exit codes:
/// 0 success, 1 usage error, 2 certificate inapplicable (envelope/fit),
/// 3 numeric failure.
int run_cli(int argc, char** argv);

/// Testing seam for run_cli.
int run_cli(const std::vector<std::string>& args);

}  // namespace hillcert
