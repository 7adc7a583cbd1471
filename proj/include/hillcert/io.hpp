// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "hillcert/fourier.hpp"
#include "hillcert/hbm.hpp"
#include "hillcert/types.hpp"

namespace hillcert {

/// Fixed-width scientific rendering ("%.12e") used for every floating-point
/// value the tools emit, so repeated runs produce byte-identical artifacts.
std::string format_double(double x);

/// Whole-file read.
/// \throws io_error when the file cannot be opened
std::string read_text_file(const std::string& path);

/// Whole-file write (truncates).
/// \throws io_error when the file cannot be created
void write_text_file(const std::string& path, const std::string& content);

/// Render a coefficient series as JSON:
///   { "omega": w, "dim": n, "real": bool,
///     "coeffs": [ { "k": k, "re": [[...]], "im": [[...]] }, ... ] }
/// Coefficients are emitted in ascending k with %.12e entries.
std::string write_series_json(const FourierMatrixSeries& series);

/// Parse the JSON produced by write_series_json (field order free, extra
/// fields ignored). The result is validated before being returned.
///
/// \throws io_error on malformed JSON or missing/ill-typed fields
/// \throws parameter_error / structure_error via validate()
FourierMatrixSeries parse_series_json(const std::string& text);

/// Render a converged harmonic-balance solution together with the oscillator
/// parameters that produced it:
///   { "params": { "alpha": .., "beta": .., "delta": .., "F": .., "omega": .. },
///     "N_h": n, "residual_norm": r,
///     "coeffs": [ { "k": k, "re": x, "im": y }, ... ] }
std::string write_solution_json(const PeriodicSolution& sol,
                                const DuffingParams& params);

/// Parse the JSON produced by write_solution_json.
///
/// \throws io_error on malformed JSON or missing/ill-typed fields
std::pair<PeriodicSolution, DuffingParams> parse_solution_json(
    const std::string& text);

}  // namespace hillcert
