// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace hillcert {

/// Base class of all errors thrown by hillcert.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes are inconsistent (non-square input, size mismatch, ...).
struct dimension_error : error {
  using error::error;
};

/// Input values outside the mathematical domain (NaN/Inf entries, t < 0, ...).
struct domain_error : error {
  using error::error;
};

/// Scalar parameter violates a precondition (N < 0, omega <= 0, ...).
struct parameter_error : error {
  using error::error;
};

/// A decay envelope with b <= ln 2 was passed where the exponential
/// truncation-error bound requires b > ln 2.
struct envelope_error : error {
  using error::error;
};

/// Envelope fitting failed (no usable coefficients above the floor, ...).
struct fit_error : error {
  using error::error;
};

/// An iterative solver (eigenvalue QR, harmonic-balance Newton) failed to
/// converge within its iteration budget.
struct convergence_error : error {
  using error::error;
};

/// Structural invariant of a composite object is broken (coefficient size
/// mismatch, missing conjugate symmetry on a real series, ...).
struct structure_error : error {
  using error::error;
};

/// Adaptive integration drove the step size below its floor.
struct stiffness_error : error {
  using error::error;
};

/// File could not be read/written or its contents failed to parse.
struct io_error : error {
  using error::error;
};

}  // namespace hillcert
