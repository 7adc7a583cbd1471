// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include "hillcert/types.hpp"

namespace hillcert {

/// Matrix exponential exp(A) of a square complex matrix, computed by
/// scaling-and-squaring with a diagonal Pade approximant whose order is
/// selected by norm thresholds.
///
/// \throws dimension_error if A is not square
/// \throws domain_error    if A has NaN/Inf entries
ComplexMatrix mat_exp(const ComplexMatrix& A);

/// All n eigenvalues of a square complex matrix, with algebraic multiplicity,
/// computed by Schur-based QR iteration on a Hessenberg reduction.
/// The returned order is deterministic (descending modulus, then ascending
/// phase) but carries no mathematical meaning.
///
/// \throws dimension_error   if A is not square
/// \throws domain_error      if A has NaN/Inf entries
/// \throws convergence_error if the QR iteration fails
ComplexVector eigenvalues(const ComplexMatrix& A);

/// Smallest singular value sigma_min(A) of a square complex matrix.
///
/// \throws dimension_error if A is not square
/// \throws domain_error    if A has NaN/Inf entries
double min_singular_value(const ComplexMatrix& A);

/// Solution X of the square linear system A X = B via partial-pivot LU.
///
/// \throws dimension_error if A is not square or B has mismatched rows
/// \throws domain_error    if inputs have NaN/Inf entries
ComplexMatrix solve(const ComplexMatrix& A, const ComplexMatrix& B);

}  // namespace hillcert
