// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <utility>

#include "hillcert/fourier.hpp"
#include "hillcert/types.hpp"

namespace hillcert {

/// Truncated Hill matrix H of order N for an n-dimensional periodic system,
/// with its companion operators. Blocks are indexed j = -N..N ascending
/// top-to-bottom / left-to-right; block (j,k) of H is J_{j-k} - i j omega I
/// delta_{jk} (so the top-left diagonal block carries +iN omega I).
struct HillOperators {
  int N = 0;        ///< truncation order
  int n = 0;        ///< state dimension
  double omega = 0; ///< base frequency of the source series
  ComplexMatrix H;  ///< n(2N+1) x n(2N+1)
  RealVector D;     ///< diagonal of the block operator D: value j, repeated n times per block
  ComplexMatrix W;  ///< n(2N+1) x n, stack of 2N+1 identities
  ComplexMatrix C;  ///< n x n(2N+1), central-block selector; C W = I
};

/// The subharmonic pair: H as above plus the 2nN-sized companion H_hat
/// obtained from H by discarding the last block row/column and subtracting
/// 0.5 i omega from the diagonal. Its block indices are the half-integers
/// d = -N+1/2, ..., N-1/2 stored in D_hat.
struct SubharmonicOperators {
  int N = 0;
  int n = 0;
  double omega = 0;
  ComplexMatrix H;      ///< n(2N+1) x n(2N+1), as assemble_hill
  ComplexMatrix H_hat;  ///< 2nN x 2nN
  RealVector D;         ///< integer block diagonal of H
  RealVector D_hat;     ///< half-integer block diagonal of H_hat
  ComplexMatrix W;      ///< n(2N+1) x n
  ComplexMatrix W_hat;  ///< 2nN x n, stack of 2N identities
};

/// The full subharmonic Hill matrix H_tilde: the order-2N Hill matrix of the
/// omega/2 series with J~_{2k} = J_k and vanishing odd coefficients. D_tilde
/// stores the half-integer values j~/2 for j~ = -2N..2N (so the diagonal
/// phase operator is e^{i omega D_tilde t} with the *original* omega).
struct FullSubharmonic {
  int N = 0;
  int n = 0;
  double omega = 0;
  ComplexMatrix H_tilde;  ///< n(4N+1) x n(4N+1)
  RealVector D_tilde;     ///< length n(4N+1), values j~/2
};

/// Assemble the truncated Hill matrix and companions D, W, C.
///
/// \throws parameter_error if N < 0 or series invalid
HillOperators assemble_hill(const FourierMatrixSeries& series, int N);

/// Assemble H together with the discard-and-shift companion H_hat, D_hat,
/// W_hat.
///
/// \throws parameter_error if N < 1 (H_hat would be empty)
SubharmonicOperators assemble_subharmonic_pair(const FourierMatrixSeries& series,
                                               int N);

/// Assemble the full subharmonic Hill matrix of block order 2N (size
/// n(4N+1)) with its half-integer diagonal.
///
/// \throws parameter_error if N < 1
FullSubharmonic assemble_full_subharmonic(const FourierMatrixSeries& series,
                                          int N);

/// Apply the even-then-odd block permutation that decouples a full
/// subharmonic Hill matrix and return the two diagonal blocks
/// (H of size n(2N+1), H_hat of size 2nN). The off-diagonal coupling of the
/// permuted matrix must be exactly zero; anything else signals a malformed
/// input.
///
/// \throws dimension_error if H_tilde is not n(4N+1) square
/// \throws structure_error if the permuted matrix has nonzero coupling
std::pair<ComplexMatrix, ComplexMatrix> permutation_decouple(
    const ComplexMatrix& H_tilde, int n, int N);

/// Row indices (0-based) of the even-then-odd block permutation for block
/// size n and order N: all rows of even blocks j~ ascending, then all rows of
/// odd blocks j~ ascending. Exposed for tests that reconstruct the
/// similarity transform.
std::vector<int> subharmonic_permutation(int n, int N);

}  // namespace hillcert
