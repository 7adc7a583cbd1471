// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT

#include "hillcert/hill.hpp"

#include <vector>

namespace hillcert {

HillOperators assemble_hill(const FourierMatrixSeries& series, int N) {
  if (N < 0) throw parameter_error("assemble_hill: N must be >= 0");
  series.validate();

  const int n = series.dim;
  const int blocks = 2 * N + 1;
  const int size = n * blocks;
  const Complex iw(0.0, series.omega);

  HillOperators ops;
  ops.N = N;
  ops.n = n;
  ops.omega = series.omega;
  ops.H = ComplexMatrix::Zero(size, size);
  ops.D = RealVector::Zero(size);
  ops.W = ComplexMatrix::Zero(size, n);
  ops.C = ComplexMatrix::Zero(n, size);

  for (int j = -N; j <= N; ++j) {
    const int row = (j + N) * n;
    for (int k = -N; k <= N; ++k) {
      const int col = (k + N) * n;
      if (series.has(j - k)) {
        ops.H.block(row, col, n, n) = series.coeff(j - k);
      }
    }
    // Diagonal frequency shift: -i j omega I on block (j, j).
    ops.H.block(row, row, n, n) -= static_cast<double>(j) * iw *
                                   ComplexMatrix::Identity(n, n);
    ops.D.segment(row, n).setConstant(static_cast<double>(j));
    ops.W.block(row, 0, n, n) = ComplexMatrix::Identity(n, n);
  }
  ops.C.block(0, N * n, n, n) = ComplexMatrix::Identity(n, n);
  return ops;
}

SubharmonicOperators assemble_subharmonic_pair(const FourierMatrixSeries& series,
                                               int N) {
  if (N < 1) {
    throw parameter_error(
        "assemble_subharmonic_pair: N must be >= 1 (H_hat is empty at N = 0)");
  }
  const HillOperators hill = assemble_hill(series, N);
  const int n = hill.n;
  const int hat_size = 2 * n * N;
  const Complex half_iw(0.0, 0.5 * series.omega);

  SubharmonicOperators ops;
  ops.N = N;
  ops.n = n;
  ops.omega = series.omega;
  ops.H = hill.H;
  ops.D = hill.D;
  ops.W = hill.W;

  // Discard the last block row/column of H, then subtract 0.5 i omega from
  // the diagonal. The resulting block indices are the half-integers
  // d = -N+1/2 .. N-1/2.
  ops.H_hat = hill.H.topLeftCorner(hat_size, hat_size);
  ops.H_hat -= half_iw * ComplexMatrix::Identity(hat_size, hat_size);
  ops.D_hat = RealVector::Zero(hat_size);
  ops.W_hat = ComplexMatrix::Zero(hat_size, n);
  for (int b = 0; b < 2 * N; ++b) {
    ops.D_hat.segment(b * n, n).setConstant(-N + 0.5 + b);
    ops.W_hat.block(b * n, 0, n, n) = ComplexMatrix::Identity(n, n);
  }
  return ops;
}

FullSubharmonic assemble_full_subharmonic(const FourierMatrixSeries& series,
                                          int N) {
  if (N < 1) throw parameter_error("assemble_full_subharmonic: N must be >= 1");
  series.validate();

  // The omega/2 series has J~_{2k} = J_k and vanishing odd coefficients.
  FourierMatrixSeries sub;
  sub.omega = series.omega / 2.0;
  sub.dim = series.dim;
  sub.real_series = series.real_series;
  for (const auto& [k, J] : series.coeffs) sub.set(2 * k, J);

  const HillOperators hill = assemble_hill(sub, 2 * N);

  FullSubharmonic full;
  full.N = N;
  full.n = series.dim;
  full.omega = series.omega;
  full.H_tilde = hill.H;
  // D stores the integer block values j~ of the order-2N assembly; expressed
  // against the original omega the phase diagonal is j~/2.
  full.D_tilde = hill.D / 2.0;
  return full;
}

std::vector<int> subharmonic_permutation(int n, int N) {
  std::vector<int> idx;
  idx.reserve(static_cast<size_t>(n) * (4 * N + 1));
  // Even blocks j~ = -2N, -2N+2, ..., 2N, then odd j~ = -2N+1, ..., 2N-1.
  for (int j = -2 * N; j <= 2 * N; j += 2) {
    const int base = (j + 2 * N) * n;
    for (int r = 0; r < n; ++r) idx.push_back(base + r);
  }
  for (int j = -2 * N + 1; j <= 2 * N - 1; j += 2) {
    const int base = (j + 2 * N) * n;
    for (int r = 0; r < n; ++r) idx.push_back(base + r);
  }
  return idx;
}

std::pair<ComplexMatrix, ComplexMatrix> permutation_decouple(
    const ComplexMatrix& H_tilde, int n, int N) {
  require_square(H_tilde, "permutation_decouple");
  const int size = n * (4 * N + 1);
  if (H_tilde.rows() != size) {
    throw dimension_error("permutation_decouple: expected size " +
                          std::to_string(size) + ", got " +
                          std::to_string(H_tilde.rows()));
  }
  const std::vector<int> idx = subharmonic_permutation(n, N);
  ComplexMatrix P(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      P(i, j) = H_tilde(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    }
  }
  const int even_size = n * (2 * N + 1);
  const int odd_size = 2 * n * N;
  // Decoupling must be exact: the even/odd lattices never mix because all odd
  // Fourier coefficients of the subharmonic series vanish identically.
  if (P.topRightCorner(even_size, odd_size).cwiseAbs().maxCoeff() != 0.0 ||
      P.bottomLeftCorner(odd_size, even_size).cwiseAbs().maxCoeff() != 0.0) {
    throw structure_error(
        "permutation_decouple: input couples even and odd blocks (not a "
        "subharmonic Hill matrix)");
  }
  return {P.topLeftCorner(even_size, even_size),
          P.bottomRightCorner(odd_size, odd_size)};
}

}  // namespace hillcert
