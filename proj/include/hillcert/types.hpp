// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "hillcert/errors.hpp"

namespace hillcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Which formula produced a fundamental-matrix approximant.
enum class Formulation { Direct, Subharmonic, Reference };

/// A fundamental solution matrix Phi(t) approximant together with the
/// evaluation time, the truncation order that produced it, and the formula
/// family it came from.
struct FundamentalApprox {
  ComplexMatrix value;  ///< n x n approximant of Phi(t)
  double t = 0.0;       ///< evaluation time, t >= 0
  int N = 0;            ///< truncation order (0 for Reference)
  Formulation formulation = Formulation::Direct;
};

/// True iff every entry of A is finite (no NaN / Inf).
inline bool all_finite(const ComplexMatrix& A) {
  return A.allFinite();
}

/// Throw domain_error if any entry of A is NaN or infinite.
inline void require_finite(const ComplexMatrix& A, const char* what) {
  if (!A.allFinite()) {
    throw domain_error(std::string(what) + ": non-finite matrix entries");
  }
}

/// Throw dimension_error unless A is square.
inline void require_square(const ComplexMatrix& A, const char* what) {
  if (A.rows() != A.cols()) {
    throw dimension_error(std::string(what) + ": matrix must be square, got " +
                          std::to_string(A.rows()) + "x" +
                          std::to_string(A.cols()));
  }
}

}  // namespace hillcert
