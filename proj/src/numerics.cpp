// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT

#include "hillcert/numerics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <vector>

namespace hillcert {

ComplexMatrix mat_exp(const ComplexMatrix& A) {
  require_square(A, "mat_exp");
  require_finite(A, "mat_exp");
  return A.exp();
}

ComplexVector eigenvalues(const ComplexMatrix& A) {
  require_square(A, "eigenvalues");
  require_finite(A, "eigenvalues");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("eigenvalues: QR iteration did not converge");
  }
  ComplexVector lam = solver.eigenvalues();
  // Deterministic order for reproducible reports: descending modulus,
  // ties broken by ascending phase.
  std::vector<Complex> v(lam.data(), lam.data() + lam.size());
  std::sort(v.begin(), v.end(), [](const Complex& x, const Complex& y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax > ay;
    return std::arg(x) < std::arg(y);
  });
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = v[static_cast<size_t>(i)];
  return lam;
}

double min_singular_value(const ComplexMatrix& A) {
  require_square(A, "min_singular_value");
  require_finite(A, "min_singular_value");
  if (A.rows() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(A);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

ComplexMatrix solve(const ComplexMatrix& A, const ComplexMatrix& B) {
  require_square(A, "solve");
  require_finite(A, "solve");
  require_finite(B, "solve");
  if (A.rows() != B.rows()) {
    throw dimension_error("solve: row count of right-hand side (" +
                          std::to_string(B.rows()) + ") does not match A (" +
                          std::to_string(A.rows()) + ")");
  }
  return Eigen::PartialPivLU<ComplexMatrix>(A).solve(B);
}

}  // namespace hillcert
