// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include "hillcert/hbm.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hillcert/errors.hpp"

namespace hillcert {

namespace {

constexpr double kResidualTolerance = 1e-12;
constexpr int kMaxNewtonIterations = 50;
constexpr int kMaxStepHalvings = 8;
constexpr double kCoefficientFloor = 1e-15;

void require_params(const DuffingParams& params) {
  if (!(params.omega > 0.0))
    throw parameter_error("forcing frequency omega must be positive");
}

void require_coeffs(const ComplexVector& coeffs, int N_h) {
  if (N_h < 1) throw parameter_error("harmonic count N_h must be >= 1");
  if (coeffs.size() != 2 * N_h + 1)
    throw dimension_error("coefficient vector must have size 2 N_h + 1");
  for (int k = 0; k <= N_h; ++k) {
    const Complex ck = coeffs(N_h + k);
    const Complex cmk = coeffs(N_h - k);
    if (std::abs(cmk - std::conj(ck)) > 1e-9 * (1.0 + std::abs(ck)))
      throw parameter_error("coefficients must be conjugate-symmetric");
  }
}

// Real Newton unknowns: u = [Re c_0, Re c_1, Im c_1, ..., Re c_N, Im c_N].
Eigen::VectorXd pack(const ComplexVector& coeffs, int N_h) {
  Eigen::VectorXd u(2 * N_h + 1);
  u(0) = coeffs(N_h).real();
  for (int k = 1; k <= N_h; ++k) {
    u(2 * k - 1) = coeffs(N_h + k).real();
    u(2 * k) = coeffs(N_h + k).imag();
  }
  return u;
}

ComplexVector unpack(const Eigen::VectorXd& u, int N_h) {
  ComplexVector coeffs(2 * N_h + 1);
  coeffs(N_h) = Complex(u(0), 0.0);
  for (int k = 1; k <= N_h; ++k) {
    coeffs(N_h + k) = Complex(u(2 * k - 1), u(2 * k));
    coeffs(N_h - k) = std::conj(coeffs(N_h + k));
  }
  return coeffs;
}

Eigen::VectorXd pack_residual(const ComplexVector& R, int N_h) {
  Eigen::VectorXd r(2 * N_h + 1);
  r(0) = R(0).real();
  for (int k = 1; k <= N_h; ++k) {
    r(2 * k - 1) = R(k).real();
    r(2 * k) = R(k).imag();
  }
  return r;
}

ComplexVector residual_unchecked(const ComplexVector& coeffs,
                                 const DuffingParams& params, int N_h) {
  const double omega = params.omega;
  // Alternating frequency/time treatment of the cubic: sample x on M points,
  // cube, and project back. M = 4 N_h + 1 is alias-free because the cubic of
  // a degree-N_h signal has degree 3 N_h, and 3 N_h +- M never lands in
  // [-N_h, N_h]. All phases are powers of the M-th root of unity, taken from
  // a precomputed table.
  const int M = 4 * N_h + 1;
  std::vector<Complex> root(M);
  for (int r = 0; r < M; ++r)
    root[r] = std::exp(Complex(0.0, 2.0 * pi * r / M));
  auto root_at = [&](long long exponent) {
    return root[static_cast<int>(((exponent % M) + M) % M)];
  };

  Eigen::VectorXd cubes(M);
  for (int j = 0; j < M; ++j) {
    Complex x = 0.0;
    for (int k = -N_h; k <= N_h; ++k)
      x += coeffs(N_h + k) * root_at(static_cast<long long>(k) * j);
    const double xr = x.real();
    cubes(j) = xr * xr * xr;
  }

  ComplexVector R(N_h + 1);
  for (int k = 0; k <= N_h; ++k) {
    Complex proj = 0.0;
    for (int j = 0; j < M; ++j)
      proj += cubes(j) * root_at(-static_cast<long long>(k) * j);
    proj /= static_cast<double>(M);
    const Complex linear(params.alpha - k * k * omega * omega,
                         params.delta * k * omega);
    R(k) = linear * coeffs(N_h + k) + params.beta * proj;
    if (k == 1) R(k) -= 0.5 * params.F;
  }
  return R;
}

ComplexVector linear_response(const DuffingParams& params, int N_h) {
  ComplexVector coeffs = ComplexVector::Zero(2 * N_h + 1);
  const Complex denom(params.alpha - params.omega * params.omega,
                      params.delta * params.omega);
  const Complex c1 = 0.5 * params.F / denom;
  coeffs(N_h + 1) = c1;
  coeffs(N_h - 1) = std::conj(c1);
  return coeffs;
}

}  // namespace

DuffingParams duffing_config(int which) {
  if (which == 1) return {5.0, 0.1, 0.02, 0.1, 5.0};
  if (which == 2) return {0.5, 3.0, 0.05, 0.1, 0.3};
  throw parameter_error("known configurations are 1 and 2");
}

Complex PeriodicSolution::coeff(int k) const {
  if (std::abs(k) > N_h) return Complex(0.0);
  return coeffs(N_h + k);
}

double PeriodicSolution::value(double t) const {
  Complex x = 0.0;
  for (int k = -N_h; k <= N_h; ++k)
    x += coeffs(N_h + k) * std::exp(Complex(0.0, k * omega * t));
  return x.real();
}

double PeriodicSolution::derivative(double t) const {
  Complex v = 0.0;
  for (int k = -N_h; k <= N_h; ++k)
    v += Complex(0.0, k * omega) * coeffs(N_h + k) *
         std::exp(Complex(0.0, k * omega * t));
  return v.real();
}

ComplexVector hbm_residual(const ComplexVector& coeffs,
                           const DuffingParams& params, int N_h) {
  require_params(params);
  require_coeffs(coeffs, N_h);
  return residual_unchecked(coeffs, params, N_h);
}

PeriodicSolution solve_duffing_hbm(
    const DuffingParams& params, int N_h,
    const std::optional<PeriodicSolution>& initial) {
  require_params(params);
  if (N_h < 1) throw parameter_error("harmonic count N_h must be >= 1");

  ComplexVector coeffs;
  if (initial.has_value()) {
    require_coeffs(initial->coeffs, initial->N_h);
    coeffs = ComplexVector::Zero(2 * N_h + 1);
    for (int k = -std::min(N_h, initial->N_h);
         k <= std::min(N_h, initial->N_h); ++k)
      coeffs(N_h + k) = initial->coeff(k);
  } else {
    coeffs = linear_response(params, N_h);
  }

  Eigen::VectorXd u = pack(coeffs, N_h);
  const int n = 2 * N_h + 1;
  auto residual_of = [&](const Eigen::VectorXd& v) {
    return pack_residual(residual_unchecked(unpack(v, N_h), params, N_h), N_h);
  };

  Eigen::VectorXd r = residual_of(u);
  double norm = r.norm();
  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    if (norm < kResidualTolerance) {
      PeriodicSolution sol;
      sol.N_h = N_h;
      sol.omega = params.omega;
      sol.coeffs = unpack(u, N_h);
      sol.residual_norm = norm;
      return sol;
    }

    // Forward-difference Jacobian, column by column.
    Eigen::MatrixXd J(n, n);
    for (int col = 0; col < n; ++col) {
      const double h = 1e-7 * (1.0 + std::abs(u(col)));
      Eigen::VectorXd up = u;
      up(col) += h;
      J.col(col) = (residual_of(up) - r) / h;
    }

    const Eigen::VectorXd step = J.partialPivLu().solve(-r);
    if (!step.allFinite())
      throw convergence_error("harmonic-balance Jacobian solve failed");

    // Damped update: halve the step until the residual improves.
    double scale = 1.0;
    Eigen::VectorXd best_u = u + step;
    Eigen::VectorXd best_r = residual_of(best_u);
    double best_norm = best_r.norm();
    for (int half = 0; half < kMaxStepHalvings && best_norm >= norm; ++half) {
      scale *= 0.5;
      Eigen::VectorXd cand_u = u + scale * step;
      Eigen::VectorXd cand_r = residual_of(cand_u);
      const double cand_norm = cand_r.norm();
      if (cand_norm < best_norm) {
        best_u = cand_u;
        best_r = cand_r;
        best_norm = cand_norm;
      }
    }
    u = best_u;
    r = best_r;
    norm = best_norm;
  }
  if (norm < kResidualTolerance) {
    PeriodicSolution sol;
    sol.N_h = N_h;
    sol.omega = params.omega;
    sol.coeffs = unpack(u, N_h);
    sol.residual_norm = norm;
    return sol;
  }
  throw convergence_error("harmonic balance did not converge in 50 iterations");
}

FourierMatrixSeries linearized_series(const PeriodicSolution& sol,
                                      const DuffingParams& params) {
  require_params(params);
  if (sol.coeffs.size() != 2 * sol.N_h + 1 || sol.N_h < 1)
    throw parameter_error("periodic solution is empty or inconsistent");

  // x^2 as an exact coefficient convolution of the solution with itself.
  FourierMatrixSeries x;
  x.omega = sol.omega;
  x.dim = 1;
  x.real_series = true;
  for (int k = -sol.N_h; k <= sol.N_h; ++k) {
    ComplexMatrix c(1, 1);
    c(0, 0) = sol.coeff(k);
    x.set(k, c);
  }
  const FourierMatrixSeries xsq = convolve(x, x);

  FourierMatrixSeries J;
  J.omega = sol.omega;
  J.dim = 2;
  J.real_series = true;
  for (const auto& [k, sq] : xsq.coeffs) {
    ComplexMatrix Jk = ComplexMatrix::Zero(2, 2);
    if (k == 0) {
      Jk(0, 1) = 1.0;
      Jk(1, 1) = -params.delta;
      Jk(1, 0) = -params.alpha - 3.0 * params.beta * sq(0, 0);
    } else {
      Jk(1, 0) = -3.0 * params.beta * sq(0, 0);
    }
    // Keep the stored support equal to the effective support so envelope
    // fits see exactly the retained coefficients.
    if (k != 0 && spectral_norm(Jk) <= kCoefficientFloor) continue;
    J.set(k, Jk);
  }
  if (!J.has(0)) {
    ComplexMatrix J0 = ComplexMatrix::Zero(2, 2);
    J0(0, 1) = 1.0;
    J0(1, 0) = -params.alpha;
    J0(1, 1) = -params.delta;
    J.set(0, J0);
  }
  return J;
}

}  // namespace hillcert
