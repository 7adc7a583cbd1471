// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <optional>

#include "hillcert/fourier.hpp"
#include "hillcert/types.hpp"

namespace hillcert {

/// Parameters of the forced Duffing oscillator
///   x'' + delta x' + alpha x + beta x^3 = F cos(omega t).
struct DuffingParams {
  double alpha = 0.0;  ///< linear stiffness
  double beta = 0.0;   ///< cubic stiffness
  double delta = 0.0;  ///< damping
  double F = 0.0;      ///< forcing amplitude
  double omega = 1.0;  ///< forcing frequency, > 0
};

/// Two standard parameter sets: 1 = stiff near-linear regime
/// (alpha=5, beta=0.1, delta=0.02, F=0.1, omega=5), 2 = strongly nonlinear
/// low-frequency regime (alpha=0.5, beta=3, delta=0.05, F=0.1, omega=0.3).
///
/// \throws parameter_error for any other index
DuffingParams duffing_config(int which);

/// A periodic solution as a two-sided Fourier series
/// x(t) = sum_{k=-N_h}^{N_h} c_k e^{i k omega t} with conjugate-symmetric
/// coefficients (real signal).
struct PeriodicSolution {
  int N_h = 0;                ///< number of retained harmonics
  double omega = 1.0;         ///< fundamental frequency
  ComplexVector coeffs;       ///< c_k, k = -N_h..N_h ascending (size 2N_h+1)
  double residual_norm = 0.0; ///< 2-norm of the converged residual

  Complex coeff(int k) const;
  double value(double t) const;       ///< x(t)
  double derivative(double t) const;  ///< x'(t)
};

/// Frequency-domain residual of the Duffing equation for the harmonics
/// k = 0..N_h:
///   R_k = (alpha - k^2 omega^2 + i delta k omega) c_k + beta (x^3)_k
///         - (F/2) [k = 1],
/// with the cubic term computed by sample-cube-project on 4 N_h + 1 points
/// (alias-free for a degree-N_h signal).
///
/// \throws dimension_error / parameter_error if coeffs has the wrong size or
///         is not conjugate-symmetric
ComplexVector hbm_residual(const ComplexVector& coeffs,
                           const DuffingParams& params, int N_h);

/// Newton iteration on the harmonic-balance residual with a forward-difference
/// Jacobian and step halving; converges when the residual 2-norm drops below
/// 1e-12. The default initial guess is the linear response
/// c_1 = (F/2)/(alpha - omega^2 + i delta omega).
///
/// \throws parameter_error if N_h < 1 or params.omega <= 0
/// \throws convergence_error after 50 iterations without convergence
PeriodicSolution solve_duffing_hbm(
    const DuffingParams& params, int N_h = 45,
    const std::optional<PeriodicSolution>& initial = std::nullopt);

/// Fourier series of the Jacobian J(t) = [[0, 1], [-alpha - 3 beta x(t)^2,
/// -delta]] along the solution; (x^2)_k comes from the exact coefficient
/// convolution, and coefficients below 1e-15 in norm are dropped so the
/// stored support equals the retained support.
///
/// \throws parameter_error if the solution is empty
FourierMatrixSeries linearized_series(const PeriodicSolution& sol,
                                      const DuffingParams& params);

}  // namespace hillcert
