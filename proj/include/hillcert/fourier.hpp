// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <map>

#include "hillcert/types.hpp"

namespace hillcert {

/// A T-periodic matrix function J(t) = sum_k J_k e^{i k omega t} represented
/// by its finitely many stored matrix Fourier coefficients. Absent k means
/// J_k = 0. Treat as immutable once built; all free functions are pure.
struct FourierMatrixSeries {
  double omega = 1.0;                   ///< base frequency; period T = 2*pi/omega
  int dim = 0;                          ///< state dimension n
  std::map<int, ComplexMatrix> coeffs;  ///< k -> J_k (n x n)
  bool real_series = false;  ///< set when J(t) is real-valued; then J_{-k} = conj(J_k)

  double period() const { return 2.0 * pi / omega; }

  /// Largest |k| with a stored coefficient (0 for an empty series).
  int max_harmonic() const;

  bool has(int k) const { return coeffs.count(k) != 0; }

  /// Stored J_k, or the zero matrix when k is absent.
  ComplexMatrix coeff(int k) const;

  /// Builder convenience: store J_k (must be dim x dim).
  void set(int k, ComplexMatrix J);

  /// Check all structural invariants: omega > 0, dim >= 1, every stored
  /// coefficient dim x dim with finite entries, and — when real_series is
  /// set — conjugate symmetry J_{-k} = conj(J_k).
  ///
  /// \throws parameter_error, structure_error
  void validate() const;
};

/// Exponential decay envelope ||J_k||_2 <= a e^{-b|k|} of a coefficient
/// sequence. The truncation-error bounds additionally require b > ln 2,
/// recorded in bound_valid.
struct DecayEnvelope {
  double a = 0.0;
  double b = 0.0;
  bool bound_valid = false;  ///< true iff b > ln 2
};

/// Build an envelope from (a, b), deriving the bound_valid flag.
DecayEnvelope make_envelope(double a, double b);

/// True iff a e^{-b|k|} >= ||J_k||_2 for every stored coefficient with
/// ||J_k||_2 > floor (the fit contract excludes sub-floor storage).
bool envelope_majorizes(const DecayEnvelope& env, const FourierMatrixSeries& s,
                        double floor = 0.0);

/// Evaluate J(t) = sum_k J_k e^{i k omega t} over the stored support.
ComplexMatrix eval_series(const FourierMatrixSeries& s, double t);

/// Discrete Fourier projection of uniform samples of one period:
/// J_k = (1/M) sum_j sampler(jT/M) e^{-i k omega jT/M} for |k| <= k_max.
///
/// \throws parameter_error if n_samples <= 2*k_max (aliasing guard) or
///         omega <= 0
FourierMatrixSeries coefficients_from_samples(
    const std::function<ComplexMatrix(double)>& sampler, double omega,
    int n_samples, int k_max);

/// Fit the decay envelope of a coefficient sequence: least-squares line fit
/// of ln||J_k||_2 against |k| over coefficients with ||J_k||_2 > floor, then
/// inflate a minimally so a e^{-b|k|} >= ||J_k||_2 holds for every retained
/// coefficient. Degenerate cases: a series whose retained support is only
/// k = 0 fits b = +infinity (the projection of a time-invariant system is
/// exact); a retained support at a single nonzero |k| determines no slope and
/// fits b = 1 by convention. A non-decaying sequence clamps b to a tiny
/// positive value with bound_valid = false.
///
/// \throws fit_error if no coefficient exceeds the floor
DecayEnvelope fit_decay_envelope(const FourierMatrixSeries& s,
                                 double floor = 1e-15);

/// The minimizer of the one-parameter envelope family b(eps) = ln 2 - ln eps,
/// a(eps) = max(beta, 2*gamma/eps) for a support-1 series with ||J_0|| = beta,
/// ||J_{+-1}|| = gamma, together with the minimal truncation-error bound
/// E_star it yields at time t and order N.
struct OptimalEnvelope {
  double a = 0.0;
  double b = 0.0;
  double E_star = 0.0;
  double epsilon = 0.0;  ///< minimizing parameter (eps* or eps**)
};

/// Closed-form minimization of the eps-parametrized error bound
/// E(eps) = eps^N (e^{4 a(eps) t} - 1):
///   beta <  N/(4t):  eps* = 8*t*gamma/N, a = N/(4t),
///                    E*  = (8*gamma*t/N)^N (e^N - 1)
///   beta >= N/(4t):  eps** = 2*gamma/beta, a = beta,
///                    E*  = (2*gamma/beta)^N (e^{4*beta*t} - 1)
/// The returned b may be <= ln 2 (when the minimizing eps >= 1); callers must
/// consult make_envelope(a, b).bound_valid before issuing certificates.
///
/// \throws parameter_error if N < 1, gamma <= 0, or t <= 0
OptimalEnvelope optimal_finite_support_envelope(double beta, double gamma,
                                                double t, int N);

/// Cauchy product of two coefficient sequences (the coefficients of
/// A(t)·B(t)): (A*B)_k = sum_m A_m B_{k-m}, support truncated to the sum of
/// the supports.
///
/// \throws parameter_error if the base frequencies differ
/// \throws dimension_error if the dimensions are incompatible
FourierMatrixSeries convolve(const FourierMatrixSeries& A,
                             const FourierMatrixSeries& B);

/// Spectral norm ||M||_2 (largest singular value); the norm used everywhere
/// in this library.
double spectral_norm(const ComplexMatrix& M);

}  // namespace hillcert
