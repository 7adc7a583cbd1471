// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "hillcert/fourier.hpp"
#include "hillcert/types.hpp"

namespace hillcert {

/// Outcome classes of a stability analysis. Guaranteed verdicts are backed by
/// a successful certificate procedure; Numeric verdicts only reflect the
/// approximate multipliers; Undetermined means certification was attempted
/// but the pseudospectrum was too large to decide.
enum class StabilityStatus {
  GuaranteedStable,
  GuaranteedUnstable,
  NumericStable,
  NumericUnstable,
  Undetermined,
};

const char* to_string(StabilityStatus status);

/// Result of a stability analysis of one periodic system.
struct StabilityVerdict {
  /// Approximate Floquet multipliers, sorted by descending modulus.
  ComplexVector multipliers;
  /// Floquet exponents alpha_i = log(lambda_i)/T on the principal branch,
  /// so exp(alpha_i T) = lambda_i.
  ComplexVector exponents;
  /// Certified radius E: every true multiplier lies within E (2-norm) of the
  /// spectrum of the computed monodromy. Infinite when no certificate holds.
  double bound = std::numeric_limits<double>::infinity();
  StabilityStatus status = StabilityStatus::Undetermined;
};

/// Eigenvalues of a monodromy approximation (Floquet multipliers), sorted by
/// descending modulus.
///
/// \throws dimension_error if phi.value is not square
ComplexVector floquet_multipliers(const FundamentalApprox& phi);

/// Whether z belongs to the E-pseudospectrum of phi:
/// sigma_min(z I - phi) <= E.
///
/// \throws parameter_error if E < 0
bool pseudospectrum_membership(const ComplexMatrix& phi, Complex z, double E);

/// Certifies that the whole E-pseudospectrum of phi lies in the open unit
/// disk: all eigenvalues strictly inside, and on every unit-circle sample
/// sigma_min(z I - phi) exceeds E plus half the sample spacing (sigma_min is
/// 1-Lipschitz in z, so the sampled check is rigorous between samples).
/// A true return certifies that every matrix within E of phi is Schur
/// stable; false only means "not certified".
///
/// \throws parameter_error if n_samples < 64 or E < 0
bool certify_disk_containment(const ComplexMatrix& phi, double E,
                              int n_samples = 4096);

/// Certifies instability from one multiplier lambda_hat outside the unit
/// circle: a circular contour around it with radius
/// r = min(|lambda_hat| - 1, gap to nearest other eigenvalue)/2 must enclose
/// exactly one eigenvalue and keep sigma_min(z I - phi) above E plus half the
/// arc spacing. Every matrix within E of phi then has exactly one eigenvalue
/// inside the contour, which lies entirely outside the closed unit disk.
/// lambda_hat is snapped to the nearest eigenvalue of phi.
///
/// \throws parameter_error if n_samples < 64 or E < 0
bool certify_instability(const ComplexMatrix& phi, double E,
                         Complex lambda_hat, int n_samples = 4096);

/// Two-set certification for undamped 2x2 systems whose multipliers either
/// form a conjugate pair on the unit circle (stable) or a real reciprocal
/// pair (unstable). Samples the unit circle and the real segment
/// [-rho, rho], rho = spectral radius + E + 0.1, with Lipschitz margins:
/// if the E-pseudospectrum provably misses the axis the verdict is
/// GuaranteedStable, if it provably misses the circle it is
/// GuaranteedUnstable, otherwise Undetermined. `period` scales the reported
/// exponents.
///
/// \throws parameter_error if phi is not 2x2, E < 0, n_circle < 64,
///         or n_axis < 2
StabilityVerdict mathieu_verdict(const ComplexMatrix& phi, double E,
                                 int n_circle = 4096, int n_axis = 2048,
                                 double period = 1.0);

/// Full analysis pipeline: computes the monodromy approximation at t = T by
/// the requested formulation, evaluates the truncation-error certificate for
/// the supplied envelope, then attempts certification — disk containment,
/// instability contours around outside multipliers, and (when
/// mathieu_dichotomy is set and the system is 2x2) the two-set test. The
/// certification radius is the truncation bound plus a roundoff allowance
/// 1e-13 max(1, ||Phi_N||), so certificates never assert eigenvalue geometry
/// at the scale of floating-point noise in the computed approximant. When a
/// usable bound exists but every certificate attempt fails, the status is
/// Undetermined: the pseudospectrum at that radius is compatible with both
/// outcomes. Only when no bound is available at all — the Reference
/// formulation, an envelope unusable for certificates, or an overflowing
/// bound — does the verdict fall back to the uncertified numeric multiplier
/// classification (spectral radius <= 1 + 1e-9) with an infinite bound.
///
/// \throws parameter_error / propagated projection errors on bad inputs
StabilityVerdict analyze_stability(const FourierMatrixSeries& series,
                                   const DecayEnvelope& env, int N,
                                   Formulation formulation,
                                   bool mathieu_dichotomy = false,
                                   int n_circle = 4096, int n_axis = 2048);

/// Smallest truncation order N <= N_max whose analysis yields a Guaranteed
/// verdict with the fixed envelope, or nullopt. Sampling counts are passed
/// through to the certificates; tightly clustered spectra need finer grids
/// than the defaults because the Lipschitz margin shrinks like 1/n.
///
/// \throws parameter_error if N_max < 1
std::optional<int> minimal_n_for_guarantee(const FourierMatrixSeries& series,
                                           const DecayEnvelope& env,
                                           Formulation formulation, int N_max,
                                           bool mathieu_dichotomy = false,
                                           int n_circle = 4096,
                                           int n_axis = 2048);

/// Same search with a per-order envelope policy env_for(N) (e.g. the
/// bound-optimal finite-support envelope at each order).
std::optional<int> minimal_n_for_guarantee(
    const FourierMatrixSeries& series,
    const std::function<DecayEnvelope(int)>& env_for, Formulation formulation,
    int N_max, bool mathieu_dichotomy = false, int n_circle = 4096,
    int n_axis = 2048);

}  // namespace hillcert
