// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include "hillcert/fourier.hpp"
#include "hillcert/types.hpp"

namespace hillcert {

/// A rigorous truncation-error bound E for the Hill-projection approximant of
/// Phi(t) at order N under a decay envelope: whenever ||J_k||_2 <= a e^{-b|k|}
/// with b > ln 2, the true error satisfies
///   direct:      ||Phi(t) - Phi_N(t)||_2 <= (2 e^{-b})^N  (e^{|4at|} - 1)
///   subharmonic: ||Phi(t) - Phi_N(t)||_2 <= (2 e^{-b})^{2N}(e^{|4at|} - 1)
struct ErrorCertificate {
  double bound = 0.0;  ///< the bound E (exact formula value)
  double t = 0.0;
  int N = 0;
  Formulation formulation = Formulation::Direct;
  DecayEnvelope envelope;
};

/// Truncation-error bound of the direct formulation.
///
/// \throws parameter_error if N < 0
/// \throws envelope_error  if env.b <= ln 2, b is not finite (the +infinity
///         fit sentinel is disallowed in certificates), or a < 0
ErrorCertificate direct_error_bound(const DecayEnvelope& env, int N, double t);

/// Truncation-error bound of the subharmonic formulation (exponent 2N).
/// Same preconditions as direct_error_bound, but N >= 1.
ErrorCertificate subharmonic_error_bound(const DecayEnvelope& env, int N,
                                         double t);

/// Bound value for either formulation, evaluated in the log domain so that
/// (2 e^{-b})^N cannot underflow prematurely:
/// ln E = nu (ln 2 - b) + |4at| + ln(1 - e^{-|4at|}) with nu = N or 2N.
/// Exposed for callers that compare bounds across many N.
double error_bound_value(const DecayEnvelope& env, int N, double t,
                         Formulation formulation);

/// Minimal truncation order N* with error_bound_value(env, N*, t, f) <= E_des:
/// the ceiling of (|4at| + ln(1 - e^{-|4at|}) - ln E_des)/(b - ln 2) (halved
/// for the subharmonic formulation), clamped at 0, then adjusted so that
/// bound(N*) <= E_des < bound(N* - 1) holds exactly in double arithmetic.
///
/// \throws envelope_error  if the envelope is not certificate-grade
/// \throws parameter_error if E_des <= 0 or t == 0
int required_truncation(const DecayEnvelope& env, double t, double E_des,
                        Formulation formulation);

/// The scalar-factor bound |xi_p(t)| <= |t|^m / m! for index tuples of
/// length m.
///
/// \throws parameter_error if m < 1
double xi_polynomial_bound(int m, double t);

/// Taylor remainder of the binomial-series tail:
/// R_N(x) = sum_{M=N+1}^inf binom(M+k, k) x^M
///        = x^N sum_{m=0}^{k} binom(N+k+1, N+m+1) (x/(1-x))^{m+1}.
///
/// \throws domain_error    if |x| >= 1
/// \throws parameter_error if k < 0 or N < 0
double taylor_remainder(double x, int k, int N);

}  // namespace hillcert
