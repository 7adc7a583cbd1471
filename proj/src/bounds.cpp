// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT

#include "hillcert/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hillcert {

namespace {

const double kLn2 = std::log(2.0);

void require_certificate_envelope(const DecayEnvelope& env) {
  if (!std::isfinite(env.b)) {
    throw envelope_error(
        "error bound: b = +infinity sentinel is disallowed in certificates; "
        "pick a finite b (e.g. via optimal_finite_support_envelope)");
  }
  if (!(env.b > kLn2)) {
    throw envelope_error(
        "error bound inapplicable: envelope has b <= ln 2 (b = " +
        std::to_string(env.b) + ", need b > ln 2 = 0.693...)");
  }
  if (!(env.a >= 0.0) || !std::isfinite(env.a)) {
    throw envelope_error("error bound: envelope coefficient a must be a "
                         "finite nonnegative real");
  }
}

/// ln of the bound, with nu = N (direct) or 2N (subharmonic).
/// t = 0 gives -infinity (the bound is exactly zero).
double log_bound(const DecayEnvelope& env, int nu, double t) {
  const double x = std::abs(4.0 * env.a * t);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  // ln[(2e^{-b})^nu (e^x - 1)] = nu (ln2 - b) + x + ln(1 - e^{-x}).
  return nu * (kLn2 - env.b) + x + std::log1p(-std::exp(-x));
}

}  // namespace

double error_bound_value(const DecayEnvelope& env, int N, double t,
                         Formulation formulation) {
  require_certificate_envelope(env);
  if (N < 0) throw parameter_error("error bound: N must be >= 0");
  const int nu = formulation == Formulation::Subharmonic ? 2 * N : N;
  return std::exp(log_bound(env, nu, t));
}

ErrorCertificate direct_error_bound(const DecayEnvelope& env, int N, double t) {
  ErrorCertificate cert;
  cert.bound = error_bound_value(env, N, t, Formulation::Direct);
  cert.t = t;
  cert.N = N;
  cert.formulation = Formulation::Direct;
  cert.envelope = env;
  return cert;
}

ErrorCertificate subharmonic_error_bound(const DecayEnvelope& env, int N,
                                         double t) {
  if (N < 1) {
    throw parameter_error("subharmonic_error_bound: N must be >= 1");
  }
  ErrorCertificate cert;
  cert.bound = error_bound_value(env, N, t, Formulation::Subharmonic);
  cert.t = t;
  cert.N = N;
  cert.formulation = Formulation::Subharmonic;
  cert.envelope = env;
  return cert;
}

int required_truncation(const DecayEnvelope& env, double t, double E_des,
                        Formulation formulation) {
  require_certificate_envelope(env);
  if (!(E_des > 0.0)) {
    throw parameter_error("required_truncation: E_des must be positive");
  }
  if (t == 0.0) {
    throw parameter_error(
        "required_truncation: t must be nonzero (every order is exact at "
        "t = 0)");
  }

  const double x = std::abs(4.0 * env.a * t);
  double threshold = 0.0;
  if (x > 0.0) {
    threshold =
        (x + std::log1p(-std::exp(-x)) - std::log(E_des)) / (env.b - kLn2);
  }
  if (formulation == Formulation::Subharmonic) threshold /= 2.0;
  int N = std::max(0, static_cast<int>(std::ceil(threshold)));

  // The analytic threshold can land an ulp off the true integer boundary;
  // enforce minimality exactly: bound(N) <= E_des < bound(N-1).
  auto bound_at = [&](int order) {
    return error_bound_value(env, order, t, formulation);
  };
  for (int guard = 0; guard < 1000 && N > 0 && bound_at(N - 1) <= E_des;
       ++guard) {
    --N;
  }
  for (int guard = 0; guard < 1000 && bound_at(N) > E_des; ++guard) {
    ++N;
  }
  return N;
}

double xi_polynomial_bound(int m, double t) {
  if (m < 1) throw parameter_error("xi_polynomial_bound: m must be >= 1");
  if (t == 0.0) return 0.0;
  // |t|^m / m! in the log domain to survive large m.
  return std::exp(m * std::log(std::abs(t)) - std::lgamma(m + 1.0));
}

double taylor_remainder(double x, int k, int N) {
  if (k < 0 || N < 0) {
    throw parameter_error("taylor_remainder: k and N must be >= 0");
  }
  if (!(std::abs(x) < 1.0)) {
    throw domain_error("taylor_remainder: requires |x| < 1");
  }
  if (x == 0.0) return 0.0;

  const double r = x / (1.0 - x);
  // binom(N+k+1, N+m+1) = binom(N+k+1, k-m), computed multiplicatively.
  auto binom = [](int n, int j) {
    double v = 1.0;
    for (int i = 1; i <= j; ++i) {
      v *= static_cast<double>(n - j + i) / static_cast<double>(i);
    }
    return v;
  };
  double sum = 0.0;
  double rp = r;  // r^{m+1}
  for (int m = 0; m <= k; ++m) {
    sum += binom(N + k + 1, k - m) * rp;
    rp *= r;
  }
  return std::pow(x, N) * sum;
}

}  // namespace hillcert
