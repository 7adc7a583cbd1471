// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>

#include "hillcert/bounds.hpp"
#include "hillcert/fourier.hpp"
#include "oracles.hpp"

using hillcert::DecayEnvelope;
using hillcert::Formulation;

TEST_CASE("direct_error_bound: N=0 substitution and t=0") {
  const DecayEnvelope env = hillcert::make_envelope(1.3, 1.1);
  const auto c0 = hillcert::direct_error_bound(env, 0, 0.7);
  CHECK(c0.bound ==
        doctest::Approx(std::expm1(4.0 * 1.3 * 0.7)).epsilon(1e-13));
  for (int N : {0, 3, 17}) {
    CHECK(hillcert::direct_error_bound(env, N, 0.0).bound == 0.0);
  }
}

TEST_CASE("direct_error_bound: quad-precision cross-check at a=1,b=1,N=5,t=0.5") {
  const auto cert =
      hillcert::direct_error_bound(hillcert::make_envelope(1.0, 1.0), 5, 0.5);
  // (2/e)^5 (e^2 - 1) evaluated at ~34 decimal digits.
  const oracle::qreal e = exp(oracle::qreal(1));
  const oracle::qreal want = pow(2 / e, 5) * (exp(oracle::qreal(2)) - 1);
  CHECK(std::abs(cert.bound - want.convert_to<double>()) <
        1e-13 * want.convert_to<double>());
}

TEST_CASE("direct_error_bound: rejects invalid envelopes") {
  CHECK_THROWS_AS(
      hillcert::direct_error_bound(hillcert::make_envelope(1.0, 0.5), 3, 1.0),
      hillcert::envelope_error);
  CHECK_THROWS_AS(
      hillcert::direct_error_bound(
          hillcert::make_envelope(1.0, std::numeric_limits<double>::infinity()),
          3, 1.0),
      hillcert::envelope_error);
  CHECK_THROWS_AS(
      hillcert::direct_error_bound(hillcert::make_envelope(1.0, 1.0), -1, 1.0),
      hillcert::parameter_error);
}

TEST_CASE("subharmonic_error_bound: equals direct at doubled order") {
  const DecayEnvelope env = hillcert::make_envelope(0.9, 1.4);
  for (int N : {1, 2, 6}) {
    const double sub =
        hillcert::subharmonic_error_bound(env, N, 1.3).bound;
    const double dir2 = hillcert::direct_error_bound(env, 2 * N, 1.3).bound;
    CHECK(sub == dir2);
  }
  CHECK(hillcert::subharmonic_error_bound(env, 4, 0.0).bound == 0.0);
}

TEST_CASE("subharmonic_error_bound: twice the decay rate of direct") {
  const DecayEnvelope env = hillcert::make_envelope(1.0, 1.2);
  const double t = 0.5;
  for (int N : {1, 3, 5}) {
    const double lhs =
        std::log(hillcert::subharmonic_error_bound(env, N, t).bound /
                 hillcert::subharmonic_error_bound(env, N + 1, t).bound);
    const double rhs =
        2.0 * std::log(hillcert::direct_error_bound(env, N, t).bound /
                       hillcert::direct_error_bound(env, N + 1, t).bound);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("direct_error_bound: monotonicity in N, t, a, b") {
  const DecayEnvelope env = hillcert::make_envelope(1.1, 1.5);
  const double t = 0.8;
  auto bnd = [&](const DecayEnvelope& e, int N, double tt) {
    return hillcert::direct_error_bound(e, N, tt).bound;
  };
  for (int N = 0; N < 8; ++N) CHECK(bnd(env, N + 1, t) < bnd(env, N, t));
  CHECK(bnd(env, 3, 1.1) > bnd(env, 3, 0.8));
  CHECK(bnd(env, 3, -1.1) > bnd(env, 3, 0.8));  // |t| dependence
  CHECK(bnd(hillcert::make_envelope(1.4, 1.5), 3, t) > bnd(env, 3, t));
  CHECK(bnd(hillcert::make_envelope(1.1, 1.9), 3, t) < bnd(env, 3, t));
}

TEST_CASE("required_truncation: exact inverse of the bound") {
  const DecayEnvelope env = hillcert::make_envelope(0.8, 1.7);
  const double t = 1.9;
  for (int N : {0, 1, 4, 11, 40}) {
    const double E = hillcert::direct_error_bound(env, N, t).bound;
    CHECK(hillcert::required_truncation(env, t, E, Formulation::Direct) == N);
  }
}

TEST_CASE("required_truncation: minimality invariant") {
  const DecayEnvelope env = hillcert::make_envelope(1.2, 0.95);
  const double t = 2.4;
  for (double E_des : {1e-2, 1e-5, 1e-9, 1e-13}) {
    for (Formulation f : {Formulation::Direct, Formulation::Subharmonic}) {
      const int N = hillcert::required_truncation(env, t, E_des, f);
      CHECK(hillcert::error_bound_value(env, N, t, f) <= E_des);
      if (N > 0) {
        CHECK(hillcert::error_bound_value(env, N - 1, t, f) > E_des);
      }
    }
  }
}

TEST_CASE("required_truncation: subharmonic order is about half the direct") {
  const DecayEnvelope env = hillcert::make_envelope(1.0, 1.3);
  const double t = 3.0, E = 1e-8;
  const int nd = hillcert::required_truncation(env, t, E, Formulation::Direct);
  const int ns =
      hillcert::required_truncation(env, t, E, Formulation::Subharmonic);
  CHECK(std::abs(ns - (nd + 1) / 2) <= 1);
}

TEST_CASE("required_truncation: scalar example lands in the published window") {
  // beta = 0.01, gamma = 0.8, t = 6.5, E_des = 1e-6 with the branch-optimal
  // envelope: guaranteed orders lie between 113 and 142 depending on the
  // envelope choice; the self-consistent optimum sits at ~127.
  const double beta = 0.01, gamma = 0.8, t = 6.5;
  const auto opt = hillcert::optimal_finite_support_envelope(beta, gamma, t, 127);
  const DecayEnvelope env = hillcert::make_envelope(opt.a, opt.b);
  REQUIRE(env.bound_valid);
  const int N =
      hillcert::required_truncation(env, t, 1e-6, Formulation::Direct);
  CHECK(N >= 113);
  CHECK(N <= 142);
}

TEST_CASE("required_truncation: precondition errors") {
  const DecayEnvelope env = hillcert::make_envelope(1.0, 1.3);
  CHECK_THROWS_AS(
      hillcert::required_truncation(env, 1.0, 0.0, Formulation::Direct),
      hillcert::parameter_error);
  CHECK_THROWS_AS(
      hillcert::required_truncation(env, 0.0, 1e-6, Formulation::Direct),
      hillcert::parameter_error);
  CHECK_THROWS_AS(hillcert::required_truncation(
                      hillcert::make_envelope(1.0, 0.2), 1.0, 1e-6,
                      Formulation::Direct),
                  hillcert::envelope_error);
}

TEST_CASE("xi_polynomial_bound: closed values and domain") {
  CHECK(hillcert::xi_polynomial_bound(1, 2.0) == doctest::Approx(2.0));
  CHECK(hillcert::xi_polynomial_bound(3, 1.0) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(hillcert::xi_polynomial_bound(4, -2.0) ==
        doctest::Approx(16.0 / 24.0).epsilon(1e-14));
  CHECK_THROWS_AS(hillcert::xi_polynomial_bound(0, 1.0),
                  hillcert::parameter_error);
}

TEST_CASE("taylor_remainder: geometric tail at k=0 and zero at x=0") {
  for (double x : {0.1, 0.45, -0.3}) {
    for (int N : {0, 2, 9}) {
      CHECK(hillcert::taylor_remainder(x, 0, N) ==
            doctest::Approx(std::pow(x, N + 1) / (1.0 - x)).epsilon(1e-13));
    }
  }
  CHECK(hillcert::taylor_remainder(0.0, 3, 5) == 0.0);
}

TEST_CASE("taylor_remainder: matches direct tail summation") {
  // R_N(x) = sum_{M=N+1}^inf binom(M+k,k) x^M summed until increments drop
  // below 1e-14 relative.
  auto tail = [](double x, int k, int N) {
    auto binom = [](int n, int j) {
      double v = 1.0;
      for (int i = 1; i <= j; ++i) v *= static_cast<double>(n - j + i) / i;
      return v;
    };
    double sum = 0.0;
    for (int M = N + 1; M < N + 4000; ++M) {
      const double term = binom(M + k, k) * std::pow(x, M);
      sum += term;
      if (std::abs(term) < 1e-14 * std::abs(sum) && M > N + 8) break;
    }
    return sum;
  };
  CHECK(hillcert::taylor_remainder(0.3, 3, 7) ==
        doctest::Approx(tail(0.3, 3, 7)).epsilon(1e-12));
  for (double x : {0.1, 0.3, 0.45}) {
    for (int k = 0; k <= 4; ++k) {
      for (int N : {0, 1, 2, 5, 10}) {
        CHECK(hillcert::taylor_remainder(x, k, N) ==
              doctest::Approx(tail(x, k, N)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("taylor_remainder: decreases monotonically to 0 in N") {
  const double x = 0.4;
  const int k = 3;
  double prev = hillcert::taylor_remainder(x, k, 0);
  for (int N = 1; N <= 60; ++N) {
    const double cur = hillcert::taylor_remainder(x, k, N);
    CHECK(cur < prev);
    prev = cur;
  }
  // The N = 60 tail scales like N^k x^{N+1} / (k! (1-x)) ~ 3e-20 here.
  CHECK(prev < 1e-19);
}

TEST_CASE("taylor_remainder: domain guard") {
  CHECK_THROWS_AS(hillcert::taylor_remainder(1.0, 2, 3), hillcert::domain_error);
  CHECK_THROWS_AS(hillcert::taylor_remainder(-1.2, 2, 3),
                  hillcert::domain_error);
  CHECK_THROWS_AS(hillcert::taylor_remainder(0.5, -1, 3),
                  hillcert::parameter_error);
}
