// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <functional>

#include "hillcert/fourier.hpp"
#include "hillcert/systems.hpp"
#include "oracles.hpp"

using hillcert::Complex;
using hillcert::ComplexMatrix;
using hillcert::FourierMatrixSeries;

namespace {

/// Seed-fixed finite-support series (possibly complex-valued in time).
FourierMatrixSeries random_series(int dim, int support, double omega,
                                  uint64_t seed) {
  FourierMatrixSeries s;
  s.omega = omega;
  s.dim = dim;
  for (int k = -support; k <= support; ++k) {
    s.set(k, oracle::random_complex(dim, seed + static_cast<uint64_t>(k + 100)));
  }
  return s;
}

}  // namespace

TEST_CASE("eval_series: constant series returns J0 for every t") {
  FourierMatrixSeries s;
  s.omega = 1.0;
  s.dim = 3;
  const ComplexMatrix M = oracle::random_complex(3, 7);
  s.set(0, M);
  for (double t : {0.0, 0.7, 13.5}) {
    CHECK((hillcert::eval_series(s, t) - M).norm() == 0.0);
  }
}

TEST_CASE("eval_series: scalar system gives beta + 2 gamma cos t") {
  const double beta = 0.3, gamma = 0.45;
  const FourierMatrixSeries s = hillcert::scalar_system(beta, gamma, 1.0);
  for (double t : {0.0, 0.3, 1.9, 6.0}) {
    const Complex v = hillcert::eval_series(s, t)(0, 0);
    CHECK(std::abs(v - Complex(beta + 2.0 * gamma * std::cos(t))) < 1e-14);
  }
}

TEST_CASE("eval_series: Mathieu system at t=0") {
  const double delta = 0.8, eps = 0.35;
  const FourierMatrixSeries s = hillcert::mathieu_system(delta, eps);
  s.validate();
  const ComplexMatrix J = hillcert::eval_series(s, 0.0);
  ComplexMatrix want(2, 2);
  want << 0, 1, -(delta + eps), 0;
  CHECK((J - want).norm() < 1e-14);
}

TEST_CASE("coefficients_from_samples: constant sampler") {
  const ComplexMatrix M = oracle::random_complex(2, 9);
  const auto s = hillcert::coefficients_from_samples(
      [&](double) { return M; }, 1.0, 16, 2);
  CHECK((s.coeff(0) - M).norm() < 1e-12);
  CHECK(s.coeff(1).norm() < 1e-12);
  CHECK(s.coeff(-1).norm() < 1e-12);
  CHECK(s.coeff(2).norm() < 1e-12);
  CHECK(s.coeff(-2).norm() < 1e-12);
}

TEST_CASE("coefficients_from_samples: single harmonic 2 gamma cos t") {
  const double gamma = 0.7;
  const auto s = hillcert::coefficients_from_samples(
      [&](double t) {
        ComplexMatrix M(1, 1);
        M(0, 0) = 2.0 * gamma * std::cos(t);
        return M;
      },
      1.0, 32, 1);
  CHECK(std::abs(s.coeff(1)(0, 0) - Complex(gamma)) < 1e-12);
  CHECK(std::abs(s.coeff(-1)(0, 0) - Complex(gamma)) < 1e-12);
  CHECK(std::abs(s.coeff(0)(0, 0)) < 1e-12);
}

TEST_CASE("coefficients_from_samples: round-trips a random series") {
  const FourierMatrixSeries orig = random_series(2, 3, 2.0, 1234);
  const auto back = hillcert::coefficients_from_samples(
      [&](double t) { return hillcert::eval_series(orig, t); }, orig.omega,
      4 * 3 + 3, 3);
  for (int k = -3; k <= 3; ++k) {
    CHECK((back.coeff(k) - orig.coeff(k)).norm() < 1e-10);
  }
}

TEST_CASE("coefficients_from_samples: aliasing guard") {
  auto sampler = [](double) { return ComplexMatrix::Zero(1, 1).eval(); };
  CHECK_THROWS_AS(hillcert::coefficients_from_samples(sampler, 1.0, 6, 3),
                  hillcert::parameter_error);
  CHECK_NOTHROW(hillcert::coefficients_from_samples(sampler, 1.0, 7, 3));
}

TEST_CASE("validate: conjugate symmetry enforced when real flag set") {
  FourierMatrixSeries s;
  s.omega = 1.0;
  s.dim = 1;
  s.real_series = true;
  ComplexMatrix J(1, 1);
  J(0, 0) = Complex(0.5, 0.25);
  s.set(1, J);
  s.set(-1, J);  // should be conj(J)
  CHECK_THROWS_AS(s.validate(), hillcert::structure_error);
  s.set(-1, J.conjugate());
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("fit_decay_envelope: single k=0 coefficient gives b = +inf") {
  FourierMatrixSeries s;
  s.omega = 1.0;
  s.dim = 1;
  ComplexMatrix J(1, 1);
  J(0, 0) = 5.0;
  s.set(0, J);
  const auto env = hillcert::fit_decay_envelope(s);
  CHECK(env.a == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(std::isinf(env.b));
  CHECK(env.bound_valid);
  CHECK(hillcert::envelope_majorizes(env, s));
}

TEST_CASE("fit_decay_envelope: recovers an exact exponential decay") {
  // ||J_k|| = 2.5 e^{-1.3|k|} exactly; the LS fit on exact data is exact and
  // no inflation should occur.
  FourierMatrixSeries s;
  s.omega = 1.0;
  s.dim = 1;
  for (int k = -4; k <= 4; ++k) {
    ComplexMatrix J(1, 1);
    J(0, 0) = 2.5 * std::exp(-1.3 * std::abs(k));
    s.set(k, J);
  }
  const auto env = hillcert::fit_decay_envelope(s);
  CHECK(env.a == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(env.b == doctest::Approx(1.3).epsilon(1e-10));
  CHECK(env.bound_valid);
  CHECK(hillcert::envelope_majorizes(env, s));
}

TEST_CASE("fit_decay_envelope: inflated a majorizes noisy data") {
  oracle::splitmix64 rng(55);
  FourierMatrixSeries s;
  s.omega = 1.0;
  s.dim = 1;
  for (int k = -6; k <= 6; ++k) {
    ComplexMatrix J(1, 1);
    J(0, 0) = 1.7 * std::exp(-0.9 * std::abs(k)) *
              std::exp(0.4 * rng.sym());  // multiplicative noise
    s.set(k, J);
  }
  const auto env = hillcert::fit_decay_envelope(s);
  CHECK(hillcert::envelope_majorizes(env, s));
  // Minimality: some retained coefficient touches the envelope.
  double closest = 1e300;
  for (const auto& [k, J] : s.coeffs) {
    const double ratio =
        env.a * std::exp(-env.b * std::abs(k)) / std::abs(J(0, 0));
    closest = std::min(closest, ratio);
  }
  CHECK(closest == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fit_decay_envelope: everything below floor is an error") {
  FourierMatrixSeries s;
  s.omega = 1.0;
  s.dim = 1;
  ComplexMatrix J(1, 1);
  J(0, 0) = 1e-16;
  s.set(0, J);
  CHECK_THROWS_AS(hillcert::fit_decay_envelope(s, 1e-15), hillcert::fit_error);
}

TEST_CASE("optimal_finite_support_envelope: interior branch") {
  const double beta = 0.01, gamma = 0.8, t = 6.5;
  const int N = 127;
  REQUIRE(beta < N / (4.0 * t));
  const auto opt = hillcert::optimal_finite_support_envelope(beta, gamma, t, N);
  CHECK(opt.epsilon == doctest::Approx(8.0 * t * gamma / N).epsilon(1e-13));
  CHECK(opt.a == doctest::Approx(N / (4.0 * t)).epsilon(1e-13));
  CHECK(opt.b == doctest::Approx(std::log(2.0) - std::log(opt.epsilon))
                     .epsilon(1e-13));
}

TEST_CASE("optimal_finite_support_envelope: boundary branch") {
  const double beta = 3.0, gamma = 0.8, t = 6.5;
  const int N = 10;  // beta >= N/(4t) = 0.3846
  REQUIRE(beta >= N / (4.0 * t));
  const auto opt = hillcert::optimal_finite_support_envelope(beta, gamma, t, N);
  CHECK(opt.epsilon == doctest::Approx(2.0 * gamma / beta).epsilon(1e-13));
  CHECK(opt.a == doctest::Approx(beta).epsilon(1e-13));
}

TEST_CASE("optimal_finite_support_envelope: matches 1-D minimization oracle") {
  // Oracle: minimize ln E(eps) = N ln eps + ln(e^{4 a(eps) t} - 1) on a log
  // grid followed by golden-section refinement, then compare to the closed
  // form within 1%.
  const double beta = 0.01, gamma = 0.8, t = 6.5;
  const int N = 127;
  auto lnE = [&](double eps) {
    const double a = std::max(beta, 2.0 * gamma / eps);
    const double x = 4.0 * a * t;
    return N * std::log(eps) + x + std::log1p(-std::exp(-x));
  };
  double lo = 1e-4, hi = 10.0, best = lo;
  double bestv = lnE(lo);
  for (int i = 0; i <= 2000; ++i) {
    const double eps = lo * std::pow(hi / lo, i / 2000.0);
    const double v = lnE(eps);
    if (v < bestv) {
      bestv = v;
      best = eps;
    }
  }
  double a = best / 1.2, b = best * 1.2;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = lnE(x1), f2 = lnE(x2);
  for (int i = 0; i < 200; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = lnE(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = lnE(x2);
    }
  }
  const double oracle_lnE = std::min(f1, f2);
  const auto opt = hillcert::optimal_finite_support_envelope(beta, gamma, t, N);
  CHECK(std::abs(std::log(opt.E_star) - oracle_lnE) < std::log(1.01));
}

TEST_CASE("optimal_finite_support_envelope: rejects N = 0") {
  CHECK_THROWS_AS(hillcert::optimal_finite_support_envelope(0.1, 0.5, 1.0, 0),
                  hillcert::parameter_error);
}

TEST_CASE("convolve: J0 = I is the identity element") {
  FourierMatrixSeries id;
  id.omega = 2.0;
  id.dim = 2;
  id.set(0, ComplexMatrix::Identity(2, 2));
  const FourierMatrixSeries S = random_series(2, 2, 2.0, 31);
  const auto P = hillcert::convolve(id, S);
  for (int k = -2; k <= 2; ++k) {
    CHECK((P.coeff(k) - S.coeff(k)).norm() < 1e-15);
  }
}

TEST_CASE("convolve: cos * cos = 1/2 + 1/2 cos 2t") {
  FourierMatrixSeries c;
  c.omega = 1.0;
  c.dim = 1;
  ComplexMatrix half(1, 1);
  half(0, 0) = 0.5;
  c.set(1, half);
  c.set(-1, half);
  const auto p = hillcert::convolve(c, c);
  CHECK(std::abs(p.coeff(0)(0, 0) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(p.coeff(2)(0, 0) - Complex(0.25)) < 1e-15);
  CHECK(std::abs(p.coeff(-2)(0, 0) - Complex(0.25)) < 1e-15);
  CHECK(std::abs(p.coeff(1)(0, 0)) < 1e-15);
}

TEST_CASE("convolve: matches sample-then-project oracle for a square") {
  // x(t): seed-fixed real trig polynomial; coefficients of x(t)^2 via
  // convolution must match direct sampling + projection.
  oracle::splitmix64 rng(77);
  FourierMatrixSeries x;
  x.omega = 3.0;
  x.dim = 1;
  ComplexMatrix J0(1, 1);
  J0(0, 0) = rng.sym();
  x.set(0, J0);
  for (int k = 1; k <= 3; ++k) {
    ComplexMatrix J(1, 1);
    J(0, 0) = Complex(rng.sym(), rng.sym());
    x.set(k, J);
    x.set(-k, J.conjugate().eval());
  }
  const auto square = hillcert::convolve(x, x);
  const auto sampled = hillcert::coefficients_from_samples(
      [&](double t) {
        ComplexMatrix v = hillcert::eval_series(x, t);
        return (v * v).eval();
      },
      x.omega, 4 * 6 + 3, 6);
  for (int k = -6; k <= 6; ++k) {
    CHECK((square.coeff(k) - sampled.coeff(k)).norm() < 1e-12);
  }
}

TEST_CASE("convolve: frequency mismatch raises") {
  const FourierMatrixSeries A = random_series(1, 1, 1.0, 41);
  const FourierMatrixSeries B = random_series(1, 1, 2.0, 42);
  CHECK_THROWS_AS(hillcert::convolve(A, B), hillcert::parameter_error);
}

TEST_CASE("Parseval: mean power of eval_series equals coefficient power") {
  const FourierMatrixSeries s = random_series(2, 3, 1.7, 91);
  double coeff_power = 0.0;
  for (const auto& [k, J] : s.coeffs) coeff_power += J.squaredNorm();
  // Exact trapezoid-free quadrature: uniform samples are exact for trig
  // polynomials of degree <= M/2 - 1; ||J(t)||_F^2 has degree 6.
  const int M = 64;
  const double T = s.period();
  double mean_power = 0.0;
  for (int j = 0; j < M; ++j) {
    mean_power += hillcert::eval_series(s, j * T / M).squaredNorm();
  }
  mean_power /= M;
  CHECK(mean_power ==
        doctest::Approx(coeff_power).epsilon(1e-8));
}
