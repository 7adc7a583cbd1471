// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT

#include "hillcert/projection.hpp"

#include <algorithm>
#include <cmath>

#include "hillcert/numerics.hpp"

namespace hillcert {

namespace {

void require_time(double t, const char* what) {
  if (t < 0.0 || !std::isfinite(t)) {
    throw parameter_error(std::string(what) + ": t must be finite and >= 0");
  }
}

/// Multiply block j of X (stacked n x n blocks) by e^{i omega d_j t} where
/// d_j is the block value of the diagonal phase operator.
ComplexMatrix phase_blocks(const ComplexMatrix& X, const RealVector& d,
                           double omega, double t) {
  ComplexMatrix Y = X;
  for (Eigen::Index r = 0; r < Y.rows(); ++r) {
    Y.row(r) *= std::exp(Complex(0.0, omega * d(r) * t));
  }
  return Y;
}

}  // namespace

FundamentalApprox direct_fundamental(const FourierMatrixSeries& series, int N,
                                     double t) {
  require_time(t, "direct_fundamental");
  const HillOperators ops = assemble_hill(series, N);
  FundamentalApprox out;
  out.t = t;
  out.N = N;
  out.formulation = Formulation::Direct;
  out.value = ops.C * mat_exp(ops.H * t) * ops.W;
  return out;
}

std::vector<ComplexMatrix> q_blocks(const FourierMatrixSeries& series, int N,
                                    double t) {
  require_time(t, "q_blocks");
  const HillOperators ops = assemble_hill(series, N);
  const ComplexMatrix EW =
      phase_blocks(mat_exp(ops.H * t) * ops.W, ops.D, ops.omega, t);
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<size_t>(2 * N + 1));
  for (int b = 0; b <= 2 * N; ++b) {
    blocks.push_back(EW.block(b * ops.n, 0, ops.n, ops.n));
  }
  return blocks;
}

FundamentalApprox subharmonic_fundamental(const FourierMatrixSeries& series,
                                          int N, double t) {
  require_time(t, "subharmonic_fundamental");
  const SubharmonicOperators ops = assemble_subharmonic_pair(series, N);
  const int n = ops.n;

  const ComplexMatrix EW =
      phase_blocks(mat_exp(ops.H * t) * ops.W, ops.D, ops.omega, t);
  const ComplexMatrix EWhat =
      phase_blocks(mat_exp(ops.H_hat * t) * ops.W_hat, ops.D_hat, ops.omega, t);

  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (int b = 0; b <= 2 * N; ++b) sum += EW.block(b * n, 0, n, n);
  for (int b = 0; b < 2 * N; ++b) sum -= EWhat.block(b * n, 0, n, n);

  FundamentalApprox out;
  out.t = t;
  out.N = N;
  out.formulation = Formulation::Subharmonic;
  out.value = std::move(sum);
  return out;
}

std::vector<ComplexMatrix> subharmonic_q_blocks(const FourierMatrixSeries& series,
                                                int N, double t) {
  require_time(t, "subharmonic_q_blocks");
  const FullSubharmonic full = assemble_full_subharmonic(series, N);
  const int n = full.n;
  const int blocks = 4 * N + 1;
  ComplexMatrix Wt = ComplexMatrix::Zero(n * blocks, n);
  for (int b = 0; b < blocks; ++b) {
    Wt.block(b * n, 0, n, n) = ComplexMatrix::Identity(n, n);
  }
  const ComplexMatrix EW = phase_blocks(mat_exp(full.H_tilde * t) * Wt,
                                        full.D_tilde, full.omega, t);
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<size_t>(blocks));
  for (int b = 0; b < blocks; ++b) {
    out.push_back(EW.block(b * n, 0, n, n));
  }
  return out;
}

FundamentalApprox reference_fundamental(const FourierMatrixSeries& series,
                                        double t, double rel_tol,
                                        double abs_tol) {
  require_time(t, "reference_fundamental");
  if (!(rel_tol > 0.0) || rel_tol > 1e-2 || !(abs_tol > 0.0) || abs_tol > 1e-2) {
    throw parameter_error(
        "reference_fundamental: tolerances must lie in (0, 1e-2]");
  }
  series.validate();
  const int n = series.dim;

  FundamentalApprox out;
  out.t = t;
  out.N = 0;
  out.formulation = Formulation::Reference;

  ComplexMatrix y = ComplexMatrix::Identity(n, n);
  if (t == 0.0) {
    out.value = y;
    return out;
  }

  // Dormand-Prince 5(4) tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // Difference between the 5th- and embedded 4th-order weights.
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double T = series.period();
  const double h_max = T / 10.0;
  const double h_min = 1e-12;
  const double safety = 0.9;

  auto rhs = [&](double tau, const ComplexMatrix& phi) -> ComplexMatrix {
    return eval_series(series, tau) * phi;
  };

  double tau = 0.0;
  double h = std::min({t, h_max, 1e-2 * T});
  double err_prev = 1.0;
  ComplexMatrix k1 = rhs(0.0, y);  // FSAL
  int steps = 0;
  const int max_steps = 50'000'000;

  while (tau < t) {
    if (++steps > max_steps) {
      throw stiffness_error("reference_fundamental: step budget exhausted");
    }
    h = std::min(h, t - tau);
    const ComplexMatrix k2 = rhs(tau + c2 * h, y + h * (a21 * k1));
    const ComplexMatrix k3 = rhs(tau + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const ComplexMatrix k4 =
        rhs(tau + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const ComplexMatrix k5 = rhs(
        tau + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const ComplexMatrix k6 =
        rhs(tau + h,
            y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const ComplexMatrix y5 =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const ComplexMatrix k7 = rhs(tau + h, y5);
    const ComplexMatrix diff =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    // Scaled RMS error over all entries.
    double acc = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc =
          abs_tol +
          rel_tol * std::max(std::abs(y.data()[i]), std::abs(y5.data()[i]));
      const double q = std::abs(diff.data()[i]) / sc;
      acc += q * q;
    }
    const double err = std::sqrt(acc / static_cast<double>(y.size()));

    if (err <= 1.0) {
      tau += h;
      y = y5;
      k1 = k7;  // first-same-as-last
      // PI controller (order 5: exponents 0.7/5 and 0.4/5).
      double fac = safety * std::pow(std::max(err, 1e-16), -0.7 / 5.0) *
                   std::pow(err_prev, 0.4 / 5.0);
      fac = std::clamp(fac, 0.2, 5.0);
      h = std::min(h * fac, h_max);
      err_prev = std::max(err, 1e-16);
    } else {
      double fac = std::clamp(safety * std::pow(err, -1.0 / 5.0), 0.2, 1.0);
      h *= fac;
    }
    if (h < h_min && tau < t) {
      throw stiffness_error(
          "reference_fundamental: step size underflow at t = " +
          std::to_string(tau));
    }
  }

  out.value = std::move(y);
  return out;
}

}  // namespace hillcert
