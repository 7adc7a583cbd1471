// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "hillcert/fourier.hpp"
#include "hillcert/hill.hpp"
#include "hillcert/types.hpp"

namespace hillcert {

/// Fundamental solution matrix approximant by the direct Hill projection:
/// Phi(t) ~= C e^{Ht} W.
///
/// \throws parameter_error if N < 0 or t < 0
FundamentalApprox direct_fundamental(const FourierMatrixSeries& series, int N,
                                     double t);

/// All 2N+1 blocks Q_j(t), j = -N..N, of Q(t) = e^{i omega D t} e^{Ht} W.
/// Each block approximates Phi(t); Q_0 is the direct_fundamental value.
std::vector<ComplexMatrix> q_blocks(const FourierMatrixSeries& series, int N,
                                    double t);

/// Fundamental solution matrix approximant by the subharmonic projection:
/// Phi(t) ~= W^T e^{i omega D t} e^{Ht} W - W_hat^T e^{i omega D_hat t}
/// e^{H_hat t} W_hat — the alternating-sign sum of the 4N+1 subharmonic
/// blocks realized via the two decoupled exponentials. The relative minus
/// sign and the +i phase convention are forced by the t = 0 identity
/// (2N+1) I - 2N I = I and verified against the alternating block sum.
///
/// \throws parameter_error if N < 1 or t < 0
FundamentalApprox subharmonic_fundamental(const FourierMatrixSeries& series,
                                          int N, double t);

/// All 4N+1 blocks Q~_{j~}(t) = e^{i (j~/2) omega t} [e^{H~ t} W~]_{j~} of the
/// full subharmonic stack, j~ = -2N..2N ascending.
std::vector<ComplexMatrix> subharmonic_q_blocks(const FourierMatrixSeries& series,
                                                int N, double t);

/// Reference fundamental matrix by adaptive embedded Dormand-Prince RK5(4)
/// integration of Phi' = J(t) Phi, Phi(0) = I, with PI step-size control.
///
/// \throws parameter_error if a tolerance is outside (0, 1e-2] or t < 0
/// \throws stiffness_error on step-size underflow
FundamentalApprox reference_fundamental(const FourierMatrixSeries& series,
                                        double t, double rel_tol = 1e-10,
                                        double abs_tol = 1e-12);

}  // namespace hillcert
