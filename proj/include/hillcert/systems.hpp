// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include "hillcert/fourier.hpp"

namespace hillcert {

/// Scalar test system  y' = (beta + 2*gamma*cos(omega*t)) * y :
/// J_0 = [beta], J_{+-1} = [gamma]. Closed-form fundamental solution
/// Phi(t) = exp(beta*t + (2*gamma/omega)*sin(omega*t)).
FourierMatrixSeries scalar_system(double beta, double gamma,
                                  double omega = 1.0);

/// Closed-form fundamental solution of scalar_system at time t.
double scalar_system_phi(double beta, double gamma, double omega, double t);

/// Mathieu equation  x'' + (delta + eps*cos(omega*t)) x = 0  in first-order
/// form y = (x, x'):
/// J_0 = [[0,1],[-delta,0]], J_{+-1} = [[0,0],[-eps/2,0]].
FourierMatrixSeries mathieu_system(double delta, double eps,
                                   double omega = 2.0);

}  // namespace hillcert
