// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT

#include "hillcert/systems.hpp"

#include <cmath>

namespace hillcert {

FourierMatrixSeries scalar_system(double beta, double gamma, double omega) {
  FourierMatrixSeries s;
  s.omega = omega;
  s.dim = 1;
  s.real_series = true;
  ComplexMatrix J0(1, 1), J1(1, 1);
  J0(0, 0) = beta;
  J1(0, 0) = gamma;
  s.set(0, J0);
  s.set(1, J1);
  s.set(-1, J1);
  return s;
}

double scalar_system_phi(double beta, double gamma, double omega, double t) {
  return std::exp(beta * t + 2.0 * gamma / omega * std::sin(omega * t));
}

FourierMatrixSeries mathieu_system(double delta, double eps, double omega) {
  FourierMatrixSeries s;
  s.omega = omega;
  s.dim = 2;
  s.real_series = true;
  ComplexMatrix J0 = ComplexMatrix::Zero(2, 2);
  J0(0, 1) = 1.0;
  J0(1, 0) = -delta;
  s.set(0, J0);
  ComplexMatrix J1 = ComplexMatrix::Zero(2, 2);
  J1(1, 0) = -eps / 2.0;
  s.set(1, J1);
  s.set(-1, J1);
  return s;
}

}  // namespace hillcert
