// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include "hillcert/floquet.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "hillcert/bounds.hpp"
#include "hillcert/errors.hpp"
#include "hillcert/numerics.hpp"
#include "hillcert/projection.hpp"

namespace hillcert {

namespace {

// Numeric multiplier classification threshold: a spectral radius within
// 1e-9 of 1 still counts as (marginally) stable, covering undamped systems
// whose exact multipliers sit on the unit circle.
constexpr double kNumericStabilityTolerance = 1e-9;

// Roundoff allowance folded into the certification radius: the computed
// approximant differs from the exact projection by assembly plus matrix
// exponential roundoff, conservatively eps * ||Phi|| times a growth factor.
// Without it, a truncation bound far below machine precision would let a
// certificate assert eigenvalue geometry that is pure floating-point noise
// (e.g. declaring a marginally stable system unstable from multipliers
// located 1e-14 off the unit circle).
constexpr double kRoundoffAllowance = 1e-13;

void require_sampling(double E, int n_samples) {
  if (E < 0.0) throw parameter_error("pseudospectrum level E must be >= 0");
  if (n_samples < 64)
    throw parameter_error("boundary sampling needs at least 64 points");
}

// sigma_min(z I - phi) for a point z.
double resolvent_margin(const ComplexMatrix& phi, Complex z) {
  ComplexMatrix shifted = -phi;
  shifted.diagonal().array() += z;
  return min_singular_value(shifted);
}

// True iff sigma_min(z I - phi) > E + spacing/2 at every sample of the unit
// circle: by 1-Lipschitz continuity of sigma_min in z, the E-pseudospectrum
// then provably misses the whole circle.
bool circle_clear(const ComplexMatrix& phi, double E, int n_samples) {
  const double h = 2.0 * pi / n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const double theta = h * i;
    const Complex z(std::cos(theta), std::sin(theta));
    if (resolvent_margin(phi, z) <= E + 0.5 * h) return false;
  }
  return true;
}

ComplexVector principal_exponents(const ComplexVector& multipliers,
                                  double period) {
  ComplexVector exponents(multipliers.size());
  for (Eigen::Index i = 0; i < multipliers.size(); ++i)
    exponents(i) = std::log(multipliers(i)) / period;
  return exponents;
}

}  // namespace

const char* to_string(StabilityStatus status) {
  switch (status) {
    case StabilityStatus::GuaranteedStable:
      return "guaranteed-stable";
    case StabilityStatus::GuaranteedUnstable:
      return "guaranteed-unstable";
    case StabilityStatus::NumericStable:
      return "numeric-stable";
    case StabilityStatus::NumericUnstable:
      return "numeric-unstable";
    case StabilityStatus::Undetermined:
      return "undetermined";
  }
  return "unknown";
}

ComplexVector floquet_multipliers(const FundamentalApprox& phi) {
  require_square(phi.value, "monodromy approximation");
  return eigenvalues(phi.value);
}

bool pseudospectrum_membership(const ComplexMatrix& phi, Complex z, double E) {
  if (E < 0.0) throw parameter_error("pseudospectrum level E must be >= 0");
  require_square(phi, "pseudospectrum matrix");
  return resolvent_margin(phi, z) <= E;
}

bool certify_disk_containment(const ComplexMatrix& phi, double E,
                              int n_samples) {
  require_sampling(E, n_samples);
  require_square(phi, "monodromy approximation");

  // (i) Spectrum strictly inside the unit circle; otherwise the
  // pseudospectrum (which contains the spectrum) cannot be contained.
  const ComplexVector lams = eigenvalues(phi);
  for (Eigen::Index i = 0; i < lams.size(); ++i)
    if (std::abs(lams(i)) >= 1.0) return false;

  // (ii) The pseudospectrum misses the circle. Combined with (i), the
  // resolvent-norm maximum principle on the exterior domain (where the
  // resolvent is analytic and vanishes at infinity) confines the whole
  // E-pseudospectrum to the open disk.
  return circle_clear(phi, E, n_samples);
}

bool certify_instability(const ComplexMatrix& phi, double E,
                         Complex lambda_hat, int n_samples) {
  require_sampling(E, n_samples);
  require_square(phi, "monodromy approximation");

  const ComplexVector lams = eigenvalues(phi);
  // Snap the candidate to the nearest computed eigenvalue.
  Eigen::Index center_idx = 0;
  for (Eigen::Index i = 1; i < lams.size(); ++i)
    if (std::abs(lams(i) - lambda_hat) < std::abs(lams(center_idx) - lambda_hat))
      center_idx = i;
  const Complex center = lams(center_idx);
  if (std::abs(center) <= 1.0) return false;

  // Contour radius: half the gap to the unit circle and to the nearest other
  // eigenvalue, so the contour stays outside the closed disk and can enclose
  // exactly one eigenvalue.
  double gap = std::abs(center) - 1.0;
  for (Eigen::Index i = 0; i < lams.size(); ++i)
    if (i != center_idx) gap = std::min(gap, std::abs(lams(i) - center));
  const double r = 0.5 * gap;
  if (!(r > 0.0)) return false;

  int enclosed = 0;
  for (Eigen::Index i = 0; i < lams.size(); ++i)
    if (std::abs(lams(i) - center) < r) ++enclosed;
  if (enclosed != 1) return false;

  // sigma_min above E (plus Lipschitz margin) on the whole contour: every
  // matrix within E of phi keeps the same eigenvalue count inside it, and
  // the contour lies outside the closed unit disk, so each such matrix has
  // an eigenvalue of modulus > 1.
  const double h = 2.0 * pi * r / n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const double theta = 2.0 * pi * i / n_samples;
    const Complex z = center + r * Complex(std::cos(theta), std::sin(theta));
    if (resolvent_margin(phi, z) <= E + 0.5 * h) return false;
  }
  return true;
}

StabilityVerdict mathieu_verdict(const ComplexMatrix& phi, double E,
                                 int n_circle, int n_axis, double period) {
  require_square(phi, "monodromy approximation");
  if (phi.rows() != 2)
    throw parameter_error("the two-set dichotomy test needs a 2x2 monodromy");
  require_sampling(E, n_circle);
  if (n_axis < 2) throw parameter_error("axis sampling needs >= 2 points");
  if (!(period > 0.0)) throw parameter_error("period must be positive");

  StabilityVerdict verdict;
  verdict.multipliers = eigenvalues(phi);
  verdict.exponents = principal_exponents(verdict.multipliers, period);
  verdict.bound = E;

  // The true multipliers lie within E of the spectrum, hence inside
  // |z| <= spectral radius + E < rho; the sampled segment covers every real
  // point they could occupy.
  const double rho = std::abs(verdict.multipliers(0)) + E + 0.1;
  const double ha = 2.0 * rho / (n_axis - 1);
  bool axis_clear = true;
  for (int i = 0; i < n_axis && axis_clear; ++i) {
    const Complex z(-rho + ha * i, 0.0);
    if (resolvent_margin(phi, z) <= E + 0.5 * ha) axis_clear = false;
  }
  const bool circle_ok = circle_clear(phi, E, n_circle);

  // Dichotomy: multipliers are either a conjugate pair on the unit circle
  // (stable) or a real reciprocal pair with one member off the circle
  // (unstable). A provably axis-free pseudospectrum rules out the real case;
  // a provably circle-free one rules out the stable case. Anything else —
  // including the vacuous "both clear" — stays undetermined.
  if (axis_clear && !circle_ok)
    verdict.status = StabilityStatus::GuaranteedStable;
  else if (circle_ok && !axis_clear)
    verdict.status = StabilityStatus::GuaranteedUnstable;
  else
    verdict.status = StabilityStatus::Undetermined;
  return verdict;
}

StabilityVerdict analyze_stability(const FourierMatrixSeries& series,
                                   const DecayEnvelope& env, int N,
                                   Formulation formulation,
                                   bool mathieu_dichotomy, int n_circle,
                                   int n_axis) {
  series.validate();
  const double T = series.period();

  FundamentalApprox phi;
  switch (formulation) {
    case Formulation::Direct:
      phi = direct_fundamental(series, N, T);
      break;
    case Formulation::Subharmonic:
      phi = subharmonic_fundamental(series, N, T);
      break;
    case Formulation::Reference:
      phi = reference_fundamental(series, T);
      break;
  }

  StabilityVerdict verdict;
  verdict.multipliers = floquet_multipliers(phi);
  verdict.exponents = principal_exponents(verdict.multipliers, T);

  double E = std::numeric_limits<double>::infinity();
  if (formulation != Formulation::Reference) {
    try {
      E = error_bound_value(env, N, T, formulation);
      // The truncation bound alone can be far below machine precision, but
      // the computed approximant itself carries assembly and exponential
      // roundoff of order eps * ||Phi||. Certificates must never assert
      // eigenvalue geometry at that scale, so the certification radius gets
      // a roundoff allowance on top of the truncation bound.
      E += kRoundoffAllowance * std::max(1.0, spectral_norm(phi.value));
    } catch (const envelope_error&) {
      // Envelope unusable for certificates: numeric verdict only.
    }
  }
  verdict.bound = E;

  if (std::isfinite(E)) {
    if (certify_disk_containment(phi.value, E, n_circle)) {
      verdict.status = StabilityStatus::GuaranteedStable;
      return verdict;
    }
    for (Eigen::Index i = 0; i < verdict.multipliers.size(); ++i) {
      if (std::abs(verdict.multipliers(i)) <= 1.0) break;  // sorted
      if (certify_instability(phi.value, E, verdict.multipliers(i),
                              n_circle)) {
        verdict.status = StabilityStatus::GuaranteedUnstable;
        return verdict;
      }
    }
    if (mathieu_dichotomy && phi.value.rows() == 2) {
      StabilityVerdict two_set =
          mathieu_verdict(phi.value, E, n_circle, n_axis, T);
      if (two_set.status == StabilityStatus::GuaranteedStable ||
          two_set.status == StabilityStatus::GuaranteedUnstable) {
        verdict.status = two_set.status;
        return verdict;
      }
    }
    // A usable bound was available but neither certificate could be issued:
    // the E-pseudospectrum is compatible with both outcomes, so the verdict
    // stays undetermined rather than degrading to an uncertified guess.
    verdict.status = StabilityStatus::Undetermined;
    return verdict;
  }

  // No usable bound (reference formulation or envelope unusable): classify
  // from the computed multipliers alone, without any certification claim.
  const double radius = std::abs(verdict.multipliers(0));
  verdict.status = radius <= 1.0 + kNumericStabilityTolerance
                       ? StabilityStatus::NumericStable
                       : StabilityStatus::NumericUnstable;
  return verdict;
}

std::optional<int> minimal_n_for_guarantee(const FourierMatrixSeries& series,
                                           const DecayEnvelope& env,
                                           Formulation formulation, int N_max,
                                           bool mathieu_dichotomy, int n_circle,
                                           int n_axis) {
  return minimal_n_for_guarantee(
      series, [&](int) { return env; }, formulation, N_max, mathieu_dichotomy,
      n_circle, n_axis);
}

std::optional<int> minimal_n_for_guarantee(
    const FourierMatrixSeries& series,
    const std::function<DecayEnvelope(int)>& env_for, Formulation formulation,
    int N_max, bool mathieu_dichotomy, int n_circle, int n_axis) {
  if (N_max < 1) throw parameter_error("N_max must be >= 1");
  const int N_start = formulation == Formulation::Subharmonic ? 1 : 0;
  for (int N = N_start; N <= N_max; ++N) {
    StabilityVerdict v = analyze_stability(series, env_for(N), N, formulation,
                                           mathieu_dichotomy, n_circle, n_axis);
    if (v.status == StabilityStatus::GuaranteedStable ||
        v.status == StabilityStatus::GuaranteedUnstable)
      return N;
  }
  return std::nullopt;
}

}  // namespace hillcert
