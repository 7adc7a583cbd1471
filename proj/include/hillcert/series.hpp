// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hillcert/fourier.hpp"
#include "hillcert/types.hpp"

namespace hillcert {

/// An ordered integer index tuple p = (p_1, ..., p_m), m >= 1. Indexes the
/// coefficient products J_p = J_{p_1} ... J_{p_m} and scalar factors xi_p of
/// the fundamental-matrix series.
struct IndexTuple {
  std::vector<int> entries;

  IndexTuple() = default;
  IndexTuple(std::initializer_list<int> list) : entries(list) {}
  explicit IndexTuple(std::vector<int> v) : entries(std::move(v)) {}

  int length() const { return static_cast<int>(entries.size()); }

  /// One-norm |p| = sum |p_k| (not the sum of entries).
  int one_norm() const;

  /// The tail (p_2, ..., p_m); length must be >= 2.
  IndexTuple tail() const;

  bool operator==(const IndexTuple& o) const { return entries == o.entries; }
  bool operator<(const IndexTuple& o) const { return entries < o.entries; }
};

/// Exact finite linear combination sum c_{k,q} t^q e^{i k omega t}: the
/// closure of {1} under multiplication by e^{i k omega t} and
/// antidifferentiation, hosting every scalar factor xi_p exactly.
class ExpPolynomial {
 public:
  /// Term key: (harmonic k, power q).
  using Key = std::pair<int, int>;

  explicit ExpPolynomial(double omega) : omega_(omega) {}

  double omega() const { return omega_; }
  const std::map<Key, Complex>& terms() const { return terms_; }

  /// Accumulate c onto the (k, q) coefficient; exact zeros are dropped.
  void add_term(int k, int q, Complex c);

  /// Pointwise value sum c_{k,q} t^q e^{i k omega t}.
  Complex eval(double t) const;

  /// Exact term-by-term derivative.
  ExpPolynomial derivative() const;

  /// The antiderivative F with F' = this and F(0) = 0, exact in the same
  /// representation.
  ExpPolynomial antiderivative_zero() const;

  /// This polynomial multiplied by e^{i dk omega t} (harmonic shift).
  ExpPolynomial frequency_shifted(int dk) const;

 private:
  double omega_;
  std::map<Key, Complex> terms_;
};

/// The scalar factor xi_p as an exact ExpPolynomial, built by the recursion
/// d/dt xi_p = xi_{(p_2..p_m)} e^{i p_1 omega t}, xi_p(0) = 0, with base case
/// xi_{(p)} = (e^{i p omega t} - 1)/(i p omega) (p != 0) or t (p = 0).
///
/// \throws parameter_error if p is empty or omega <= 0
ExpPolynomial xi_factor(const IndexTuple& p, double omega);

/// Pointwise evaluation of an ExpPolynomial (spec-level alias of eval).
Complex xi_eval(const ExpPolynomial& xi, double t);

/// Ordered coefficient product J_{p_1} J_{p_2} ... J_{p_m}; absent
/// coefficients are zero matrices.
ComplexMatrix coeff_product(const FourierMatrixSeries& series,
                            const IndexTuple& p);

/// The eligible set P_j^(m): all integer tuples p with
/// |j - sum_{l<=w} p_l| <= N for every w = 1..m. j may be a half-integer
/// (represented exactly; 2j must be integral), covering the subharmonic
/// blocks. Returned sorted lexicographically.
///
/// \throws parameter_error if m < 1, N < 0, or 2j is not integral
std::vector<IndexTuple> eligible_set(double j, int N, int m);

/// The subharmonic eligible set: all tuples with |sum_{l=v}^{w} p_l| <= 2N
/// for all 1 <= v <= w <= m. Equals the union of eligible_set(j, N, m) over
/// integer j in [-N, N]. Returned sorted lexicographically.
///
/// \throws parameter_error if m < 1 or N < 0
std::vector<IndexTuple> subharmonic_set(int N, int m);

/// Truncated fundamental-matrix series
///   Phi(t) ~= I + sum_{m=1}^{m_max} sum_{p in K^m} xi_p(t) J_p
/// (K = stored support), together with a rigorous tail bound
/// sum_{m > m_max} (2 a |t| / (1 - e^{-b}))^m / m! for the internal
/// majorizing envelope b = 1, a = max_k ||J_k||_2 e^{|k|}.
///
/// \throws parameter_error if m_max < 1
std::pair<ComplexMatrix, double> series_fundamental(
    const FourierMatrixSeries& series, int m_max, double t);

/// Truncated block series Q_j(t) ~= I + sum_m sum_{p in P_j^(m)} xi_p(t) J_p
/// with half-integer j covering the subharmonic stack (block j~ = 2j).
///
/// \throws parameter_error if m_max < 1, N < 0, or 2j is not integral
ComplexMatrix series_q_block(const FourierMatrixSeries& series, int N,
                             double j, int m_max, double t);

/// Number of multi-indices alpha in N^m with |alpha| = M: the stars-and-bars
/// count binom(M+m-1, m-1).
///
/// \throws parameter_error if m < 1 or M < 0
unsigned long long count_multiindices(int m, int M);

/// Closed form of the nested binomial sum
///   sum_{alpha_1=0}^{M} sum_{alpha_2=0}^{M-alpha_1} ...
///     prod_i binom(alpha_i + n_i, n_i)  =  binom(m + M + |n|, M).
///
/// \throws parameter_error if M < 0 or any entry of n_vec is negative
unsigned long long vandermonde_multisum(int M, const std::vector<int>& n_vec);

/// Sufficient criterion for T-periodicity of xi_p: true iff every contiguous
/// partial sum sum_{l=v}^{w} p_l (1 <= v <= w <= m) is nonzero.
bool periodicity_check(const IndexTuple& p);

}  // namespace hillcert
