// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include "hillcert/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "hillcert/errors.hpp"

namespace hillcert {

namespace {

// Generic exponential-polynomial arithmetic over an arbitrary coefficient
// type (Complex for xi factors, ComplexMatrix for the series sums). Only the
// three operations needed by the front-extension recursion are provided.
template <typename Coeff>
struct PolyOps {
  using Key = std::pair<int, int>;

  // Multiply every term by e^{i dk omega t}: shift the harmonic index.
  static std::map<Key, Coeff> shifted(const std::map<Key, Coeff>& terms,
                                      int dk) {
    std::map<Key, Coeff> out;
    for (const auto& [key, c] : terms)
      out.emplace(Key{key.first + dk, key.second}, c);
    return out;
  }

  // Antiderivative with value 0 at t = 0, term by term:
  //   k = 0:  integral t^q dt = t^{q+1}/(q+1)
  //   k != 0: integral t^q e^{at} dt
  //             = e^{at} sum_{r=0}^{q} (-1)^{q-r} (q!/r!) t^r / a^{q-r+1},
  //           a = i k omega, then subtract the value at 0 (the r = 0 term).
  static std::map<Key, Coeff> antiderivative_zero(
      const std::map<Key, Coeff>& terms, double omega) {
    std::map<Key, Coeff> out;
    for (const auto& [key, c] : terms) {
      const auto [k, q] = key;
      if (k == 0) {
        accumulate(out, {0, q + 1}, c / static_cast<double>(q + 1));
        continue;
      }
      const Complex a(0.0, k * omega);
      // factor = (-1)^{q-r} (q!/r!) / a^{q-r+1}, built downward from r = q.
      Complex factor = 1.0 / a;
      for (int r = q; r >= 0; --r) {
        accumulate(out, {k, r}, factor * c);
        if (r > 0) factor *= -static_cast<double>(r) / a;
      }
      // Enforce F(0) = 0: remove the constant the r = 0 term contributes.
      Complex const_val = 1.0 / a;
      for (int r = q; r > 0; --r) const_val *= -static_cast<double>(r) / a;
      accumulate(out, {0, 0}, -(const_val * c));
    }
    return out;
  }

  static void accumulate(std::map<Key, Coeff>& terms, Key key, Coeff c) {
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, std::move(c));
    } else {
      it->second += c;
    }
  }
};

// Matrix-valued exponential polynomial used by the series DP.
struct MatrixPoly {
  std::map<std::pair<int, int>, ComplexMatrix> terms;

  ComplexMatrix eval(double omega, double t, int dim) const {
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto& [key, c] : terms) {
      const auto [k, q] = key;
      sum += c * (std::pow(t, q) * std::exp(Complex(0.0, k * omega * t)));
    }
    return sum;
  }
};

void require_series_params(const FourierMatrixSeries& series, int m_max) {
  series.validate();
  if (m_max < 1) throw parameter_error("series order m_max must be >= 1");
}

// One front-extension step of the series recursion: the level-L sum over
// tuples (k, q_1, ..., q_{L-1}) is
//   S_L = sum_{front k} J_k * antiderivative( e^{i k omega s} S_{L-1}(s) ).
// The eligible set for a block keeps every prefix sum s_w = k_1 + ... + k_w
// inside [j - N, j + N].  Prefix sums are unknowable while a tuple is grown
// front-first, so levels are keyed by the (min, max) of the prefix sums built
// so far: prepending k shifts all of them by k and adds the new first sum k,
// and the window test reduces to a range check on (min, max) at evaluation.
struct SeriesDp {
  // Sentinel for the empty tuple, which has no prefix sums yet.
  static constexpr std::pair<int, int> kEmpty{1, -1};

  const FourierMatrixSeries& series;
  bool restricted;
  int N = 0;
  int twice_j = 0;
  // Level sums keyed by (min, max) prefix sum of the tuples accumulated there.
  std::map<std::pair<int, int>, MatrixPoly> level;

  explicit SeriesDp(const FourierMatrixSeries& s) : series(s), restricted(false) {}
  SeriesDp(const FourierMatrixSeries& s, int N_in, int twice_j_in)
      : series(s), restricted(true), N(N_in), twice_j(twice_j_in) {
    MatrixPoly one;
    one.terms.emplace(std::pair<int, int>{0, 0},
                      ComplexMatrix::Identity(s.dim, s.dim));
    level.emplace(kEmpty, std::move(one));
  }

  static SeriesDp make_unrestricted(const FourierMatrixSeries& s) {
    SeriesDp dp(s);
    MatrixPoly one;
    one.terms.emplace(std::pair<int, int>{0, 0},
                      ComplexMatrix::Identity(s.dim, s.dim));
    dp.level.emplace(kEmpty, std::move(one));
    return dp;
  }

  void advance() {
    std::map<std::pair<int, int>, MatrixPoly> next;
    for (const auto& [state, poly] : level) {
      for (const auto& [k, Jk] : series.coeffs) {
        if (Jk.isZero(0.0)) continue;
        std::pair<int, int> ns;
        if (restricted) {
          ns = (state == kEmpty)
                   ? std::pair<int, int>{k, k}
                   : std::pair<int, int>{std::min(k, k + state.first),
                                         std::max(k, k + state.second)};
          // Prepending shifts min and max together, so a spread beyond the
          // window diameter can never re-enter any window: prune it.
          if (ns.second - ns.first > 2 * N) continue;
        } else {
          ns = {0, 0};
        }
        auto shifted = PolyOps<ComplexMatrix>::shifted(poly.terms, k);
        auto integ =
            PolyOps<ComplexMatrix>::antiderivative_zero(shifted, series.omega);
        MatrixPoly& slot = next[ns];
        for (auto& [key, c] : integ) {
          ComplexMatrix prod = Jk * c;
          PolyOps<ComplexMatrix>::accumulate(slot.terms, key, std::move(prod));
        }
      }
    }
    level = std::move(next);
  }

  // Sum of the current level, evaluated at t.  Restricted sums keep only the
  // tuples whose prefix sums all lie in [j - N, j + N]; the comparison uses
  // doubled integers so half-integer block centers stay exact.
  ComplexMatrix eval(double t) const {
    ComplexMatrix sum = ComplexMatrix::Zero(series.dim, series.dim);
    for (const auto& [state, poly] : level) {
      if (restricted) {
        if (2 * state.first < twice_j - 2 * N) continue;
        if (2 * state.second > twice_j + 2 * N) continue;
      }
      sum += poly.eval(series.omega, t, series.dim);
    }
    return sum;
  }
};

int require_twice_integral(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!std::isfinite(twice) || std::abs(twice - rounded) > 0.0)
    throw parameter_error("block index j must be an integer or half-integer");
  return static_cast<int>(rounded);
}

unsigned long long binomial_ull(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long result = 1;
  for (long long i = 1; i <= k; ++i) {
    // Multiply before dividing keeps the intermediate integral: the running
    // value is binom(n-k+i, i) after each step.
    result = result * static_cast<unsigned long long>(n - k + i) /
             static_cast<unsigned long long>(i);
  }
  return result;
}

}  // namespace

int IndexTuple::one_norm() const {
  int sum = 0;
  for (int e : entries) sum += std::abs(e);
  return sum;
}

IndexTuple IndexTuple::tail() const {
  if (entries.size() < 2)
    throw parameter_error("tail of an index tuple needs length >= 2");
  return IndexTuple(std::vector<int>(entries.begin() + 1, entries.end()));
}

void ExpPolynomial::add_term(int k, int q, Complex c) {
  if (q < 0) throw parameter_error("polynomial power must be >= 0");
  auto it = terms_.find({k, q});
  if (it == terms_.end()) {
    if (c != Complex(0.0)) terms_.emplace(Key{k, q}, c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0.0)) terms_.erase(it);
}

Complex ExpPolynomial::eval(double t) const {
  Complex sum = 0.0;
  for (const auto& [key, c] : terms_) {
    const auto [k, q] = key;
    sum += c * (std::pow(t, q) * std::exp(Complex(0.0, k * omega_ * t)));
  }
  return sum;
}

ExpPolynomial ExpPolynomial::derivative() const {
  // d/dt [c t^q e^{i k omega t}] = c q t^{q-1} e^{..} + c (i k omega) t^q e^{..}
  ExpPolynomial out(omega_);
  for (const auto& [key, c] : terms_) {
    const auto [k, q] = key;
    if (q > 0) out.add_term(k, q - 1, c * static_cast<double>(q));
    if (k != 0) out.add_term(k, q, c * Complex(0.0, k * omega_));
  }
  return out;
}

ExpPolynomial ExpPolynomial::antiderivative_zero() const {
  ExpPolynomial out(omega_);
  auto terms = PolyOps<Complex>::antiderivative_zero(terms_, omega_);
  for (const auto& [key, c] : terms) out.add_term(key.first, key.second, c);
  return out;
}

ExpPolynomial ExpPolynomial::frequency_shifted(int dk) const {
  ExpPolynomial out(omega_);
  for (const auto& [key, c] : terms_) out.add_term(key.first + dk, key.second, c);
  return out;
}

ExpPolynomial xi_factor(const IndexTuple& p, double omega) {
  if (p.length() < 1) throw parameter_error("xi factor needs a nonempty tuple");
  if (!(omega > 0.0)) throw parameter_error("omega must be positive");
  // Build from the last entry forward: xi for the suffix starting at position
  // l is the antiderivative (vanishing at 0) of xi for the suffix at l+1
  // multiplied by e^{i p_l omega t}; the empty suffix is the constant 1.
  ExpPolynomial xi(omega);
  xi.add_term(0, 0, 1.0);
  for (auto it = p.entries.rbegin(); it != p.entries.rend(); ++it)
    xi = xi.frequency_shifted(*it).antiderivative_zero();
  return xi;
}

Complex xi_eval(const ExpPolynomial& xi, double t) { return xi.eval(t); }

ComplexMatrix coeff_product(const FourierMatrixSeries& series,
                            const IndexTuple& p) {
  if (p.length() < 1)
    throw parameter_error("coefficient product needs a nonempty tuple");
  series.validate();
  ComplexMatrix prod = ComplexMatrix::Identity(series.dim, series.dim);
  for (int k : p.entries) prod = prod * series.coeff(k);
  return prod;
}

std::vector<IndexTuple> eligible_set(double j, int N, int m) {
  if (m < 1) throw parameter_error("tuple length m must be >= 1");
  if (N < 0) throw parameter_error("truncation order N must be >= 0");
  const int twice_j = require_twice_integral(j);
  // Prefix sums s_w are integers confined to |j - s_w| <= N, i.e.
  // 2 s_w in [2j - 2N, 2j + 2N] intersected with the even lattice.
  std::vector<int> window;
  for (int twice_s = twice_j - 2 * N; twice_s <= twice_j + 2 * N; ++twice_s)
    if (twice_s % 2 == 0) window.push_back(twice_s / 2);

  std::vector<IndexTuple> out;
  std::vector<int> prefix(m, 0);
  std::vector<int> entries(m, 0);
  // Depth-first enumeration of prefix-sum sequences; entries recovered as
  // successive differences (s_0 = 0 only anchors the first entry).
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      out.emplace_back(entries);
      return;
    }
    for (int s : window) {
      prefix[depth] = s;
      entries[depth] = s - (depth == 0 ? 0 : prefix[depth - 1]);
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndexTuple> subharmonic_set(int N, int m) {
  if (m < 1) throw parameter_error("tuple length m must be >= 1");
  if (N < 0) throw parameter_error("truncation order N must be >= 0");
  // Condition |sum_{l=v}^{w} p_l| <= 2N for all v <= w says the prefix sums
  // s_0 = 0, s_1, ..., s_m have total spread at most 2N.
  std::vector<IndexTuple> out;
  std::vector<int> entries(m, 0);
  auto rec = [&](auto&& self, int depth, int s_prev, int lo, int hi) -> void {
    if (depth == m) {
      out.emplace_back(entries);
      return;
    }
    // Extending with prefix sum s keeps the spread within 2N iff
    // s lies in [hi - 2N, lo + 2N].
    for (int s_next = hi - 2 * N; s_next <= lo + 2 * N; ++s_next) {
      entries[depth] = s_next - s_prev;
      self(self, depth + 1, s_next, std::min(lo, s_next), std::max(hi, s_next));
    }
  };
  rec(rec, 0, 0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<ComplexMatrix, double> series_fundamental(
    const FourierMatrixSeries& series, int m_max, double t) {
  require_series_params(series, m_max);

  SeriesDp dp = SeriesDp::make_unrestricted(series);
  ComplexMatrix sum = ComplexMatrix::Identity(series.dim, series.dim);
  for (int m = 1; m <= m_max; ++m) {
    dp.advance();
    sum += dp.eval(t);
  }

  // Tail bound from the absolute-convergence estimate: with any envelope
  // ||J_k|| <= a e^{-b |k|}, the order-m block is bounded by
  // (2 a |t| / (1 - e^{-b}))^m / m!. Use the canonical internal choice b = 1,
  // a = max_k ||J_k||_2 e^{|k|}.
  double a = 0.0;
  for (const auto& [k, Jk] : series.coeffs)
    a = std::max(a, spectral_norm(Jk) * std::exp(std::abs(k)));
  const double x = 2.0 * a * std::abs(t) / (1.0 - std::exp(-1.0));
  double tail = 0.0;
  if (x > 0.0) {
    // Forward-sum the remainder sum_{m > m_max} x^m / m! term by term; no
    // cancellation, terms eventually decay factorially.
    double term = 1.0;
    for (int m = 1; m <= m_max + 1; ++m) term *= x / m;
    for (int m = m_max + 1; term > 0.0 && std::isfinite(term); ++m) {
      tail += term;
      if (term < 1e-300 * std::max(tail, 1.0)) break;
      term *= x / (m + 1);
    }
    if (!std::isfinite(tail) || !std::isfinite(term))
      tail = std::numeric_limits<double>::infinity();
  }
  return {sum, tail};
}

ComplexMatrix series_q_block(const FourierMatrixSeries& series, int N,
                             double j, int m_max, double t) {
  require_series_params(series, m_max);
  if (N < 0) throw parameter_error("truncation order N must be >= 0");
  const int twice_j = require_twice_integral(j);

  SeriesDp dp(series, N, twice_j);
  ComplexMatrix sum = ComplexMatrix::Identity(series.dim, series.dim);
  for (int m = 1; m <= m_max; ++m) {
    dp.advance();
    sum += dp.eval(t);
  }
  return sum;
}

unsigned long long count_multiindices(int m, int M) {
  if (m < 1) throw parameter_error("multi-index length m must be >= 1");
  if (M < 0) throw parameter_error("multi-index total M must be >= 0");
  return binomial_ull(static_cast<long long>(M) + m - 1, m - 1);
}

unsigned long long vandermonde_multisum(int M, const std::vector<int>& n_vec) {
  if (M < 0) throw parameter_error("sum bound M must be >= 0");
  long long norm = 0;
  for (int n : n_vec) {
    if (n < 0) throw parameter_error("binomial offsets must be >= 0");
    norm += n;
  }
  const long long m = static_cast<long long>(n_vec.size());
  return binomial_ull(m + M + norm, M);
}

bool periodicity_check(const IndexTuple& p) {
  const int m = p.length();
  for (int v = 0; v < m; ++v) {
    int sum = 0;
    for (int w = v; w < m; ++w) {
      sum += p.entries[w];
      if (sum == 0) return false;
    }
  }
  return true;
}

}  // namespace hillcert
