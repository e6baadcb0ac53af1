#pragma once

// q-combinatorics at the primitive 2N-th root of unity s = exp(pi i / N).
//
// Conventions:
//   [k]   = (s^k - s^-k) / (s - s^-1)        (q-integer, real valued)
//   [k]!  = [k][k-1]...[1],  [0]! = 1,  [m]! = 0 for m >= N
//   (x)_n = prod_{i=1}^{n} (1 - x^i)
//   q     = s^2

#include <cstdint>
#include <vector>

#include "qjk/common.hpp"

namespace qjk {

enum class SumMode { Brute, Closed };

template <class Real>
class RootSystem {
 public:
  using Scalar = Complex<Real>;

  explicit RootSystem(int n);

  int n() const noexcept { return n_; }
  Precision precision() const noexcept;

  const Scalar& s() const noexcept { return s_; }
  const Scalar& q() const noexcept { return q_; }
  // s - s^{-1} = 2 i sin(pi / N)
  const Scalar& s_minus_inv() const noexcept { return s_minus_inv_; }

  // s^k for integer k (exact 2N-periodicity via a phase table).
  Scalar spow(std::int64_t k) const;
  // s^(twice / 2): half-integer exponents without complex-power branch issues.
  Scalar spow_half(std::int64_t twice) const;
  // s^x for real x, as exp(pi i x / N).
  Scalar spow_real(Real x) const;

  // Cached [k] for 0 <= k <= N and [k]! for 0 <= k <= N-1.
  const Scalar& qint_cached(int k) const { return qint_[static_cast<std::size_t>(k)]; }
  const Scalar& qfact_cached(int k) const { return qfact_[static_cast<std::size_t>(k)]; }

 private:
  int n_;
  Scalar s_, q_, s_minus_inv_;
  std::vector<Scalar> phase_;  // exp(pi i m / (2N)), m in [0, 4N)
  std::vector<Scalar> qint_;
  std::vector<Scalar> qfact_;
};

// [k] for any integer k.
template <class Real>
Complex<Real> qint(const RootSystem<Real>& sys, std::int64_t k);

// [x] for a complex argument, (s^x - s^-x)/(s - s^-1) with s^x = exp(pi i x / N).
template <class Real>
Complex<Real> qint_complex(const RootSystem<Real>& sys, Complex<Real> x);

// [m]!; 1 for m = 0, exactly 0 for m >= N. Negative m is a DomainError.
template <class Real>
Complex<Real> qfact(const RootSystem<Real>& sys, std::int64_t m);

// [x]! / ([y]! [x-y]!) for 0 <= y <= x < N.
template <class Real>
Complex<Real> qbinom(const RootSystem<Real>& sys, std::int64_t x, std::int64_t y);

template <class Real>
Complex<Real> pochhammer_q(const Complex<Real>& x, std::int64_t n);

// 1 iff 0 <= value < N.
int theta(std::int64_t value, int n);
// value mod N in [0, N-1], also for negative input.
int res_mod(std::int64_t value, int n);

// S(alpha, beta) = sum_{i=0}^{N-1} s^{beta i} qbinom(alpha+i, i)
// closed: prod_{j=1}^{N-alpha-1} (1 - s^{beta-alpha-2j})
template <class Real>
Complex<Real> sum_S(const RootSystem<Real>& sys, int alpha, std::int64_t beta, SumMode mode);

// T(alpha, beta) = sum_{i=0}^{alpha} (-1)^i s^{beta i} qbinom(alpha, i)
// closed: prod_{j=1}^{alpha} (1 - s^{beta+alpha+1-2j})
template <class Real>
Complex<Real> sum_T(const RootSystem<Real>& sys, int alpha, std::int64_t beta, SumMode mode);

struct IdentityReport {
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// (q)_n   = (-1)^n s^{n(n+1)/2} (s - s^-1)^n [n]!
// (q^-1)_n =       s^{-n(n+1)/2} (s - s^-1)^n [n]!     for 0 <= n <= N-1.
template <class Real>
IdentityReport pochhammer_identities_check(const RootSystem<Real>& sys, const Tolerance& tol = {});

// prod_{k=1}^{N-1} 2 sin(k pi / N) = N.
template <class Real>
IdentityReport sine_product_check(const RootSystem<Real>& sys, const Tolerance& tol = {});

}  // namespace qjk
