#include "qjk/qarith.hpp"

#include <numbers>
#include <type_traits>

namespace qjk {

std::string_view to_string(Precision p) {
  return p == Precision::Double ? "double" : "extended";
}

Precision parse_precision(std::string_view text) {
  if (text == "double") return Precision::Double;
  if (text == "extended") return Precision::Extended;
  throw DomainError("unknown precision '" + std::string(text) + "' (expected double|extended)");
}

namespace {

std::int64_t floor_mod(std::int64_t value, std::int64_t m) {
  std::int64_t r = value % m;
  return r < 0 ? r + m : r;
}

}  // namespace

template <class Real>
RootSystem<Real>::RootSystem(int n) : n_(n) {
  if (n < 2) throw DomainError("root system requires N >= 2, got " + std::to_string(n));
  const Real pi = std::numbers::pi_v<Real>;
  const std::size_t table = 4 * static_cast<std::size_t>(n);
  phase_.resize(table);
  for (std::size_t m = 0; m < table; ++m) {
    const Real angle = pi * static_cast<Real>(m) / static_cast<Real>(2 * n);
    phase_[m] = Scalar(std::cos(angle), std::sin(angle));
  }
  s_ = spow(1);
  q_ = spow(2);
  s_minus_inv_ = s_ - spow(-1);

  qint_.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) qint_[k] = (spow(k) - spow(-k)) / s_minus_inv_;
  qint_[n] = Scalar(0);  // [N] = 0 exactly

  qfact_.resize(static_cast<std::size_t>(n));
  qfact_[0] = Scalar(1);
  for (int k = 1; k < n; ++k) qfact_[k] = qfact_[k - 1] * qint_[k];
}

template <class Real>
Precision RootSystem<Real>::precision() const noexcept {
  return std::is_same_v<Real, double> ? Precision::Double : Precision::Extended;
}

template <class Real>
typename RootSystem<Real>::Scalar RootSystem<Real>::spow(std::int64_t k) const {
  return phase_[static_cast<std::size_t>(floor_mod(2 * k, 4 * static_cast<std::int64_t>(n_)))];
}

template <class Real>
typename RootSystem<Real>::Scalar RootSystem<Real>::spow_half(std::int64_t twice) const {
  return phase_[static_cast<std::size_t>(floor_mod(twice, 4 * static_cast<std::int64_t>(n_)))];
}

template <class Real>
typename RootSystem<Real>::Scalar RootSystem<Real>::spow_real(Real x) const {
  const Real angle = std::numbers::pi_v<Real> * x / static_cast<Real>(n_);
  return Scalar(std::cos(angle), std::sin(angle));
}

template <class Real>
Complex<Real> qint(const RootSystem<Real>& sys, std::int64_t k) {
  const std::int64_t n = sys.n();
  if (k >= 0 && k <= n) return sys.qint_cached(static_cast<int>(k));
  return (sys.spow(k) - sys.spow(-k)) / sys.s_minus_inv();
}

template <class Real>
Complex<Real> qint_complex(const RootSystem<Real>& sys, Complex<Real> x) {
  const Complex<Real> i_pi_over_n(0, std::numbers::pi_v<Real> / static_cast<Real>(sys.n()));
  return (std::exp(i_pi_over_n * x) - std::exp(-i_pi_over_n * x)) / sys.s_minus_inv();
}

template <class Real>
Complex<Real> qfact(const RootSystem<Real>& sys, std::int64_t m) {
  if (m < 0) throw DomainError("qfact of negative argument " + std::to_string(m));
  if (m >= sys.n()) return Complex<Real>(0);
  return sys.qfact_cached(static_cast<int>(m));
}

template <class Real>
Complex<Real> qbinom(const RootSystem<Real>& sys, std::int64_t x, std::int64_t y) {
  if (y < 0 || y > x || x >= sys.n()) {
    throw DomainError("qbinom(" + std::to_string(x) + ", " + std::to_string(y) +
                      ") outside 0 <= y <= x < N");
  }
  return ensure_finite(qfact(sys, x) / (qfact(sys, y) * qfact(sys, x - y)), "qbinom");
}

template <class Real>
Complex<Real> pochhammer_q(const Complex<Real>& x, std::int64_t n) {
  if (n < 0) throw DomainError("pochhammer_q requires n >= 0");
  Complex<Real> result(1), power(1);
  for (std::int64_t i = 1; i <= n; ++i) {
    power *= x;
    result *= Complex<Real>(1) - power;
  }
  return result;
}

int theta(std::int64_t value, int n) { return value >= 0 && value < n ? 1 : 0; }

int res_mod(std::int64_t value, int n) { return static_cast<int>(floor_mod(value, n)); }

template <class Real>
Complex<Real> sum_S(const RootSystem<Real>& sys, int alpha, std::int64_t beta, SumMode mode) {
  const int n = sys.n();
  if (alpha < 0 || alpha > n - 1) {
    throw DomainError("sum_S: alpha=" + std::to_string(alpha) + " outside [0, N-1]");
  }
  Complex<Real> total(mode == SumMode::Brute ? 0 : 1);
  if (mode == SumMode::Brute) {
    // Terms with alpha + i >= N carry [alpha+i]! = 0 and vanish.
    for (int i = 0; i + alpha <= n - 1; ++i) total += sys.spow(beta * i) * qbinom(sys, alpha + i, i);
  } else {
    for (int j = 1; j <= n - alpha - 1; ++j) total *= Complex<Real>(1) - sys.spow(beta - alpha - 2 * j);
  }
  return total;
}

template <class Real>
Complex<Real> sum_T(const RootSystem<Real>& sys, int alpha, std::int64_t beta, SumMode mode) {
  const int n = sys.n();
  if (alpha < 0 || alpha > n - 1) {
    throw DomainError("sum_T: alpha=" + std::to_string(alpha) + " outside [0, N-1]");
  }
  Complex<Real> total(mode == SumMode::Brute ? 0 : 1);
  if (mode == SumMode::Brute) {
    for (int i = 0; i <= alpha; ++i) {
      const Real sign = (i % 2 == 0) ? Real(1) : Real(-1);
      total += sign * sys.spow(beta * i) * qbinom(sys, alpha, i);
    }
  } else {
    for (int j = 1; j <= alpha; ++j) total *= Complex<Real>(1) - sys.spow(beta + alpha + 1 - 2 * j);
  }
  return total;
}

template <class Real>
IdentityReport pochhammer_identities_check(const RootSystem<Real>& sys, const Tolerance& tol) {
  IdentityReport report;
  double magnitude = 0.0;
  Complex<Real> diff_pow(1);
  for (int n = 0; n < sys.n(); ++n) {
    if (n > 0) diff_pow *= sys.s_minus_inv();
    const std::int64_t tri = static_cast<std::int64_t>(n) * (n + 1);  // twice n(n+1)/2
    const Real sign = (n % 2 == 0) ? Real(1) : Real(-1);
    const auto lhs_q = pochhammer_q(sys.q(), n);
    const auto rhs_q = sign * sys.spow_half(tri) * diff_pow * qfact(sys, n);
    const auto lhs_qinv = pochhammer_q(Complex<Real>(1) / sys.q(), n);
    const auto rhs_qinv = sys.spow_half(-tri) * diff_pow * qfact(sys, n);
    magnitude = std::max({magnitude, static_cast<double>(std::abs(lhs_q)),
                          static_cast<double>(std::abs(lhs_qinv))});
    report.max_deviation =
        std::max({report.max_deviation, static_cast<double>(std::abs(lhs_q - rhs_q)),
                  static_cast<double>(std::abs(lhs_qinv - rhs_qinv))});
  }
  report.threshold = tol.threshold(magnitude, sys.n());
  report.pass = tol.passes(report.max_deviation, magnitude, sys.n());
  return report;
}

template <class Real>
IdentityReport sine_product_check(const RootSystem<Real>& sys, const Tolerance& tol) {
  const int n = sys.n();
  Real product = 1;
  for (int k = 1; k < n; ++k) {
    product *= 2 * std::sin(std::numbers::pi_v<Real> * static_cast<Real>(k) / static_cast<Real>(n));
  }
  IdentityReport report;
  report.max_deviation = static_cast<double>(std::abs(product - static_cast<Real>(n)));
  report.threshold = tol.threshold(n, 1);
  report.pass = tol.passes(report.max_deviation, n, 1);
  return report;
}

#define QJK_INSTANTIATE(Real)                                                                   \
  template class RootSystem<Real>;                                                              \
  template Complex<Real> qint(const RootSystem<Real>&, std::int64_t);                           \
  template Complex<Real> qint_complex(const RootSystem<Real>&, Complex<Real>);                  \
  template Complex<Real> qfact(const RootSystem<Real>&, std::int64_t);                          \
  template Complex<Real> qbinom(const RootSystem<Real>&, std::int64_t, std::int64_t);           \
  template Complex<Real> pochhammer_q(const Complex<Real>&, std::int64_t);                      \
  template Complex<Real> sum_S(const RootSystem<Real>&, int, std::int64_t, SumMode);            \
  template Complex<Real> sum_T(const RootSystem<Real>&, int, std::int64_t, SumMode);            \
  template IdentityReport pochhammer_identities_check(const RootSystem<Real>&, const Tolerance&); \
  template IdentityReport sine_product_check(const RootSystem<Real>&, const Tolerance&);

QJK_INSTANTIATE(double)
QJK_INSTANTIATE(long double)

#undef QJK_INSTANTIATE

}  // namespace qjk
