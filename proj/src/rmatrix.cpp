#include "qjk/rmatrix.hpp"

#include "wavefront.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace qjk {

std::string_view to_string(OperatorKind kind) {
  return kind == OperatorKind::Jones ? "jones" : "kashaev";
}

OperatorKind parse_operator_kind(std::string_view text) {
  if (text == "jones") return OperatorKind::Jones;
  if (text == "kashaev") return OperatorKind::Kashaev;
  throw DomainError("unknown operator kind '" + std::string(text) + "' (expected jones|kashaev)");
}

namespace {

template <class Real>
using Triplets = std::vector<typename Operator<Real>::Triplet>;

template <class Real>
CheckReport make_report(std::string name, int n, double deviation, double magnitude, double dimension,
                        const Tolerance& tol) {
  CheckReport r;
  r.name = std::move(name);
  r.n = n;
  r.max_deviation = deviation;
  r.magnitude = magnitude;
  r.threshold = tol.threshold(magnitude, dimension);
  r.pass = tol.passes(deviation, magnitude, dimension);
  return r;
}

template <class Real>
Complex<Real> ipow(Complex<Real> base, int exponent) {
  Complex<Real> result(1);
  if (exponent < 0) {
    base = Complex<Real>(1) / base;
    exponent = -exponent;
  }
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

template <class Real>
Real sign_of(int exponent) {
  return (exponent % 2 == 0) ? Real(1) : Real(-1);
}

// Left-multiplies every column of the N^2 x N^2 matrix `m` by (a (x) b).
template <class Real>
void apply_left_tensor(DenseMatrix<Real>& m, const DenseMatrix<Real>& a, const DenseMatrix<Real>& b, int n) {
  // A column reshaped column-major as an N x N map holds X^T with X(p, q) = col[p*N + q],
  // so (a (x) b) col corresponds to b * X^T * a^T.
  const DenseMatrix<Real> at = a.transpose();
  DenseMatrix<Real> tmp(n, n);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Map<DenseMatrix<Real>> x(m.col(c).data(), n, n);
    tmp.noalias() = b * x;
    x.noalias() = tmp * at;
  }
}

}  // namespace

template <class Real>
Operator<Real> build_R_jones(const RootSystem<Real>& sys) {
  const int n = sys.n();
  Triplets<Real> t;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex<Real> diff_pow(1);
      for (int m = 0; m <= std::min(n - 1 - i, j); ++m) {
        if (m > 0) diff_pow *= sys.s_minus_inv();
        const int l = i + m;
        const int k = j - m;
        const std::int64_t twice_exp = static_cast<std::int64_t>(2 * i - n + 1) * (2 * j - n + 1) -
                                       2LL * m * (i - j) - static_cast<std::int64_t>(m) * (m + 1);
        const Complex<Real> value = diff_pow / qfact(sys, m) * (qfact(sys, i + m) / qfact(sys, i)) *
                                    (qfact(sys, n - 1 + m - j) / qfact(sys, n - 1 - j)) *
                                    sys.spow_half(twice_exp);
        t.push_back({static_cast<std::size_t>(k * n + l), static_cast<std::size_t>(i * n + j),
                     ensure_finite(value, "R_J")});
      }
    }
  }
  return Operator<Real>(2, n, std::move(t));
}

template <class Real>
Operator<Real> build_W(const RootSystem<Real>& sys) {
  const int n = sys.n();
  Triplets<Real> t;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      t.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(i), sys.spow(2LL * i * j)});
    }
  }
  return Operator<Real>(1, n, std::move(t));
}

template <class Real>
Operator<Real> build_W_inverse(const RootSystem<Real>& sys) {
  const int n = sys.n();
  Triplets<Real> t;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      t.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(i),
                   sys.spow(-2LL * i * j) / static_cast<Real>(n)});
    }
  }
  return Operator<Real>(1, n, std::move(t));
}

template <class Real>
Operator<Real> build_D(const RootSystem<Real>& sys, int power) {
  const int n = sys.n();
  std::vector<Complex<Real>> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) diag[i] = sys.spow(static_cast<std::int64_t>(power) * (n - 1) * i);
  return Operator<Real>::diagonal(n, diag);
}

template <class Real>
Operator<Real> conjugate_gauge(const RootSystem<Real>& sys, const Operator<Real>& m) {
  if (m.arity() != 2 || m.dim() != sys.n()) throw DomainError("conjugate_gauge: expects an arity-2 operator on C^N");
  const int n = sys.n();
  const DenseMatrix<Real> w = build_W(sys).dense();
  const DenseMatrix<Real> w_inv = build_W_inverse(sys).dense();
  const DenseMatrix<Real> d = build_D(sys, 1).dense();
  const DenseMatrix<Real> d_inv = build_D(sys, -1).dense();

  // Dense form (rows = outputs): (W^-1 (x) W^-1 D^-1) M (W (x) D W).
  DenseMatrix<Real> x = m.dense();
  apply_left_tensor<Real>(x, w_inv, DenseMatrix<Real>(w_inv * d_inv), n);
  DenseMatrix<Real> xt = x.transpose();
  // M (C (x) E) = ((C^T (x) E^T) M^T)^T
  apply_left_tensor<Real>(xt, DenseMatrix<Real>(w.transpose()), DenseMatrix<Real>((d * w).transpose()), n);
  x = xt.transpose();
  return Operator<Real>::from_dense(2, n, x);
}

template <class Real>
Operator<Real> conjugate_gauge_explicit(const RootSystem<Real>& sys, const Operator<Real>& m) {
  const int n = sys.n();
  const auto w = build_W(sys);
  const auto w_inv = build_W_inverse(sys);
  const auto id = Operator<Real>::identity(1, n);
  const auto ww = w.tensor(w);
  const auto id_d = id.tensor(build_D(sys, 1));
  const auto id_d_inv = id.tensor(build_D(sys, -1));
  const auto ww_inv = w_inv.tensor(w_inv);
  return ww.then(id_d).then(m).then(id_d_inv).then(ww_inv);
}

int ordering_case(int a, int b, int c, int d) {
  if (d >= b && b > a && a >= c) return 1;
  if (b > a && a >= c && c >= d) return 2;
  if (c >= d && d >= b && b > a) return 3;
  if (a >= c && c >= d && d >= b) return 4;
  return 0;
}

namespace {

// The signed factorial ratio shared by both four-case closed forms.
template <class Real>
Complex<Real> ordering_factor(const RootSystem<Real>& sys, int a, int b, int c, int d, int which) {
  const int n = sys.n();
  auto f = [&](int m) { return qfact(sys, m); };
  switch (which) {
    case 1:
      return sign_of<Real>(a + b + 1) * f(d - c - 1) * f(n - 1 + c - a) / (f(d - b) * f(b - a - 1));
    case 2:
      return sign_of<Real>(a + c) * f(b - d - 1) * f(n - 1 + c - a) / (f(c - d) * f(b - a - 1));
    case 3:
      return sign_of<Real>(b + d) * f(n - 1 + b - d) * f(c - a - 1) / (f(c - d) * f(b - a - 1));
    case 4:
      return sign_of<Real>(c + d) * f(n - 1 + b - d) * f(a - b) / (f(c - d) * f(a - c));
    default:
      return Complex<Real>(0);
  }
}

std::int64_t shared_exponent(int a, int b, int c, int d) {
  return static_cast<std::int64_t>(c) + d - 2LL * b + static_cast<std::int64_t>(a - d) * (c - b);
}

}  // namespace

template <class Real>
Complex<Real> rho_prefactor(const RootSystem<Real>& sys, int a, int b, int c, int d) {
  const std::int64_t n = sys.n();
  const std::int64_t twice = -n * n + 1 + 2 * shared_exponent(a, b, c, d);
  return sys.spow_half(twice) * qfact(sys, n - 1) * ipow(sys.s_minus_inv(), static_cast<int>(2 * (n - 1))) /
         static_cast<Real>(n * n);
}

template <class Real>
Complex<Real> lambda_prefactor(const RootSystem<Real>& sys, int a, int b, int c, int d, bool as_printed) {
  const std::int64_t n = sys.n();
  const std::int64_t twice = -n * n + n + 4 + 2 * shared_exponent(a, b, c, d);
  const Complex<Real> fact = qfact(sys, n - 1);
  const Complex<Real> printed = sys.spow_half(twice) * ipow(sys.s_minus_inv(), static_cast<int>(1 - n)) *
                                static_cast<Real>(n) / (fact * fact);
  // The printed constant is off by (-1)^{N+1}: rho/lambda must equal s^{(N+1)(N-3)/2}.
  return as_printed ? printed : sign_of<Real>(static_cast<int>(n + 1)) * printed;
}

template <class Real>
Operator<Real> closed_form_tilde(const RootSystem<Real>& sys) {
  const int n = sys.n();
  Triplets<Real> t;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const int which = ordering_case(a, b, c, d);
          if (which == 0) continue;
          t.push_back({static_cast<std::size_t>(a * n + b), static_cast<std::size_t>(c * n + d),
                       rho_prefactor(sys, a, b, c, d) * ordering_factor(sys, a, b, c, d, which)});
        }
  return Operator<Real>(2, n, std::move(t));
}

template <class Real>
Operator<Real> build_R_kashaev(const RootSystem<Real>& sys, KashaevMode mode) {
  const int n = sys.n();
  const Complex<Real> q = sys.q();
  const Complex<Real> q_inv = Complex<Real>(1) / q;
  Triplets<Real> t;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Complex<Real> value(0);
          if (mode == KashaevMode::Formula) {
            const int r1 = res_mod(b - a - 1, n), r2 = res_mod(a - c, n);
            const int r3 = res_mod(c - d, n), r4 = res_mod(d - b, n);
            if (theta(r1 + r3, n) == 0 || theta(r2 + r4, n) == 0) continue;
            const std::int64_t q_exp = 1 + c - b + static_cast<std::int64_t>(a - d) * (c - b);
            value = static_cast<Real>(n) * sys.spow(2 * q_exp) /
                    (pochhammer_q(q, r1) * pochhammer_q(q_inv, r2) * pochhammer_q(q, r3) * pochhammer_q(q_inv, r4));
          } else {
            const int which = ordering_case(a, b, c, d);
            if (which == 0) continue;
            value = lambda_prefactor(sys, a, b, c, d, mode == KashaevMode::ClosedAsPrinted) *
                    ordering_factor(sys, a, b, c, d, which);
          }
          t.push_back({static_cast<std::size_t>(a * n + b), static_cast<std::size_t>(c * n + d),
                       ensure_finite(value, "R_K")});
        }
  return Operator<Real>(2, n, std::move(t));
}

template <class Real>
Operator<Real> build_mu(const RootSystem<Real>& sys, OperatorKind kind) {
  const int n = sys.n();
  Triplets<Real> t;
  for (int j = 0; j < n; ++j) {
    if (kind == OperatorKind::Jones) {
      t.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(j), sys.spow(2 * j - n + 1)});
    } else {
      t.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>((j + 1) % n), -sys.s()});
    }
  }
  return Operator<Real>(1, n, std::move(t));
}

template <class Real>
Complex<Real> gauge_constant(const RootSystem<Real>& sys) {
  const std::int64_t n = sys.n();
  return sys.spow_half((n + 1) * (n - 3));
}

template <class Real>
Operator<Real> invert_by_charge_sectors(const Operator<Real>& r, int modulus) {
  if (r.arity() != 2) throw DomainError("invert_by_charge_sectors: expects an arity-2 operator");
  const int n = r.dim();
  auto charge = [&](std::size_t idx) {
    const int c = static_cast<int>(idx / n + idx % n);
    return modulus > 0 ? c % modulus : c;
  };
  std::map<int, std::vector<std::size_t>> sectors;
  for (std::size_t idx = 0; idx < r.extent(); ++idx) sectors[charge(idx)].push_back(idx);

  Triplets<Real> t;
  std::vector<int> local(r.extent(), -1);
  for (const auto& [sector, basis] : sectors) {
    const auto m = static_cast<Eigen::Index>(basis.size());
    for (Eigen::Index p = 0; p < m; ++p) local[basis[p]] = static_cast<int>(p);
    DenseMatrix<Real> block = DenseMatrix<Real>::Zero(m, m);
    for (Eigen::Index p = 0; p < m; ++p) {
      for (const auto& e : r.column(basis[p])) {
        if (charge(e.index) != sector) {
          throw IntegrityError("invert_by_charge_sectors: operator mixes charge sectors");
        }
        block(local[e.index], p) = e.value;
      }
    }
    Eigen::FullPivLU<DenseMatrix<Real>> lu(block);
    if (!lu.isInvertible()) {
      throw IntegrityError("invert_by_charge_sectors: singular block in sector " + std::to_string(sector));
    }
    const DenseMatrix<Real> inv = lu.inverse();
    for (Eigen::Index p = 0; p < m; ++p)
      for (Eigen::Index q = 0; q < m; ++q) t.push_back({basis[q], basis[p], inv(p, q)});
  }
  return Operator<Real>(2, n, std::move(t));
}

template <class Real>
Operator<Real> drop_noise(const Operator<Real>& op) {
  const double cutoff = 64.0 * static_cast<double>(std::numeric_limits<Real>::epsilon()) * op.dim() * op.dim() *
                        std::max(1.0, op.max_abs());
  Triplets<Real> kept;
  for (const auto& e : op.triplets()) {
    if (std::abs(e.value) > cutoff) kept.push_back(e);
  }
  return Operator<Real>(op.arity(), op.dim(), std::move(kept));
}

template <class Real>
Operator<Real> kashaev_inverse_from_jones(const RootSystem<Real>& sys, const Operator<Real>& r_jones_inverse) {
  return drop_noise(conjugate_gauge(sys, r_jones_inverse).scaled(gauge_constant(sys)));
}

template <class Real>
Operator<Real> kashaev_inverse_closed(const Operator<Real>& r_kashaev) {
  if (r_kashaev.arity() != 2) throw DomainError("kashaev_inverse_closed: expects an arity-2 operator");
  const std::size_t n = static_cast<std::size_t>(r_kashaev.dim());
  auto neg = [n](std::size_t x) { return (n - x) % n; };
  Triplets<Real> t;
  for (const auto& e : r_kashaev.triplets()) {
    const std::size_t a = e.in / n, b = e.in % n, c = e.out / n, d = e.out % n;
    t.push_back({neg(b) * n + neg(a), neg(d) * n + neg(c), std::conj(e.value)});
  }
  return Operator<Real>(2, r_kashaev.dim(), std::move(t));
}

template <class Real>
double translation_defect(const Operator<Real>& r) {
  if (r.arity() != 2) throw DomainError("translation_defect: expects an arity-2 operator");
  const std::size_t n = static_cast<std::size_t>(r.dim());
  auto shift = [n](std::size_t idx) { return ((idx / n + 1) % n) * n + (idx % n + 1) % n; };
  double defect = 0.0;
  for (const auto& e : r.triplets()) {
    defect = std::max(defect, static_cast<double>(std::abs(r.at(shift(e.in), shift(e.out)) - e.value)));
  }
  // Entries absent here but present after the shift are caught from the other side.
  for (const auto& e : r.triplets()) {
    std::size_t in = e.in, out = e.out;
    for (std::size_t k = 1; k < n; ++k) {
      in = shift(in);
      out = shift(out);
    }
    defect = std::max(defect, static_cast<double>(std::abs(r.at(in, out) - e.value)));
  }
  return defect;
}

template <class Real>
Operator<Real> invert_translation_invariant(const RootSystem<Real>& sys, const Operator<Real>& r) {
  const int n = sys.n();
  if (r.arity() != 2 || r.dim() != n) throw DomainError("invert_translation_invariant: shape mismatch");
  const double defect = translation_defect(r);
  if (defect > 1e-9 * std::max(1.0, r.max_abs())) {
    throw IntegrityError("invert_translation_invariant: operator is not invariant under the diagonal shift");
  }
  const auto nn = static_cast<std::size_t>(n);
  const auto en = static_cast<Eigen::Index>(n);
  // Blocks B_p[r'][r] = sum_u R(0, r -> u, u + r') q^{-pu} act on the momentum-p
  // vectors sum_t q^{pt} |t, t + r>.
  std::vector<DenseMatrix<Real>> inverse_blocks;
  inverse_blocks.reserve(nn);
  for (int p = 0; p < n; ++p) {
    DenseMatrix<Real> block = DenseMatrix<Real>::Zero(en, en);
    for (std::size_t rel = 0; rel < nn; ++rel) {
      for (const auto& e : r.column(rel)) {
        const std::size_t u = e.index / nn;
        const std::size_t rel_out = (e.index % nn + nn - u) % nn;
        block(static_cast<Eigen::Index>(rel_out), static_cast<Eigen::Index>(rel)) +=
            e.value * sys.spow(-2LL * p * static_cast<std::int64_t>(u));
      }
    }
    Eigen::FullPivLU<DenseMatrix<Real>> lu(block);
    DenseMatrix<Real> inv = lu.inverse();
    const DenseMatrix<Real> residual = block * inv - DenseMatrix<Real>::Identity(en, en);
    const Real worst = residual.cwiseAbs().maxCoeff();
    if (!(worst <= Real(1e-6))) {
      throw NumericError("invert_translation_invariant: momentum block " + std::to_string(p) +
                         " is numerically singular at this precision (residual " +
                         std::to_string(static_cast<double>(worst)) + "); use extended precision");
    }
    inverse_blocks.push_back(std::move(inv));
  }
  Triplets<Real> base;
  for (std::size_t rel = 0; rel < nn; ++rel) {
    for (std::size_t u = 0; u < nn; ++u) {
      for (std::size_t rel_out = 0; rel_out < nn; ++rel_out) {
        Complex<Real> v(0);
        for (int p = 0; p < n; ++p) {
          v += sys.spow(2LL * p * static_cast<std::int64_t>(u)) *
               inverse_blocks[static_cast<std::size_t>(p)](static_cast<Eigen::Index>(rel_out),
                                                           static_cast<Eigen::Index>(rel));
        }
        base.push_back({rel, u * nn + (u + rel_out) % nn, v / static_cast<Real>(n)});
      }
    }
  }
  Triplets<Real> t;
  t.reserve(base.size() * nn);
  for (std::size_t shift = 0; shift < nn; ++shift) {
    for (const auto& e : base) {
      const std::size_t in = shift * nn + (e.in % nn + shift) % nn;
      const std::size_t out = ((e.out / nn + shift) % nn) * nn + (e.out % nn + shift) % nn;
      t.push_back({in, out, e.value});
    }
  }
  return drop_noise(Operator<Real>(2, n, std::move(t)));
}

namespace {

// Applies a two-strand operator at strands (pos, pos+1) of a 3-strand state.
template <class Real>
void apply_pair3(const Operator<Real>& r, int pos, const Wavefront<Real>& src, Wavefront<Real>& dst) {
  const std::size_t n = static_cast<std::size_t>(r.dim());
  for (const auto idx : src.touched()) {
    const auto v = src.at(idx);
    if (v == Complex<Real>(0)) continue;
    const std::size_t a = idx / (n * n), b = (idx / n) % n, c = idx % n;
    if (pos == 0) {
      for (const auto& e : r.column(a * n + b)) dst.add(e.index * n + c, v * e.value);
    } else {
      for (const auto& e : r.column(b * n + c)) dst.add(a * n * n + e.index, v * e.value);
    }
  }
}

}  // namespace

template <class Real>
CheckReport check_ybe(const Operator<Real>& r, const Tolerance& tol) {
  if (r.arity() != 2) throw DomainError("check_ybe: expects an arity-2 operator");
  const std::size_t n = static_cast<std::size_t>(r.dim());
  const std::size_t extent = n * n * n;
  Wavefront<Real> x(extent), y(extent), lhs(extent), rhs(extent);
  double deviation = 0.0, magnitude = 0.0;
  for (std::size_t basis = 0; basis < extent; ++basis) {
    // (R (x) id)(id (x) R)(R (x) id): left factor applied first.
    x.add(basis, Complex<Real>(1));
    apply_pair3(r, 0, x, y);
    x.clear();
    apply_pair3(r, 1, y, x);
    y.clear();
    apply_pair3(r, 0, x, lhs);
    x.clear();

    x.add(basis, Complex<Real>(1));
    apply_pair3(r, 1, x, y);
    x.clear();
    apply_pair3(r, 0, y, x);
    y.clear();
    apply_pair3(r, 1, x, rhs);
    x.clear();

    for (const auto idx : lhs.touched()) {
      magnitude = std::max(magnitude, static_cast<double>(std::abs(lhs.at(idx))));
      deviation = std::max(deviation, static_cast<double>(std::abs(lhs.at(idx) - rhs.at(idx))));
    }
    for (const auto idx : rhs.touched()) {
      deviation = std::max(deviation, static_cast<double>(std::abs(lhs.at(idx) - rhs.at(idx))));
    }
    lhs.clear();
    rhs.clear();
  }
  return make_report<Real>("ybe", r.dim(), deviation, magnitude, static_cast<double>(extent), tol);
}

template <class Real>
std::vector<CheckReport> check_gauge_through(const RootSystem<Real>& sys, const Operator<Real>& r_jones,
                                             const Tolerance& tol) {
  const int n = sys.n();
  const auto id = Operator<Real>::identity(1, n);
  const auto d = build_D(sys, 1);
  const auto d_inv = build_D(sys, -1);
  const double magnitude = r_jones.max_abs();
  const double dim = static_cast<double>(n) * n;

  const auto lhs = id.tensor(d).then(r_jones).then(id.tensor(d_inv));
  const auto rhs = d_inv.tensor(id).then(r_jones).then(d.tensor(id));
  const auto dd = d.tensor(d);
  const auto commute_l = dd.then(r_jones);
  const auto commute_r = r_jones.then(dd);
  return {make_report<Real>("gauge-through", n, max_abs_diff(lhs, rhs), magnitude, dim, tol),
          make_report<Real>("gauge-through-dd", n, max_abs_diff(commute_l, commute_r), magnitude, dim, tol)};
}

template <class Real>
CheckReport check_mu_conjugation(const RootSystem<Real>& sys, const Tolerance& tol) {
  const int n = sys.n();
  const auto conjugated = build_W(sys)
                              .then(build_D(sys, 1))
                              .then(build_mu(sys, OperatorKind::Jones))
                              .then(build_D(sys, -1))
                              .then(build_W_inverse(sys));
  const auto mu_k = build_mu(sys, OperatorKind::Kashaev);
  return make_report<Real>("mu-conjugation", n, max_abs_diff(conjugated, mu_k), mu_k.max_abs(), n, tol);
}

template <class Real>
std::vector<CheckReport> constant_identity_check(const RootSystem<Real>& sys, const Tolerance& tol) {
  const int n = sys.n();
  const auto target = gauge_constant(sys);
  double ratio_dev = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const auto ratio = rho_prefactor(sys, a, b, c, d) / lambda_prefactor(sys, a, b, c, d);
          ratio_dev = std::max(ratio_dev, static_cast<double>(std::abs(ratio - target)));
        }
  // (-1)^N s^{(N-3)/2} ((s-s^-1)^{N-1} [N-1]! / N)^3
  const auto inner = ipow(sys.s_minus_inv(), n - 1) * qfact(sys, n - 1) / static_cast<Real>(n);
  const auto intermediate = sign_of<Real>(n) * sys.spow_half(n - 3) * inner * inner * inner;
  const double intermediate_dev = static_cast<double>(std::abs(intermediate - target));
  const auto sine = sine_product_check(sys, tol);

  std::vector<CheckReport> out;
  out.push_back(make_report<Real>("rho-over-lambda", n, ratio_dev, 1.0, 1.0, tol));
  out.push_back(make_report<Real>("rho-over-lambda-closed", n, intermediate_dev, 1.0, 1.0, tol));
  CheckReport s;
  s.name = "sine-product";
  s.n = n;
  s.max_deviation = sine.max_deviation;
  s.threshold = sine.threshold;
  s.magnitude = n;
  s.pass = sine.pass;
  out.push_back(s);
  return out;
}

template <class Real>
Complex<Real> enhancement_alpha(const RootSystem<Real>& sys, OperatorKind kind) {
  const std::int64_t n = sys.n();
  return kind == OperatorKind::Jones ? sys.spow_half(n * n - 1) : -sys.s();
}

namespace {

// Largest entry of (b after a) - id over a set of input columns: all of them up
// to N = 32, beyond that an evenly strided sample of about 8N columns.
template <class Real>
double inverse_defect(const Operator<Real>& a, const Operator<Real>& b) {
  const std::size_t extent = a.extent();
  const std::size_t n = static_cast<std::size_t>(a.dim());
  const std::size_t step = extent <= 1024 ? 1 : std::max<std::size_t>(1, extent / (8 * n));
  Wavefront<Real> acc(extent);
  double worst = 0.0;
  for (std::size_t in = 0; in < extent; in += step) {
    for (const auto& mid : a.column(in)) {
      for (const auto& e : b.column(mid.index)) acc.add(e.index, mid.value * e.value);
    }
    bool diagonal_seen = false;
    for (const auto idx : acc.touched()) {
      const auto expected = idx == in ? Complex<Real>(1) : Complex<Real>(0);
      diagonal_seen = diagonal_seen || idx == in;
      worst = std::max(worst, static_cast<double>(std::abs(acc.at(idx) - expected)));
    }
    if (!diagonal_seen) worst = std::max(worst, 1.0);
    acc.clear();
  }
  return worst;
}

}  // namespace

template <class Real>
std::vector<CheckReport> check_enhancement(const Operator<Real>& r, const Operator<Real>& r_inverse,
                                           const Operator<Real>& mu, Complex<Real> alpha, Complex<Real> beta,
                                           const Tolerance& tol) {
  const int n = r.dim();
  const double dim = static_cast<double>(n) * n;
  const double inverse_scale = r.max_abs() * r_inverse.max_abs();

  std::vector<CheckReport> out;
  const double inv_dev = std::max(inverse_defect(r, r_inverse), inverse_defect(r_inverse, r));
  out.push_back(make_report<Real>("inverse", n, inv_dev, inverse_scale, dim, tol));

  const auto mm = mu.tensor(mu);
  out.push_back(make_report<Real>("mu-commutation", n, max_abs_diff(mm.then(r), r.then(mm)),
                                  r.max_abs() * mu.max_abs() * mu.max_abs(), dim, tol));

  const auto id_mu = Operator<Real>::identity(1, n).tensor(mu);
  const auto id1 = Operator<Real>::identity(1, n);
  const auto trace_plus = partial_trace_last(r.then(id_mu));
  const auto trace_minus = partial_trace_last(r_inverse.then(id_mu));
  out.push_back(make_report<Real>("trace-plus", n, max_abs_diff(trace_plus, id1.scaled(alpha * beta)),
                                  r.max_abs(), dim, tol));
  out.push_back(make_report<Real>("trace-minus", n,
                                  max_abs_diff(trace_minus, id1.scaled(beta / alpha)), r_inverse.max_abs(), dim,
                                  tol));
  return out;
}

template <class Real>
EnhancedYB<Real> make_enhanced(std::shared_ptr<const RootSystem<Real>> sys, OperatorKind kind,
                               const Tolerance& tol) {
  if (!sys) throw DomainError("make_enhanced: null root system");
  EnhancedYB<Real> s;
  s.system = sys;
  s.kind = kind;
  if (kind == OperatorKind::Jones) {
    s.r = build_R_jones(*sys);
    s.r_inverse = invert_by_charge_sectors(s.r, 0);
  } else {
    s.r = build_R_kashaev(*sys, KashaevMode::Formula);
    s.r_inverse = kashaev_inverse_closed(s.r);
  }
  s.mu = build_mu(*sys, kind);
  s.alpha = enhancement_alpha(*sys, kind);
  s.beta = Complex<Real>(1);
  s.axioms = check_enhancement(s.r, s.r_inverse, s.mu, s.alpha, s.beta, tol);
  for (const auto& axiom : s.axioms) {
    if (!axiom.pass) {
      throw IntegrityError("enhanced Yang-Baxter axiom '" + axiom.name + "' failed for " +
                           std::string(to_string(kind)) + " at N=" + std::to_string(sys->n()) +
                           ": deviation " + std::to_string(axiom.max_deviation) + " > " +
                           std::to_string(axiom.threshold));
    }
  }
  return s;
}

#define QJK_INSTANTIATE(Real)                                                                             \
  template Operator<Real> build_R_jones(const RootSystem<Real>&);                                         \
  template Operator<Real> build_W(const RootSystem<Real>&);                                               \
  template Operator<Real> build_W_inverse(const RootSystem<Real>&);                                       \
  template Operator<Real> build_D(const RootSystem<Real>&, int);                                          \
  template Operator<Real> conjugate_gauge(const RootSystem<Real>&, const Operator<Real>&);                \
  template Operator<Real> conjugate_gauge_explicit(const RootSystem<Real>&, const Operator<Real>&);       \
  template Operator<Real> closed_form_tilde(const RootSystem<Real>&);                                     \
  template Complex<Real> rho_prefactor(const RootSystem<Real>&, int, int, int, int);                      \
  template Complex<Real> lambda_prefactor(const RootSystem<Real>&, int, int, int, int, bool);             \
  template double translation_defect(const Operator<Real>&);                                              \
  template Operator<Real> invert_translation_invariant(const RootSystem<Real>&, const Operator<Real>&);   \
  template Operator<Real> build_R_kashaev(const RootSystem<Real>&, KashaevMode);                          \
  template Operator<Real> build_mu(const RootSystem<Real>&, OperatorKind);                                \
  template Complex<Real> gauge_constant(const RootSystem<Real>&);                                         \
  template Operator<Real> invert_by_charge_sectors(const Operator<Real>&, int);                           \
  template Operator<Real> kashaev_inverse_from_jones(const RootSystem<Real>&, const Operator<Real>&);     \
  template Operator<Real> kashaev_inverse_closed(const Operator<Real>&);                                  \
  template CheckReport check_ybe(const Operator<Real>&, const Tolerance&);                                \
  template std::vector<CheckReport> check_gauge_through(const RootSystem<Real>&, const Operator<Real>&,   \
                                                        const Tolerance&);                                \
  template std::vector<CheckReport> constant_identity_check(const RootSystem<Real>&, const Tolerance&);   \
  template CheckReport check_mu_conjugation(const RootSystem<Real>&, const Tolerance&);                   \
  template Complex<Real> enhancement_alpha(const RootSystem<Real>&, OperatorKind);                        \
  template std::vector<CheckReport> check_enhancement(const Operator<Real>&, const Operator<Real>&,       \
                                                      const Operator<Real>&, Complex<Real>, Complex<Real>, \
                                                      const Tolerance&);                                  \
  template EnhancedYB<Real> make_enhanced(std::shared_ptr<const RootSystem<Real>>, OperatorKind,          \
                                          const Tolerance&);

QJK_INSTANTIATE(double)
QJK_INSTANTIATE(long double)

#undef QJK_INSTANTIATE

}  // namespace qjk
