#include "qjk/repns.hpp"

#include <algorithm>
#include <cmath>

namespace qjk {

namespace {

template <class Real>
using Triplets = std::vector<typename Operator<Real>::Triplet>;

// [x] for real x: sin(pi x / N) / sin(pi / N).
template <class Real>
Real qreal(const RootSystem<Real>& sys, Real x) {
  const Real pi = std::acos(Real(-1));
  const Real n = static_cast<Real>(sys.n());
  return std::sin(pi * x / n) / std::sin(pi / n);
}

template <class Real>
Real principal_sqrt(Real radicand) {
  if (radicand < Real(-1e-12)) {
    throw DomainError("build_F: negative radicand " + std::to_string(static_cast<double>(radicand)));
  }
  return std::sqrt(std::max(radicand, Real(0)));
}

template <class Real>
CheckReport make_report(std::string name, int n, double deviation, double magnitude, const Tolerance& tol) {
  CheckReport r;
  r.name = std::move(name);
  r.n = n;
  r.max_deviation = deviation;
  r.magnitude = magnitude;
  r.threshold = tol.threshold(magnitude, n);
  r.pass = tol.passes(deviation, magnitude, n);
  return r;
}

}  // namespace

template <class Real>
RepTriple<Real> build_E(const RootSystem<Real>& sys) {
  const int n = sys.n();
  Triplets<Real> x, y, k;
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (i + 1 < n) x.push_back({ui, ui + 1, qint(sys, i + 1)});
    if (i > 0) y.push_back({ui, ui - 1, qint(sys, i)});
    k.push_back({ui, ui, sys.spow_half(2 * i - n + 1)});
  }
  return {Operator<Real>(1, n, std::move(x)), Operator<Real>(1, n, std::move(y)), Operator<Real>(1, n, std::move(k)),
          "E", std::nullopt};
}

template <class Real>
RepTriple<Real> build_F(const RootSystem<Real>& sys, Real p) {
  const int n = sys.n();
  Triplets<Real> x, y, k;
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const Real rx = principal_sqrt(qreal(sys, 2 * p - i + 1) * qreal(sys, Real(i)));
    const Real ry = principal_sqrt(qreal(sys, 2 * p - i) * qreal(sys, Real(i + 1)));
    if (i > 0) x.push_back({ui, ui - 1, Complex<Real>(rx)});
    if (i + 1 < n) y.push_back({ui, ui + 1, Complex<Real>(ry)});
    k.push_back({ui, ui, sys.spow_real(p - i)});
  }
  return {Operator<Real>(1, n, std::move(x)), Operator<Real>(1, n, std::move(y)), Operator<Real>(1, n, std::move(k)),
          "F", static_cast<double>(p)};
}

template <class Real>
std::vector<CheckReport> relations_check(const RootSystem<Real>& sys, const RepTriple<Real>& rep,
                                         const Tolerance& tol) {
  const int n = sys.n();
  const auto k_inv = cartan_transform(rep).k;
  const double magnitude = std::max({rep.x.max_abs(), rep.y.max_abs(), rep.k.max_abs()});

  // Products written here as dense compositions: AB means apply B then A.
  auto compose = [](const Operator<Real>& a, const Operator<Real>& b) { return b.then(a); };
  const auto kx = compose(rep.k, rep.x);
  const auto xk = compose(rep.x, rep.k).scaled(sys.s());
  const auto ky = compose(rep.k, rep.y);
  const auto yk = compose(rep.y, rep.k).scaled(Complex<Real>(1) / sys.s());

  auto commutator = [&] {
    auto t = compose(rep.x, rep.y).triplets();
    for (auto e : compose(rep.y, rep.x).triplets()) {
      e.value = -e.value;
      t.push_back(e);
    }
    return Operator<Real>(1, n, std::move(t));
  }();
  auto cartan = [&] {
    auto t = compose(rep.k, rep.k).triplets();
    for (auto e : compose(k_inv, k_inv).triplets()) {
      e.value = -e.value;
      t.push_back(e);
    }
    return Operator<Real>(1, n, std::move(t)).scaled(Complex<Real>(1) / sys.s_minus_inv());
  }();

  return {make_report<Real>("KX=sXK", n, max_abs_diff(kx, xk), magnitude, tol),
          make_report<Real>("KY=s^-1YK", n, max_abs_diff(ky, yk), magnitude, tol),
          make_report<Real>("XY-YX", n, max_abs_diff(commutator, cartan), magnitude * magnitude, tol)};
}

template <class Real>
RepTriple<Real> cartan_transform(const RepTriple<Real>& rep) {
  Triplets<Real> k;
  for (const auto& e : rep.k.triplets()) {
    if (e.in != e.out) throw DomainError("cartan_transform: K must be diagonal");
    k.push_back({e.in, e.out, Complex<Real>(1) / e.value});
  }
  if (k.size() != rep.k.extent()) throw DomainError("cartan_transform: K is singular");
  return {rep.y, rep.x, Operator<Real>(1, rep.k.dim(), std::move(k)), rep.label + "^cartan", rep.p};
}

template <class Real>
CheckReport cartan_check(const RootSystem<Real>& sys, Real p, const Tolerance& tol) {
  const auto e = build_E(sys);
  const auto f = cartan_transform(build_F(sys, p));
  const double deviation = std::max({max_abs_diff(f.x, e.x), max_abs_diff(f.y, e.y), max_abs_diff(f.k, e.k)});
  const double magnitude = std::max({e.x.max_abs(), e.y.max_abs(), e.k.max_abs()});
  auto report = make_report<Real>("cartan", sys.n(), deviation, magnitude, tol);
  report.detail = "p=" + std::to_string(static_cast<double>(p));
  return report;
}

#define QJK_INSTANTIATE(Real)                                                                             \
  template RepTriple<Real> build_E(const RootSystem<Real>&);                                              \
  template RepTriple<Real> build_F(const RootSystem<Real>&, Real);                                        \
  template std::vector<CheckReport> relations_check(const RootSystem<Real>&, const RepTriple<Real>&,      \
                                                    const Tolerance&);                                    \
  template RepTriple<Real> cartan_transform(const RepTriple<Real>&);                                      \
  template CheckReport cartan_check(const RootSystem<Real>&, Real, const Tolerance&);

QJK_INSTANTIATE(double)
QJK_INSTANTIATE(long double)

}  // namespace qjk
