#include "qjk/verify.hpp"

#include <algorithm>
#include <charconv>
#include <memory>

#include "qjk/evaluator.hpp"
#include "qjk/qarith.hpp"
#include "qjk/repns.hpp"
#include "qjk/rmatrix.hpp"

namespace qjk {

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"qarith",      "appendix",      "closed-forms", "equivalence",
                                                 "ybe",         "gauge-through", "mu",           "enhancement",
                                                 "constants",   "repns",         "agreement"};
  return names;
}

std::vector<std::string> parse_check_list(std::string_view text) {
  std::vector<std::string> out;
  auto add = [&out](const std::string& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string name(text.substr(start, comma - start));
    if (name == "all") {
      for (const auto& n : check_names()) add(n);
    } else if (std::find(check_names().begin(), check_names().end(), name) != check_names().end()) {
      add(name);
    } else {
      throw DomainError("unknown check '" + name + "'");
    }
    start = comma + 1;
  }
  if (out.empty()) throw DomainError("no checks selected");
  return out;
}

std::pair<int, int> parse_n_range(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw DomainError("invalid N range '" + std::string(text) + "' (expected N or A..B)");
    }
    return value;
  };
  const auto dots = text.find("..");
  const int lo = parse_int(dots == std::string_view::npos ? text : text.substr(0, dots));
  const int hi = dots == std::string_view::npos ? lo : parse_int(text.substr(dots + 2));
  if (lo < 2 || hi < lo) throw DomainError("invalid N range '" + std::string(text) + "': need 2 <= A <= B");
  return {lo, hi};
}

namespace {

CheckReport report(std::string name, int n, double deviation, double magnitude, double dimension,
                   const Tolerance& tol, std::string detail = {}) {
  CheckReport r;
  r.name = std::move(name);
  r.n = n;
  r.max_deviation = deviation;
  r.magnitude = magnitude;
  r.threshold = tol.threshold(magnitude, dimension);
  r.pass = tol.passes(deviation, magnitude, dimension);
  r.detail = std::move(detail);
  return r;
}

void prefixed(std::vector<CheckReport>& out, const std::string& prefix, std::vector<CheckReport> reports) {
  for (auto& r : reports) {
    r.name = prefix + "/" + r.name;
    out.push_back(std::move(r));
  }
}

template <class Real>
double rel_scale(const Operator<Real>& a, const Operator<Real>& b) {
  return std::max(a.max_abs(), b.max_abs());
}

template <class Real>
std::vector<CheckReport> qarith_checks(const RootSystem<Real>& sys, const Tolerance& tol) {
  const int n = sys.n();
  const auto poch = pochhammer_identities_check(sys, tol);
  const auto sine = sine_product_check(sys, tol);
  CheckReport a;
  a.name = "qarith/pochhammer";
  a.n = n;
  a.max_deviation = poch.max_deviation;
  a.threshold = poch.threshold;
  a.pass = poch.pass;
  CheckReport b;
  b.name = "qarith/sine-product";
  b.n = n;
  b.max_deviation = sine.max_deviation;
  b.threshold = sine.threshold;
  b.pass = sine.pass;
  return {a, b};
}

template <class Real>
std::vector<CheckReport> appendix_checks(const RootSystem<Real>& sys, const Tolerance& tol) {
  const int n = sys.n();
  double s_dev = 0, t_dev = 0, s_mag = 0, t_mag = 0;
  double rec_dev = 0, rec_mag = 0, period_dev = 0;
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int beta = -2 * n; beta <= 2 * n; ++beta) {
      const auto sb = sum_S(sys, alpha, beta, SumMode::Brute);
      const auto sc = sum_S(sys, alpha, beta, SumMode::Closed);
      const auto tb = sum_T(sys, alpha, beta, SumMode::Brute);
      const auto tc = sum_T(sys, alpha, beta, SumMode::Closed);
      s_dev = std::max(s_dev, static_cast<double>(std::abs(sb - sc)));
      t_dev = std::max(t_dev, static_cast<double>(std::abs(tb - tc)));
      s_mag = std::max(s_mag, static_cast<double>(std::abs(sc)));
      t_mag = std::max(t_mag, static_cast<double>(std::abs(tc)));
      period_dev = std::max(period_dev,
                            static_cast<double>(std::abs(sb - sum_S(sys, alpha, beta + 2 * n, SumMode::Brute))));
      if (alpha >= 1) {
        const auto lhs = sum_S(sys, alpha - 1, beta + 1, SumMode::Brute);
        const auto rhs = (Complex<Real>(1) - sys.spow(beta - alpha)) * sb;
        rec_dev = std::max(rec_dev, static_cast<double>(std::abs(lhs - rhs)));
        rec_mag = std::max(rec_mag, static_cast<double>(std::abs(lhs)));
      }
    }
  }
  double pascal_dev = 0, pascal_mag = 0;
  for (int alpha = 1; alpha < n; ++alpha) {
    for (int i = 1; alpha + i <= n - 1; ++i) {
      const auto lhs = qbinom(sys, alpha + i, i);
      const auto rhs = sys.spow(-alpha) * qbinom(sys, alpha + i - 1, i - 1) + sys.spow(i) * qbinom(sys, alpha + i - 1, i);
      pascal_dev = std::max(pascal_dev, static_cast<double>(std::abs(lhs - rhs)));
      pascal_mag = std::max(pascal_mag, static_cast<double>(std::abs(lhs)));
    }
  }
  return {report("appendix/S-brute-vs-closed", n, s_dev, s_mag, 1, tol),
          report("appendix/T-brute-vs-closed", n, t_dev, t_mag, 1, tol),
          report("appendix/S-recursion", n, rec_dev, rec_mag, 1, tol),
          report("appendix/S-periodicity", n, period_dev, s_mag, 1, tol),
          report("appendix/q-pascal", n, pascal_dev, pascal_mag, 1, tol)};
}

template <class Real>
std::vector<CheckReport> closed_form_checks(const RootSystem<Real>& sys, const Tolerance& tol) {
  const int n = sys.n();
  const double dim = static_cast<double>(n) * n;
  const auto tilde = conjugate_gauge(sys, build_R_jones(sys));
  const auto tilde_closed = closed_form_tilde(sys);
  const auto formula = build_R_kashaev(sys, KashaevMode::Formula);
  const auto closed = build_R_kashaev(sys, KashaevMode::Closed);
  return {report("closed-forms/jones-conjugated", n, max_abs_diff(tilde, tilde_closed), rel_scale(tilde, tilde_closed),
                 dim, tol),
          report("closed-forms/kashaev", n, max_abs_diff(formula, closed), rel_scale(formula, closed), dim, tol)};
}

template <class Real>
std::vector<CheckReport> equivalence_checks(const RootSystem<Real>& sys, const Tolerance& tol) {
  const int n = sys.n();
  const double dim = static_cast<double>(n) * n;
  const auto rj = build_R_jones(sys);
  const auto rk = build_R_kashaev(sys, KashaevMode::Formula);
  const auto gauged = conjugate_gauge(sys, rj).scaled(Complex<Real>(1) / gauge_constant(sys));
  std::vector<CheckReport> out{report("equivalence/gauge", n, max_abs_diff(rk, gauged), rel_scale(rk, gauged), dim, tol)};
  // The explicit Kronecker path is O(N^8); only run it where that is cheap.
  if (n <= 8) {
    const auto explicit_path = conjugate_gauge_explicit(sys, rj).scaled(Complex<Real>(1) / gauge_constant(sys));
    out.push_back(report("equivalence/gauge-explicit", n, max_abs_diff(rk, explicit_path),
                         rel_scale(rk, explicit_path), dim, tol));
  }
  return out;
}

template <class Real>
std::vector<CheckReport> enhancement_checks(const RootSystem<Real>& sys, const Tolerance& tol) {
  std::vector<CheckReport> out;
  for (const auto kind : {OperatorKind::Jones, OperatorKind::Kashaev}) {
    const auto r = kind == OperatorKind::Jones ? build_R_jones(sys) : build_R_kashaev(sys, KashaevMode::Formula);
    const auto r_inv = kind == OperatorKind::Jones ? invert_by_charge_sectors(r, 0) : kashaev_inverse_closed(r);
    prefixed(out, "enhancement/" + std::string(to_string(kind)),
             check_enhancement(r, r_inv, build_mu(sys, kind), enhancement_alpha(sys, kind), Complex<Real>(1), tol));
  }
  return out;
}

template <class Real>
std::vector<CheckReport> repns_checks(const RootSystem<Real>& sys, const Tolerance& tol) {
  std::vector<CheckReport> out;
  prefixed(out, "repns/E", relations_check(sys, build_E(sys), tol));
  const Real p = static_cast<Real>(sys.n() - 1) / 2;
  prefixed(out, "repns/F", relations_check(sys, build_F(sys, p), tol));
  auto cartan = cartan_check(sys, p, tol);
  cartan.name = "repns/cartan";
  out.push_back(cartan);
  return out;
}

template <class Real>
std::vector<CheckReport> agreement_checks(std::shared_ptr<const RootSystem<Real>> sys, const VerifyOptions& options) {
  const int n = sys->n();
  const auto jones = make_enhanced(sys, OperatorKind::Jones, options.tol);
  const auto kashaev = make_enhanced(sys, OperatorKind::Kashaev, options.tol);
  const auto corpus = options.corpus.empty() ? load_knot_table(default_knot_table_path()) : options.corpus;
  EvalOptions eval;
  eval.threads = options.threads;
  eval.tol = options.tol;
  eval.enforce_scalar = false;
  std::vector<CheckReport> out;
  for (const auto& entry : corpus) {
    const auto j = one_one_invariant(jones, entry.word, eval);
    const auto k = one_one_invariant(kashaev, entry.word, eval);
    const double magnitude = static_cast<double>(std::abs(j.scalar));
    out.push_back(report("agreement/" + entry.name, n, static_cast<double>(std::abs(j.scalar - k.scalar)),
                         magnitude, 1, options.tol, j.word));
    for (const auto* v : {&j, &k}) {
      out.push_back(report("agreement/" + entry.name + "/scalarness-" + std::string(to_string(v->kind)), n,
                           v->scalarness_deviation, 1.0, n, options.tol, j.word));
    }
  }
  return out;
}

template <class Real>
std::vector<CheckReport> run_typed(std::string_view name, int n, const VerifyOptions& options) {
  auto sys = std::make_shared<const RootSystem<Real>>(n);
  const auto& tol = options.tol;
  if (name == "qarith") return qarith_checks(*sys, tol);
  if (name == "appendix") return appendix_checks(*sys, tol);
  if (name == "closed-forms") return closed_form_checks(*sys, tol);
  if (name == "equivalence") return equivalence_checks(*sys, tol);
  if (name == "ybe") {
    auto jones = check_ybe(build_R_jones(*sys), tol);
    auto kashaev = check_ybe(build_R_kashaev(*sys, KashaevMode::Formula), tol);
    jones.name = "ybe/jones";
    kashaev.name = "ybe/kashaev";
    return {jones, kashaev};
  }
  if (name == "gauge-through") {
    std::vector<CheckReport> out;
    prefixed(out, "gauge-through", check_gauge_through(*sys, build_R_jones(*sys), tol));
    return out;
  }
  if (name == "mu") {
    auto r = check_mu_conjugation(*sys, tol);
    r.name = "mu/conjugation";
    return {r};
  }
  if (name == "enhancement") return enhancement_checks(*sys, tol);
  if (name == "constants") {
    std::vector<CheckReport> out;
    prefixed(out, "constants", constant_identity_check(*sys, tol));
    return out;
  }
  if (name == "repns") return repns_checks(*sys, tol);
  if (name == "agreement") return agreement_checks(sys, options);
  throw DomainError("unknown check '" + std::string(name) + "'");
}

}  // namespace

std::vector<CheckReport> run_check(std::string_view name, int n, const VerifyOptions& options) {
  if (n < 2) throw DomainError("N must be at least 2");
  return options.precision == Precision::Double ? run_typed<double>(name, n, options)
                                                : run_typed<long double>(name, n, options);
}

std::vector<CheckReport> verify_suite(const std::vector<std::string>& checks, int n_min, int n_max,
                                      const VerifyOptions& options) {
  if (n_min < 2 || n_max < n_min) throw DomainError("invalid N range: need 2 <= A <= B");
  std::vector<CheckReport> out;
  for (const auto& name : checks) {
    for (int n = n_min; n <= n_max; ++n) {
      auto part = run_check(name, n, options);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }
  return out;
}

}  // namespace qjk
