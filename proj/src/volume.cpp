#include "qjk/volume.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

namespace qjk {

std::string_view to_string(FitModel model) { return model == FitModel::Plain ? "plain" : "corrected"; }

FitModel parse_fit_model(std::string_view text) {
  if (text == "plain") return FitModel::Plain;
  if (text == "corrected") return FitModel::Corrected;
  throw DomainError("unknown fit model '" + std::string(text) + "' (expected plain or corrected)");
}

Precision precision_for(int n, const GrowthOptions& options) {
  if (options.precision) return *options.precision;
  return n > kDoublePrecisionMaxN ? Precision::Extended : Precision::Double;
}

namespace {

struct Evaluation {
  double abs_j = 0.0;
  double other_abs_j = -1.0;  // negative when no cross check ran
};

template <class Real>
std::vector<Evaluation> evaluate_at(int n, const std::vector<KnotEntry>& entries, bool cross_check,
                                    const GrowthOptions& options) {
  auto sys = std::make_shared<const RootSystem<Real>>(n);
  EvalOptions eval;
  eval.threads = options.threads;
  eval.inputs = options.inputs;
  eval.tol = options.tol;
  std::vector<Evaluation> out(entries.size());
  {
    const auto s = make_enhanced(sys, options.kind, options.tol);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      out[k].abs_j = static_cast<double>(std::abs(one_one_invariant(s, entries[k].word, eval).scalar));
    }
  }
  if (cross_check) {
    const auto other_kind = options.kind == OperatorKind::Jones ? OperatorKind::Kashaev : OperatorKind::Jones;
    const auto s = make_enhanced(sys, other_kind, options.tol);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      out[k].other_abs_j = static_cast<double>(std::abs(one_one_invariant(s, entries[k].word, eval).scalar));
    }
  }
  return out;
}

}  // namespace

std::vector<GrowthSeries> growth_sequences(const std::vector<KnotEntry>& entries, int n_min, int n_max,
                                           const GrowthOptions& options) {
  if (n_min < 2 || n_max < n_min) {
    throw DomainError("growth range must satisfy 2 <= n_min <= n_max (got " + std::to_string(n_min) + ".." +
                      std::to_string(n_max) + ")");
  }
  std::vector<GrowthSeries> series(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (closure_components(entries[k].word) != 1) {
      throw DomainError("'" + entries[k].name + "' closes to a link, not a knot");
    }
    series[k].knot = entries[k].name;
    series[k].kind = options.kind;
    series[k].reference_volume = entries[k].reference_volume;
  }

  std::vector<int> spot;
  if (options.cross_check_max_n >= n_min) {
    spot.push_back(n_min);
    spot.push_back(std::min(n_max, options.cross_check_max_n));
  }

  for (int n = n_min; n <= n_max; ++n) {
    const bool cross = std::find(spot.begin(), spot.end(), n) != spot.end();
    const Precision precision = precision_for(n, options);
    const auto values = precision == Precision::Double ? evaluate_at<double>(n, entries, cross, options)
                                                       : evaluate_at<long double>(n, entries, cross, options);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const double abs_j = values[k].abs_j;
      if (!(abs_j > options.tol.threshold(1.0, n))) {
        throw NumericError("|J_" + std::to_string(n) + "(" + entries[k].name +
                           ")| vanishes; the input is a split link or the contraction collapsed");
      }
      series[k].points.push_back({n, abs_j, 2.0 * std::numbers::pi * std::log(abs_j) / n, precision});
      if (values[k].other_abs_j >= 0.0) {
        CheckReport r;
        r.name = "cross-check";
        r.n = n;
        r.magnitude = abs_j;
        r.max_deviation = std::abs(values[k].other_abs_j - abs_j) / abs_j;
        r.threshold = options.tol.threshold(1.0, n);
        r.pass = options.tol.passes(r.max_deviation, 1.0, n);
        r.detail = entries[k].name;
        if (!r.pass) {
          throw IntegrityError("Jones and Kashaev disagree on |J_" + std::to_string(n) + "(" + entries[k].name +
                               ")|: relative deviation " + std::to_string(r.max_deviation));
        }
        series[k].cross_checks.push_back(r);
      }
    }
  }
  return series;
}

GrowthSeries growth_sequence(const KnotEntry& entry, int n_min, int n_max, const GrowthOptions& options) {
  return std::move(growth_sequences({entry}, n_min, n_max, options).front());
}

FitResult fit_limit(const GrowthSeries& series, FitModel model, std::optional<int> n_lo, std::optional<int> n_hi) {
  std::vector<GrowthPoint> pts;
  for (const auto& p : series.points) {
    if ((!n_lo || p.n >= *n_lo) && (!n_hi || p.n <= *n_hi)) pts.push_back(p);
  }
  if (pts.size() < 5) {
    throw DomainError("fit_limit needs at least 5 points, got " + std::to_string(pts.size()));
  }
  FitResult fit;
  fit.model = model;
  fit.points = static_cast<int>(pts.size());
  fit.n_min = pts.front().n;
  fit.n_max = pts.front().n;
  for (const auto& p : pts) {
    fit.n_min = std::min(fit.n_min, p.n);
    fit.n_max = std::max(fit.n_max, p.n);
  }
  if (model == FitModel::Plain) {
    const auto last = std::max_element(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    fit.limit = last->v;
    return fit;
  }

  const auto m = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd a(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double n = pts[static_cast<std::size_t>(r)].n;
    a(r, 0) = 1.0;
    a(r, 1) = std::log(n) / n;
    a(r, 2) = 1.0 / n;
    y(r) = pts[static_cast<std::size_t>(r)].v;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw NumericError("corrected fit is rank deficient (need at least three distinct N)");
  const Eigen::VectorXd coef = qr.solve(y);
  fit.limit = coef(0);
  fit.log_coefficient = coef(1);
  fit.inverse_coefficient = coef(2);
  fit.residual = std::sqrt((a * coef - y).squaredNorm() / static_cast<double>(m));
  return fit;
}

SimplicialReport simplicial_report(const GrowthSeries& series, const std::vector<KnotEntry>& table,
                                   const std::vector<GrowthSeries>& others) {
  auto limit_of = [](const GrowthSeries& s) -> FitResult {
    if (s.fit) return *s.fit;
    if (s.points.size() >= 5) return fit_limit(s, FitModel::Corrected);
    FitResult f;
    f.model = FitModel::Plain;
    if (!s.points.empty()) {
      f.limit = s.points.back().v;
      f.n_min = s.points.front().n;
      f.n_max = s.points.back().n;
      f.points = static_cast<int>(s.points.size());
    }
    return f;
  };

  SimplicialReport report;
  report.knot = series.knot;
  const FitResult fit = limit_of(series);
  report.model = fit.model;
  report.fitted_limit = fit.limit;
  report.v3 = series.v3;
  report.norm_estimate = fit.limit / series.v3;
  report.reference_volume = series.reference_volume;

  const KnotEntry* entry = nullptr;
  for (const auto& e : table) {
    if (e.name == series.knot) entry = &e;
  }
  if (entry && !report.reference_volume) report.reference_volume = entry->reference_volume;
  if (report.reference_volume) {
    report.reference_norm = *report.reference_volume / series.v3;
    report.volume_deviation = std::abs(fit.limit - *report.reference_volume);
  }
  if (!entry || entry->summands.empty()) return report;

  std::vector<const GrowthSeries*> parts;
  for (const auto& name : entry->summands) {
    const auto it = std::find_if(others.begin(), others.end(), [&](const GrowthSeries& s) { return s.knot == name; });
    if (it == others.end()) return report;
    parts.push_back(&*it);
  }
  AdditivityCheck add;
  add.summands = entry->summands;
  for (const auto* part : parts) add.summand_limit_sum += limit_of(*part).limit;
  add.limit_deviation = std::abs(fit.limit - add.summand_limit_sum);

  bool logs_agree = true;
  for (const auto& p : series.points) {
    double sum = 0.0;
    bool everywhere = true;
    for (const auto* part : parts) {
      const auto q = std::find_if(part->points.begin(), part->points.end(), [&](const auto& x) { return x.n == p.n; });
      if (q == part->points.end()) {
        everywhere = false;
        break;
      }
      sum += std::log(q->abs_j);
    }
    if (!everywhere) continue;
    const double whole = std::log(p.abs_j);
    const double dev = std::abs(whole - sum);
    add.max_log_deviation = std::max(add.max_log_deviation, dev);
    logs_agree = logs_agree && Tolerance{}.passes(dev, std::abs(whole), 1.0);
    ++add.common_points;
  }
  add.pass = add.common_points > 0 && logs_agree && add.limit_deviation < kAdditivityTolerance;
  report.additivity = add;
  return report;
}

}  // namespace qjk
