#include "qjk/qjk.h"

#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "json_writer.hpp"
#include "qjk/braid.hpp"
#include "qjk/evaluator.hpp"
#include "qjk/repns.hpp"
#include "qjk/rmatrix.hpp"
#include "qjk/verify.hpp"
#include "qjk/volume.hpp"

struct qjk_braid {
  qjk::BraidWord word;
};

struct qjk_table {
  std::vector<qjk::KnotEntry> entries;
};

struct qjk_enhanced {
  std::optional<qjk::EnhancedYB<double>> d;
  std::optional<qjk::EnhancedYB<long double>> x;
  qjk::Tolerance tol;
};

struct qjk_series {
  std::vector<qjk::KnotEntry> table;
  qjk::GrowthSeries series;
  std::vector<qjk::GrowthSeries> summands;
};

namespace {

using qjk::detail::csv_cell;
using qjk::detail::format_number;
using qjk::detail::JsonWriter;

thread_local std::string g_last_error;

qjk_status status_of(qjk::ErrorKind kind) {
  switch (kind) {
    case qjk::ErrorKind::Domain:
    case qjk::ErrorKind::Usage: return QJK_ERROR_DOMAIN;
    case qjk::ErrorKind::Parse: return QJK_ERROR_PARSE;
    case qjk::ErrorKind::Schema: return QJK_ERROR_SCHEMA;
    case qjk::ErrorKind::Integrity: return QJK_ERROR_INTEGRITY;
    case qjk::ErrorKind::Numeric: return QJK_ERROR_NUMERIC;
    case qjk::ErrorKind::Io: return QJK_ERROR_IO;
  }
  return QJK_ERROR_INTERNAL;
}

template <class F>
qjk_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QJK_OK;
  } catch (const qjk::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QJK_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QJK_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QJK_ERROR_INTERNAL;
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw qjk::DomainError(std::string(what) + " must not be NULL");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qjk::Tolerance tolerance_of(double base) {
  qjk::Tolerance tol;
  if (std::isnan(base)) throw qjk::DomainError("tolerance is NaN");
  if (base > 0.0) tol.base = base;
  return tol;
}

int checked_threads(int threads) {
  if (threads < 1) throw qjk::DomainError("threads must be >= 1 (got " + std::to_string(threads) + ")");
  return threads;
}

void check_n(int n) {
  if (n < 2) throw qjk::DomainError("N must be >= 2 (got " + std::to_string(n) + ")");
}

qjk::Precision precision_of(qjk_precision p) {
  switch (p) {
    case QJK_PRECISION_DOUBLE: return qjk::Precision::Double;
    case QJK_PRECISION_EXTENDED: return qjk::Precision::Extended;
    default: throw qjk::DomainError("precision must be double or extended here");
  }
}

qjk::OperatorKind kind_of(qjk_operator k) {
  switch (k) {
    case QJK_OPERATOR_JONES: return qjk::OperatorKind::Jones;
    case QJK_OPERATOR_KASHAEV: return qjk::OperatorKind::Kashaev;
    default: throw qjk::DomainError("operator must be jones or kashaev here");
  }
}

void check_format(qjk_format f) {
  if (f != QJK_FORMAT_JSON && f != QJK_FORMAT_CSV) throw qjk::DomainError("unknown output format");
}

qjk::EvalOptions eval_options_of(const qjk_eval_options* options) {
  qjk_eval_options o;
  qjk_eval_options_init(&o);
  if (options) o = *options;
  qjk::EvalOptions eval;
  eval.threads = checked_threads(o.threads);
  eval.inputs = o.probe ? qjk::InputSet::Probe : qjk::InputSet::All;
  eval.enforce_scalar = o.enforce_scalar != 0;
  eval.tol = tolerance_of(o.tolerance);
  return eval;
}

template <class Real>
qjk_invariant_value invariant_value(const qjk::EnhancedYB<Real>& s, const qjk::BraidWord& w,
                                    const qjk::EvalOptions& eval) {
  const auto t = qjk::one_one_invariant(s, w, eval);
  qjk_invariant_value v;
  v.re = static_cast<double>(t.scalar.real());
  v.im = static_cast<double>(t.scalar.imag());
  v.scalarness = t.scalarness_deviation;
  v.writhe = t.writhe;
  v.components = t.components;
  v.n = t.n;
  return v;
}

template <class Real>
qjk_invariant_value evaluate_fresh(int n, qjk::OperatorKind kind, const qjk::BraidWord& w,
                                   const qjk::EvalOptions& eval) {
  auto sys = std::make_shared<const qjk::RootSystem<Real>>(n);
  return invariant_value(qjk::make_enhanced(sys, kind, eval.tol), w, eval);
}

void write_report(JsonWriter& j, const qjk::CheckReport& r) {
  j.begin_object()
      .field("name", r.name)
      .field("N", r.n)
      .field("max_deviation", r.max_deviation)
      .field("threshold", r.threshold)
      .field("pass", r.pass);
  if (!r.detail.empty()) j.field("detail", r.detail);
  j.end_object();
}

std::string render_reports(std::string_view command, const std::vector<qjk::CheckReport>& reports,
                           qjk::Precision precision, const qjk::Tolerance& tol, qjk_format format) {
  if (format == QJK_FORMAT_CSV) {
    std::string out = "name,N,max_deviation,threshold,pass\n";
    for (const auto& r : reports) {
      out += csv_cell(r.name) + "," + std::to_string(r.n) + "," + format_number(r.max_deviation) + "," +
             format_number(r.threshold) + "," + (r.pass ? "true" : "false") + "\n";
    }
    return out;
  }
  JsonWriter j;
  j.begin_object()
      .field("command", command)
      .field("precision", qjk::to_string(precision))
      .field("tolerance", tol.base)
      .field("all_pass", qjk::all_pass(reports))
      .key("checks")
      .begin_array();
  for (const auto& r : reports) write_report(j, r);
  j.end_array().end_object();
  return j.str();
}

void write_invariant_fields(JsonWriter& j, const qjk_invariant_value& v) {
  j.key("value").begin_array(true).value(v.re).value(v.im).end_array();
  j.field("scalarness", v.scalarness).field("writhe", v.writhe).field("components", v.components);
}

template <class Real>
void append_dense(const qjk::Operator<Real>& op, std::vector<std::array<double, 2>>& values) {
  const auto m = op.dense();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      values.push_back({static_cast<double>(m(r, c).real()), static_cast<double>(m(r, c).imag())});
    }
  }
}

template <class Real>
std::vector<std::array<double, 2>> rmatrix_values(int n, qjk::OperatorKind kind, bool inverse) {
  const qjk::RootSystem<Real> sys(n);
  std::vector<std::array<double, 2>> values;
  if (kind == qjk::OperatorKind::Jones) {
    const auto r = qjk::build_R_jones(sys);
    append_dense(inverse ? qjk::invert_by_charge_sectors(r, 0) : r, values);
  } else {
    const auto r = qjk::build_R_kashaev(sys);
    append_dense(inverse ? qjk::kashaev_inverse_closed(r) : r, values);
  }
  return values;
}

template <class Real>
std::vector<qjk::CheckReport> rep_reports(int n, double p, const qjk::Tolerance& tol) {
  const qjk::RootSystem<Real> sys(n);
  const Real pp = std::isnan(p) ? static_cast<Real>(n - 1) / 2 : static_cast<Real>(p);
  std::vector<qjk::CheckReport> out;
  auto tag = [&](std::vector<qjk::CheckReport> reports, const std::string& prefix) {
    for (auto& r : reports) {
      r.name = prefix + r.name;
      out.push_back(std::move(r));
    }
  };
  tag(qjk::relations_check(sys, qjk::build_E(sys), tol), "E/");
  tag(qjk::relations_check(sys, qjk::build_F(sys, pp), tol), "F/");
  auto cartan = qjk::cartan_check(sys, pp, tol);
  cartan.name = "cartan";
  out.push_back(std::move(cartan));
  return out;
}

}  // namespace

extern "C" {

const char* qjk_version(void) { return "1.0.0"; }

const char* qjk_status_name(qjk_status status) {
  switch (status) {
    case QJK_OK: return "ok";
    case QJK_ERROR_DOMAIN: return "domain error";
    case QJK_ERROR_PARSE: return "parse error";
    case QJK_ERROR_SCHEMA: return "schema error";
    case QJK_ERROR_INTEGRITY: return "integrity failure";
    case QJK_ERROR_NUMERIC: return "numeric error";
    case QJK_ERROR_IO: return "i/o error";
    case QJK_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qjk_last_error(void) { return g_last_error.c_str(); }

void qjk_string_free(char* text) { std::free(text); }

double qjk_default_tolerance(void) { return qjk::Tolerance{}.base; }

qjk_status qjk_braid_parse(const char* text, qjk_braid** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new qjk_braid{qjk::parse_braid(text)};
  });
}

qjk_status qjk_braid_create(int strands, const int* letters, size_t count, qjk_braid** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(letters, "letters");
    std::vector<int> word(letters, letters + count);
    *out = new qjk_braid{qjk::make_braid(strands, std::move(word))};
  });
}

void qjk_braid_free(qjk_braid* braid) { delete braid; }

qjk_status qjk_braid_info(const qjk_braid* braid, int* strands, size_t* length, int* writhe, int* components) {
  return guarded([&] {
    require(braid, "braid");
    if (strands) *strands = braid->word.strands;
    if (length) *length = braid->word.letters.size();
    if (writhe) *writhe = qjk::writhe(braid->word);
    if (components) *components = qjk::closure_components(braid->word);
  });
}

qjk_status qjk_braid_format(const qjk_braid* braid, char** out) {
  return guarded([&] {
    require(braid, "braid");
    require(out, "out");
    *out = duplicate(qjk::format_braid(braid->word));
  });
}

qjk_status qjk_table_load(const char* path, qjk_table** out) {
  return guarded([&] {
    require(out, "out");
    const std::string where = path ? std::string(path) : qjk::default_knot_table_path();
    *out = new qjk_table{qjk::load_knot_table(where)};
  });
}

void qjk_table_free(qjk_table* table) { delete table; }

size_t qjk_table_size(const qjk_table* table) { return table ? table->entries.size() : 0; }

const char* qjk_table_name(const qjk_table* table, size_t index) {
  if (!table || index >= table->entries.size()) return nullptr;
  return table->entries[index].name.c_str();
}

qjk_status qjk_table_braid(const qjk_table* table, const char* name, qjk_braid** out) {
  return guarded([&] {
    require(table, "table");
    require(name, "name");
    require(out, "out");
    *out = new qjk_braid{qjk::find_knot(table->entries, name).word};
  });
}

qjk_status qjk_table_default_path(char** out) {
  return guarded([&] {
    require(out, "out");
    *out = duplicate(qjk::default_knot_table_path());
  });
}

qjk_status qjk_enhanced_create(int n, qjk_operator kind, qjk_precision precision, double tolerance,
                               qjk_enhanced** out) {
  return guarded([&] {
    require(out, "out");
    check_n(n);
    const auto k = kind_of(kind);
    auto h = std::make_unique<qjk_enhanced>();
    h->tol = tolerance_of(tolerance);
    if (precision_of(precision) == qjk::Precision::Double) {
      h->d = qjk::make_enhanced(std::make_shared<const qjk::RootSystem<double>>(n), k, h->tol);
    } else {
      h->x = qjk::make_enhanced(std::make_shared<const qjk::RootSystem<long double>>(n), k, h->tol);
    }
    *out = h.release();
  });
}

void qjk_enhanced_free(qjk_enhanced* op) { delete op; }

void qjk_eval_options_init(qjk_eval_options* options) {
  if (!options) return;
  options->threads = 1;
  options->probe = 0;
  options->enforce_scalar = 1;
  options->tolerance = 0.0;
}

qjk_status qjk_invariant(const qjk_enhanced* op, const qjk_braid* braid, const qjk_eval_options* options,
                         qjk_invariant_value* out) {
  return guarded([&] {
    require(op, "op");
    require(braid, "braid");
    require(out, "out");
    const auto eval = eval_options_of(options);
    *out = op->d ? invariant_value(*op->d, braid->word, eval) : invariant_value(*op->x, braid->word, eval);
  });
}

void qjk_volume_options_init(qjk_volume_options* options) {
  if (!options) return;
  const qjk::GrowthOptions defaults;
  options->threads = defaults.threads;
  options->precision = QJK_PRECISION_AUTO;
  options->kind = QJK_OPERATOR_KASHAEV;
  options->cross_check_max_n = defaults.cross_check_max_n;
  options->tolerance = 0.0;
}

qjk_status qjk_series_compute(const qjk_table* table, const char* knot, int n_min, int n_max,
                              const qjk_volume_options* options, qjk_series** out) {
  return guarded([&] {
    require(table, "table");
    require(knot, "knot");
    require(out, "out");
    qjk_volume_options o;
    qjk_volume_options_init(&o);
    if (options) o = *options;
    qjk::GrowthOptions growth;
    growth.threads = checked_threads(o.threads);
    if (o.precision != QJK_PRECISION_AUTO) growth.precision = precision_of(o.precision);
    growth.kind = kind_of(o.kind);
    if (o.cross_check_max_n < 0) throw qjk::DomainError("cross_check_max_n must be >= 0");
    growth.cross_check_max_n = o.cross_check_max_n;
    growth.tol = tolerance_of(o.tolerance);

    const auto& entry = qjk::find_knot(table->entries, knot);
    std::vector<qjk::KnotEntry> entries{entry};
    for (const auto& name : entry.summands) {
      bool seen = false;
      for (const auto& e : entries) seen = seen || e.name == name;
      if (!seen) entries.push_back(qjk::find_knot(table->entries, name));
    }
    auto all = qjk::growth_sequences(entries, n_min, n_max, growth);
    auto h = std::make_unique<qjk_series>();
    h->table = table->entries;
    h->series = std::move(all.front());
    for (std::size_t k = 1; k < all.size(); ++k) h->summands.push_back(std::move(all[k]));
    *out = h.release();
  });
}

void qjk_series_free(qjk_series* series) { delete series; }

size_t qjk_series_size(const qjk_series* series) { return series ? series->series.points.size() : 0; }

qjk_status qjk_series_point(const qjk_series* series, size_t index, int* n, double* abs_j, double* v) {
  return guarded([&] {
    require(series, "series");
    if (index >= series->series.points.size()) throw qjk::DomainError("series index out of range");
    const auto& p = series->series.points[index];
    if (n) *n = p.n;
    if (abs_j) *abs_j = p.abs_j;
    if (v) *v = p.v;
  });
}

qjk_status qjk_series_fit(qjk_series* series, qjk_fit_model model, int n_lo, int n_hi, qjk_fit* out) {
  return guarded([&] {
    require(series, "series");
    if (model == QJK_FIT_NONE) {
      series->series.fit.reset();
      for (auto& s : series->summands) s.fit.reset();
      return;
    }
    if (model != QJK_FIT_PLAIN && model != QJK_FIT_CORRECTED) throw qjk::DomainError("unknown fit model");
    const auto m = model == QJK_FIT_PLAIN ? qjk::FitModel::Plain : qjk::FitModel::Corrected;
    const auto lo = n_lo > 0 ? std::optional<int>(n_lo) : std::nullopt;
    const auto hi = n_hi > 0 ? std::optional<int>(n_hi) : std::nullopt;
    const auto fit = qjk::fit_limit(series->series, m, lo, hi);
    // Summands are fitted the same way so the additivity check compares like with like.
    std::vector<qjk::FitResult> parts;
    for (const auto& s : series->summands) parts.push_back(qjk::fit_limit(s, m, lo, hi));
    series->series.fit = fit;
    for (std::size_t k = 0; k < parts.size(); ++k) series->summands[k].fit = parts[k];
    if (out) {
      out->limit = fit.limit;
      out->log_coefficient = fit.log_coefficient;
      out->inverse_coefficient = fit.inverse_coefficient;
      out->residual = fit.residual;
      out->n_min = fit.n_min;
      out->n_max = fit.n_max;
      out->points = fit.points;
    }
  });
}

qjk_status qjk_series_render(const qjk_series* series, qjk_format format, char** out) {
  return guarded([&] {
    require(series, "series");
    require(out, "out");
    check_format(format);
    const auto& s = series->series;
    if (format == QJK_FORMAT_CSV) {
      std::string text = "N,absJ,v_N\n";
      for (const auto& p : s.points) {
        text += std::to_string(p.n) + "," + format_number(p.abs_j) + "," + format_number(p.v) + "\n";
      }
      *out = duplicate(text);
      return;
    }
    JsonWriter j;
    j.begin_object().field("knot", s.knot).field("operator", qjk::to_string(s.kind)).key("points").begin_array();
    for (const auto& p : s.points) {
      j.begin_object(true)
          .field("N", p.n)
          .field("absJ", p.abs_j)
          .field("v_N", p.v)
          .field("precision", qjk::to_string(p.precision))
          .end_object();
    }
    j.end_array();
    if (s.fit) {
      const auto& f = *s.fit;
      j.key("fit").begin_object().field("model", qjk::to_string(f.model));
      j.field("formula", f.model == qjk::FitModel::Plain ? "v_N at the largest N" : "v_N = V + a log(N)/N + b/N");
      j.field("heuristic", true)
          .field("limit", f.limit)
          .field("a", f.log_coefficient)
          .field("b", f.inverse_coefficient)
          .field("residual", f.residual)
          .field("n_min", f.n_min)
          .field("n_max", f.n_max)
          .field("points", f.points)
          .end_object();
    }
    j.key("cross_checks").begin_array();
    for (const auto& r : s.cross_checks) write_report(j, r);
    j.end_array();
    j.field("v3", s.v3).field("v3_source", qjk::kTetrahedronVolumeSource);
    if (s.points.size() >= 5 || s.fit) {
      const auto report = qjk::simplicial_report(s, series->table, series->summands);
      j.key("report").begin_object().field("model", qjk::to_string(report.model));
      j.field("fitted_limit", report.fitted_limit).field("norm_estimate", report.norm_estimate);
      j.key("reference_volume");
      report.reference_volume ? j.value(*report.reference_volume) : j.null();
      j.key("reference_norm");
      report.reference_norm ? j.value(*report.reference_norm) : j.null();
      j.key("volume_deviation");
      report.volume_deviation ? j.value(*report.volume_deviation) : j.null();
      if (report.additivity) {
        const auto& a = *report.additivity;
        j.key("additivity").begin_object().key("summands").begin_array(true);
        for (const auto& name : a.summands) j.value(name);
        j.end_array()
            .field("summand_limit_sum", a.summand_limit_sum)
            .field("limit_deviation", a.limit_deviation)
            .field("max_log_deviation", a.max_log_deviation)
            .field("common_points", a.common_points)
            .field("pass", a.pass)
            .end_object();
      }
      j.end_object();
    } else {
      j.key("reference_volume");
      s.reference_volume ? j.value(*s.reference_volume) : j.null();
    }
    j.end_object();
    *out = duplicate(j.str());
  });
}

qjk_status qjk_verify_render(const char* checks, int n_min, int n_max, qjk_precision precision, double tolerance,
                             int threads, const qjk_table* table, qjk_format format, char** out, int* all_pass) {
  return guarded([&] {
    require(checks, "checks");
    require(out, "out");
    check_format(format);
    if (n_min < 2 || n_max < n_min) throw qjk::DomainError("N range must satisfy 2 <= min <= max");
    qjk::VerifyOptions options;
    options.precision = precision_of(precision);
    options.tol = tolerance_of(tolerance);
    options.threads = checked_threads(threads);
    if (table) options.corpus = table->entries;
    const auto reports = qjk::verify_suite(qjk::parse_check_list(checks), n_min, n_max, options);
    *out = duplicate(render_reports("verify", reports, options.precision, options.tol, format));
    if (all_pass) *all_pass = qjk::all_pass(reports) ? 1 : 0;
  });
}

qjk_status qjk_invariant_render(const qjk_braid* braid, int n, qjk_operator kind, qjk_precision precision,
                                const qjk_eval_options* options, qjk_format format, char** out, int* consistent) {
  return guarded([&] {
    require(braid, "braid");
    require(out, "out");
    check_format(format);
    check_n(n);
    const auto p = precision_of(precision);
    const auto eval = eval_options_of(options);
    std::vector<qjk::OperatorKind> kinds;
    if (kind == QJK_OPERATOR_BOTH) {
      kinds = {qjk::OperatorKind::Jones, qjk::OperatorKind::Kashaev};
    } else {
      kinds = {kind_of(kind)};
    }
    std::vector<qjk_invariant_value> values;
    for (const auto k : kinds) {
      values.push_back(p == qjk::Precision::Double ? evaluate_fresh<double>(n, k, braid->word, eval)
                                                   : evaluate_fresh<long double>(n, k, braid->word, eval));
    }
    double deviation = 0.0;
    bool agree = true;
    if (values.size() == 2) {
      const double magnitude = std::hypot(values[0].re, values[0].im);
      deviation = std::hypot(values[0].re - values[1].re, values[0].im - values[1].im);
      agree = eval.tol.passes(deviation, magnitude, n);
    }
    const std::string word = qjk::format_braid(braid->word);

    std::string text;
    if (format == QJK_FORMAT_CSV) {
      text = "operator,N,re,im,scalarness,writhe,components\n";
      for (std::size_t k = 0; k < values.size(); ++k) {
        const auto& v = values[k];
        text += std::string(qjk::to_string(kinds[k])) + "," + std::to_string(n) + "," + format_number(v.re) + "," +
                format_number(v.im) + "," + format_number(v.scalarness) + "," + std::to_string(v.writhe) + "," +
                std::to_string(v.components) + "\n";
      }
    } else {
      JsonWriter j;
      j.begin_object().field("braid", word).field("N", n).field("precision", qjk::to_string(p));
      if (values.size() == 1) {
        j.field("operator", qjk::to_string(kinds[0]));
        write_invariant_fields(j, values[0]);
      } else {
        for (std::size_t k = 0; k < values.size(); ++k) {
          j.key(qjk::to_string(kinds[k])).begin_object();
          write_invariant_fields(j, values[k]);
          j.end_object();
        }
        j.field("deviation", deviation).field("agree", agree);
      }
      j.end_object();
      text = j.str();
    }
    *out = duplicate(text);
    if (consistent) *consistent = agree ? 1 : 0;
  });
}

qjk_status qjk_rmatrix_render(int n, qjk_operator kind, int inverse, qjk_precision precision, qjk_format format,
                              char** out) {
  return guarded([&] {
    require(out, "out");
    check_format(format);
    check_n(n);
    const auto k = kind_of(kind);
    const auto values = precision_of(precision) == qjk::Precision::Double ? rmatrix_values<double>(n, k, inverse)
                                                                          : rmatrix_values<long double>(n, k, inverse);
    const std::size_t dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::string text;
    if (format == QJK_FORMAT_CSV) {
      text = "row,col,re,im\n";
      for (std::size_t idx = 0; idx < values.size(); ++idx) {
        text += std::to_string(idx / dim) + "," + std::to_string(idx % dim) + "," + format_number(values[idx][0]) +
                "," + format_number(values[idx][1]) + "\n";
      }
    } else {
      JsonWriter j;
      j.begin_object()
          .field("N", n)
          .field("kind", qjk::to_string(k))
          .field("inverse", inverse != 0)
          .field("dim", dim)
          .key("entries")
          .begin_array();
      for (std::size_t idx = 0; idx < values.size(); ++idx) {
        j.begin_array(true).value(idx / dim).value(idx % dim).value(values[idx][0]).value(values[idx][1]).end_array();
      }
      j.end_array().end_object();
      text = j.str();
    }
    *out = duplicate(text);
  });
}

qjk_status qjk_rep_check_render(int n, double p, qjk_precision precision, double tolerance, qjk_format format,
                                char** out, int* all_pass) {
  return guarded([&] {
    require(out, "out");
    check_format(format);
    check_n(n);
    const auto prec = precision_of(precision);
    const auto tol = tolerance_of(tolerance);
    const auto reports = prec == qjk::Precision::Double ? rep_reports<double>(n, p, tol)
                                                        : rep_reports<long double>(n, p, tol);
    *out = duplicate(render_reports("rep-check", reports, prec, tol, format));
    if (all_pass) *all_pass = qjk::all_pass(reports) ? 1 : 0;
  });
}

}  // extern "C"
