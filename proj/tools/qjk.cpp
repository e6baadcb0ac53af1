// Command-line front end.  Talks to the library only through the C interface.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "qjk/qjk.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

struct Global {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  double tolerance = 0.0;
  std::string table;
  std::optional<std::string> precision;
  std::string format = "json";
};

int exit_for(qjk_status status) {
  switch (status) {
    case QJK_OK: return kPass;
    case QJK_ERROR_DOMAIN:
    case QJK_ERROR_PARSE:
    case QJK_ERROR_SCHEMA:
    case QJK_ERROR_IO: return kUsage;
    default: return kFail;
  }
}

int report_error(qjk_status status) {
  std::fprintf(stderr, "qjk: %s: %s\n", qjk_status_name(status), qjk_last_error());
  return exit_for(status);
}

// Prints a rendered document and releases it.
int emit(qjk_status status, char* text, bool pass = true) {
  if (status != QJK_OK) return report_error(status);
  std::fputs(text, stdout);
  qjk_string_free(text);
  return pass ? kPass : kFail;
}

qjk_format format_of(const Global& g) { return g.format == "csv" ? QJK_FORMAT_CSV : QJK_FORMAT_JSON; }

qjk_precision precision_of(const Global& g, qjk_precision fallback) {
  if (!g.precision) return fallback;
  return *g.precision == "extended" ? QJK_PRECISION_EXTENDED : QJK_PRECISION_DOUBLE;
}

qjk_operator operator_of(const std::string& name) {
  if (name == "jones") return QJK_OPERATOR_JONES;
  if (name == "kashaev") return QJK_OPERATOR_KASHAEV;
  return QJK_OPERATOR_BOTH;
}

// "N" or "A..B"; returns false on anything else.
bool parse_range(const std::string& text, int& lo, int& hi) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      return used == text.size();
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    lo = std::stoi(a, &used);
    if (used != a.size()) return false;
    hi = std::stoi(b, &used);
    return used == b.size();
  } catch (const std::exception&) {
    return false;
  }
}

// Table handle for commands that need one; nullptr after printing an error.
qjk_table* open_table(const Global& g, int& code) {
  qjk_table* table = nullptr;
  const qjk_status status = qjk_table_load(g.table.empty() ? nullptr : g.table.c_str(), &table);
  if (status != QJK_OK) {
    code = report_error(status);
    return nullptr;
  }
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum invariants of knots: R-matrix verification, colored Jones and Kashaev invariants, volume growth"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qjk_version());

  Global g;
  app.add_option("--threads", g.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tolerance", g.tolerance, "Relative tolerance base (default 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--table", g.table, "Knot table JSON")->envname("QJK_KNOT_TABLE");
  app.add_option("--precision", g.precision, "Floating point precision")
      ->check(CLI::IsMember({"double", "extended"}));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  // verify
  std::string checks = "all";
  std::string n_range;
  auto* verify = app.add_subcommand("verify", "Run verification suites over a range of N");
  verify->fallthrough();
  verify->add_option("--checks", checks, "Comma-separated checks or 'all'");
  verify->add_option("--n", n_range, "N or A..B")->required();

  // invariant
  std::string braid_text, knot_name, operator_name = "both";
  int inv_n = 0;
  bool probe = false, lenient = false;
  auto* invariant = app.add_subcommand("invariant", "Evaluate the (1,1)-tangle invariant of a braid closure");
  invariant->fallthrough();
  auto* braid_opt = invariant->add_option("--braid", braid_text, "Braid word, e.g. \"3: 1 -2 1 -2\"");
  invariant->add_option("--knot", knot_name, "Knot table entry")->excludes(braid_opt);
  invariant->add_option("--n", inv_n, "N")->required();
  invariant->add_option("--operator", operator_name, "jones, kashaev or both")
      ->check(CLI::IsMember({"jones", "kashaev", "both"}));
  invariant->add_flag("--probe", probe, "Evaluate only the first-strand inputs 0 and N-1");
  invariant->add_flag("--no-scalar-check", lenient, "Report scalarness instead of failing on it");

  // volume
  std::string vol_knot, fit = "auto", vol_operator = "kashaev";
  int n_min = 0, n_max = 0, fit_min = 0, fit_max = 0, cross_max = 8;
  auto* volume = app.add_subcommand("volume", "Growth sequence v_N = 2 pi log|J_N| / N and its fitted limit");
  volume->fallthrough();
  volume->add_option("--knot", vol_knot, "Knot table entry")->required();
  volume->add_option("--n-min", n_min, "Smallest N")->required();
  volume->add_option("--n-max", n_max, "Largest N")->required();
  volume->add_option("--fit", fit, "auto, none, plain or corrected")
      ->check(CLI::IsMember({"auto", "none", "plain", "corrected"}));
  volume->add_option("--fit-min", fit_min, "Smallest N used by the fit");
  volume->add_option("--fit-max", fit_max, "Largest N used by the fit");
  volume->add_option("--operator", vol_operator, "Operator for the series")
      ->check(CLI::IsMember({"jones", "kashaev"}));
  volume->add_option("--cross-check-max-n", cross_max, "Cross-check the other operator up to this N (0: off)")
      ->check(CLI::NonNegativeNumber);

  // dump-rmatrix
  int dump_n = 0;
  std::string dump_kind;
  bool dump_inverse = false;
  auto* dump = app.add_subcommand("dump-rmatrix", "Dense R-matrix entries [row, col, re, im]");
  dump->fallthrough();
  dump->add_option("--n", dump_n, "N")->required();
  dump->add_option("--kind", dump_kind, "jones or kashaev")->required()->check(CLI::IsMember({"jones", "kashaev"}));
  dump->add_flag("--inverse", dump_inverse, "Dump the inverse instead");

  // rep-check
  int rep_n = 0;
  double rep_p = std::numeric_limits<double>::quiet_NaN();
  auto* rep = app.add_subcommand("rep-check", "U_q(sl2) relations and the Cartan coincidence");
  rep->fallthrough();
  rep->add_option("--n", rep_n, "N")->required();
  rep->add_option("--p", rep_p, "Parameter of F(p) (default (N-1)/2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const qjk_format format = format_of(g);
  char* text = nullptr;

  if (*verify) {
    int lo = 0, hi = 0;
    if (!parse_range(n_range, lo, hi)) {
      std::fprintf(stderr, "qjk: --n expects N or A..B, got '%s'\n", n_range.c_str());
      return kUsage;
    }
    qjk_table* table = nullptr;
    if (!g.table.empty()) {
      int code = 0;
      if (!(table = open_table(g, code))) return code;
    }
    int pass = 0;
    const auto status = qjk_verify_render(checks.c_str(), lo, hi, precision_of(g, QJK_PRECISION_DOUBLE),
                                          g.tolerance, g.threads, table, format, &text, &pass);
    qjk_table_free(table);
    return emit(status, text, pass != 0);
  }

  if (*invariant) {
    if (braid_text.empty() == knot_name.empty()) {
      std::fprintf(stderr, "qjk: invariant needs exactly one of --braid or --knot\n");
      return kUsage;
    }
    qjk_braid* braid = nullptr;
    qjk_status status;
    if (!knot_name.empty()) {
      int code = 0;
      qjk_table* table = open_table(g, code);
      if (!table) return code;
      status = qjk_table_braid(table, knot_name.c_str(), &braid);
      qjk_table_free(table);
    } else {
      status = qjk_braid_parse(braid_text.c_str(), &braid);
    }
    if (status != QJK_OK) return report_error(status);
    qjk_eval_options options;
    qjk_eval_options_init(&options);
    options.threads = g.threads;
    options.probe = probe ? 1 : 0;
    options.enforce_scalar = lenient ? 0 : 1;
    options.tolerance = g.tolerance;
    int consistent = 1;
    status = qjk_invariant_render(braid, inv_n, operator_of(operator_name), precision_of(g, QJK_PRECISION_DOUBLE),
                                  &options, format, &text, &consistent);
    qjk_braid_free(braid);
    return emit(status, text, consistent != 0);
  }

  if (*volume) {
    int code = 0;
    qjk_table* table = open_table(g, code);
    if (!table) return code;
    qjk_volume_options options;
    qjk_volume_options_init(&options);
    options.threads = g.threads;
    options.precision = precision_of(g, QJK_PRECISION_AUTO);
    options.kind = operator_of(vol_operator);
    options.cross_check_max_n = cross_max;
    options.tolerance = g.tolerance;
    qjk_series* series = nullptr;
    qjk_status status = qjk_series_compute(table, vol_knot.c_str(), n_min, n_max, &options, &series);
    qjk_table_free(table);
    if (status != QJK_OK) return report_error(status);
    const int window = static_cast<int>(qjk_series_size(series));
    qjk_fit_model model = QJK_FIT_NONE;
    if (fit == "plain") model = QJK_FIT_PLAIN;
    if (fit == "corrected" || (fit == "auto" && window >= 5)) model = QJK_FIT_CORRECTED;
    if (model != QJK_FIT_NONE) status = qjk_series_fit(series, model, fit_min, fit_max, nullptr);
    if (status == QJK_OK) status = qjk_series_render(series, format, &text);
    qjk_series_free(series);
    return emit(status, text);
  }

  if (*dump) {
    const auto status = qjk_rmatrix_render(dump_n, operator_of(dump_kind), dump_inverse ? 1 : 0,
                                           precision_of(g, QJK_PRECISION_DOUBLE), format, &text);
    return emit(status, text);
  }

  int pass = 0;
  const auto status =
      qjk_rep_check_render(rep_n, rep_p, precision_of(g, QJK_PRECISION_DOUBLE), g.tolerance, format, &text, &pass);
  return emit(status, text, pass != 0);
}
