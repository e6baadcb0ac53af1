#pragma once

// Growth of |J_N(K)| with N: v_N = (2 pi / N) log|J_N(K)|, extrapolation of its
// limit, and comparison with reference volumes.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qjk/braid.hpp"
#include "qjk/common.hpp"
#include "qjk/evaluator.hpp"
#include "qjk/report.hpp"

namespace qjk {

// Volume of the regular ideal tetrahedron in hyperbolic 3-space.
inline constexpr double kTetrahedronVolume = 1.0149416064096536;
inline constexpr std::string_view kTetrahedronVolumeSource = "3 Lambda(pi/3), Lobachevsky function";

// Runs above this N default to extended precision.
inline constexpr int kDoublePrecisionMaxN = 60;

// |V(K1 # K2) - V(K1) - V(K2)| accepted by the additivity check.
inline constexpr double kAdditivityTolerance = 0.05;

struct GrowthPoint {
  int n = 0;
  double abs_j = 0.0;
  double v = 0.0;
  Precision precision = Precision::Double;
};

enum class FitModel {
  Plain,      // last value of the series
  Corrected,  // least squares v_N = V + a log(N)/N + b/N
};

std::string_view to_string(FitModel model);
FitModel parse_fit_model(std::string_view text);

struct FitResult {
  FitModel model = FitModel::Corrected;
  double limit = 0.0;
  double log_coefficient = 0.0;      // a
  double inverse_coefficient = 0.0;  // b
  double residual = 0.0;             // root mean square
  int n_min = 0;
  int n_max = 0;
  int points = 0;
};

struct GrowthSeries {
  std::string knot;
  OperatorKind kind = OperatorKind::Kashaev;
  std::vector<GrowthPoint> points;
  std::optional<FitResult> fit;
  std::optional<double> reference_volume;
  double v3 = kTetrahedronVolume;
  // Jones versus Kashaev at small N, relative deviation of |J_N|.
  std::vector<CheckReport> cross_checks;
};

struct GrowthOptions {
  int threads = 1;
  std::optional<Precision> precision;  // unset: per N, double up to kDoublePrecisionMaxN
  // Operator used for the series.  Kashaev is the default: the Jones basis
  // loses roughly |R_J|^2 digits to cancellation and is unusable past N ~ 12.
  OperatorKind kind = OperatorKind::Kashaev;
  // The other operator is evaluated at the smallest N of the range and at
  // min(n_max, cross_check_max_n); 0 disables.
  int cross_check_max_n = 8;
  InputSet inputs = InputSet::Probe;
  Tolerance tol{};
};

Precision precision_for(int n, const GrowthOptions& options);

// One series per entry over N = n_min..n_max.  Operators are built once per N
// and shared by all entries.  Throws DomainError for non-knots or a bad range,
// NumericError when |J_N| vanishes, IntegrityError when a cross check fails.
std::vector<GrowthSeries> growth_sequences(const std::vector<KnotEntry>& entries, int n_min, int n_max,
                                           const GrowthOptions& options = {});
GrowthSeries growth_sequence(const KnotEntry& entry, int n_min, int n_max, const GrowthOptions& options = {});

// Fits the points with n_lo <= N <= n_hi (whole series when unset).  Needs at
// least five points; a rank-deficient design throws NumericError.
FitResult fit_limit(const GrowthSeries& series, FitModel model, std::optional<int> n_lo = std::nullopt,
                    std::optional<int> n_hi = std::nullopt);

struct AdditivityCheck {
  std::vector<std::string> summands;
  double summand_limit_sum = 0.0;
  double limit_deviation = 0.0;     // |V(K) - sum V(K_i)|
  double max_log_deviation = 0.0;   // max_N |log|J_N(K)| - sum log|J_N(K_i)||
  int common_points = 0;
  bool pass = false;
};

struct SimplicialReport {
  std::string knot;
  FitModel model = FitModel::Corrected;
  double fitted_limit = 0.0;
  double norm_estimate = 0.0;  // fitted limit / v3
  std::optional<double> reference_volume;
  std::optional<double> reference_norm;
  std::optional<double> volume_deviation;
  double v3 = kTetrahedronVolume;
  std::optional<AdditivityCheck> additivity;
};

// Uses series.fit when present, otherwise fits it (corrected with five or more
// points, else the last value).  Entries declaring summands are checked for
// additivity against the matching series in `others`.
SimplicialReport simplicial_report(const GrowthSeries& series, const std::vector<KnotEntry>& table,
                                   const std::vector<GrowthSeries>& others = {});

}  // namespace qjk
