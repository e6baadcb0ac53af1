#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles/jones.hpp"
#include "qjk/volume.hpp"

using qjk::FitModel;
using qjk::GrowthOptions;
using qjk::GrowthSeries;
using qjk::KnotEntry;
using qjk::Precision;

namespace {

const std::vector<KnotEntry>& table() {
  static const auto t = qjk::load_knot_table(QJK_TEST_KNOT_TABLE);
  return t;
}

const KnotEntry& knot(const char* name) { return qjk::find_knot(table(), name); }

GrowthSeries synthetic(const std::vector<int>& ns, double v, double a, double b) {
  GrowthSeries s;
  s.knot = "synthetic";
  for (const int n : ns) s.points.push_back({n, 1.0, v + a * std::log(n) / n + b / n, Precision::Double});
  return s;
}

double oracle_v(long double abs_j, int n) { return 2.0 * std::numbers::pi * std::log(static_cast<double>(abs_j)) / n; }

}  // namespace

TEST(Volume, UnknotIsIdenticallyZero) {
  const auto s = qjk::growth_sequence(knot("unknot"), 2, 20);
  ASSERT_EQ(s.points.size(), 19u);
  for (const auto& p : s.points) {
    EXPECT_EQ(p.v, 0.0) << p.n;
    EXPECT_EQ(p.abs_j, 1.0) << p.n;
  }
}

TEST(Volume, SeriesMatchesClosedFormulas) {
  const auto fig8 = qjk::growth_sequence(knot("4_1"), 5, 24);
  for (const auto& p : fig8.points) {
    EXPECT_NEAR(p.v, oracle_v(oracle::figure_eight(p.n), p.n), 1e-10) << p.n;
  }
  const auto trefoil = qjk::growth_sequence(knot("3_1"), 5, 40);
  for (const auto& p : trefoil.points) {
    EXPECT_NEAR(p.v, oracle_v(oracle::trefoil_modulus(p.n), p.n), 1e-10) << p.n;
  }
}

TEST(Volume, CrossChecksRunAtSmallN) {
  const auto s = qjk::growth_sequence(knot("5_2"), 4, 12);
  ASSERT_EQ(s.cross_checks.size(), 2u);
  EXPECT_EQ(s.cross_checks[0].n, 4);
  EXPECT_EQ(s.cross_checks[1].n, 8);
  for (const auto& c : s.cross_checks) EXPECT_TRUE(c.pass) << c.n;

  GrowthOptions none;
  none.cross_check_max_n = 0;
  EXPECT_TRUE(qjk::growth_sequence(knot("5_2"), 4, 6, none).cross_checks.empty());
}

TEST(Volume, DoubleAndExtendedAgree) {
  GrowthOptions dbl, ext;
  dbl.precision = Precision::Double;
  ext.precision = Precision::Extended;
  dbl.cross_check_max_n = ext.cross_check_max_n = 0;
  struct Case {
    const char* name;
    int n;
  };
  for (const auto& c : {Case{"3_1", 40}, Case{"4_1", 10}, Case{"4_1", 25}, Case{"4_1", 40}, Case{"5_2", 20},
                        Case{"granny", 20}, Case{"6_1", 10}}) {
    const auto a = qjk::growth_sequence(knot(c.name), c.n, c.n, dbl).points.front();
    const auto b = qjk::growth_sequence(knot(c.name), c.n, c.n, ext).points.front();
    EXPECT_EQ(a.precision, Precision::Double);
    EXPECT_EQ(b.precision, Precision::Extended);
    EXPECT_LT(std::abs(a.v - b.v), 1e-6) << c.name << " N=" << c.n;
  }
}

TEST(Volume, PrecisionEscalatesAboveSixty) {
  GrowthOptions options;
  EXPECT_EQ(qjk::precision_for(60, options), Precision::Double);
  EXPECT_EQ(qjk::precision_for(61, options), Precision::Extended);
  options.precision = Precision::Double;
  EXPECT_EQ(qjk::precision_for(100, options), Precision::Double);
}

TEST(Volume, MarkovEquivalentWordsGiveSameSeries) {
  KnotEntry alt = knot("4_1");
  alt.word = qjk::parse_braid("3: 2 1 -2 1 -2 -2");
  const auto a = qjk::growth_sequence(knot("4_1"), 5, 12);
  const auto b = qjk::growth_sequence(alt, 5, 12);
  for (std::size_t k = 0; k < a.points.size(); ++k) EXPECT_NEAR(a.points[k].v, b.points[k].v, 1e-10);
}

TEST(Volume, ThreadCountDoesNotChangeBits) {
  GrowthOptions one, many;
  many.threads = 3;
  const auto a = qjk::growth_sequence(knot("4_1"), 10, 14, one);
  const auto b = qjk::growth_sequence(knot("4_1"), 10, 14, many);
  for (std::size_t k = 0; k < a.points.size(); ++k) EXPECT_EQ(a.points[k].abs_j, b.points[k].abs_j);
}

TEST(Volume, RejectsLinksAndBadRanges) {
  KnotEntry hopf{"hopf", qjk::parse_braid("2: 1 1"), std::nullopt, std::nullopt, "", {}};
  EXPECT_THROW(qjk::growth_sequence(hopf, 2, 5), qjk::DomainError);
  EXPECT_THROW(qjk::growth_sequence(knot("4_1"), 1, 5), qjk::DomainError);
  EXPECT_THROW(qjk::growth_sequence(knot("4_1"), 9, 5), qjk::DomainError);
}

TEST(VolumeFit, ConstantSeries) {
  const auto s = synthetic({5, 6, 7, 8, 9, 10}, 1.25, 0.0, 0.0);
  const auto fit = qjk::fit_limit(s, FitModel::Corrected);
  EXPECT_NEAR(fit.limit, 1.25, 1e-12);
  EXPECT_NEAR(fit.log_coefficient, 0.0, 1e-10);
  EXPECT_NEAR(fit.inverse_coefficient, 0.0, 1e-10);
  EXPECT_EQ(qjk::fit_limit(s, FitModel::Plain).limit, 1.25);
}

TEST(VolumeFit, RecoversModelCoefficients) {
  std::vector<int> ns;
  for (int n = 10; n <= 60; ++n) ns.push_back(n);
  const auto s = synthetic(ns, 2.03, 4.5, -1.5);
  const auto fit = qjk::fit_limit(s, FitModel::Corrected);
  EXPECT_NEAR(fit.limit, 2.03, 1e-10);
  EXPECT_NEAR(fit.log_coefficient, 4.5, 1e-8);
  EXPECT_NEAR(fit.inverse_coefficient, -1.5, 1e-8);
  EXPECT_LT(fit.residual, 1e-12);
  EXPECT_EQ(fit.points, 51);
  const auto window = qjk::fit_limit(s, FitModel::Corrected, 20, 30);
  EXPECT_EQ(window.n_min, 20);
  EXPECT_EQ(window.n_max, 30);
  EXPECT_EQ(window.points, 11);
  const auto plain = qjk::fit_limit(s, FitModel::Plain);
  EXPECT_EQ(plain.limit, s.points.back().v);
}

TEST(VolumeFit, Preconditions) {
  EXPECT_THROW(qjk::fit_limit(synthetic({5, 6, 7, 8}, 1.0, 0.0, 0.0), FitModel::Corrected), qjk::DomainError);
  EXPECT_THROW(qjk::fit_limit(synthetic({5, 6, 7, 8}, 1.0, 0.0, 0.0), FitModel::Plain), qjk::DomainError);
  EXPECT_THROW(qjk::fit_limit(synthetic({7, 7, 7, 9, 9}, 1.0, 0.0, 0.0), FitModel::Corrected), qjk::NumericError);
  EXPECT_EQ(qjk::parse_fit_model("plain"), FitModel::Plain);
  EXPECT_THROW(qjk::parse_fit_model("cubic"), qjk::DomainError);
}

TEST(VolumeReport, ConnectedSumIsAdditive) {
  const auto all = qjk::growth_sequences({knot("3_1"), knot("granny")}, 5, 24);
  for (std::size_t k = 0; k < all[0].points.size(); ++k) {
    const long double t = oracle::trefoil_modulus(all[0].points[k].n);
    EXPECT_NEAR(all[1].points[k].abs_j, static_cast<double>(t * t), 1e-9 * static_cast<double>(t * t));
  }
  const auto report = qjk::simplicial_report(all[1], table(), all);
  ASSERT_TRUE(report.additivity.has_value());
  EXPECT_TRUE(report.additivity->pass);
  EXPECT_EQ(report.additivity->common_points, 20);
  EXPECT_LT(report.additivity->limit_deviation, 0.05);
  EXPECT_LT(report.additivity->max_log_deviation, 1e-9);
  const auto trefoil = qjk::fit_limit(all[0], FitModel::Corrected);
  EXPECT_NEAR(report.fitted_limit, 2 * trefoil.limit, 1e-8);

  // Without the summand series the check is skipped rather than failed.
  EXPECT_FALSE(qjk::simplicial_report(all[1], table()).additivity.has_value());
}

TEST(VolumeReport, NormEstimate) {
  auto s = synthetic({10, 20, 30, 40, 50, 60}, 2.029883212819307, 0.0, 0.0);
  s.knot = "4_1";
  s.reference_volume = knot("4_1").reference_volume;
  s.fit = qjk::fit_limit(s, FitModel::Corrected);
  const auto report = qjk::simplicial_report(s, table());
  EXPECT_NEAR(report.norm_estimate, 2.0, 1e-6);
  EXPECT_NEAR(*report.reference_norm, 2.0, 1e-6);
  EXPECT_LT(*report.volume_deviation, 1e-10);
  EXPECT_FALSE(report.additivity.has_value());

  const auto unknot = qjk::growth_sequence(knot("unknot"), 2, 10);
  const auto zero = qjk::simplicial_report(unknot, table());
  EXPECT_EQ(zero.norm_estimate, 0.0);
  EXPECT_EQ(*zero.reference_norm, 0.0);
}
