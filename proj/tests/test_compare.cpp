#include <gtest/gtest.h>

#include <map>
#include <string>
#include <vector>

#include "tirank/compare.hpp"
#include "tirank/rng.hpp"

namespace {

using tirank::CohortComparison;
using tirank::DeltaScoreKind;
using tirank::errc;
using tirank::Quartile;
using tirank::RankedCohort;
using tirank::ScoreVariant;

RankedCohort rank_of(const std::vector<std::pair<std::string, double>>& scores,
                     ScoreVariant variant, const std::string& id = "g") {
  return tirank::rank_cohort(scores, variant, id);
}

TEST(Compare, RenderDeltaRankLabels) {
  EXPECT_EQ(tirank::render_delta_rank(0), "0 =");
  EXPECT_EQ(tirank::render_delta_rank(3), "3 ↑");
  EXPECT_EQ(tirank::render_delta_rank(-2), "2 ↓");
  EXPECT_EQ(tirank::render_delta_rank(1), "1 ↑");
}

TEST(Compare, PairsRowsInCitationRankOrder) {
  const auto c = rank_of({{"a", 3.0}, {"b", 2.0}, {"c", 0.0}, {"d", 0.0}},
                         ScoreVariant::C);
  const auto wc = rank_of({{"a", 3.3}, {"b", 2.5}, {"c", 0.2}, {"d", 0.0}},
                          ScoreVariant::WC);
  const auto cmp = tirank::compare_cohort(c, wc);
  ASSERT_EQ(cmp.rows.size(), 4u);
  EXPECT_EQ(cmp.rows[0].professor_id, "a");
  EXPECT_EQ(cmp.rows[1].professor_id, "b");
  EXPECT_EQ(cmp.rows[2].professor_id, "c");
  EXPECT_EQ(cmp.rows[3].professor_id, "d");

  const auto& a = cmp.rows[0];
  EXPECT_EQ(a.delta_score_kind, DeltaScoreKind::finite);
  EXPECT_NEAR(a.delta_score_pct, 10.0, 1e-12);
  EXPECT_EQ(a.delta_rank, 0);
  EXPECT_DOUBLE_EQ(a.delta_percentile, 0.0);

  // c: zero under citations only, positive when the journal term joins
  const auto& crow = cmp.rows[2];
  EXPECT_EQ(crow.delta_score_kind, DeltaScoreKind::infinite);
  EXPECT_EQ(crow.rank_c, 3);
  EXPECT_EQ(crow.rank_wc, 3);
  EXPECT_DOUBLE_EQ(crow.percentile_c, 0.0);
  EXPECT_NEAR(crow.delta_percentile, 100.0 / 3.0, 1e-12);

  // d: zero both ways
  const auto& drow = cmp.rows[3];
  EXPECT_EQ(drow.delta_score_kind, DeltaScoreKind::not_applicable);
  EXPECT_EQ(drow.delta_rank, -1);

  EXPECT_EQ(cmp.n_professors, 4);
  // only d moves: the c/d tie at rank 3 breaks under the weighted variant
  EXPECT_DOUBLE_EQ(cmp.share_unshifted, 0.75);
}

TEST(Compare, IdentityComparisonIsAllZeros) {
  const auto c = rank_of({{"a", 2.0}, {"b", 1.0}, {"c", 0.5}}, ScoreVariant::C);
  const auto cmp = tirank::compare_cohort(c, c);
  for (const auto& row : cmp.rows) {
    EXPECT_EQ(row.delta_rank, 0);
    EXPECT_DOUBLE_EQ(row.delta_percentile, 0.0);
    EXPECT_EQ(row.delta_score_kind, DeltaScoreKind::finite);
    EXPECT_DOUBLE_EQ(row.delta_score_pct, 0.0);
  }
  EXPECT_DOUBLE_EQ(cmp.share_unshifted, 1.0);
  EXPECT_DOUBLE_EQ(cmp.avg_abs_percentile_shift, 0.0);
  ASSERT_TRUE(cmp.pearson_scores.has_value());
  EXPECT_DOUBLE_EQ(*cmp.pearson_scores, 1.0);
  ASSERT_TRUE(cmp.spearman_ranks.has_value());
  EXPECT_DOUBLE_EQ(*cmp.spearman_ranks, 1.0);
}

TEST(Compare, SwappingVariantsNegatesTheDeltas) {
  tirank::SplitMix64 rng(31);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::pair<std::string, double>> sc, sw;
    const int n = static_cast<int>(rng.uniform_int(2, 30));
    for (int i = 0; i < n; ++i) {
      const std::string id = "p" + std::to_string(i);
      sc.emplace_back(id, static_cast<double>(rng.uniform_int(0, 10)) / 2.0);
      sw.emplace_back(id, static_cast<double>(rng.uniform_int(0, 10)) / 2.0);
    }
    const auto ranked_a = rank_of(sc, ScoreVariant::C);
    const auto ranked_b = rank_of(sw, ScoreVariant::WC);
    const auto fwd = tirank::compare_cohort(ranked_a, ranked_b);
    const auto rev = tirank::compare_cohort(ranked_b, ranked_a);
    std::map<std::string, const tirank::DeltaRow*> rev_rows;
    for (const auto& row : rev.rows) rev_rows[row.professor_id] = &row;
    for (const auto& row : fwd.rows) {
      const auto& mirror = *rev_rows.at(row.professor_id);
      EXPECT_EQ(row.delta_rank, -mirror.delta_rank);
      EXPECT_DOUBLE_EQ(row.delta_percentile, -mirror.delta_percentile);
      EXPECT_EQ(row.rank_c, mirror.rank_wc);
      EXPECT_EQ(row.rank_wc, mirror.rank_c);
    }
    EXPECT_DOUBLE_EQ(fwd.avg_abs_percentile_shift, rev.avg_abs_percentile_shift);
    EXPECT_DOUBLE_EQ(fwd.share_unshifted, rev.share_unshifted);
  }
}

TEST(Compare, UncitedShareCountsProductiveZeroScores) {
  const auto c = rank_of({{"a", 1.0}, {"b", 0.0}, {"c", 0.0}, {"d", 0.0}},
                         ScoreVariant::C);
  const auto wc = rank_of({{"a", 1.0}, {"b", 0.1}, {"c", 0.0}, {"d", 0.0}},
                          ScoreVariant::WC);
  // b and c published without citations; d published nothing
  const std::map<std::string, long long> pubs = {
      {"a", 3}, {"b", 2}, {"c", 1}, {"d", 0}};
  const auto cmp = tirank::compare_cohort(c, wc, &pubs);
  EXPECT_DOUBLE_EQ(cmp.uncited_share, 0.5);

  // without counts every zero C score counts as uncited
  const auto cmp_all = tirank::compare_cohort(c, wc);
  EXPECT_DOUBLE_EQ(cmp_all.uncited_share, 0.75);
}

TEST(Compare, CorrelationsUndefinedOnDegenerateCohorts) {
  const auto c1 = rank_of({{"a", 1.0}}, ScoreVariant::C);
  const auto w1 = rank_of({{"a", 2.0}}, ScoreVariant::WC);
  const auto singleton = tirank::compare_cohort(c1, w1);
  EXPECT_FALSE(singleton.pearson_scores.has_value());
  EXPECT_FALSE(singleton.spearman_ranks.has_value());

  const auto cc = rank_of({{"a", 1.0}, {"b", 1.0}}, ScoreVariant::C);
  const auto wc = rank_of({{"a", 2.0}, {"b", 1.0}}, ScoreVariant::WC);
  const auto constant = tirank::compare_cohort(cc, wc);
  EXPECT_FALSE(constant.pearson_scores.has_value());
  EXPECT_FALSE(constant.spearman_ranks.has_value());
}

TEST(Compare, RejectsMismatchedCohorts) {
  const auto a = rank_of({{"x", 1.0}, {"y", 0.5}}, ScoreVariant::C, "g1");
  const auto b = rank_of({{"x", 1.0}, {"y", 0.5}}, ScoreVariant::WC, "g2");
  try {
    tirank::compare_cohort(a, b);
    FAIL();
  } catch (const tirank::error& e) {
    EXPECT_EQ(e.code(), errc::cohort_mismatch);
  }
  const auto c = rank_of({{"x", 1.0}, {"z", 0.5}}, ScoreVariant::WC, "g1");
  try {
    tirank::compare_cohort(a, c);
    FAIL();
  } catch (const tirank::error& e) {
    EXPECT_EQ(e.code(), errc::cohort_mismatch);
  }
  const auto d = rank_of({{"x", 1.0}}, ScoreVariant::WC, "g1");
  EXPECT_THROW(tirank::compare_cohort(a, d), tirank::error);
}

TEST(Compare, ContingencyAccumulatesAllRows) {
  const auto c = rank_of(
      {{"a", 4.0}, {"b", 3.0}, {"c", 2.0}, {"d", 1.0}, {"e", 0.5}},
      ScoreVariant::C);
  const auto wc = rank_of(
      {{"a", 0.5}, {"b", 3.0}, {"c", 2.0}, {"d", 1.0}, {"e", 4.0}},
      ScoreVariant::WC);
  const auto cmp = tirank::compare_cohort(c, wc);
  const auto table = tirank::quartile_contingency({cmp, cmp});
  EXPECT_EQ(table.total, 10);
  long long sum = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) sum += table.counts[i][j];
  }
  EXPECT_EQ(sum, table.total);
  // a falls Q1 -> Q4 and e climbs Q4 -> Q1, twice each
  EXPECT_EQ(table.counts[0][3], 2);
  EXPECT_EQ(table.counts[3][0], 2);
  EXPECT_DOUBLE_EQ(table.share(0, 3), 0.2);
  EXPECT_DOUBLE_EQ(table.diagonal_share(), 0.6);

  EXPECT_DOUBLE_EQ(tirank::Contingency{}.diagonal_share(), 0.0);
}

TEST(Compare, BuildReportAggregatesByArea) {
  auto make = [](const std::string& id, double wobble) {
    const auto c = rank_of({{"a", 2.0}, {"b", 1.0}, {"c", 0.5}},
                           ScoreVariant::C, id);
    const auto wc = rank_of({{"a", 2.0}, {"b", 0.5 + wobble}, {"c", 0.5}},
                            ScoreVariant::WC, id);
    return tirank::compare_cohort(c, wc);
  };
  const std::map<std::string, std::string> uda = {
      {"g1", "AREA-1"}, {"g2", "AREA-1"}, {"g3", "AREA-2"}};
  const auto report = tirank::build_report(
      {make("g3", 0.0), make("g1", 0.0), make("g2", 1.0)}, uda);

  ASSERT_EQ(report.cohorts.size(), 3u);
  EXPECT_EQ(report.cohorts[0].cohort_id, "g1");
  EXPECT_EQ(report.cohorts[2].cohort_id, "g3");

  ASSERT_EQ(report.uda_stats.size(), 2u);
  EXPECT_EQ(report.uda_stats[0].uda_id, "AREA-1");
  EXPECT_EQ(report.uda_stats[0].n_cohorts, 2);
  EXPECT_EQ(report.uda_stats[0].n_professors, 6);
  EXPECT_EQ(report.uda_stats[1].uda_id, "AREA-2");
  ASSERT_EQ(report.uda_stats[0].cohort_shifts.size(), 2u);
  EXPECT_LE(report.uda_stats[0].min_shift, report.uda_stats[0].max_shift);
  EXPECT_NEAR(report.uda_stats[0].mean_shift,
              (report.uda_stats[0].cohort_shifts[0] +
               report.uda_stats[0].cohort_shifts[1]) /
                  2.0,
              1e-12);

  ASSERT_EQ(report.sensitivity.size(), 3u);
  EXPECT_EQ(report.sensitivity[0].cohort_id, "g1");
  EXPECT_EQ(report.contingency.total, 9);
}

TEST(Compare, BuildReportNeedsAreaForEveryCohort) {
  const auto c = rank_of({{"a", 1.0}, {"b", 0.5}}, ScoreVariant::C, "g9");
  const auto cmp = tirank::compare_cohort(
      c, rank_of({{"a", 1.0}, {"b", 0.5}}, ScoreVariant::WC, "g9"));
  try {
    tirank::build_report({cmp}, {});
    FAIL();
  } catch (const tirank::error& e) {
    EXPECT_EQ(e.code(), errc::schema);
    EXPECT_NE(std::string(e.what()).find("g9"), std::string::npos);
  }
}

TEST(Compare, QuartileJumpCounting) {
  // a: Q1 -> Q4 (jump 3), e: Q4 -> Q1 (jump 3), rest unchanged
  const auto c = rank_of(
      {{"a", 4.0}, {"b", 3.0}, {"c", 2.0}, {"d", 1.0}, {"e", 0.5}},
      ScoreVariant::C, "g");
  const auto wc = rank_of(
      {{"a", 0.5}, {"b", 3.0}, {"c", 2.0}, {"d", 1.0}, {"e", 4.0}},
      ScoreVariant::WC, "g");
  const auto report = tirank::build_report(
      {tirank::compare_cohort(c, wc)}, {{"g", "AREA-1"}});
  ASSERT_EQ(report.uda_stats.size(), 1u);
  EXPECT_EQ(report.uda_stats[0].shifted_1plus, 2);
  EXPECT_EQ(report.uda_stats[0].shifted_2plus, 2);
}

TEST(Compare, SensitivityCorrelation) {
  std::vector<tirank::SensitivityPoint> points = {
      {"g1", 0.1, 2.0}, {"g2", 0.2, 4.0}, {"g3", 0.3, 6.0}};
  EXPECT_DOUBLE_EQ(tirank::uncited_sensitivity_pearson(points), 1.0);

  points[2].avg_abs_percentile_shift = 0.0;
  EXPECT_LT(tirank::uncited_sensitivity_pearson(points), 1.0);

  try {
    tirank::uncited_sensitivity_pearson({{"g1", 0.1, 2.0}});
    FAIL();
  } catch (const tirank::error& e) {
    EXPECT_EQ(e.code(), errc::undefined_correlation);
  }
}

TEST(Compare, ReportSensitivityUndefinedStaysEmpty) {
  // two cohorts with identical uncited shares: constant x vector
  auto cohort = [](const std::string& id) {
    const auto c = rank_of({{"a", 1.0}, {"b", 0.5}}, ScoreVariant::C, id);
    return tirank::compare_cohort(
        c, rank_of({{"a", 1.0}, {"b", 0.5}}, ScoreVariant::WC, id));
  };
  const auto report = tirank::build_report(
      {cohort("g1"), cohort("g2")}, {{"g1", "A"}, {"g2", "A"}});
  EXPECT_FALSE(report.sensitivity_pearson.has_value());
}

}  // namespace
