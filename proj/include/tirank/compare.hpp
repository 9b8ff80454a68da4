#pragma once

#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tirank/errors.hpp"
#include "tirank/ranking.hpp"
#include "tirank/stats.hpp"

namespace tirank {

// Relative score change is undefined on a zero base: infinite when only the
// C score is zero, not applicable when both variants score zero.
enum class DeltaScoreKind { finite, infinite, not_applicable };

struct DeltaRow {
  std::string professor_id;
  double score_c = 0.0;
  double score_wc = 0.0;
  int rank_c = 0;
  int rank_wc = 0;
  double percentile_c = 0.0;
  double percentile_wc = 0.0;
  DeltaScoreKind delta_score_kind = DeltaScoreKind::finite;
  double delta_score_pct = 0.0;  // meaningful only when kind == finite
  int delta_rank = 0;            // rank_c - rank_wc; positive = improvement
  double delta_percentile = 0.0; // percentile_wc - percentile_c
  Quartile quartile_c = Quartile::Q4;
  Quartile quartile_wc = Quartile::Q4;
  bool operator==(const DeltaRow&) const = default;
};

inline std::string render_delta_rank(int delta) {
  if (delta == 0) return "0 =";
  const int magnitude = delta > 0 ? delta : -delta;
  return std::to_string(magnitude) + (delta > 0 ? " ↑" : " ↓");
}

struct CohortComparison {
  std::string cohort_id;
  std::vector<DeltaRow> rows;  // in C-variant ranking order
  std::optional<double> pearson_scores;   // nullopt when undefined
  std::optional<double> spearman_ranks;
  double avg_abs_percentile_shift = 0.0;
  double share_unshifted = 0.0;  // share with unchanged rank label
  double uncited_share = 0.0;    // uncited productive professors / cohort size
  long long n_professors = 0;
};

// Pairs the two variant rankings of one cohort. Rows follow the C ranking
// order. Productivity (publication counts) distinguishes uncited professors
// from unproductive ones; with no counts supplied every zero C score counts
// as uncited.
inline CohortComparison compare_cohort(
    const RankedCohort& ranked_c, const RankedCohort& ranked_wc,
    const std::map<std::string, long long>* n_publications = nullptr) {
  if (!ranked_c.cohort_id.empty() && !ranked_wc.cohort_id.empty() &&
      ranked_c.cohort_id != ranked_wc.cohort_id) {
    fail(errc::cohort_mismatch, "comparing different cohorts '" +
                                    ranked_c.cohort_id + "' and '" +
                                    ranked_wc.cohort_id + "'");
  }
  std::map<std::string, const RankedEntry*> wc_of;
  for (const auto& entry : ranked_wc.entries) {
    wc_of[entry.professor_id] = &entry;
  }
  if (wc_of.size() != ranked_c.entries.size() ||
      ranked_wc.entries.size() != ranked_c.entries.size()) {
    fail(errc::cohort_mismatch,
         "cohort '" + ranked_c.cohort_id + "': professor sets differ");
  }

  CohortComparison comparison;
  comparison.cohort_id = ranked_c.cohort_id;
  comparison.n_professors = static_cast<long long>(ranked_c.entries.size());
  double shift_sum = 0.0;
  long long unshifted = 0;
  long long uncited = 0;
  for (const auto& c : ranked_c.entries) {
    auto it = wc_of.find(c.professor_id);
    if (it == wc_of.end()) {
      fail(errc::cohort_mismatch, "cohort '" + ranked_c.cohort_id +
                                      "': professor '" + c.professor_id +
                                      "' missing from one variant");
    }
    const RankedEntry& wc = *it->second;
    DeltaRow row;
    row.professor_id = c.professor_id;
    row.score_c = c.score;
    row.score_wc = wc.score;
    row.rank_c = c.rank;
    row.rank_wc = wc.rank;
    row.percentile_c = c.percentile;
    row.percentile_wc = wc.percentile;
    if (c.score > 0) {
      row.delta_score_kind = DeltaScoreKind::finite;
      row.delta_score_pct = 100.0 * (wc.score - c.score) / c.score;
    } else if (wc.score > 0) {
      row.delta_score_kind = DeltaScoreKind::infinite;
    } else {
      row.delta_score_kind = DeltaScoreKind::not_applicable;
    }
    row.delta_rank = c.rank - wc.rank;
    row.delta_percentile = wc.percentile - c.percentile;
    row.quartile_c = c.quartile;
    row.quartile_wc = wc.quartile;

    shift_sum += row.delta_percentile < 0 ? -row.delta_percentile
                                          : row.delta_percentile;
    if (row.delta_rank == 0) ++unshifted;
    const bool productive =
        !n_publications || [&] {
          auto pit = n_publications->find(c.professor_id);
          return pit != n_publications->end() && pit->second > 0;
        }();
    if (c.score == 0.0 && productive) ++uncited;
    comparison.rows.push_back(std::move(row));
  }
  const double n = static_cast<double>(comparison.n_professors);
  comparison.avg_abs_percentile_shift = shift_sum / n;
  comparison.share_unshifted = static_cast<double>(unshifted) / n;
  comparison.uncited_share = static_cast<double>(uncited) / n;
  if (comparison.n_professors >= 2) {
    std::vector<double> xs, ys;
    xs.reserve(comparison.rows.size());
    ys.reserve(comparison.rows.size());
    for (const auto& row : comparison.rows) {
      xs.push_back(row.score_c);
      ys.push_back(row.score_wc);
    }
    try {
      comparison.pearson_scores = pearson(xs, ys);
    } catch (const error& e) {
      if (e.code() != errc::undefined_correlation) throw;
    }
    try {
      comparison.spearman_ranks = spearman(xs, ys);
    } catch (const error& e) {
      if (e.code() != errc::undefined_correlation) throw;
    }
  }
  return comparison;
}

// Quartile cross-classification over the whole population: counts[i][j] is
// the number of professors in quartile i+1 under C and j+1 under WC.
struct Contingency {
  std::array<std::array<long long, 4>, 4> counts{};
  long long total = 0;

  double share(int i, int j) const {
    return total == 0 ? 0.0
                      : static_cast<double>(counts[static_cast<size_t>(i)]
                                                  [static_cast<size_t>(j)]) /
                            static_cast<double>(total);
  }
  double diagonal_share() const {
    long long d = 0;
    for (int i = 0; i < 4; ++i) {
      d += counts[static_cast<size_t>(i)][static_cast<size_t>(i)];
    }
    return total == 0 ? 0.0
                      : static_cast<double>(d) / static_cast<double>(total);
  }
  bool operator==(const Contingency&) const = default;
};

inline Contingency quartile_contingency(
    const std::vector<CohortComparison>& cohorts) {
  Contingency contingency;
  for (const auto& cohort : cohorts) {
    for (const auto& row : cohort.rows) {
      ++contingency.counts[static_cast<size_t>(quartile_index(row.quartile_c))]
                          [static_cast<size_t>(quartile_index(row.quartile_wc))];
      ++contingency.total;
    }
  }
  return contingency;
}

struct UdaShiftStats {
  std::string uda_id;
  long long n_cohorts = 0;
  long long n_professors = 0;
  long long shifted_1plus = 0;  // professors moving at least one quartile
  long long shifted_2plus = 0;
  std::vector<double> cohort_shifts;  // avg shift per cohort, cohort_id order
  double min_shift = 0.0;
  double max_shift = 0.0;
  double mean_shift = 0.0;
  double stdev_shift = 0.0;
};

struct SensitivityPoint {
  std::string cohort_id;
  double uncited_share = 0.0;
  double avg_abs_percentile_shift = 0.0;
  bool operator==(const SensitivityPoint&) const = default;
};

// Correlation between cohort uncited shares and average percentile shifts.
inline double uncited_sensitivity_pearson(
    const std::vector<SensitivityPoint>& points) {
  if (points.size() < 2) {
    fail(errc::undefined_correlation,
         "uncited-share sensitivity needs at least 2 cohorts");
  }
  std::vector<double> shares, shifts;
  shares.reserve(points.size());
  shifts.reserve(points.size());
  for (const auto& point : points) {
    shares.push_back(point.uncited_share);
    shifts.push_back(point.avg_abs_percentile_shift);
  }
  return pearson(shares, shifts);
}

struct ComparisonReport {
  std::vector<CohortComparison> cohorts;  // sorted by cohort_id
  Contingency contingency;
  std::vector<UdaShiftStats> uda_stats;   // sorted by uda_id
  std::vector<SensitivityPoint> sensitivity;  // sorted by cohort_id
  std::optional<double> sensitivity_pearson;  // nullopt when undefined
};

// Aggregates per-cohort comparisons into the full report. uda_of_cohort maps
// every cohort_id to its disciplinary area; a missing mapping is an error.
inline ComparisonReport build_report(
    std::vector<CohortComparison> cohorts,
    const std::map<std::string, std::string>& uda_of_cohort) {
  std::sort(cohorts.begin(), cohorts.end(),
            [](const CohortComparison& a, const CohortComparison& b) {
              return a.cohort_id < b.cohort_id;
            });
  ComparisonReport report;
  report.cohorts = std::move(cohorts);
  report.contingency = quartile_contingency(report.cohorts);

  std::map<std::string, UdaShiftStats> by_uda;
  for (const auto& cohort : report.cohorts) {
    auto it = uda_of_cohort.find(cohort.cohort_id);
    if (it == uda_of_cohort.end()) {
      fail(errc::schema,
           "no disciplinary area mapping for cohort '" + cohort.cohort_id + "'");
    }
    UdaShiftStats& uda = by_uda[it->second];
    uda.uda_id = it->second;
    ++uda.n_cohorts;
    uda.n_professors += cohort.n_professors;
    uda.cohort_shifts.push_back(cohort.avg_abs_percentile_shift);
    for (const auto& row : cohort.rows) {
      const int jump = std::abs(quartile_index(row.quartile_c) -
                                quartile_index(row.quartile_wc));
      if (jump >= 1) ++uda.shifted_1plus;
      if (jump >= 2) ++uda.shifted_2plus;
    }
  }
  for (auto& [uda_id, uda] : by_uda) {
    uda.min_shift = *std::min_element(uda.cohort_shifts.begin(),
                                      uda.cohort_shifts.end());
    uda.max_shift = *std::max_element(uda.cohort_shifts.begin(),
                                      uda.cohort_shifts.end());
    uda.mean_shift = mean(uda.cohort_shifts);
    uda.stdev_shift = population_stdev(uda.cohort_shifts);
    report.uda_stats.push_back(std::move(uda));
  }

  for (const auto& cohort : report.cohorts) {
    report.sensitivity.push_back(SensitivityPoint{
        cohort.cohort_id, cohort.uncited_share,
        cohort.avg_abs_percentile_shift});
  }
  if (report.sensitivity.size() >= 2) {
    try {
      report.sensitivity_pearson = uncited_sensitivity_pearson(report.sensitivity);
    } catch (const error& e) {
      if (e.code() != errc::undefined_correlation) throw;
    }
  }
  return report;
}

}  // namespace tirank
