#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "tirank/compare.hpp"
#include "tirank/csv.hpp"
#include "tirank/impact.hpp"
#include "tirank/ranking.hpp"
#include "tirank/stats.hpp"
#include "tirank/text.hpp"

namespace tirank {

// Table formatting: scores and correlations to 3 decimals, percentiles and
// percentages to 1, with a switch for full shortest-round-trip precision.
struct Precision {
  bool full = false;

  std::string score(double v) const {
    return full ? format_full(v) : format_fixed(v, 3);
  }
  std::string percent(double v) const {
    return full ? format_full(v) : format_fixed(v, 1);
  }
  std::string correlation(double v) const {
    return full ? format_full(v) : format_fixed(v, 3);
  }
};

inline const char* kInfinityToken = "inf";
inline const char* kNotApplicableToken = "n.a.";

inline std::string delta_score_cell(const DeltaRow& row, const Precision& precision) {
  switch (row.delta_score_kind) {
    case DeltaScoreKind::infinite: return kInfinityToken;
    case DeltaScoreKind::not_applicable: return kNotApplicableToken;
    case DeltaScoreKind::finite: break;
  }
  return precision.percent(row.delta_score_pct);
}

// ---------------------------------------------------------------------------
// scores.csv

inline void write_scores_csv(const std::vector<ImpactScore>& scores,
                             const std::string& path,
                             const Precision& precision = {}) {
  std::vector<const ImpactScore*> ordered;
  ordered.reserve(scores.size());
  for (const auto& score : scores) ordered.push_back(&score);
  std::sort(ordered.begin(), ordered.end(),
            [](const ImpactScore* a, const ImpactScore* b) {
              if (a->professor_id != b->professor_id) {
                return a->professor_id < b->professor_id;
              }
              return static_cast<int>(a->variant) < static_cast<int>(b->variant);
            });
  csv::Writer out(path);
  out.row({"professor_id", "variant", "value", "n_publications", "t"});
  for (const ImpactScore* score : ordered) {
    out.row({score->professor_id, variant_name(score->variant),
             precision.score(score->value), std::to_string(score->n_publications),
             std::to_string(score->t)});
  }
}

inline std::vector<ImpactScore> read_scores_csv(const std::string& path) {
  auto table = csv::read_table(
      path, {"professor_id", "variant", "value", "n_publications", "t"});
  std::vector<ImpactScore> scores;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = table.context(r);
    ImpactScore score;
    score.professor_id = std::string(trim(row[0]));
    if (score.professor_id.empty()) fail(errc::schema, context + ": empty professor_id");
    score.variant = parse_variant(row[1], context);
    score.value = parse_double_field(row[2], context);
    if (score.value < 0) fail(errc::schema, context + ": negative value");
    score.n_publications = parse_int_field(row[3], context);
    if (score.n_publications < 0) fail(errc::schema, context + ": negative n_publications");
    score.t = static_cast<int>(parse_int_field(row[4], context));
    if (score.t < 1) fail(errc::schema, context + ": t must be >= 1");
    scores.push_back(std::move(score));
  }
  return scores;
}

// ---------------------------------------------------------------------------
// ranking.csv

struct RankingFile {
  std::vector<RankedCohort> cohorts;  // sorted by (cohort_id, variant)
  std::map<std::string, long long> n_publications;  // per professor, when known
};

inline void write_ranking_csv(
    const std::vector<RankedCohort>& cohorts, const std::string& path,
    const Precision& precision = {},
    const std::map<std::string, long long>* n_publications = nullptr) {
  std::vector<const RankedCohort*> ordered;
  ordered.reserve(cohorts.size());
  for (const auto& cohort : cohorts) ordered.push_back(&cohort);
  std::sort(ordered.begin(), ordered.end(),
            [](const RankedCohort* a, const RankedCohort* b) {
              if (a->cohort_id != b->cohort_id) return a->cohort_id < b->cohort_id;
              return static_cast<int>(a->variant) < static_cast<int>(b->variant);
            });
  csv::Writer out(path);
  out.row({"cohort_id", "variant", "professor_id", "score", "rank", "percentile",
           "quartile", "n_publications"});
  for (const RankedCohort* cohort : ordered) {
    for (const auto& entry : cohort->entries) {
      std::string pubs;
      if (n_publications) {
        auto it = n_publications->find(entry.professor_id);
        if (it != n_publications->end()) pubs = std::to_string(it->second);
      }
      out.row({cohort->cohort_id, variant_name(cohort->variant),
               entry.professor_id, precision.score(entry.score),
               std::to_string(entry.rank), precision.percent(entry.percentile),
               quartile_name(entry.quartile), pubs});
    }
  }
}

inline RankingFile read_ranking_csv(const std::string& path) {
  auto table = csv::read_table(
      path, {"cohort_id", "variant", "professor_id", "score", "rank",
             "percentile", "quartile", "n_publications"});
  RankingFile file;
  std::map<std::pair<std::string, int>, size_t> cohort_of;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = table.context(r);
    std::string cohort_id(trim(row[0]));
    ScoreVariant variant = parse_variant(row[1], context);
    RankedEntry entry;
    entry.professor_id = std::string(trim(row[2]));
    if (entry.professor_id.empty()) fail(errc::schema, context + ": empty professor_id");
    entry.score = parse_double_field(row[3], context);
    if (entry.score < 0) fail(errc::schema, context + ": negative score");
    entry.rank = static_cast<int>(parse_int_field(row[4], context));
    if (entry.rank < 1) fail(errc::schema, context + ": rank must be >= 1");
    entry.percentile = parse_double_field(row[5], context);
    if (entry.percentile < 0 || entry.percentile > 100) {
      fail(errc::schema, context + ": percentile outside [0, 100]");
    }
    entry.quartile = parse_quartile(row[6], context);
    if (!trim(row[7]).empty()) {
      const long long pubs = parse_int_field(row[7], context);
      if (pubs < 0) fail(errc::schema, context + ": negative n_publications");
      file.n_publications[entry.professor_id] = pubs;
    }
    auto key = std::make_pair(cohort_id, static_cast<int>(variant));
    auto it = cohort_of.find(key);
    if (it == cohort_of.end()) {
      it = cohort_of.emplace(key, file.cohorts.size()).first;
      file.cohorts.push_back(RankedCohort{cohort_id, variant, {}});
    }
    file.cohorts[it->second].entries.push_back(std::move(entry));
  }
  std::sort(file.cohorts.begin(), file.cohorts.end(),
            [](const RankedCohort& a, const RankedCohort& b) {
              if (a.cohort_id != b.cohort_id) return a.cohort_id < b.cohort_id;
              return static_cast<int>(a.variant) < static_cast<int>(b.variant);
            });
  return file;
}

// ---------------------------------------------------------------------------
// comparison.csv and the aggregate report files

inline void write_comparison_csv(const ComparisonReport& report,
                                 const std::string& path,
                                 const Precision& precision = {}) {
  csv::Writer out(path);
  out.row({"cohort_id", "professor_id", "score_c", "score_wc", "rank_c",
           "rank_wc", "percentile_c", "percentile_wc", "delta_score_pct",
           "delta_rank", "delta_rank_label", "delta_percentile", "quartile_c",
           "quartile_wc"});
  for (const auto& cohort : report.cohorts) {
    for (const auto& row : cohort.rows) {
      out.row({cohort.cohort_id, row.professor_id, precision.score(row.score_c),
               precision.score(row.score_wc), std::to_string(row.rank_c),
               std::to_string(row.rank_wc), precision.percent(row.percentile_c),
               precision.percent(row.percentile_wc),
               delta_score_cell(row, precision), std::to_string(row.delta_rank),
               render_delta_rank(row.delta_rank),
               precision.percent(row.delta_percentile),
               quartile_name(row.quartile_c), quartile_name(row.quartile_wc)});
    }
  }
}

inline void write_cohort_stats_csv(const ComparisonReport& report,
                                   const std::string& path,
                                   const Precision& precision = {}) {
  csv::Writer out(path);
  out.row({"cohort_id", "n_professors", "pearson_scores", "spearman_ranks",
           "avg_abs_percentile_shift", "share_unshifted_pct",
           "uncited_share_pct"});
  for (const auto& cohort : report.cohorts) {
    out.row({cohort.cohort_id, std::to_string(cohort.n_professors),
             cohort.pearson_scores ? precision.correlation(*cohort.pearson_scores)
                                   : std::string(),
             cohort.spearman_ranks ? precision.correlation(*cohort.spearman_ranks)
                                   : std::string(),
             precision.percent(cohort.avg_abs_percentile_shift),
             precision.percent(100.0 * cohort.share_unshifted),
             precision.percent(100.0 * cohort.uncited_share)});
  }
}

inline void write_uda_stats_csv(const ComparisonReport& report,
                                const std::string& path,
                                const Precision& precision = {}) {
  csv::Writer out(path);
  out.row({"uda_id", "n_cohorts", "n_professors", "min_shift", "max_shift",
           "mean_shift", "stdev_shift", "shifted_1plus", "shifted_2plus",
           "shifted_1plus_pct", "shifted_2plus_pct"});
  for (const auto& uda : report.uda_stats) {
    const double n = static_cast<double>(uda.n_professors);
    out.row({uda.uda_id, std::to_string(uda.n_cohorts),
             std::to_string(uda.n_professors), precision.percent(uda.min_shift),
             precision.percent(uda.max_shift), precision.percent(uda.mean_shift),
             precision.percent(uda.stdev_shift),
             std::to_string(uda.shifted_1plus), std::to_string(uda.shifted_2plus),
             precision.percent(100.0 * static_cast<double>(uda.shifted_1plus) / n),
             precision.percent(100.0 * static_cast<double>(uda.shifted_2plus) / n)});
  }
}

inline void write_contingency_csv(const ComparisonReport& report,
                                  const std::string& path,
                                  const Precision& precision = {}) {
  csv::Writer out(path);
  out.row({"quartile_c", "q1_wc_pct", "q2_wc_pct", "q3_wc_pct", "q4_wc_pct"});
  for (int i = 0; i < 4; ++i) {
    std::vector<std::string> cells;
    cells.push_back(quartile_name(static_cast<Quartile>(i)));
    for (int j = 0; j < 4; ++j) {
      cells.push_back(precision.percent(100.0 * report.contingency.share(i, j)));
    }
    out.row(cells);
  }
}

inline void write_scatter_csv(const ComparisonReport& report,
                              const std::string& path,
                              const Precision& precision = {}) {
  csv::Writer out(path);
  out.row({"series", "cohort_id", "key", "x", "y"});
  for (const auto& cohort : report.cohorts) {
    for (const auto& row : cohort.rows) {
      out.row({"score", cohort.cohort_id, row.professor_id,
               precision.score(row.score_c), precision.score(row.score_wc)});
    }
  }
  for (const auto& cohort : report.cohorts) {
    for (const auto& row : cohort.rows) {
      out.row({"percentile", cohort.cohort_id, row.professor_id,
               precision.percent(row.percentile_c),
               precision.percent(row.percentile_wc)});
    }
  }
  for (const auto& point : report.sensitivity) {
    out.row({"uncited_sensitivity", point.cohort_id, point.cohort_id,
             precision.score(point.uncited_share),
             precision.percent(point.avg_abs_percentile_shift)});
  }
}

// Signed percentile-shift distribution in unit-width bins [lo, lo + 1).
inline void write_shift_histogram_csv(const ComparisonReport& report,
                                      const std::string& path,
                                      const Precision& precision = {}) {
  std::map<long long, long long> bins;
  long long total = 0;
  for (const auto& cohort : report.cohorts) {
    for (const auto& row : cohort.rows) {
      ++bins[static_cast<long long>(std::floor(row.delta_percentile))];
      ++total;
    }
  }
  csv::Writer out(path);
  out.row({"bin_lo", "bin_hi", "count", "share_pct"});
  for (const auto& [lo, count] : bins) {
    out.row({std::to_string(lo), std::to_string(lo + 1), std::to_string(count),
             precision.percent(100.0 * static_cast<double>(count) /
                               static_cast<double>(total))});
  }
}

// Five-number summary of per-cohort average shifts within each area.
inline void write_boxplot_csv(const ComparisonReport& report,
                              const std::string& path,
                              const Precision& precision = {}) {
  csv::Writer out(path);
  out.row({"uda_id", "min", "q1", "median", "q3", "max"});
  for (const auto& uda : report.uda_stats) {
    out.row({uda.uda_id, precision.percent(uda.min_shift),
             precision.percent(quantile(uda.cohort_shifts, 0.25)),
             precision.percent(quantile(uda.cohort_shifts, 0.5)),
             precision.percent(quantile(uda.cohort_shifts, 0.75)),
             precision.percent(uda.max_shift)});
  }
}

}  // namespace tirank
