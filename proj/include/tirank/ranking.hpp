#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tirank/errors.hpp"
#include "tirank/impact.hpp"

namespace tirank {

enum class Quartile { Q1, Q2, Q3, Q4 };

inline const char* quartile_name(Quartile q) {
  switch (q) {
    case Quartile::Q1: return "Q1";
    case Quartile::Q2: return "Q2";
    case Quartile::Q3: return "Q3";
    case Quartile::Q4: return "Q4";
  }
  return "?";
}

inline int quartile_index(Quartile q) { return static_cast<int>(q); }

inline Quartile parse_quartile(std::string_view s, const std::string& context) {
  s = trim(s);
  if (s == "Q1") return Quartile::Q1;
  if (s == "Q2") return Quartile::Q2;
  if (s == "Q3") return Quartile::Q3;
  if (s == "Q4") return Quartile::Q4;
  fail(errc::schema, context + ": unknown quartile '" + std::string(s) + "'");
}

// Q1 is closed at 75; the lower quartiles are half-open below it.
inline Quartile quartile_of(double percentile) {
  if (percentile >= 75.0) return Quartile::Q1;
  if (percentile >= 50.0) return Quartile::Q2;
  if (percentile >= 25.0) return Quartile::Q3;
  return Quartile::Q4;
}

struct RankedEntry {
  std::string professor_id;
  double score = 0.0;
  int rank = 0;  // competition ranking, 1-based; ties share the best position
  double percentile = 0.0;
  Quartile quartile = Quartile::Q4;
  bool operator==(const RankedEntry&) const = default;
};

struct RankedCohort {
  std::string cohort_id;
  ScoreVariant variant{};
  std::vector<RankedEntry> entries;  // sorted by rank, then professor_id
  bool operator==(const RankedCohort&) const = default;
};

inline void assign_quartiles(RankedCohort& cohort) {
  for (auto& entry : cohort.entries) {
    entry.quartile = quartile_of(entry.percentile);
  }
}

// Percentile scale is 0 (worst) to 100 (best): 100 * (N - rank) / (N - 1),
// with zero-score entries forced to percentile 0 whatever their rank.
inline RankedCohort rank_cohort(
    const std::vector<std::pair<std::string, double>>& scores,
    ScoreVariant variant, const std::string& cohort_id = {}) {
  if (scores.empty()) {
    fail(errc::empty_cohort, "cohort '" + cohort_id + "' has no professors");
  }
  RankedCohort cohort;
  cohort.cohort_id = cohort_id;
  cohort.variant = variant;
  cohort.entries.reserve(scores.size());
  for (const auto& [professor_id, score] : scores) {
    if (score < 0) {
      fail(errc::domain, "professor '" + professor_id + "': negative score");
    }
    cohort.entries.push_back(RankedEntry{professor_id, score, 0, 0.0});
  }
  std::sort(cohort.entries.begin(), cohort.entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.professor_id < b.professor_id;
            });
  const size_t n = cohort.entries.size();
  for (size_t i = 0; i < n; ++i) {
    cohort.entries[i].rank =
        (i > 0 && cohort.entries[i].score == cohort.entries[i - 1].score)
            ? cohort.entries[i - 1].rank
            : static_cast<int>(i) + 1;
  }
  for (auto& entry : cohort.entries) {
    if (entry.score == 0.0) {
      entry.percentile = 0.0;
    } else if (n == 1) {
      entry.percentile = 100.0;
    } else {
      entry.percentile = 100.0 * static_cast<double>(n - entry.rank) /
                         static_cast<double>(n - 1);
    }
  }
  assign_quartiles(cohort);
  return cohort;
}

}  // namespace tirank
