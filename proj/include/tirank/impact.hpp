#pragma once

#include <string>
#include <vector>

#include "tirank/corpus.hpp"
#include "tirank/credit.hpp"
#include "tirank/errors.hpp"
#include "tirank/normalization.hpp"

namespace tirank {

// C scores publications by normalized early citations alone; WC blends
// normalized citations with the normalized journal impact factor.
enum class ScoreVariant { C, WC };

inline const char* variant_name(ScoreVariant v) {
  return v == ScoreVariant::C ? "c" : "wc";
}

inline ScoreVariant parse_variant(std::string_view s, const std::string& context) {
  s = trim(s);
  if (s == "c") return ScoreVariant::C;
  if (s == "wc") return ScoreVariant::WC;
  fail(errc::schema, context + ": unknown variant '" + std::string(s) + "'");
}

struct ImpactScore {
  std::string professor_id;
  ScoreVariant variant{};
  double value = 0.0;
  long long n_publications = 0;  // publications attributed via byline links
  int t = 0;                     // years on staff
  bool operator==(const ImpactScore&) const = default;
};

inline double publication_score(const Publication& pub, ScoreVariant variant,
                                const Baselines& baselines,
                                const WeightsTable& weights,
                                int observation_year) {
  const double nc = normalized_citations(pub, baselines);
  if (variant == ScoreVariant::C) return nc;
  const int window = citation_window(pub.year, observation_year);
  const Weights* w = weights.find(pub.sc_id, window);
  if (!w) {
    fail(errc::missing_weights, "no weights for sc '" + pub.sc_id +
                                    "', window " + std::to_string(window));
  }
  return w->w_citation * nc + w->w_if * normalized_if(pub, baselines);
}

// Yearly total impact: the credit-weighted sum of attributed publication
// scores, averaged over years on staff.
inline ImpactScore total_impact(const Professor& professor, ScoreVariant variant,
                                const Corpus& corpus,
                                const Baselines& baselines) {
  ImpactScore score;
  score.professor_id = professor.professor_id;
  score.variant = variant;
  score.t = professor.years_on_staff;
  const BylinePolicy policy = corpus.policy_of(professor);
  double sum = 0.0;
  for (const auto& attribution : corpus.attributions_of(professor)) {
    const Publication& pub = corpus.publications()[attribution.publication_index];
    const Byline& byline = corpus.bylines()[attribution.byline_index];
    const double pub_score =
        publication_score(pub, variant, baselines, corpus.weights(),
                          corpus.config().observation_year);
    const CreditVector credit = fractional_contributions(byline, policy);
    sum += pub_score * share_of_positions(credit, attribution.positions);
    ++score.n_publications;
  }
  score.value = sum / static_cast<double>(score.t);
  return score;
}

inline std::vector<ImpactScore> compute_scores(const Corpus& corpus,
                                               ScoreVariant variant,
                                               const Baselines& baselines) {
  std::vector<ImpactScore> scores;
  scores.reserve(corpus.professors().size());
  for (const auto& professor : corpus.professors()) {
    scores.push_back(total_impact(professor, variant, corpus, baselines));
  }
  return scores;
}

}  // namespace tirank
