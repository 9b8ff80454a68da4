#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tirank/compare.hpp"
#include "tirank/config.hpp"
#include "tirank/corpus.hpp"
#include "tirank/errors.hpp"
#include "tirank/impact.hpp"
#include "tirank/normalization.hpp"
#include "tirank/ranking.hpp"
#include "tirank/report.hpp"
#include "tirank/synth.hpp"
#include "tirank/version.hpp"

namespace tirank {

struct CorpusPaths {
  std::string professors;
  std::string publications;
  std::string bylines;
  std::string taxonomy;
  std::string weights;
};

inline CorpusPaths corpus_paths_in(const std::string& dir) {
  return CorpusPaths{dir + "/professors.csv", dir + "/publications.csv",
                     dir + "/bylines.csv", dir + "/taxonomy.csv",
                     dir + "/weights.csv"};
}

inline Corpus load_corpus(const CorpusPaths& paths,
                          const ObservationConfig& config) {
  return load_corpus(paths.professors, paths.publications, paths.bylines,
                     paths.taxonomy, paths.weights, config);
}

struct VariantSelection {
  bool c = true;
  bool wc = true;
};

inline VariantSelection parse_variant_selection(std::string_view s,
                                                const std::string& context) {
  s = trim(s);
  if (s == "c") return VariantSelection{true, false};
  if (s == "wc") return VariantSelection{false, true};
  if (s == "both") return VariantSelection{true, true};
  fail(errc::config, context + ": unknown variant selection '" + std::string(s) +
                         "' (expected c, wc, or both)");
}

// ---------------------------------------------------------------------------
// Run manifest

// FNV-1a, 64-bit, over the raw bytes of a file.
inline std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open '" + path + "'");
  std::uint64_t hash = 14695981039346656037ULL;
  char buffer[1 << 16];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 1099511628211ULL;
    }
  }
  return hash;
}

inline std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[80];
  std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buffer;
}

class Manifest {
 public:
  Manifest(std::string command) {
    body_["tool"] = kToolName;
    body_["version"] = kVersion;
    body_["command"] = std::move(command);
  }

  void add_input(const std::string& name, const std::string& path) {
    body_["inputs"][name] = {{"path", path},
                             {"digest_fnv1a64", hex64(fnv1a64_file(path))}};
  }

  void set_config(const ObservationConfig& config) {
    body_["config"] = {{"period_start", config.period_start_year},
                       {"period_end", config.period_end_year},
                       {"observation_year", config.observation_year},
                       {"cohort_key", cohort_key_name(config.cohort_key)}};
  }

  void set_seed(std::uint64_t seed) { body_["seed"] = seed; }

  // The timestamp is the only field that varies between identical runs.
  void write(const std::string& out_dir) const {
    nlohmann::json j = body_;
    j["created"] = utc_timestamp();
    std::ofstream out(out_dir + "/run_manifest.json", std::ios::binary);
    if (!out) fail(errc::io, "cannot write '" + out_dir + "/run_manifest.json'");
    out << j.dump(2) << '\n';
  }

 private:
  nlohmann::json body_;
};

inline void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    fail(errc::io, "cannot create output directory '" + out_dir +
                       "': " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// Stage logic

struct ScoreArtifacts {
  Baselines baselines;
  std::vector<ImpactScore> scores;  // requested variants, professor order
};

inline ScoreArtifacts score_stage(const Corpus& corpus,
                                  VariantSelection variants) {
  ScoreArtifacts artifacts;
  artifacts.baselines = build_baselines(corpus);
  if (variants.c) {
    auto c = compute_scores(corpus, ScoreVariant::C, artifacts.baselines);
    artifacts.scores.insert(artifacts.scores.end(), c.begin(), c.end());
  }
  if (variants.wc) {
    auto wc = compute_scores(corpus, ScoreVariant::WC, artifacts.baselines);
    artifacts.scores.insert(artifacts.scores.end(), wc.begin(), wc.end());
  }
  return artifacts;
}

struct RankArtifacts {
  std::vector<RankedCohort> cohorts;  // sorted by (cohort_id, variant)
  std::map<std::string, long long> n_publications;
};

// Groups scores into cohorts and ranks each (cohort, variant) list. The
// cohort map assigns professor_id -> cohort_id; professors missing from it
// are an error. Only requested variants are ranked; requesting variants the
// scores do not contain at all leaves nothing to rank, which is an error.
inline RankArtifacts rank_stage(const std::vector<ImpactScore>& scores,
                                const std::map<std::string, std::string>& cohort_of,
                                VariantSelection variants) {
  std::map<std::pair<std::string, int>,
           std::vector<std::pair<std::string, double>>>
      groups;
  std::set<std::pair<std::string, int>> seen;
  RankArtifacts artifacts;
  for (const auto& score : scores) {
    if ((score.variant == ScoreVariant::C && !variants.c) ||
        (score.variant == ScoreVariant::WC && !variants.wc)) {
      continue;
    }
    if (!seen.emplace(score.professor_id, static_cast<int>(score.variant))
             .second) {
      fail(errc::duplicate_key,
           "duplicate score row for professor '" + score.professor_id +
               "', variant " + variant_name(score.variant));
    }
    auto it = cohort_of.find(score.professor_id);
    if (it == cohort_of.end()) {
      fail(errc::schema, "professor '" + score.professor_id +
                             "' has a score but no cohort assignment");
    }
    groups[{it->second, static_cast<int>(score.variant)}].emplace_back(
        score.professor_id, score.value);
    artifacts.n_publications[score.professor_id] = score.n_publications;
  }
  if (groups.empty()) {
    fail(errc::empty_cohort, "no scores to rank for the requested variants");
  }
  for (const auto& [key, entries] : groups) {
    artifacts.cohorts.push_back(rank_cohort(
        entries, static_cast<ScoreVariant>(key.second), key.first));
  }
  return artifacts;
}

inline std::map<std::string, std::string> cohort_map_of(const Corpus& corpus) {
  std::map<std::string, std::string> cohort_of;
  for (const auto& professor : corpus.professors()) {
    cohort_of[professor.professor_id] = corpus.cohort_id_of(professor);
  }
  return cohort_of;
}

inline std::map<std::string, std::string> cohort_map_of(
    const std::vector<Professor>& professors, CohortKey key) {
  std::map<std::string, std::string> cohort_of;
  for (const auto& professor : professors) {
    cohort_of[professor.professor_id] =
        key == CohortKey::sds
            ? professor.sds_id
            : professor.sds_id + "|" + rank_name(professor.academic_rank);
  }
  return cohort_of;
}

// Cohort ids are the SDS (optionally "|rank"); the SDS prefix resolves the
// disciplinary area. Without a taxonomy each SDS is its own area.
inline std::map<std::string, std::string> uda_map_of(
    const std::vector<RankedCohort>& cohorts, const Taxonomy* taxonomy) {
  std::map<std::string, std::string> uda_of;
  for (const auto& cohort : cohorts) {
    const std::string sds = cohort.cohort_id.substr(0, cohort.cohort_id.find('|'));
    if (!taxonomy) {
      uda_of[cohort.cohort_id] = sds;
      continue;
    }
    auto it = taxonomy->uda_of_sds.find(sds);
    if (it == taxonomy->uda_of_sds.end()) {
      fail(errc::schema,
           "cohort '" + cohort.cohort_id + "': sds '" + sds +
               "' missing from taxonomy");
    }
    uda_of[cohort.cohort_id] = it->second;
  }
  return uda_of;
}

// Pairs each cohort's two variant rankings and builds the full report.
inline ComparisonReport compare_stage(
    const std::vector<RankedCohort>& cohorts,
    const std::map<std::string, std::string>& uda_of_cohort,
    const std::map<std::string, long long>* n_publications) {
  std::map<std::string, const RankedCohort*> c_of, wc_of;
  for (const auto& cohort : cohorts) {
    auto& slot =
        (cohort.variant == ScoreVariant::C ? c_of : wc_of)[cohort.cohort_id];
    if (slot) {
      fail(errc::duplicate_key, "cohort '" + cohort.cohort_id +
                                    "' appears twice under variant " +
                                    variant_name(cohort.variant));
    }
    slot = &cohort;
  }
  if (c_of.empty() && wc_of.empty()) {
    fail(errc::empty_cohort, "nothing to compare");
  }
  std::vector<CohortComparison> comparisons;
  for (const auto& [cohort_id, ranked_c] : c_of) {
    auto it = wc_of.find(cohort_id);
    if (it == wc_of.end()) {
      fail(errc::cohort_mismatch,
           "cohort '" + cohort_id + "' has no wc-variant ranking");
    }
    comparisons.push_back(compare_cohort(*ranked_c, *it->second, n_publications));
    wc_of.erase(it);
  }
  if (!wc_of.empty()) {
    fail(errc::cohort_mismatch, "cohort '" + wc_of.begin()->first +
                                    "' has no c-variant ranking");
  }
  return build_report(std::move(comparisons), uda_of_cohort);
}

// ---------------------------------------------------------------------------
// File-level commands. Each writes its outputs plus one run manifest into
// out_dir and also returns the computed artifacts.

inline void write_report_files(const ComparisonReport& report,
                               const std::string& out_dir,
                               const Precision& precision) {
  write_comparison_csv(report, out_dir + "/comparison.csv", precision);
  write_cohort_stats_csv(report, out_dir + "/cohort_stats.csv", precision);
  write_uda_stats_csv(report, out_dir + "/uda_stats.csv", precision);
  write_contingency_csv(report, out_dir + "/contingency.csv", precision);
  write_scatter_csv(report, out_dir + "/scatter.csv", precision);
  write_shift_histogram_csv(report, out_dir + "/shift_histogram.csv", precision);
  write_boxplot_csv(report, out_dir + "/boxplot.csv", precision);
}

inline ScoreArtifacts run_score(const CorpusPaths& paths,
                                const ObservationConfig& config,
                                VariantSelection variants,
                                const std::string& out_dir,
                                const Precision& precision = {}) {
  const Corpus corpus = load_corpus(paths, config);
  ScoreArtifacts artifacts = score_stage(corpus, variants);
  ensure_out_dir(out_dir);
  write_baselines_csv(artifacts.baselines, out_dir + "/baselines.csv");
  write_scores_csv(artifacts.scores, out_dir + "/scores.csv", precision);
  Manifest manifest("score");
  manifest.add_input("professors", paths.professors);
  manifest.add_input("publications", paths.publications);
  manifest.add_input("bylines", paths.bylines);
  manifest.add_input("taxonomy", paths.taxonomy);
  manifest.add_input("weights", paths.weights);
  manifest.set_config(config);
  manifest.write(out_dir);
  return artifacts;
}

inline RankArtifacts run_rank(const std::string& scores_path,
                              const std::optional<std::string>& professors_path,
                              const ObservationConfig& config,
                              VariantSelection variants,
                              const std::string& out_dir,
                              const Precision& precision = {}) {
  const std::vector<ImpactScore> scores = read_scores_csv(scores_path);
  std::map<std::string, std::string> cohort_of;
  if (professors_path) {
    cohort_of =
        cohort_map_of(read_professors_csv(*professors_path), config.cohort_key);
  } else {
    // No professor roster: every scored professor forms one cohort.
    for (const auto& score : scores) cohort_of[score.professor_id] = "all";
  }
  RankArtifacts artifacts = rank_stage(scores, cohort_of, variants);
  ensure_out_dir(out_dir);
  write_ranking_csv(artifacts.cohorts, out_dir + "/ranking.csv", precision,
                    &artifacts.n_publications);
  Manifest manifest("rank");
  manifest.add_input("scores", scores_path);
  if (professors_path) manifest.add_input("professors", *professors_path);
  manifest.set_config(config);
  manifest.write(out_dir);
  return artifacts;
}

inline ComparisonReport run_compare(
    const std::string& ranking_path,
    const std::optional<std::string>& taxonomy_path, const std::string& out_dir,
    const Precision& precision = {}) {
  const RankingFile file = read_ranking_csv(ranking_path);
  std::optional<Taxonomy> taxonomy;
  if (taxonomy_path) taxonomy = read_taxonomy_csv(*taxonomy_path);
  const auto uda_of =
      uda_map_of(file.cohorts, taxonomy ? &*taxonomy : nullptr);
  ComparisonReport report =
      compare_stage(file.cohorts, uda_of, &file.n_publications);
  ensure_out_dir(out_dir);
  write_report_files(report, out_dir, precision);
  Manifest manifest("compare");
  manifest.add_input("ranking", ranking_path);
  if (taxonomy_path) manifest.add_input("taxonomy", *taxonomy_path);
  manifest.write(out_dir);
  return report;
}

inline Corpus run_synth(const SynthSpec& spec, const std::string& out_dir) {
  Corpus corpus = generate_corpus(spec);
  ensure_out_dir(out_dir);
  write_corpus_files(corpus, out_dir);
  Manifest manifest("synth");
  manifest.set_seed(spec.seed);
  ObservationConfig config;
  config.period_start_year = spec.period_start_year;
  config.period_end_year = spec.period_end_year;
  config.observation_year = spec.observation_year;
  manifest.set_config(config);
  manifest.write(out_dir);
  return corpus;
}

struct PipelineArtifacts {
  LoadReport load_report;
  Baselines baselines;
  std::vector<ImpactScore> scores;
  std::vector<RankedCohort> cohorts;
  ComparisonReport report;
};

// All stages on one corpus: baselines, both variant scores, per-cohort
// rankings, and the full comparison report, under a single manifest.
inline PipelineArtifacts run_pipeline(const CorpusPaths& paths,
                                      const ObservationConfig& config,
                                      const std::string& out_dir,
                                      const Precision& precision = {}) {
  const Corpus corpus = load_corpus(paths, config);
  PipelineArtifacts artifacts;
  artifacts.load_report = corpus.load_report();
  ScoreArtifacts scored = score_stage(corpus, VariantSelection{true, true});
  artifacts.baselines = std::move(scored.baselines);
  artifacts.scores = std::move(scored.scores);
  RankArtifacts ranked =
      rank_stage(artifacts.scores, cohort_map_of(corpus), {true, true});
  artifacts.cohorts = std::move(ranked.cohorts);
  artifacts.report =
      compare_stage(artifacts.cohorts,
                    uda_map_of(artifacts.cohorts, &corpus.taxonomy()),
                    &ranked.n_publications);
  ensure_out_dir(out_dir);
  write_baselines_csv(artifacts.baselines, out_dir + "/baselines.csv");
  write_scores_csv(artifacts.scores, out_dir + "/scores.csv", precision);
  write_ranking_csv(artifacts.cohorts, out_dir + "/ranking.csv", precision,
                    &ranked.n_publications);
  write_report_files(artifacts.report, out_dir, precision);
  Manifest manifest("pipeline");
  manifest.add_input("professors", paths.professors);
  manifest.add_input("publications", paths.publications);
  manifest.add_input("bylines", paths.bylines);
  manifest.add_input("taxonomy", paths.taxonomy);
  manifest.add_input("weights", paths.weights);
  manifest.set_config(config);
  manifest.write(out_dir);
  return artifacts;
}

}  // namespace tirank
