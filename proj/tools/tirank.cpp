#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tirank/pipeline.hpp"

namespace {

struct CorpusFileOptions {
  std::string corpus_dir;
  std::string professors, publications, bylines, taxonomy, weights;

  void attach(CLI::App* cmd) {
    cmd->add_option("--corpus-dir", corpus_dir,
                    "Directory holding professors.csv, publications.csv, "
                    "bylines.csv, taxonomy.csv, weights.csv");
    cmd->add_option("--professors", professors, "professors.csv path");
    cmd->add_option("--publications", publications, "publications.csv path");
    cmd->add_option("--bylines", bylines, "bylines.csv path");
    cmd->add_option("--taxonomy", taxonomy, "taxonomy.csv path");
    cmd->add_option("--weights", weights, "weights.csv path");
  }

  tirank::CorpusPaths resolve() const {
    tirank::CorpusPaths paths;
    if (!corpus_dir.empty()) paths = tirank::corpus_paths_in(corpus_dir);
    if (!professors.empty()) paths.professors = professors;
    if (!publications.empty()) paths.publications = publications;
    if (!bylines.empty()) paths.bylines = bylines;
    if (!taxonomy.empty()) paths.taxonomy = taxonomy;
    if (!weights.empty()) paths.weights = weights;
    if (paths.professors.empty() || paths.publications.empty() ||
        paths.bylines.empty() || paths.taxonomy.empty() ||
        paths.weights.empty()) {
      tirank::fail(tirank::errc::config,
                   "corpus inputs incomplete: give --corpus-dir or all five "
                   "file options");
    }
    return paths;
  }
};

tirank::ObservationConfig resolve_config(const std::string& config_path,
                                         const std::string& cohort_key) {
  tirank::ObservationConfig config;
  if (!config_path.empty()) {
    config = tirank::read_observation_config(config_path);
  }
  if (!cohort_key.empty()) {
    config.cohort_key = tirank::parse_cohort_key(cohort_key, "--cohort-key");
  }
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Research impact scoring, ranking, and indicator comparison"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  std::string config_path;
  std::string cohort_key;
  std::string variant = "both";
  bool full_precision = false;

  auto add_common = [&](CLI::App* cmd, bool with_variant) {
    cmd->add_option("--out-dir", out_dir, "Output directory (default: out)");
    cmd->add_flag("--full-precision", full_precision,
                  "Write full-precision numbers instead of table precision");
    if (with_variant) {
      cmd->add_option("--variant", variant, "Indicator variant: c, wc, or both")
          ->check(CLI::IsMember({"c", "wc", "both"}));
    }
  };

  CorpusFileOptions score_files;
  CLI::App* score = app.add_subcommand(
      "score", "Compute baselines and total-impact scores from a corpus");
  score_files.attach(score);
  score->add_option("--config", config_path, "key=value observation config");
  add_common(score, true);

  std::string scores_path;
  std::string rank_professors;
  CLI::App* rank = app.add_subcommand(
      "rank", "Rank scored professors within their cohorts");
  rank->add_option("--scores", scores_path, "scores.csv path")->required();
  rank->add_option("--professors", rank_professors,
                   "professors.csv for cohort assignment (default: one "
                   "cohort holding every professor)");
  rank->add_option("--config", config_path, "key=value observation config");
  rank->add_option("--cohort-key", cohort_key, "sds or sds_and_rank")
      ->check(CLI::IsMember({"sds", "sds_and_rank"}));
  add_common(rank, true);

  std::string ranking_path;
  std::string compare_taxonomy;
  CLI::App* compare = app.add_subcommand(
      "compare", "Compare the two indicator rankings of each cohort");
  compare->add_option("--ranking", ranking_path, "ranking.csv path")->required();
  compare->add_option("--taxonomy", compare_taxonomy,
                      "taxonomy.csv for area aggregation (default: each "
                      "field is its own area)");
  add_common(compare, false);

  std::string spec_path;
  std::int64_t seed_flag = -1;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a seeded synthetic corpus");
  synth->add_option("--spec", spec_path, "key=value generator spec");
  synth->add_option("--seed", seed_flag, "Override the generator seed");
  add_common(synth, false);

  CorpusFileOptions pipeline_files;
  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "Run score, rank, and compare in one pass");
  pipeline_files.attach(pipeline);
  pipeline->add_option("--config", config_path, "key=value observation config");
  pipeline->add_option("--cohort-key", cohort_key, "sds or sds_and_rank")
      ->check(CLI::IsMember({"sds", "sds_and_rank"}));
  add_common(pipeline, false);

  CLI11_PARSE(app, argc, argv);

  try {
    const tirank::Precision precision{full_precision};
    if (*score) {
      const auto config = resolve_config(config_path, cohort_key);
      const auto artifacts = tirank::run_score(
          score_files.resolve(), config,
          tirank::parse_variant_selection(variant, "--variant"), out_dir,
          precision);
      std::cout << "wrote " << artifacts.scores.size() << " score rows to "
                << out_dir << "\n";
    } else if (*rank) {
      const auto config = resolve_config(config_path, cohort_key);
      std::optional<std::string> professors;
      if (!rank_professors.empty()) professors = rank_professors;
      const auto artifacts = tirank::run_rank(
          scores_path, professors, config,
          tirank::parse_variant_selection(variant, "--variant"), out_dir,
          precision);
      std::cout << "wrote " << artifacts.cohorts.size()
                << " ranked cohort lists to " << out_dir << "\n";
    } else if (*compare) {
      std::optional<std::string> taxonomy;
      if (!compare_taxonomy.empty()) taxonomy = compare_taxonomy;
      const auto report =
          tirank::run_compare(ranking_path, taxonomy, out_dir, precision);
      std::cout << "compared " << report.cohorts.size() << " cohorts into "
                << out_dir << "\n";
    } else if (*synth) {
      tirank::SynthSpec spec;
      if (!spec_path.empty()) spec = tirank::read_synth_spec(spec_path);
      if (seed_flag >= 0) spec.seed = static_cast<std::uint64_t>(seed_flag);
      const auto corpus = tirank::run_synth(spec, out_dir);
      std::cout << "generated " << corpus.professors().size()
                << " professors, " << corpus.publications().size()
                << " publications into " << out_dir << "\n";
    } else if (*pipeline) {
      const auto config = resolve_config(config_path, cohort_key);
      const auto artifacts = tirank::run_pipeline(pipeline_files.resolve(),
                                                  config, out_dir, precision);
      std::cout << "pipeline finished: " << artifacts.report.cohorts.size()
                << " cohorts compared into " << out_dir << "\n";
    }
  } catch (const tirank::error& e) {
    std::cerr << "tirank: error (" << tirank::errc_name(e.code())
              << "): " << e.what() << "\n";
    return tirank::is_computation_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "tirank: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
