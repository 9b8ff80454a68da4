#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tirank/config.hpp"
#include "tirank/corpus.hpp"
#include "tirank/errors.hpp"
#include "tirank/rng.hpp"

namespace tirank {

// Parameters of the seeded corpus generator. Distributions are deliberately
// simple dials, not fits to real bibliometric data: publication and citation
// counts are shifted-geometric, impact factors exponential, and the uncited
// share is an independent per-field probability.
struct SynthSpec {
  int n_sds = 10;
  int n_uda = 1;
  int professors_per_sds = 30;
  double unproductive_share = 0.1;  // probability of zero publications
  double pubs_mean = 4.0;           // geometric mean for productive professors
  int pubs_max = 100;
  double uncited_share = 0.2;       // probability a publication has 0 citations
  // When set, the uncited share ramps linearly from uncited_share for the
  // first field to this value for the last.
  std::optional<double> uncited_share_max;
  double citation_mean = 5.0;       // geometric mean for cited publications
  double if_mean = 2.0;             // exponential mean of journal IF
  double authors_mean = 4.0;        // geometric mean of byline length
  int authors_max = 50;
  // "alphabetical" or "positional" for every field, or "alternate" to give
  // odd-indexed fields the positional policy.
  std::string byline_policy = "alternate";
  double w_citation = 0.8;
  double w_if = 0.2;
  int n_universities = 10;
  int period_start_year = 2015;
  int period_end_year = 2017;
  int observation_year = 2018;
  std::uint64_t seed = 1;

  void validate() const {
    auto require = [](bool ok, const std::string& message) {
      if (!ok) fail(errc::spec, "invalid generator spec: " + message);
    };
    require(n_sds >= 1, "n_sds must be >= 1");
    require(n_uda >= 1 && n_uda <= n_sds, "n_uda must be in [1, n_sds]");
    require(professors_per_sds >= 1, "professors_per_sds must be >= 1");
    require(unproductive_share >= 0 && unproductive_share <= 1,
            "unproductive_share must be in [0, 1]");
    require(pubs_mean >= 1, "pubs_mean must be >= 1");
    require(pubs_max >= 1, "pubs_max must be >= 1");
    require(uncited_share >= 0 && uncited_share <= 1,
            "uncited_share must be in [0, 1]");
    if (uncited_share_max) {
      require(*uncited_share_max >= 0 && *uncited_share_max <= 1,
              "uncited_share_max must be in [0, 1]");
    }
    require(citation_mean >= 1, "citation_mean must be >= 1");
    require(if_mean > 0, "if_mean must be positive");
    require(authors_mean >= 1, "authors_mean must be >= 1");
    require(authors_max >= 1, "authors_max must be >= 1");
    require(byline_policy == "alphabetical" || byline_policy == "positional" ||
                byline_policy == "alternate",
            "byline_policy must be alphabetical, positional, or alternate");
    require(w_citation >= 0 && w_if >= 0 && w_citation + w_if > 0,
            "weights must be non-negative with a positive sum");
    require(n_universities >= 1, "n_universities must be >= 1");
    require(period_start_year <= period_end_year &&
                period_end_year <= observation_year,
            "require period_start <= period_end <= observation_year");
  }

  double uncited_share_of_sds(int sds_index) const {  // 1-based index
    if (!uncited_share_max || n_sds == 1) return uncited_share;
    const double t = static_cast<double>(sds_index - 1) /
                     static_cast<double>(n_sds - 1);
    return uncited_share + (*uncited_share_max - uncited_share) * t;
  }
};

namespace detail {

inline std::string padded(const char* prefix, int width, long long n) {
  std::string digits = std::to_string(n);
  std::string out(prefix);
  if (static_cast<int>(digits.size()) < width) {
    out.append(static_cast<size_t>(width) - digits.size(), '0');
  }
  out += digits;
  return out;
}

}  // namespace detail

// Deterministic generation: the master stream yields one sub-seed per field
// (in field order), then each field is generated from its own stream with a
// fixed per-professor and per-publication draw order. Identical spec and
// seed give identical corpora on every platform.
inline Corpus generate_corpus(const SynthSpec& spec) {
  spec.validate();
  CorpusData data;
  data.config.period_start_year = spec.period_start_year;
  data.config.period_end_year = spec.period_end_year;
  data.config.observation_year = spec.observation_year;

  const int min_window = spec.observation_year - spec.period_end_year + 1;
  const int max_window = spec.observation_year - spec.period_start_year + 1;
  for (int s = 1; s <= spec.n_sds; ++s) {
    const std::string sds_id = detail::padded("SDS-", 3, s);
    const std::string sc_id = detail::padded("SC-", 3, s);
    const std::string uda_id = detail::padded("UDA-", 2, (s - 1) % spec.n_uda + 1);
    data.taxonomy.uda_of_sds[sds_id] = uda_id;
    BylinePolicy policy = BylinePolicy::alphabetical;
    if (spec.byline_policy == "positional" ||
        (spec.byline_policy == "alternate" && s % 2 == 0)) {
      policy = BylinePolicy::positional;
    }
    data.taxonomy.policy_of_sds[sds_id] = policy;
    for (int window = min_window; window <= max_window; ++window) {
      data.weights.insert(sc_id, window, Weights{spec.w_citation, spec.w_if});
    }
  }
  data.taxonomy.known_scs = data.weights.subject_categories();

  SplitMix64 master(spec.seed);
  std::vector<std::uint64_t> sub_seeds;
  sub_seeds.reserve(static_cast<size_t>(spec.n_sds));
  for (int s = 1; s <= spec.n_sds; ++s) sub_seeds.push_back(master.next());

  for (int s = 1; s <= spec.n_sds; ++s) {
    const std::string sds_id = detail::padded("SDS-", 3, s);
    const double uncited_share = spec.uncited_share_of_sds(s);
    SplitMix64 rng(sub_seeds[static_cast<size_t>(s - 1)]);
    for (int i = 1; i <= spec.professors_per_sds; ++i) {
      Professor professor;
      professor.professor_id =
          detail::padded("P", 3, s) + detail::padded("-", 4, i);
      professor.sds_id = sds_id;
      professor.academic_rank =
          static_cast<AcademicRank>(rng.uniform_int(0, 2));
      professor.years_on_staff = static_cast<int>(rng.uniform_int(2, 40));
      long long n_pubs = 0;
      if (!rng.bernoulli(spec.unproductive_share)) {
        n_pubs = std::min<long long>(rng.shifted_geometric(spec.pubs_mean),
                                     spec.pubs_max);
      }
      for (long long j = 1; j <= n_pubs; ++j) {
        Publication pub;
        pub.pub_id = detail::padded("W", 3, s) + detail::padded("-", 4, i) +
                     detail::padded("-", 3, j);
        pub.year = static_cast<int>(
            rng.uniform_int(spec.period_start_year, spec.period_end_year));
        pub.sc_id = detail::padded("SC-", 3, s);
        pub.citations =
            rng.bernoulli(uncited_share) ? 0 : rng.shifted_geometric(spec.citation_mean);
        pub.journal_if = rng.exponential(spec.if_mean);
        pub.doc_type = static_cast<DocType>(rng.uniform_int(0, 3));

        Byline byline;
        byline.pub_id = pub.pub_id;
        const int n_authors = static_cast<int>(std::min<long long>(
            rng.shifted_geometric(spec.authors_mean), spec.authors_max));
        const int own_position = static_cast<int>(rng.uniform_int(1, n_authors));
        for (int position = 1; position <= n_authors; ++position) {
          BylineEntry entry;
          entry.position = position;
          entry.university_id = detail::padded(
              "U", 2, rng.uniform_int(1, spec.n_universities));
          if (position == own_position) {
            entry.author_key = "K-" + professor.professor_id;
            entry.professor_id = professor.professor_id;
          } else {
            entry.author_key = pub.pub_id + detail::padded("-A", 2, position);
          }
          byline.entries.push_back(std::move(entry));
        }
        data.publications.push_back(std::move(pub));
        data.bylines.push_back(std::move(byline));
      }
      data.professors.push_back(std::move(professor));
    }
  }
  return finalize_corpus(std::move(data));
}

inline SynthSpec synth_spec_from_kv(std::map<std::string, std::string> kv,
                                    const std::string& context) {
  SynthSpec spec;
  auto take = [&kv](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string value = it->second;
    kv.erase(it);
    return value;
  };
  auto take_int = [&](const char* key, int& out) {
    if (auto v = take(key)) out = static_cast<int>(parse_int_field(*v, context));
  };
  auto take_double = [&](const char* key, double& out) {
    if (auto v = take(key)) out = parse_double_field(*v, context);
  };
  take_int("n_sds", spec.n_sds);
  take_int("n_uda", spec.n_uda);
  take_int("professors_per_sds", spec.professors_per_sds);
  take_double("unproductive_share", spec.unproductive_share);
  take_double("pubs_mean", spec.pubs_mean);
  take_int("pubs_max", spec.pubs_max);
  take_double("uncited_share", spec.uncited_share);
  if (auto v = take("uncited_share_max")) {
    spec.uncited_share_max = parse_double_field(*v, context);
  }
  take_double("citation_mean", spec.citation_mean);
  take_double("if_mean", spec.if_mean);
  take_double("authors_mean", spec.authors_mean);
  take_int("authors_max", spec.authors_max);
  if (auto v = take("byline_policy")) spec.byline_policy = *v;
  take_double("w_citation", spec.w_citation);
  take_double("w_if", spec.w_if);
  take_int("n_universities", spec.n_universities);
  take_int("period_start", spec.period_start_year);
  take_int("period_end", spec.period_end_year);
  take_int("observation_year", spec.observation_year);
  if (auto v = take("seed")) {
    const long long raw = parse_int_field(*v, context);
    if (raw < 0) fail(errc::spec, context + ": seed must be non-negative");
    spec.seed = static_cast<std::uint64_t>(raw);
  }
  reject_unknown_keys(kv, context);
  spec.validate();
  return spec;
}

inline SynthSpec read_synth_spec(const std::string& path) {
  return synth_spec_from_kv(read_kv_file(path), path);
}

}  // namespace tirank
