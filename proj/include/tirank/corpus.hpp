#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tirank/csv.hpp"
#include "tirank/errors.hpp"
#include "tirank/text.hpp"

namespace tirank {

enum class AcademicRank { assistant, associate, full };
enum class DocType { article, letter, review, proceeding };
enum class BylinePolicy { alphabetical, positional };
enum class CohortKey { sds, sds_and_rank };

inline const char* rank_name(AcademicRank r) {
  switch (r) {
    case AcademicRank::assistant: return "assistant";
    case AcademicRank::associate: return "associate";
    case AcademicRank::full: return "full";
  }
  return "?";
}

inline AcademicRank parse_rank(std::string_view s, const std::string& context) {
  s = trim(s);
  if (s == "assistant") return AcademicRank::assistant;
  if (s == "associate") return AcademicRank::associate;
  if (s == "full") return AcademicRank::full;
  fail(errc::schema, context + ": unknown academic_rank '" + std::string(s) + "'");
}

inline const char* doc_type_name(DocType t) {
  switch (t) {
    case DocType::article: return "article";
    case DocType::letter: return "letter";
    case DocType::review: return "review";
    case DocType::proceeding: return "proceeding";
  }
  return "?";
}

inline DocType parse_doc_type(std::string_view s, const std::string& context) {
  s = trim(s);
  if (s == "article") return DocType::article;
  if (s == "letter") return DocType::letter;
  if (s == "review") return DocType::review;
  if (s == "proceeding") return DocType::proceeding;
  fail(errc::schema, context + ": unknown doc_type '" + std::string(s) + "'");
}

inline const char* policy_name(BylinePolicy p) {
  return p == BylinePolicy::alphabetical ? "alphabetical" : "positional";
}

inline BylinePolicy parse_policy(std::string_view s, const std::string& context) {
  s = trim(s);
  if (s == "alphabetical") return BylinePolicy::alphabetical;
  if (s == "positional") return BylinePolicy::positional;
  fail(errc::schema, context + ": unknown byline_policy '" + std::string(s) + "'");
}

inline const char* cohort_key_name(CohortKey k) {
  return k == CohortKey::sds ? "sds" : "sds_and_rank";
}

inline CohortKey parse_cohort_key(std::string_view s, const std::string& context) {
  s = trim(s);
  if (s == "sds") return CohortKey::sds;
  if (s == "sds_and_rank") return CohortKey::sds_and_rank;
  fail(errc::config, context + ": unknown cohort_key '" + std::string(s) + "'");
}

struct Professor {
  std::string professor_id;
  std::string sds_id;
  AcademicRank academic_rank{};
  int years_on_staff{};
  bool operator==(const Professor&) const = default;
};

struct Publication {
  std::string pub_id;
  int year{};
  std::string sc_id;
  long long citations{};
  double journal_if{};
  DocType doc_type{};
  bool operator==(const Publication&) const = default;
};

struct BylineEntry {
  int position{};
  std::string author_key;
  std::string university_id;
  std::string professor_id;  // empty when the author is not a tracked professor
  bool operator==(const BylineEntry&) const = default;
};

struct Byline {
  std::string pub_id;
  std::vector<BylineEntry> entries;  // sorted by position; positions are exactly 1..n
  bool operator==(const Byline&) const = default;
};

struct Taxonomy {
  std::map<std::string, std::string> uda_of_sds;
  std::map<std::string, BylinePolicy> policy_of_sds;
  std::set<std::string> known_scs;  // taken from the weights table
  bool operator==(const Taxonomy&) const = default;
};

struct ObservationConfig {
  int period_start_year = 2015;
  int period_end_year = 2017;
  int observation_year = 2018;
  CohortKey cohort_key = CohortKey::sds;
  bool operator==(const ObservationConfig&) const = default;

  void validate() const {
    if (period_start_year > period_end_year ||
        period_end_year > observation_year) {
      fail(errc::config,
           "invalid observation config: require period_start <= period_end <= "
           "observation_year, got " +
               std::to_string(period_start_year) + " / " +
               std::to_string(period_end_year) + " / " +
               std::to_string(observation_year));
    }
  }
};

struct Weights {
  double w_citation{};
  double w_if{};
  bool operator==(const Weights&) const = default;
};

class WeightsTable {
 public:
  using Key = std::pair<std::string, int>;  // (sc_id, window_years)

  // Returns false when the key is already present.
  bool insert(const std::string& sc_id, int window_years, Weights w) {
    return rows_.emplace(Key{sc_id, window_years}, w).second;
  }

  const Weights* find(const std::string& sc_id, int window_years) const {
    auto it = rows_.find(Key{sc_id, window_years});
    return it == rows_.end() ? nullptr : &it->second;
  }

  const std::map<Key, Weights>& rows() const { return rows_; }

  std::set<std::string> subject_categories() const {
    std::set<std::string> scs;
    for (const auto& [key, w] : rows_) scs.insert(key.first);
    return scs;
  }

  bool operator==(const WeightsTable&) const = default;

 private:
  std::map<Key, Weights> rows_;
};

struct LoadReport {
  long long professors_loaded = 0;
  long long professors_excluded = 0;  // years_on_staff below threshold
  long long publications = 0;
  long long byline_entries = 0;
  long long links_cleared = 0;  // byline links to excluded professors
  bool operator==(const LoadReport&) const = default;
};

// Calendar years with citation opportunity, inclusive of the publication year.
inline int citation_window(int publication_year, int observation_year) {
  if (publication_year > observation_year) {
    fail(errc::domain, "publication year " + std::to_string(publication_year) +
                           " is after observation year " +
                           std::to_string(observation_year));
  }
  return observation_year - publication_year + 1;
}

// Minimum years on staff for a professor to enter the corpus.
inline constexpr int kMinYearsOnStaff = 2;

struct CorpusData {
  std::vector<Professor> professors;
  std::vector<Publication> publications;
  std::vector<Byline> bylines;
  Taxonomy taxonomy;
  WeightsTable weights;
  ObservationConfig config;
};

// Immutable after construction; safe to share across concurrent readers.
class Corpus {
 public:
  struct Attribution {
    size_t publication_index{};
    size_t byline_index{};
    std::vector<int> positions;  // byline positions held by the professor
    bool operator==(const Attribution&) const = default;
  };

  const std::vector<Professor>& professors() const { return professors_; }
  const std::vector<Publication>& publications() const { return publications_; }
  const std::vector<Byline>& bylines() const { return bylines_; }
  const Taxonomy& taxonomy() const { return taxonomy_; }
  const ObservationConfig& config() const { return config_; }
  const WeightsTable& weights() const { return weights_; }
  const LoadReport& load_report() const { return report_; }

  const Professor* find_professor(const std::string& id) const {
    auto it = professor_index_.find(id);
    return it == professor_index_.end() ? nullptr : &professors_[it->second];
  }

  const Publication* find_publication(const std::string& id) const {
    auto it = publication_index_.find(id);
    return it == publication_index_.end() ? nullptr : &publications_[it->second];
  }

  const Byline* byline_of(const std::string& pub_id) const {
    auto it = publication_index_.find(pub_id);
    if (it == publication_index_.end()) return nullptr;
    auto bit = byline_of_publication_.find(it->second);
    return bit == byline_of_publication_.end() ? nullptr : &bylines_[bit->second];
  }

  BylinePolicy policy_of(const Professor& professor) const {
    return taxonomy_.policy_of_sds.at(professor.sds_id);
  }

  const std::string& uda_of(const std::string& sds_id) const {
    auto it = taxonomy_.uda_of_sds.find(sds_id);
    if (it == taxonomy_.uda_of_sds.end()) {
      fail(errc::schema, "sds '" + sds_id + "' missing from taxonomy");
    }
    return it->second;
  }

  const std::vector<Attribution>& attributions_of(const Professor& professor) const {
    static const std::vector<Attribution> kEmpty;
    auto it = attributions_.find(professor.professor_id);
    return it == attributions_.end() ? kEmpty : it->second;
  }

  std::string cohort_id_of(const Professor& professor) const {
    if (config_.cohort_key == CohortKey::sds) return professor.sds_id;
    return professor.sds_id + "|" + rank_name(professor.academic_rank);
  }

  bool operator==(const Corpus& other) const {
    return professors_ == other.professors_ &&
           publications_ == other.publications_ && bylines_ == other.bylines_ &&
           taxonomy_ == other.taxonomy_ && weights_ == other.weights_ &&
           config_ == other.config_ && report_ == other.report_;
  }

  friend Corpus finalize_corpus(CorpusData data, LoadReport parse_report);

 private:
  std::vector<Professor> professors_;
  std::vector<Publication> publications_;
  std::vector<Byline> bylines_;
  Taxonomy taxonomy_;
  WeightsTable weights_;
  ObservationConfig config_;
  LoadReport report_;
  std::map<std::string, size_t> professor_index_;
  std::map<std::string, size_t> publication_index_;
  std::map<size_t, size_t> byline_of_publication_;
  std::map<std::string, std::vector<Attribution>> attributions_;
};

// Shared validation and cross-linking for both loaded and generated corpora.
// Professors below the years-on-staff threshold are dropped here; byline
// links pointing at them are cleared and counted.
inline Corpus finalize_corpus(CorpusData data, LoadReport parse_report = {}) {
  data.config.validate();

  Corpus corpus;
  corpus.config_ = data.config;
  corpus.taxonomy_ = std::move(data.taxonomy);
  corpus.weights_ = std::move(data.weights);
  corpus.report_ = parse_report;

  std::set<std::string> excluded;
  for (auto& professor : data.professors) {
    auto tax = corpus.taxonomy_.uda_of_sds.find(professor.sds_id);
    if (tax == corpus.taxonomy_.uda_of_sds.end() ||
        !corpus.taxonomy_.policy_of_sds.count(professor.sds_id)) {
      fail(errc::schema, "professor '" + professor.professor_id +
                             "': unknown sds_id '" + professor.sds_id + "'");
    }
    if (professor.years_on_staff < 0) {
      fail(errc::schema, "professor '" + professor.professor_id +
                             "': negative years_on_staff");
    }
    if (professor.years_on_staff < kMinYearsOnStaff) {
      excluded.insert(professor.professor_id);
      ++corpus.report_.professors_excluded;
      continue;
    }
    auto [it, fresh] = corpus.professor_index_.emplace(
        professor.professor_id, corpus.professors_.size());
    if (!fresh) {
      fail(errc::duplicate_key,
           "duplicate professor_id '" + professor.professor_id + "'");
    }
    corpus.professors_.push_back(std::move(professor));
  }
  corpus.report_.professors_loaded =
      static_cast<long long>(corpus.professors_.size());

  for (auto& pub : data.publications) {
    if (pub.citations < 0) {
      fail(errc::schema, "publication '" + pub.pub_id + "': negative citations");
    }
    if (pub.journal_if < 0) {
      fail(errc::schema, "publication '" + pub.pub_id + "': negative journal_if");
    }
    if (pub.year < data.config.period_start_year ||
        pub.year > data.config.period_end_year) {
      fail(errc::schema, "publication '" + pub.pub_id + "': year " +
                             std::to_string(pub.year) +
                             " outside observation period " +
                             std::to_string(data.config.period_start_year) + "-" +
                             std::to_string(data.config.period_end_year));
    }
    if (!corpus.taxonomy_.known_scs.count(pub.sc_id)) {
      fail(errc::schema, "publication '" + pub.pub_id + "': unknown sc_id '" +
                             pub.sc_id + "'");
    }
    auto [it, fresh] =
        corpus.publication_index_.emplace(pub.pub_id, corpus.publications_.size());
    if (!fresh) {
      fail(errc::duplicate_key, "duplicate pub_id '" + pub.pub_id + "'");
    }
    corpus.publications_.push_back(std::move(pub));
  }
  corpus.report_.publications =
      static_cast<long long>(corpus.publications_.size());

  for (auto& byline : data.bylines) {
    auto pub_it = corpus.publication_index_.find(byline.pub_id);
    if (pub_it == corpus.publication_index_.end()) {
      fail(errc::schema,
           "byline references unknown pub_id '" + byline.pub_id + "'");
    }
    std::sort(byline.entries.begin(), byline.entries.end(),
              [](const BylineEntry& a, const BylineEntry& b) {
                return a.position < b.position;
              });
    if (byline.entries.empty()) {
      fail(errc::byline, "byline for pub_id '" + byline.pub_id + "' is empty");
    }
    for (size_t i = 0; i < byline.entries.size(); ++i) {
      if (byline.entries[i].position != static_cast<int>(i) + 1) {
        fail(errc::byline, "byline for pub_id '" + byline.pub_id +
                               "': positions are not exactly 1.." +
                               std::to_string(byline.entries.size()));
      }
    }
    for (auto& entry : byline.entries) {
      if (entry.professor_id.empty()) continue;
      if (excluded.count(entry.professor_id)) {
        entry.professor_id.clear();
        ++corpus.report_.links_cleared;
        continue;
      }
      if (!corpus.professor_index_.count(entry.professor_id)) {
        fail(errc::schema, "byline for pub_id '" + byline.pub_id +
                               "' links unknown professor_id '" +
                               entry.professor_id + "'");
      }
    }
    corpus.report_.byline_entries += static_cast<long long>(byline.entries.size());
    auto [bit, fresh] = corpus.byline_of_publication_.emplace(
        pub_it->second, corpus.bylines_.size());
    if (!fresh) {
      fail(errc::byline,
           "multiple bylines for pub_id '" + byline.pub_id + "'");
    }
    corpus.bylines_.push_back(std::move(byline));
  }

  // Attributions in publication storage order.
  for (size_t pub_idx = 0; pub_idx < corpus.publications_.size(); ++pub_idx) {
    auto bit = corpus.byline_of_publication_.find(pub_idx);
    if (bit == corpus.byline_of_publication_.end()) continue;
    const Byline& byline = corpus.bylines_[bit->second];
    std::map<std::string, std::vector<int>> positions_of;
    for (const auto& entry : byline.entries) {
      if (!entry.professor_id.empty()) {
        positions_of[entry.professor_id].push_back(entry.position);
      }
    }
    for (auto& [professor_id, positions] : positions_of) {
      corpus.attributions_[professor_id].push_back(
          Corpus::Attribution{pub_idx, bit->second, std::move(positions)});
    }
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// CSV ingestion. Schemas:
//   professors.csv:   professor_id, sds_id, academic_rank, years_on_staff
//   publications.csv: pub_id, year, sc_id, citations, journal_if, doc_type
//   bylines.csv:      pub_id, position, author_key, university_id, professor_id
//   taxonomy.csv:     sds_id, uda_id, byline_policy
//   weights.csv:      sc_id, window_years, w_citation, w_if

inline Taxonomy read_taxonomy_csv(const std::string& path) {
  auto table = csv::read_table(path, {"sds_id", "uda_id", "byline_policy"});
  Taxonomy taxonomy;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = table.context(r);
    std::string sds(trim(row[0]));
    if (sds.empty()) fail(errc::schema, context + ": empty sds_id");
    if (taxonomy.uda_of_sds.count(sds)) {
      fail(errc::duplicate_key, context + ": duplicate sds_id '" + sds + "'");
    }
    taxonomy.uda_of_sds[sds] = std::string(trim(row[1]));
    taxonomy.policy_of_sds[sds] = parse_policy(row[2], context);
  }
  return taxonomy;
}

inline WeightsTable read_weights_csv(const std::string& path) {
  auto table =
      csv::read_table(path, {"sc_id", "window_years", "w_citation", "w_if"});
  WeightsTable weights;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = table.context(r);
    std::string sc(trim(row[0]));
    if (sc.empty()) fail(errc::schema, context + ": empty sc_id");
    long long window = parse_int_field(row[1], context);
    if (window < 1) fail(errc::schema, context + ": window_years must be >= 1");
    Weights w{parse_double_field(row[2], context),
              parse_double_field(row[3], context)};
    if (w.w_citation < 0 || w.w_if < 0 || w.w_citation + w.w_if <= 0) {
      fail(errc::schema,
           context + ": weights must be non-negative with a positive sum");
    }
    if (!weights.insert(sc, static_cast<int>(window), w)) {
      fail(errc::duplicate_key, context + ": duplicate (sc_id, window_years) (" +
                                    sc + ", " + std::to_string(window) + ")");
    }
  }
  return weights;
}

inline std::vector<Professor> read_professors_csv(const std::string& path) {
  auto table = csv::read_table(
      path, {"professor_id", "sds_id", "academic_rank", "years_on_staff"});
  std::vector<Professor> professors;
  std::set<std::string> seen;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = table.context(r);
    Professor professor;
    professor.professor_id = std::string(trim(row[0]));
    if (professor.professor_id.empty()) fail(errc::schema, context + ": empty professor_id");
    if (!seen.insert(professor.professor_id).second) {
      fail(errc::duplicate_key, context + ": duplicate professor_id '" +
                                    professor.professor_id + "'");
    }
    professor.sds_id = std::string(trim(row[1]));
    if (professor.sds_id.empty()) fail(errc::schema, context + ": empty sds_id");
    professor.academic_rank = parse_rank(row[2], context);
    long long years = parse_int_field(row[3], context);
    if (years < 0) fail(errc::schema, context + ": negative years_on_staff");
    professor.years_on_staff = static_cast<int>(years);
    professors.push_back(std::move(professor));
  }
  return professors;
}

inline Corpus load_corpus(const std::string& professor_file,
                          const std::string& publication_file,
                          const std::string& byline_file,
                          const std::string& taxonomy_file,
                          const std::string& weights_file,
                          const ObservationConfig& config) {
  config.validate();
  CorpusData data;
  data.config = config;
  data.taxonomy = read_taxonomy_csv(taxonomy_file);
  data.weights = read_weights_csv(weights_file);
  data.taxonomy.known_scs = data.weights.subject_categories();
  data.professors = read_professors_csv(professor_file);

  {
    auto table = csv::read_table(
        publication_file,
        {"pub_id", "year", "sc_id", "citations", "journal_if", "doc_type"});
    std::set<std::string> seen;
    for (size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      const std::string context = table.context(r);
      Publication pub;
      pub.pub_id = std::string(trim(row[0]));
      if (pub.pub_id.empty()) fail(errc::schema, context + ": empty pub_id");
      if (!seen.insert(pub.pub_id).second) {
        fail(errc::duplicate_key,
             context + ": duplicate pub_id '" + pub.pub_id + "'");
      }
      pub.year = static_cast<int>(parse_int_field(row[1], context));
      if (pub.year < config.period_start_year || pub.year > config.period_end_year) {
        fail(errc::schema, context + ": year " + std::to_string(pub.year) +
                               " outside observation period " +
                               std::to_string(config.period_start_year) + "-" +
                               std::to_string(config.period_end_year));
      }
      pub.sc_id = std::string(trim(row[2]));
      if (!data.taxonomy.known_scs.count(pub.sc_id)) {
        fail(errc::schema, context + ": unknown sc_id '" + pub.sc_id + "'");
      }
      pub.citations = parse_int_field(row[3], context);
      if (pub.citations < 0) fail(errc::schema, context + ": negative citations");
      pub.journal_if = parse_double_field(row[4], context);
      if (pub.journal_if < 0) fail(errc::schema, context + ": negative journal_if");
      pub.doc_type = parse_doc_type(row[5], context);
      data.publications.push_back(std::move(pub));
    }
  }

  LoadReport parse_report;
  {
    auto table = csv::read_table(
        byline_file,
        {"pub_id", "position", "author_key", "university_id", "professor_id"});
    std::map<std::string, size_t> byline_of;
    std::set<std::string> professor_ids;
    for (const auto& professor : data.professors) {
      professor_ids.insert(professor.professor_id);
    }
    for (size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      const std::string context = table.context(r);
      std::string pub_id(trim(row[0]));
      BylineEntry entry;
      entry.position = static_cast<int>(parse_int_field(row[1], context));
      entry.author_key = std::string(trim(row[2]));
      entry.university_id = std::string(trim(row[3]));
      entry.professor_id = std::string(trim(row[4]));
      if (!entry.professor_id.empty() && !professor_ids.count(entry.professor_id)) {
        fail(errc::schema, context + ": unknown professor_id '" +
                               entry.professor_id + "'");
      }
      auto [it, fresh] = byline_of.emplace(pub_id, data.bylines.size());
      if (fresh) data.bylines.push_back(Byline{pub_id, {}});
      data.bylines[it->second].entries.push_back(std::move(entry));
    }
  }

  return finalize_corpus(std::move(data), parse_report);
}

// Writes a corpus back out in the exact ingestion schemas, full precision,
// rows in deterministic sorted order.
inline void write_corpus_files(const Corpus& corpus, const std::string& dir) {
  {
    csv::Writer out(dir + "/professors.csv");
    out.row({"professor_id", "sds_id", "academic_rank", "years_on_staff"});
    auto professors = corpus.professors();
    std::sort(professors.begin(), professors.end(),
              [](const Professor& a, const Professor& b) {
                return a.professor_id < b.professor_id;
              });
    for (const auto& p : professors) {
      out.row({p.professor_id, p.sds_id, rank_name(p.academic_rank),
               std::to_string(p.years_on_staff)});
    }
  }
  {
    csv::Writer out(dir + "/publications.csv");
    out.row({"pub_id", "year", "sc_id", "citations", "journal_if", "doc_type"});
    auto publications = corpus.publications();
    std::sort(publications.begin(), publications.end(),
              [](const Publication& a, const Publication& b) {
                return a.pub_id < b.pub_id;
              });
    for (const auto& p : publications) {
      out.row({p.pub_id, std::to_string(p.year), p.sc_id,
               std::to_string(p.citations), format_full(p.journal_if),
               doc_type_name(p.doc_type)});
    }
  }
  {
    csv::Writer out(dir + "/bylines.csv");
    out.row({"pub_id", "position", "author_key", "university_id", "professor_id"});
    auto bylines = corpus.bylines();
    std::sort(bylines.begin(), bylines.end(),
              [](const Byline& a, const Byline& b) { return a.pub_id < b.pub_id; });
    for (const auto& byline : bylines) {
      for (const auto& entry : byline.entries) {
        out.row({byline.pub_id, std::to_string(entry.position), entry.author_key,
                 entry.university_id, entry.professor_id});
      }
    }
  }
  {
    csv::Writer out(dir + "/taxonomy.csv");
    out.row({"sds_id", "uda_id", "byline_policy"});
    for (const auto& [sds, uda] : corpus.taxonomy().uda_of_sds) {
      out.row({sds, uda, policy_name(corpus.taxonomy().policy_of_sds.at(sds))});
    }
  }
  {
    csv::Writer out(dir + "/weights.csv");
    out.row({"sc_id", "window_years", "w_citation", "w_if"});
    for (const auto& [key, w] : corpus.weights().rows()) {
      out.row({key.first, std::to_string(key.second), format_full(w.w_citation),
               format_full(w.w_if)});
    }
  }
}

}  // namespace tirank
