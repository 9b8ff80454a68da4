#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "tirank/corpus.hpp"
#include "tirank/csv.hpp"
#include "tirank/errors.hpp"
#include "tirank/text.hpp"

namespace tirank {

// Expected values for one (publication year, subject category) cell.
// A mean is undefined (nullopt) when its reference set is empty: citation
// baselines average cited publications only, impact-factor baselines average
// publications with a positive impact factor only.
struct BaselineCell {
  std::optional<double> mean_cited_citations;
  std::optional<double> mean_if;
  long long n_publications = 0;
  long long n_cited = 0;
  bool operator==(const BaselineCell&) const = default;
};

class Baselines {
 public:
  using Key = std::pair<int, std::string>;  // (year, sc_id)

  BaselineCell& cell(int year, const std::string& sc_id) {
    return cells_[Key{year, sc_id}];
  }

  const BaselineCell* find(int year, const std::string& sc_id) const {
    auto it = cells_.find(Key{year, sc_id});
    return it == cells_.end() ? nullptr : &it->second;
  }

  const BaselineCell& require(int year, const std::string& sc_id) const {
    const BaselineCell* found = find(year, sc_id);
    if (!found) {
      fail(errc::baseline_undefined, "no baseline for year " +
                                         std::to_string(year) + ", sc '" +
                                         sc_id + "'");
    }
    return *found;
  }

  const std::map<Key, BaselineCell>& cells() const { return cells_; }

  bool operator==(const Baselines&) const = default;

 private:
  std::map<Key, BaselineCell> cells_;
};

inline Baselines build_baselines(const Corpus& corpus) {
  struct Accumulator {
    long long n_publications = 0;
    long long n_cited = 0;
    long long citation_sum = 0;
    long long n_positive_if = 0;
    double if_sum = 0.0;
  };
  std::map<Baselines::Key, Accumulator> cells;
  for (const auto& pub : corpus.publications()) {
    Accumulator& acc = cells[Baselines::Key{pub.year, pub.sc_id}];
    ++acc.n_publications;
    if (pub.citations > 0) {
      ++acc.n_cited;
      acc.citation_sum += pub.citations;
    }
    if (pub.journal_if > 0) {
      ++acc.n_positive_if;
      acc.if_sum += pub.journal_if;
    }
  }
  Baselines baselines;
  for (const auto& [key, acc] : cells) {
    BaselineCell& cell = baselines.cell(key.first, key.second);
    cell.n_publications = acc.n_publications;
    cell.n_cited = acc.n_cited;
    if (acc.n_cited > 0) {
      cell.mean_cited_citations =
          static_cast<double>(acc.citation_sum) / static_cast<double>(acc.n_cited);
    }
    if (acc.n_positive_if > 0) {
      cell.mean_if = acc.if_sum / static_cast<double>(acc.n_positive_if);
    }
  }
  return baselines;
}

// Zero raw citations normalize to exactly 0 without consulting the baseline;
// a cited publication in a cell with no citation baseline is an error.
inline double normalized_citations(const Publication& pub,
                                   const Baselines& baselines) {
  if (pub.citations == 0) return 0.0;
  const BaselineCell& cell = baselines.require(pub.year, pub.sc_id);
  if (!cell.mean_cited_citations) {
    fail(errc::baseline_undefined,
         "publication '" + pub.pub_id + "': no citation baseline for year " +
             std::to_string(pub.year) + ", sc '" + pub.sc_id + "'");
  }
  return static_cast<double>(pub.citations) / *cell.mean_cited_citations;
}

inline double normalized_if(const Publication& pub, const Baselines& baselines) {
  if (pub.journal_if == 0) return 0.0;
  const BaselineCell& cell = baselines.require(pub.year, pub.sc_id);
  if (!cell.mean_if) {
    fail(errc::baseline_undefined,
         "publication '" + pub.pub_id +
             "': no impact-factor baseline for year " +
             std::to_string(pub.year) + ", sc '" + pub.sc_id + "'");
  }
  return pub.journal_if / *cell.mean_if;
}

inline void write_baselines_csv(const Baselines& baselines,
                                const std::string& path) {
  csv::Writer out(path);
  out.row({"year", "sc_id", "mean_cited_citations", "mean_if", "n_publications",
           "n_cited"});
  for (const auto& [key, cell] : baselines.cells()) {
    out.row({std::to_string(key.first), key.second,
             cell.mean_cited_citations ? format_full(*cell.mean_cited_citations)
                                       : std::string(),
             cell.mean_if ? format_full(*cell.mean_if) : std::string(),
             std::to_string(cell.n_publications), std::to_string(cell.n_cited)});
  }
}

inline Baselines read_baselines_csv(const std::string& path) {
  auto table = csv::read_table(path, {"year", "sc_id", "mean_cited_citations",
                                      "mean_if", "n_publications", "n_cited"});
  Baselines baselines;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = table.context(r);
    int year = static_cast<int>(parse_int_field(row[0], context));
    std::string sc(trim(row[1]));
    if (sc.empty()) fail(errc::schema, context + ": empty sc_id");
    if (baselines.find(year, sc)) {
      fail(errc::duplicate_key, context + ": duplicate (year, sc_id) (" +
                                    std::to_string(year) + ", " + sc + ")");
    }
    BaselineCell& cell = baselines.cell(year, sc);
    if (!trim(row[2]).empty()) {
      cell.mean_cited_citations = parse_double_field(row[2], context);
      if (*cell.mean_cited_citations <= 0) {
        fail(errc::schema, context + ": mean_cited_citations must be positive");
      }
    }
    if (!trim(row[3]).empty()) {
      cell.mean_if = parse_double_field(row[3], context);
      if (*cell.mean_if <= 0) {
        fail(errc::schema, context + ": mean_if must be positive");
      }
    }
    cell.n_publications = parse_int_field(row[4], context);
    cell.n_cited = parse_int_field(row[5], context);
    if (cell.n_cited < 0 || cell.n_publications < cell.n_cited) {
      fail(errc::schema, context + ": require 0 <= n_cited <= n_publications");
    }
    if (cell.n_cited > 0 && !cell.mean_cited_citations) {
      fail(errc::schema,
           context + ": n_cited > 0 but mean_cited_citations is empty");
    }
  }
  return baselines;
}

}  // namespace tirank
