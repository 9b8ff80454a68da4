#include <gtest/gtest.h>

#include <functional>

#include "fixture.hpp"
#include "tirank/corpus.hpp"

namespace {

using tirank::errc;
using tirank::error;

void expect_error(errc code, const std::function<void()>& fn,
                  const std::string& needle = {}) {
  try {
    fn();
    FAIL() << "expected error " << tirank::errc_name(code);
  } catch (const error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    if (!needle.empty()) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
          << e.what();
    }
  }
}

TEST(CitationWindow, CountsInclusiveYears) {
  EXPECT_EQ(tirank::citation_window(2015, 2018), 4);
  EXPECT_EQ(tirank::citation_window(2017, 2018), 2);
  EXPECT_EQ(tirank::citation_window(2018, 2018), 1);
  expect_error(errc::domain, [] { tirank::citation_window(2019, 2018); });
}

TEST(ObservationConfig, ValidatesOrdering) {
  tirank::ObservationConfig config;
  EXPECT_NO_THROW(config.validate());
  config.period_end_year = 2019;
  expect_error(errc::config, [&] { config.validate(); });
  config.period_end_year = 2014;
  expect_error(errc::config, [&] { config.validate(); });
}

TEST(LoadCorpus, LoadsTinyCorpus) {
  fixture::TempDir dir("tmp_corpus_load");
  fixture::write_tiny_corpus(dir.path);
  const tirank::Corpus corpus = fixture::load_tiny_corpus(dir.path);

  EXPECT_EQ(corpus.professors().size(), 4u);  // dave excluded
  EXPECT_EQ(corpus.publications().size(), 5u);
  const auto& report = corpus.load_report();
  EXPECT_EQ(report.professors_loaded, 4);
  EXPECT_EQ(report.professors_excluded, 1);
  EXPECT_EQ(report.publications, 5);
  EXPECT_EQ(report.byline_entries, 9);
  EXPECT_EQ(report.links_cleared, 1);

  ASSERT_NE(corpus.find_professor("alice"), nullptr);
  EXPECT_EQ(corpus.find_professor("dave"), nullptr);
  EXPECT_EQ(corpus.find_professor("alice")->years_on_staff, 4);
  EXPECT_EQ(corpus.policy_of(*corpus.find_professor("carol")),
            tirank::BylinePolicy::positional);
  EXPECT_EQ(corpus.uda_of("SDS-A"), "UDA-1");

  // p4's author was excluded, so the byline survives with the link cleared.
  const tirank::Byline* p4 = corpus.byline_of("p4");
  ASSERT_NE(p4, nullptr);
  EXPECT_TRUE(p4->entries[0].professor_id.empty());

  const auto& alice = corpus.attributions_of(*corpus.find_professor("alice"));
  ASSERT_EQ(alice.size(), 2u);
  EXPECT_EQ(corpus.publications()[alice[0].publication_index].pub_id, "p1");
  EXPECT_EQ(alice[0].positions, std::vector<int>{1});
  EXPECT_TRUE(
      corpus.attributions_of(*corpus.find_professor("erin")).empty());
}

TEST(LoadCorpus, CohortIdsFollowConfiguredKey) {
  fixture::TempDir dir("tmp_corpus_cohort");
  fixture::write_tiny_corpus(dir.path);
  tirank::ObservationConfig config;
  config.cohort_key = tirank::CohortKey::sds_and_rank;
  const tirank::Corpus corpus = tirank::load_corpus(
      dir.path + "/professors.csv", dir.path + "/publications.csv",
      dir.path + "/bylines.csv", dir.path + "/taxonomy.csv",
      dir.path + "/weights.csv", config);
  EXPECT_EQ(corpus.cohort_id_of(*corpus.find_professor("alice")), "SDS-A|full");
  EXPECT_EQ(corpus.cohort_id_of(*corpus.find_professor("bob")),
            "SDS-A|assistant");
}

TEST(LoadCorpus, RejectsBadInputs) {
  fixture::TempDir dir("tmp_corpus_bad");
  auto load = [&] { return fixture::load_tiny_corpus(dir.path); };

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/professors.csv",
                      "professor_id,sds_id,academic_rank,years_on_staff\n"
                      "alice,SDS-A,full,4\nalice,SDS-A,full,4\n");
  expect_error(errc::duplicate_key, load, "alice");

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/professors.csv",
                      "professor_id,sds_id,academic_rank,years_on_staff\n"
                      "alice,SDS-Z,full,4\n"
                      "bob,SDS-A,assistant,2\n"
                      "carol,SDS-B,associate,5\n"
                      "dave,SDS-B,full,1\n"
                      "erin,SDS-A,assistant,10\n");
  expect_error(errc::schema, load, "SDS-Z");

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/publications.csv",
                      "pub_id,year,sc_id,citations,journal_if,doc_type\n"
                      "p1,2014,SC-X,10,2.0,article\n");
  expect_error(errc::schema, load, "2014");  // outside observation period

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/publications.csv",
                      "pub_id,year,sc_id,citations,journal_if,doc_type\n"
                      "p1,2015,SC-UNKNOWN,10,2.0,article\n");
  expect_error(errc::schema, load, "SC-UNKNOWN");

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/publications.csv",
                      "pub_id,year,sc_id,citations,journal_if,doc_type\n"
                      "p1,2015,SC-X,-1,2.0,article\n");
  expect_error(errc::schema, load, "citations");

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/bylines.csv",
                      "pub_id,position,author_key,university_id,professor_id\n"
                      "p1,1,k,U1,nobody\n");
  expect_error(errc::schema, load, "nobody");

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/bylines.csv",
                      "pub_id,position,author_key,university_id,professor_id\n"
                      "p9,1,k,U1,\n");
  expect_error(errc::schema, load, "p9");  // byline for unknown publication

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/bylines.csv",
                      "pub_id,position,author_key,university_id,professor_id\n"
                      "p1,1,k1,U1,\np1,3,k2,U1,\n");
  expect_error(errc::byline, load, "p1");  // gap in positions

  fixture::write_tiny_corpus(dir.path);
  fixture::write_file(dir.path + "/weights.csv",
                      "sc_id,window_years,w_citation,w_if\n"
                      "SC-X,2,0.8,0.2\nSC-X,2,0.7,0.3\n");
  expect_error(errc::duplicate_key, load, "SC-X");
}

TEST(WriteCorpusFiles, RoundTripsThroughLoad) {
  fixture::TempDir dir("tmp_corpus_roundtrip");
  fixture::write_tiny_corpus(dir.path);
  const tirank::Corpus corpus = fixture::load_tiny_corpus(dir.path);

  fixture::TempDir out("tmp_corpus_roundtrip_out");
  tirank::write_corpus_files(corpus, out.path);
  const tirank::Corpus reloaded = fixture::load_tiny_corpus(out.path);
  EXPECT_EQ(reloaded.professors(), corpus.professors());
  EXPECT_EQ(reloaded.publications(), corpus.publications());
  EXPECT_EQ(reloaded.taxonomy(), corpus.taxonomy());
  EXPECT_EQ(reloaded.weights(), corpus.weights());
  // dave is gone from the export, so nothing is excluded on reload
  EXPECT_EQ(reloaded.load_report().professors_excluded, 0);
  EXPECT_EQ(reloaded.load_report().links_cleared, 0);
}

}  // namespace
