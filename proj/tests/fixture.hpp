#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>

#include "tirank/corpus.hpp"

namespace fixture {

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

struct TempDir {
  explicit TempDir(std::string name) : path(std::move(name)) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string path;
};

// Five-file corpus exercising both byline policies, an excluded professor
// (years_on_staff 1, byline link cleared), an unproductive professor, an
// uncited publication, and a zero-IF publication.
inline void write_tiny_corpus(const std::string& dir) {
  write_file(dir + "/taxonomy.csv",
             "sds_id,uda_id,byline_policy\n"
             "SDS-A,UDA-1,alphabetical\n"
             "SDS-B,UDA-1,positional\n");
  write_file(dir + "/weights.csv",
             "sc_id,window_years,w_citation,w_if\n"
             "SC-X,2,0.8,0.2\nSC-X,3,0.8,0.2\nSC-X,4,0.8,0.2\n"
             "SC-Y,2,0.8,0.2\nSC-Y,3,0.8,0.2\nSC-Y,4,0.8,0.2\n");
  write_file(dir + "/professors.csv",
             "professor_id,sds_id,academic_rank,years_on_staff\n"
             "alice,SDS-A,full,4\n"
             "bob,SDS-A,assistant,2\n"
             "carol,SDS-B,associate,5\n"
             "dave,SDS-B,full,1\n"
             "erin,SDS-A,assistant,10\n");
  write_file(dir + "/publications.csv",
             "pub_id,year,sc_id,citations,journal_if,doc_type\n"
             "p1,2015,SC-X,10,2.0,article\n"
             "p2,2015,SC-X,0,1.0,article\n"
             "p3,2016,SC-Y,4,0.0,review\n"
             "p4,2015,SC-X,6,3.0,letter\n"
             "p5,2016,SC-Y,0,2.5,article\n");
  write_file(dir + "/bylines.csv",
             "pub_id,position,author_key,university_id,professor_id\n"
             "p1,1,k-alice,U1,alice\n"
             "p1,2,k-x1,U2,\n"
             "p2,1,k-alice,U1,alice\n"
             "p2,2,k-bob,U1,bob\n"
             "p3,1,k-carol,U3,carol\n"
             "p3,2,k-y1,U4,\n"
             "p3,3,k-y2,U3,\n"
             "p4,1,k-dave,U2,dave\n"
             "p5,1,k-carol,U3,carol\n");
}

inline tirank::Corpus load_tiny_corpus(const std::string& dir) {
  return tirank::load_corpus(dir + "/professors.csv", dir + "/publications.csv",
                             dir + "/bylines.csv", dir + "/taxonomy.csv",
                             dir + "/weights.csv", tirank::ObservationConfig{});
}

}  // namespace fixture
