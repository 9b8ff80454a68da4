#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "tirank/csv.hpp"
#include "tirank/errors.hpp"
#include "tirank/text.hpp"

namespace {

using tirank::errc;
using tirank::error;

TEST(FormatFixed, RendersRequestedDecimals) {
  EXPECT_EQ(tirank::format_fixed(2.703, 3), "2.703");
  EXPECT_EQ(tirank::format_fixed(0.0, 3), "0.000");
  EXPECT_EQ(tirank::format_fixed(100.0, 1), "100.0");
  EXPECT_EQ(tirank::format_fixed(96.0, 1), "96.0");
  EXPECT_EQ(tirank::format_fixed(-1.25, 1), "-1.2");  // banker's at the half
}

TEST(FormatFixed, FoldsNegativeZero) {
  EXPECT_EQ(tirank::format_fixed(-0.0, 3), "0.000");
  EXPECT_EQ(tirank::format_fixed(-0.00004, 3), "0.000");
}

TEST(FormatFull, RoundTripsDoubles) {
  for (double v : {0.1, 1.0 / 3.0, 12345.6789, 1e-300, 0.0, 5e19}) {
    const std::string s = tirank::format_full(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
}

TEST(ParseFields, AcceptsIntegersAndDoubles) {
  EXPECT_EQ(tirank::parse_int_field("42", "ctx"), 42);
  EXPECT_EQ(tirank::parse_int_field(" -7 ", "ctx"), -7);
  EXPECT_DOUBLE_EQ(tirank::parse_double_field("0.85", "ctx"), 0.85);
  EXPECT_DOUBLE_EQ(tirank::parse_double_field("1e3", "ctx"), 1000.0);
}

TEST(ParseFields, RejectsGarbage) {
  EXPECT_THROW(tirank::parse_int_field("", "ctx"), error);
  EXPECT_THROW(tirank::parse_int_field("12x", "ctx"), error);
  EXPECT_THROW(tirank::parse_int_field("1.5", "ctx"), error);
  EXPECT_THROW(tirank::parse_double_field("abc", "ctx"), error);
  try {
    tirank::parse_double_field("abc", "file.csv:3");
    FAIL() << "expected schema error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::schema);
    EXPECT_NE(std::string(e.what()).find("file.csv:3"), std::string::npos);
  }
}

TEST(Trim, StripsAsciiWhitespace) {
  EXPECT_EQ(tirank::trim("  a b  "), "a b");
  EXPECT_EQ(tirank::trim("\t\r\n"), "");
  EXPECT_EQ(tirank::trim(""), "");
}

TEST(CsvSplit, HandlesQuotingAndEscapes) {
  auto fields = tirank::csv::split_record(R"(a,"b,c","d""e",)", "ctx");
  ASSERT_EQ(fields.size(), 4u);
  EXPECT_EQ(fields[0], "a");
  EXPECT_EQ(fields[1], "b,c");
  EXPECT_EQ(fields[2], "d\"e");
  EXPECT_EQ(fields[3], "");
}

TEST(CsvSplit, RejectsUnterminatedQuote) {
  EXPECT_THROW(tirank::csv::split_record("\"abc", "ctx"), error);
}

TEST(CsvTable, ValidatesHeaderAndFieldCount) {
  const std::string path = "tmp_csv_table.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << "a,b\n1,2\n\n3,4\n";
  }
  auto table = tirank::csv::read_table(path, {"a", "b"});
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[1][1], "4");
  EXPECT_EQ(table.line_numbers[1], 4);  // blank line skipped

  EXPECT_THROW(tirank::csv::read_table(path, {"a", "c"}), error);
  {
    std::ofstream out(path, std::ios::binary);
    out << "a,b\n1,2,3\n";
  }
  EXPECT_THROW(tirank::csv::read_table(path, {"a", "b"}), error);
  std::remove(path.c_str());
  try {
    tirank::csv::read_table("does_not_exist.csv", {"a"});
    FAIL() << "expected io error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::io);
  }
}

TEST(CsvWriter, QuotesOnlyWhenNeeded) {
  const std::string path = "tmp_csv_writer.csv";
  {
    tirank::csv::Writer out(path);
    out.row({"plain", "with,comma", "with\"quote"});
  }
  std::ifstream in(path, std::ios::binary);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "plain,\"with,comma\",\"with\"\"quote\"");
  std::remove(path.c_str());
}

}  // namespace
