#pragma once

#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tirank/errors.hpp"
#include "tirank/text.hpp"

namespace tirank::csv {

// Comma-separated, UTF-8, header row required. Fields may be quoted with
// double quotes; "" inside a quoted field escapes a quote. Fields do not
// span lines.
inline std::vector<std::string> split_record(const std::string& line,
                                             const std::string& context) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
      } else {
        field += ch;
        ++i;
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
      ++i;
    } else if (ch == ',') {
      fields.push_back(field);
      field.clear();
      ++i;
    } else {
      field += ch;
      ++i;
    }
  }
  if (quoted) fail(errc::schema, context + ": unterminated quote");
  fields.push_back(field);
  return fields;
}

struct Table {
  std::string path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<size_t> line_numbers;  // 1-based source line of each row

  std::string context(size_t row) const {
    return path + ":" + std::to_string(line_numbers[row]);
  }
};

inline Table read_table(const std::string& path,
                        std::span<const std::string> expected_header) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open '" + path + "'");
  Table table;
  table.path = path;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_record(line, path + ":" + std::to_string(line_no));
    if (table.header.empty()) {
      table.header = std::move(fields);
      if (table.header.size() != expected_header.size()) {
        fail(errc::schema, path + ": expected " +
                               std::to_string(expected_header.size()) +
                               " columns, got " + std::to_string(table.header.size()));
      }
      for (size_t i = 0; i < expected_header.size(); ++i) {
        if (std::string(trim(table.header[i])) != expected_header[i]) {
          fail(errc::schema, path + ": column " + std::to_string(i + 1) +
                                 " must be '" + expected_header[i] + "', got '" +
                                 table.header[i] + "'");
        }
      }
      continue;
    }
    if (fields.size() != expected_header.size()) {
      fail(errc::schema, path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(expected_header.size()) +
                             " fields, got " + std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (table.header.empty()) fail(errc::schema, path + ": missing header row");
  return table;
}

inline Table read_table(const std::string& path,
                        std::initializer_list<std::string> expected_header) {
  std::vector<std::string> header(expected_header);
  return read_table(path, std::span<const std::string>(header));
}

inline std::string escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) fail(errc::io, "cannot write '" + path + "'");
  }

  void row(std::span<const std::string> fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << escape(fields[i]);
    }
    out_ << '\n';
  }

  void row(std::initializer_list<std::string> fields) {
    row(std::span<const std::string>(fields.begin(), fields.size()));
  }

 private:
  std::ofstream out_;
};

}  // namespace tirank::csv
