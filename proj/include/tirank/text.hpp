#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>

#include "tirank/errors.hpp"

namespace tirank {

// Fixed decimal rendering for report output. Negative zero is folded to "0...".
inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

// Shortest round-trip rendering for full-precision output.
inline std::string format_full(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

inline std::string_view trim(std::string_view s) {
  auto blank = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

inline long long parse_int_field(std::string_view field, const std::string& context) {
  field = trim(field);
  long long value = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || p != field.data() + field.size()) {
    fail(errc::schema, context + ": not an integer: '" + std::string(field) + "'");
  }
  return value;
}

inline double parse_double_field(std::string_view field, const std::string& context) {
  field = trim(field);
  double value = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || p != field.data() + field.size()) {
    fail(errc::schema, context + ": not a number: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace tirank
