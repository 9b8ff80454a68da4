#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "tirank/corpus.hpp"
#include "tirank/errors.hpp"
#include "tirank/text.hpp"

namespace tirank {

// key=value file: one pair per line, '#' starts a comment, blank lines skipped.
inline std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      fail(errc::config, path + ":" + std::to_string(line_no) +
                             ": expected key=value, got '" + std::string(view) +
                             "'");
    }
    std::string key(trim(view.substr(0, eq)));
    std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) {
      fail(errc::config, path + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      fail(errc::config, path + ":" + std::to_string(line_no) +
                             ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

// Applies recognized observation keys from kv onto config, erasing them so a
// caller can reject leftovers. Returns the updated config.
inline ObservationConfig apply_observation_keys(
    ObservationConfig config, std::map<std::string, std::string>& kv,
    const std::string& context) {
  auto take = [&kv](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string value = it->second;
    kv.erase(it);
    return value;
  };
  if (auto v = take("period_start")) {
    config.period_start_year = static_cast<int>(parse_int_field(*v, context));
  }
  if (auto v = take("period_end")) {
    config.period_end_year = static_cast<int>(parse_int_field(*v, context));
  }
  if (auto v = take("observation_year")) {
    config.observation_year = static_cast<int>(parse_int_field(*v, context));
  }
  if (auto v = take("cohort_key")) {
    config.cohort_key = parse_cohort_key(*v, context);
  }
  return config;
}

inline void reject_unknown_keys(const std::map<std::string, std::string>& kv,
                                const std::string& context) {
  if (!kv.empty()) {
    fail(errc::config,
         context + ": unknown key '" + kv.begin()->first + "'");
  }
}

inline ObservationConfig read_observation_config(const std::string& path) {
  auto kv = read_kv_file(path);
  ObservationConfig config = apply_observation_keys({}, kv, path);
  reject_unknown_keys(kv, path);
  config.validate();
  return config;
}

}  // namespace tirank
