#pragma once

#include <stdexcept>
#include <string>

namespace tirank {

// Error categories. Input-side codes map to CLI exit code 1,
// computation-side codes to exit code 2.
enum class errc {
  io,
  schema,
  duplicate_key,
  byline,
  config,
  spec,
  empty_cohort,
  domain,
  cohort_mismatch,
  missing_weights,
  baseline_undefined,
  undefined_correlation,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::io: return "io";
    case errc::schema: return "schema";
    case errc::duplicate_key: return "duplicate-key";
    case errc::byline: return "byline";
    case errc::config: return "config";
    case errc::spec: return "spec";
    case errc::empty_cohort: return "empty-cohort";
    case errc::domain: return "domain";
    case errc::cohort_mismatch: return "cohort-mismatch";
    case errc::missing_weights: return "missing-weights";
    case errc::baseline_undefined: return "baseline-undefined";
    case errc::undefined_correlation: return "undefined-correlation";
  }
  return "unknown";
}

inline bool is_computation_error(errc c) {
  return c == errc::missing_weights || c == errc::baseline_undefined ||
         c == errc::undefined_correlation;
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace tirank
