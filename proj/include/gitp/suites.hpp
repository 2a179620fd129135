#pragma once

// Seeded property suites over the library, one per checked statement, and
// their deterministic reports.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace gitp {

enum class Scale { kSmall, kMedium };

/// "small" or "medium"; throws DomainError otherwise.
Scale parse_scale(const std::string& name);
std::string to_string(Scale s);
/// GITP_SCALE if set, else small.
Scale default_scale();

struct SuiteInfo {
  std::string name;
  std::string anchor;  ///< the statement the suite exercises
};

const std::vector<SuiteInfo>& suite_catalog();

struct CheckFailure {
  std::size_t case_index = 0;
  std::string check;
  std::string detail;
};

struct Witness {
  std::string label;
  std::string value;
};

struct SuiteReport {
  std::string suite;
  std::string anchor;
  std::uint64_t seed = 0;
  Scale scale = Scale::kSmall;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<CheckFailure> failure_records;  ///< first few failures
  std::vector<Witness> witnesses;             ///< sample payloads
  double elapsed_ms = 0.0;

  bool passed() const { return failures == 0 && cases > 0; }
};

/// Throws DomainError for an unknown suite name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, Scale scale);

/// Deterministic JSON; timing is the only field that varies between runs.
nlohmann::ordered_json to_json(const SuiteReport& r, bool include_timing = true);

}  // namespace gitp
