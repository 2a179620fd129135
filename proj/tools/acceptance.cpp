// Acceptance run: one PASS/FAIL line per criterion with its time limit.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "gitp/suites.hpp"

namespace {

struct Criterion {
  int id;
  const char* suite;
  std::uint64_t seed;
  double limit_s;
};

const std::vector<Criterion> kCriteria = {
    {1, "decomposition", 42, 5},   {2, "inner-negative", 1, 1},   {3, "positivity", 3, 10},
    {4, "grading", 4, 5},          {5, "busby-smith", 7, 10},     {6, "group-algebra", 6, 5},
    {7, "group-embedding", 8, 5},  {8, "center", 9, 10},          {9, "separation", 1, 1},
    {10, "injectivity", 10, 20},   {11, "left-regular", 11, 5},   {12, "hilbert-algebra", 12, 5},
    {13, "adjoint", 13, 5},
};

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : kCriteria) {
    std::string verdict, note;
    try {
      const gitp::SuiteReport r = gitp::run_suite(c.suite, c.seed, gitp::Scale::kSmall);
      const double secs = r.elapsed_ms / 1000.0;
      const bool in_time = secs < c.limit_s;
      verdict = r.passed() && in_time ? "PASS" : "FAIL";
      char buf[160];
      std::snprintf(buf, sizeof buf, "%zu cases, %zu checks, %zu failures, %.2fs (limit %.0fs)", r.cases, r.checks,
                    r.failures, secs, c.limit_s);
      note = buf;
      if (!in_time) note += ", over time";
      if (!r.failure_records.empty()) note += "; first failure: " + r.failure_records.front().check;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      note = e.what();
    }
    if (verdict != "PASS") ++failed;
    std::printf("criterion %2d %-16s %s  %s\n", c.id, c.suite, verdict.c_str(), note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(kCriteria.size()) - failed, kCriteria.size());
  return failed == 0 ? 0 : 1;
}
