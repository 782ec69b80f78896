#pragma once

// End-to-end reproduction checks against the bundled fixtures and a seeded
// random corpus. Shared by the acceptance test binary and `gibbsloss reproduce`.

#include <filesystem>
#include <string>
#include <vector>

namespace gibbsloss::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
};

inline constexpr int kRandomCorpusSize = 100;

std::vector<CriterionResult> run_all(const std::filesystem::path& fixture_dir);

/// One line per criterion: "PASS|FAIL  <id>  <name>  (<s> s / budget <b> s)  <detail>".
std::string format_line(const CriterionResult& r);

}  // namespace gibbsloss::acceptance
