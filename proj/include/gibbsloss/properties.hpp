#pragma once

// Map-level structural properties: eresolving, fiber-mixing, continuing and
// nearly fiber-mixing. Infinite-horizon properties are decided against
// finite horizons and may come back unknown.

#include <string>
#include <vector>

#include <json.hpp>

#include "gibbsloss/classes.hpp"
#include "gibbsloss/depth.hpp"

namespace gibbsloss {

enum class Status { Holds, Fails, Unknown };

std::string_view to_string(Status s) noexcept;
/// CLI exit status for a verdict: 0 holds, 1 fails, 2 unknown.
int exit_code(Status s) noexcept;

struct PropertyVerdict {
  std::string property;
  Status status = Status::Unknown;
  nlohmann::json witness = nlohmann::json::object();
  nlohmann::json horizon = nlohmann::json::object();
  std::vector<PropertyVerdict> parts;
  std::string note;
};

inline constexpr int kDefaultPeriodBound = 6;
inline constexpr int kDefaultWordHorizon = 10;

PropertyVerdict eresolving_check(const System& system, Side side);

/// Label cycles u (Lyndon words) with u^infinity in Y and |u| == length, sorted.
std::vector<Word> periodic_cycles_of_length(const System& system, int length);
/// All such cycles with 1 <= |u| <= max_period, sorted by length then lex.
std::vector<Word> periodic_cycles(const System& system, int max_period);

PropertyVerdict fiber_mixing_certificate(const System& system, int horizon, std::size_t cap = kDefaultSizeCap);

struct DegreeRecord {
  Word cycle;
  int right = 0;
  int left = 0;
};

struct ContinuingReport {
  PropertyVerdict right;
  PropertyVerdict left;
  std::vector<DegreeRecord> battery;
  bool degree_constant = true;
};

ContinuingReport continuing_diagnosis(const System& system, int period_bound);

PropertyVerdict nearly_fiber_mixing_verdict(const System& system, int period_bound = kDefaultPeriodBound,
                                            int horizon = kDefaultWordHorizon, std::size_t cap = kDefaultSizeCap);

}  // namespace gibbsloss
