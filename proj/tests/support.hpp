#pragma once

#include <optional>
#include <string>
#include <vector>

#include <doctest.h>

#include "gibbsloss/io.hpp"
#include "gibbsloss/oracle.hpp"

namespace testing {

using namespace gibbsloss;

inline System fixture(const std::string& name) {
  return load_system(std::string(GIBBSLOSS_FIXTURE_DIR) + "/" + name + ".json");
}

inline MarkovMeasure fixture_measure(const System& s, const std::string& name) {
  return load_measure(s, std::string(GIBBSLOSS_FIXTURE_DIR) + "/" + name + ".json");
}

inline Word labels(const System& s, const std::string& text) { return parse_word(s.labels(), text); }
inline Word symbols(const System& s, const std::string& text) { return parse_word(s.symbols(), text); }
inline std::string show(const System& s, const Word& w) { return format_word(s.symbols(), w); }
inline std::string show_labels(const System& s, const Word& w) { return format_word(s.labels(), w); }

/// Builds a system from "a>b" style pair strings and "a:0" style labels.
inline System make_system(const std::vector<std::string>& alphabet,
                          const std::vector<std::pair<std::string, std::string>>& allowed,
                          const std::map<std::string, std::string>& labels) {
  return validate_system(RawSystem{alphabet, allowed, labels});
}

/// The identity labeling on a system's own alphabet.
inline System identity_of(const System& s) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::map<std::string, std::string> lab;
  for (Symbol a = 0; a < static_cast<Symbol>(s.size()); ++a) {
    lab[s.symbols().name(a)] = s.symbols().name(a);
    for (Symbol b : s.successors(a)) pairs.emplace_back(s.symbols().name(a), s.symbols().name(b));
  }
  return make_system(s.symbols().names(), pairs, lab);
}

/// The ErrorCode thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"FIG1", "FIG2", "FIG3", "FIG4"};
  return names;
}

/// The seeded random corpus shared by property tests.
inline std::vector<System> random_corpus(int count = 100) {
  std::vector<System> out;
  for (int k = 1; k <= count; ++k) out.push_back(oracle::random_system(static_cast<std::uint64_t>(k)));
  return out;
}

}  // namespace testing
