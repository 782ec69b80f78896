#pragma once

// One-dimensional 1-step shifts of finite type with a 1-block labeling.
//
// Symbols and labels are opaque strings; internally both are dense indices into
// an Alphabet whose order is canonical (every set-valued output is sorted by it).
// The image shift Y = pi(X) is never stored separately: image words are exactly
// the label sequences of X-paths.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gibbsloss/error.hpp"

namespace gibbsloss {

using Symbol = int;
using Word = std::vector<Symbol>;

inline constexpr std::size_t kDefaultSizeCap = 1'000'000;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Symbol> find(std::string_view name) const;
  /// Throws UnknownSymbolInRelation when absent.
  Symbol at(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Symbol, std::less<>> index_;
};

/// Unvalidated system description, as read from JSON.
struct RawSystem {
  std::vector<std::string> alphabet;
  std::vector<std::pair<std::string, std::string>> allowed;
  std::map<std::string, std::string> labels;
};

/// A validated (essential) 1-step SFT together with its 1-block factor map.
/// Immutable after construction.
class System {
 public:
  const Alphabet& symbols() const noexcept { return symbols_; }
  const Alphabet& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return symbols_.size(); }

  bool allowed(Symbol a, Symbol b) const noexcept {
    return allowed_[static_cast<std::size_t>(a) * size() + static_cast<std::size_t>(b)] != 0;
  }
  std::span<const Symbol> successors(Symbol a) const { return succ_.at(static_cast<std::size_t>(a)); }
  std::span<const Symbol> predecessors(Symbol a) const { return pred_.at(static_cast<std::size_t>(a)); }
  Symbol label(Symbol a) const { return label_.at(static_cast<std::size_t>(a)); }
  /// Domain symbols carrying label `l`, in canonical order.
  std::span<const Symbol> preimage(Symbol l) const { return by_label_.at(static_cast<std::size_t>(l)); }

  std::size_t edge_count() const noexcept;
  /// Names removed by essentiality trimming during validation, in removal order.
  const std::vector<std::string>& trimmed() const noexcept { return trimmed_; }

  /// Same symbols and labels with every allowed pair reversed.
  System reversed() const;

  /// Build directly from indices; `allowed` is a |A|x|A| row-major 0/1 matrix.
  /// Used by recodings and tests; still enforces essentiality.
  static System from_parts(Alphabet symbols, std::vector<char> allowed, std::vector<std::string> labels);

 private:
  friend System validate_system(const RawSystem& raw);

  void index();

  Alphabet symbols_;
  Alphabet labels_;
  std::vector<char> allowed_;
  std::vector<Symbol> label_;
  std::vector<std::vector<Symbol>> succ_;
  std::vector<std::vector<Symbol>> pred_;
  std::vector<std::vector<Symbol>> by_label_;
  std::vector<std::string> trimmed_;
};

/// Validates a raw description. Symbols without an allowed successor or
/// predecessor are deleted iteratively and reported through `System::trimmed()`.
System validate_system(const RawSystem& raw);

struct MixingWitness {
  bool mixing = false;
  int exponent = 0;     // smallest k with A^k > 0 when mixing
  Symbol from = -1;     // otherwise a pair with (A^bound)_{from,to} == 0
  Symbol to = -1;
};

/// Primitivity of the allowed relation, searched up to the Wielandt bound (n-1)^2+1.
MixingWitness is_mixing(const System& system);

struct Recoding {
  System system;
  std::vector<Word> blocks;  // original k-block behind each new symbol
};

/// k-block presentation: symbols are allowed k-blocks, labeled by their first symbol.
Recoding higher_block_recode(const System& system, int k);

enum class Target { Domain, Image };

/// All allowed n-words (Domain) or all image n-words (Image), lexicographically sorted.
std::vector<Word> blocks(const System& system, int n, Target target,
                         std::size_t cap = kDefaultSizeCap);

/// Number of allowed n-words, saturating at `limit`.
std::size_t count_domain_blocks(const System& system, int n, std::size_t limit);

/// Exact fiber of a label word, sorted.
std::vector<Word> fiber(const System& system, const Word& w, std::size_t cap = kDefaultSizeCap);

bool is_domain_word(const System& system, const Word& x);
bool is_image_word(const System& system, const Word& w);
Word label_word(const System& system, const Word& x);

/// True iff u^infinity is a point of Y.
bool is_periodic_in_image(const System& system, const Word& u);

/// A periodic point u^infinity, stored as the least rotation of its primitive root.
struct PeriodicPoint {
  Word cycle;
  int phase = 0;  // offset of the caller's word inside the stored rotation

  int period() const noexcept { return static_cast<int>(cycle.size()); }
};

PeriodicPoint make_periodic_point(const Word& u);

/// Parses a word: whitespace/comma separated tokens, a single name, or one
/// character per symbol when every character is itself a name.
Word parse_word(const Alphabet& alphabet, std::string_view text);
std::string format_word(const Alphabet& alphabet, const Word& w, std::string_view sep = " ");

}  // namespace gibbsloss
