#pragma once

// Bridges, depth and tau-depth of finite image words.
//
// Everything here depends on a fiber word only through its endpoint pair
// (first symbol, last symbol): a bridge from u to w exists iff some fiber word
// starts at u|_1 and ends at w|_l. The computations therefore work on the set
// of occurring endpoint pairs and layered reachability, never on the fiber.

#include <optional>
#include <utility>
#include <vector>

#include "gibbsloss/shift_space.hpp"

namespace gibbsloss {

struct BridgePair {
  bool forward = false;
  bool backward = false;
};

/// Throws LengthMismatch / LabelMismatch when u and w are not comparable.
BridgePair bridges(const System& system, const Word& u, const Word& w);

using EndpointPair = std::pair<Symbol, Symbol>;

/// Forward/backward reachability through the layers of a label word.
class LayeredReach {
 public:
  LayeredReach(const System& system, const Word& w);

  std::size_t length() const noexcept { return word_.size(); }
  /// Endpoint pairs (first, last) of fiber words, sorted.
  const std::vector<EndpointPair>& endpoints() const noexcept { return endpoints_; }
  bool empty() const noexcept { return endpoints_.empty(); }
  bool has_pair(Symbol s, Symbol t) const;
  /// Symbols at 0-based layer k on a fiber word from s to t.
  std::vector<Symbol> routing_set(std::size_t k, Symbol s, Symbol t) const;

 private:
  const System* system_;
  Word word_;
  // forward_[s][k][a]: a at layer k reachable from s at layer 0.
  std::vector<std::vector<std::vector<char>>> forward_;
  std::vector<std::vector<std::vector<char>>> backward_;
  std::vector<EndpointPair> endpoints_;
};

struct DepthWitness {
  int value = 0;
  int position = 0;             // 1-based interior position n
  std::vector<Symbol> routing;  // the set M, sorted
};

struct TauWitness {
  int value = 0;
  std::vector<std::vector<EndpointPair>> partition;  // tangled blocks of endpoint pairs
  bool exact = true;                                  // false: greedy upper bound
};

struct DepthCertificate {
  Word word;
  DepthWitness depth;
  TauWitness tau;
};

/// Exact depth; throws TooShort for |w| < 3 and EmptyFiber for w outside B(Y).
DepthWitness depth(const System& system, const Word& w);

/// Minimum clique cover of the two-way-bridge relation. Exact up to
/// kExactTauLimit endpoint pairs, greedy (exact = false) beyond.
TauWitness tau_depth(const System& system, const Word& w);

inline constexpr std::size_t kExactTauLimit = 20;

DepthCertificate depth_certificate(const System& system, const Word& w);

struct DegreeEstimate {
  int value = 0;          // min tau over image words of length 3..N
  int min_depth = 0;      // min depth over the same words
  Word witness;           // first word (length, then lex) with depth == value
  bool stabilized = false;
  bool agree = false;     // min depth == min tau
  int horizon = 0;
  std::vector<int> running_min;  // running min of tau after each length, from length 3
};

DegreeEstimate class_degree_estimate(const System& system, int horizon, std::size_t cap = kDefaultSizeCap);

/// Min tau over the factors of u^infinity with length 3..max_length.
int periodic_min_tau(const System& system, const Word& u, int max_length);

}  // namespace gibbsloss
