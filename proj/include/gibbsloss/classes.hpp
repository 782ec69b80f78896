#pragma once

// Fiber graphs of periodic label points and the transition classes over them.
//
// For y = u^infinity every preimage is a bi-infinite path in the fiber graph
// of u. Unrolling that graph to an analysis period q (a multiple of |u|) makes
// every class sigma^q-invariant; periodic preimages are then the cycles of the
// unrolled graph and the classes are its nontrivial strongly connected
// components.
//
// Transitions collapse to reachability. If x, x' and y are q-periodic and an
// m-bridge from x to x' exists, shifting it by q gives an (m+q)-bridge, and an
// m-bridge is also a bridge for every smaller m. So x ->^r x' holds iff the
// core of [x] reaches the core of [x'] in the unrolled graph.

#include <optional>
#include <utility>
#include <vector>

#include "gibbsloss/shift_space.hpp"

namespace gibbsloss {

enum class Side { Right, Left };

std::string_view to_string(Side side) noexcept;

/// A vertex of a periodic layered graph: (residue, symbol).
using Vertex = std::pair<int, Symbol>;

struct FiberGraph {
  Word word;  // the label cycle u (as given)
  int period = 0;
  std::vector<Vertex> vertices;                  // sorted
  std::vector<std::pair<Vertex, Vertex>> edges;  // sorted
};

/// Trimmed periodic fiber graph of u; throws EmptyGraph when u^infinity is not in Y.
FiberGraph fiber_graph(const System& system, const Word& u);

/// A q-periodic layered graph over a label cycle, with vertex ids i*|A| + a.
class PeriodicGraph {
 public:
  enum class Trim { Both, PastOnly };

  PeriodicGraph(const System& system, const Word& u, int q, Trim trim = Trim::Both);

  int period() const noexcept { return q_; }
  std::size_t alphabet_size() const noexcept { return n_; }
  std::size_t id(int residue, Symbol a) const noexcept {
    return static_cast<std::size_t>(residue) * n_ + static_cast<std::size_t>(a);
  }
  Vertex vertex(std::size_t id) const noexcept {
    return {static_cast<int>(id / n_), static_cast<Symbol>(id % n_)};
  }
  bool alive(std::size_t id) const noexcept { return alive_[id] != 0; }
  bool alive(int residue, Symbol a) const noexcept { return alive_[id(residue, a)] != 0; }
  bool empty() const noexcept;
  std::size_t size() const noexcept { return alive_.size(); }

  const std::vector<std::size_t>& out(std::size_t id) const { return out_[id]; }
  const std::vector<std::size_t>& in(std::size_t id) const { return in_[id]; }

  /// Nontrivial strongly connected components, each sorted, ordered by smallest vertex.
  std::vector<std::vector<std::size_t>> cyclic_components() const;
  /// Vertices reachable from `sources` (forward) or reaching them (backward); sources included.
  std::vector<char> reach(const std::vector<std::size_t>& sources, bool forward) const;

 private:
  int q_;
  std::size_t n_;
  std::vector<char> alive_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

inline constexpr int kDefaultPhaseCapFactor = 64;

struct TransitionClass {
  std::vector<Vertex> core;  // cycle vertices of the unrolled graph, sorted
  Word representative;       // a periodic preimage, aligned at residue 0, length a multiple of q
  int period = 0;            // smallest s with sigma^s(C) = C
};

struct ClassReport {
  PeriodicPoint point;
  Word word;  // canonical cycle (least rotation of the primitive root)
  Side side = Side::Right;
  int q = 0;
  std::vector<TransitionClass> classes;
  std::vector<std::pair<int, int>> transitions;  // C -> C' with C != C', sorted
  std::vector<bool> nonstop;                     // parallel to transitions
  // [class][residue] -> symbols. support: C|_i; marked: (C*)|_i.
  std::vector<std::vector<std::vector<Symbol>>> support;
  std::vector<std::vector<std::vector<Symbol>>> marked;
  // [residue * |A| + a] -> indices of classes whose support contains (residue, a).
  std::vector<std::vector<int>> membership;

  int class_count() const noexcept { return static_cast<int>(classes.size()); }
  bool has_transition(int from, int to) const;
  /// {C' : C -> C'} including C itself.
  std::vector<int> destinations(int c) const;
  /// Is (residue, a) marked by class c?
  bool is_marked(int c, int residue, Symbol a) const;
  /// Class whose core contains (residue mod q, a), if any.
  std::optional<int> class_of(int residue, Symbol a) const;
};

ClassReport periodic_classes(const System& system, const Word& u, Side side,
                             int phase_cap_factor = kDefaultPhaseCapFactor);

/// Analysis period used for u (already canonicalized to its primitive root).
int analysis_period(const System& system, const Word& cycle, int phase_cap_factor = kDefaultPhaseCapFactor);

/// Smallest marked index of a periodic preimage, given as one period aligned at 0.
struct MkIndex {
  enum class Kind { MinusInfinity, Finite, NotMarkedAnywhere };
  Kind kind = Kind::MinusInfinity;
  long long value = 0;
};

MkIndex mk_index(const System& system, const ClassReport& report, const Word& x);

struct BridgeStats {
  long long r_x = 0;
  long long r_class = 0;
  long long mk = 0;
  long long length = 0;
  int from_class = -1;
  int to_class = -1;
};

/// x and x' are periodic preimages given by one period each, aligned at
/// position 0; the bridge is x on (-inf, m), v on [m, m+|v|), x' afterwards.
BridgeStats bridge_stats(const System& system, const ClassReport& report, const Word& x, const Word& x_prime,
                         const Word& v, long long m);

/// Supremum of bridge lengths for the transition C -> C'; nullopt when unbounded.
std::optional<long long> transition_length(const System& system, const ClassReport& report, int from, int to);

}  // namespace gibbsloss
