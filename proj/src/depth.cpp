#include "gibbsloss/depth.hpp"

#include <algorithm>
#include <functional>

namespace gibbsloss {

BridgePair bridges(const System& system, const Word& u, const Word& w) {
  if (u.size() != w.size() || u.empty())
    throw Error(ErrorCode::LengthMismatch, "bridge endpoints must be nonempty words of equal length");
  if (!is_domain_word(system, u) || !is_domain_word(system, w))
    throw Error(ErrorCode::InvalidArgument, "bridge endpoints must be allowed words");
  const Word label = label_word(system, u);
  if (label != label_word(system, w)) throw Error(ErrorCode::LabelMismatch, "bridge endpoints have different labels");
  LayeredReach reach(system, label);
  return {reach.has_pair(u.front(), w.back()), reach.has_pair(w.front(), u.back())};
}

LayeredReach::LayeredReach(const System& system, const Word& w) : system_(&system), word_(w) {
  const std::size_t n = system.size();
  const std::size_t len = w.size();
  forward_.assign(n, {});
  backward_.assign(n, {});
  if (len == 0) return;

  for (Symbol s : system.preimage(w.front())) {
    auto& layers = forward_[static_cast<std::size_t>(s)];
    layers.assign(len, std::vector<char>(n, 0));
    layers[0][static_cast<std::size_t>(s)] = 1;
    for (std::size_t k = 1; k < len; ++k)
      for (Symbol b : system.preimage(w[k]))
        for (Symbol a : system.predecessors(b))
          if (layers[k - 1][static_cast<std::size_t>(a)]) {
            layers[k][static_cast<std::size_t>(b)] = 1;
            break;
          }
  }
  for (Symbol t : system.preimage(w.back())) {
    auto& layers = backward_[static_cast<std::size_t>(t)];
    layers.assign(len, std::vector<char>(n, 0));
    layers[len - 1][static_cast<std::size_t>(t)] = 1;
    for (std::size_t k = len - 1; k-- > 0;)
      for (Symbol a : system.preimage(w[k]))
        for (Symbol b : system.successors(a))
          if (layers[k + 1][static_cast<std::size_t>(b)]) {
            layers[k][static_cast<std::size_t>(a)] = 1;
            break;
          }
  }
  for (Symbol s : system.preimage(w.front()))
    for (Symbol t : system.preimage(w.back()))
      if (forward_[static_cast<std::size_t>(s)][len - 1][static_cast<std::size_t>(t)]) endpoints_.emplace_back(s, t);
}

bool LayeredReach::has_pair(Symbol s, Symbol t) const {
  const auto& layers = forward_.at(static_cast<std::size_t>(s));
  if (layers.empty()) return false;
  return layers.back()[static_cast<std::size_t>(t)] != 0;
}

std::vector<Symbol> LayeredReach::routing_set(std::size_t k, Symbol s, Symbol t) const {
  std::vector<Symbol> out;
  const auto& f = forward_.at(static_cast<std::size_t>(s));
  const auto& b = backward_.at(static_cast<std::size_t>(t));
  if (f.empty() || b.empty()) return out;
  for (Symbol a : system_->preimage(word_[k]))
    if (f[k][static_cast<std::size_t>(a)] && b[k][static_cast<std::size_t>(a)]) out.push_back(a);
  return out;
}

namespace {

// Lexicographically least minimum hitting set of `sets` drawn from `universe`
// (sorted), trying sizes 1..max_size; nullopt if none of size <= max_size.
std::optional<std::vector<Symbol>> min_hitting_set(const std::vector<std::vector<Symbol>>& sets,
                                                   const std::vector<Symbol>& universe, std::size_t max_size) {
  std::vector<Symbol> chosen;
  std::vector<std::size_t> hits(sets.size(), 0);
  auto add = [&](Symbol a, int delta) {
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (std::binary_search(sets[i].begin(), sets[i].end(), a)) hits[i] += static_cast<std::size_t>(delta);
  };
  for (std::size_t size = 1; size <= std::min(max_size, universe.size()); ++size) {
    // Combinations in lex order with pruning: a set that can no longer be hit
    // by the remaining candidates cuts the branch.
    std::function<bool(std::size_t)> search = [&](std::size_t start) -> bool {
      if (chosen.size() == size) return std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h > 0; });
      const std::size_t left = size - chosen.size();
      for (std::size_t i = start; i + left <= universe.size(); ++i) {
        chosen.push_back(universe[i]);
        add(universe[i], 1);
        bool feasible = true;
        for (std::size_t j = 0; j < sets.size() && feasible; ++j) {
          if (hits[j] > 0) continue;
          // Needs some element beyond position i.
          feasible = std::any_of(sets[j].begin(), sets[j].end(), [&](Symbol a) { return a > universe[i]; });
        }
        if (feasible && search(i + 1)) return true;
        add(universe[i], -1);
        chosen.pop_back();
      }
      return false;
    };
    if (search(0)) return chosen;
  }
  return std::nullopt;
}

DepthWitness depth_from(const LayeredReach& reach) {
  const std::size_t len = reach.length();
  DepthWitness best;
  for (std::size_t k = 1; k + 1 < len; ++k) {
    std::vector<std::vector<Symbol>> sets;
    std::vector<Symbol> universe;
    for (const auto& [s, t] : reach.endpoints()) {
      sets.push_back(reach.routing_set(k, s, t));
      universe.insert(universe.end(), sets.back().begin(), sets.back().end());
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    std::size_t bound = best.value == 0 ? universe.size() : static_cast<std::size_t>(best.value);
    auto m = min_hitting_set(sets, universe, bound);
    if (!m) continue;
    const int size = static_cast<int>(m->size());
    if (best.value == 0 || size < best.value || (size == best.value && *m < best.routing)) {
      best.value = size;
      best.position = static_cast<int>(k) + 1;
      best.routing = std::move(*m);
    }
  }
  return best;
}

TauWitness tau_from(const LayeredReach& reach) {
  const auto& nodes = reach.endpoints();
  const std::size_t m = nodes.size();
  std::vector<std::vector<char>> linked(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      linked[i][j] = reach.has_pair(nodes[i].first, nodes[j].second) && reach.has_pair(nodes[j].first, nodes[i].second);

  auto fits = [&](const std::vector<std::size_t>& clique, std::size_t v) {
    return std::all_of(clique.begin(), clique.end(), [&](std::size_t c) { return linked[c][v] != 0; });
  };

  std::vector<std::vector<std::size_t>> best;
  for (std::size_t v = 0; v < m; ++v) {
    auto it = std::find_if(best.begin(), best.end(), [&](const auto& c) { return fits(c, v); });
    if (it == best.end()) best.push_back({v});
    else it->push_back(v);
  }
  bool exact = m <= kExactTauLimit;

  if (exact) {
    std::vector<std::vector<std::size_t>> cur;
    std::function<void(std::size_t)> search = [&](std::size_t v) {
      if (cur.size() >= best.size()) return;
      if (v == m) {
        best = cur;
        return;
      }
      for (std::size_t c = 0; c < cur.size(); ++c) {  // index: deeper calls may grow `cur`
        if (!fits(cur[c], v)) continue;
        cur[c].push_back(v);
        search(v + 1);
        cur[c].pop_back();
      }
      cur.push_back({v});
      search(v + 1);
      cur.pop_back();
    };
    search(0);
  }

  TauWitness out;
  out.value = static_cast<int>(best.size());
  out.exact = exact;
  for (const auto& clique : best) {
    std::vector<EndpointPair> block;
    for (std::size_t v : clique) block.push_back(nodes[v]);
    out.partition.push_back(std::move(block));
  }
  return out;
}

}  // namespace

DepthWitness depth(const System& system, const Word& w) {
  if (w.size() < 3) throw Error(ErrorCode::TooShort, "depth needs a word of length at least 3");
  LayeredReach reach(system, w);
  if (reach.empty()) throw Error(ErrorCode::EmptyFiber, "word is not in the image language");
  return depth_from(reach);
}

TauWitness tau_depth(const System& system, const Word& w) {
  LayeredReach reach(system, w);
  if (reach.empty()) throw Error(ErrorCode::EmptyFiber, "word is not in the image language");
  return tau_from(reach);
}

DepthCertificate depth_certificate(const System& system, const Word& w) {
  if (w.size() < 3) throw Error(ErrorCode::TooShort, "depth needs a word of length at least 3");
  LayeredReach reach(system, w);
  if (reach.empty()) throw Error(ErrorCode::EmptyFiber, "word is not in the image language");
  return {w, depth_from(reach), tau_from(reach)};
}

DegreeEstimate class_degree_estimate(const System& system, int horizon, std::size_t cap) {
  if (horizon < 3) throw Error(ErrorCode::InvalidArgument, "class degree horizon must be at least 3");
  DegreeEstimate est;
  est.horizon = horizon;
  std::optional<Word> first_tau_min;
  std::vector<std::optional<Word>> first_with_depth;

  for (int len = 3; len <= horizon; ++len) {
    for (const Word& w : blocks(system, len, Target::Image, cap)) {
      LayeredReach reach(system, w);
      const int d = depth_from(reach).value;
      const int t = tau_from(reach).value;
      if (static_cast<std::size_t>(d) >= first_with_depth.size()) first_with_depth.resize(static_cast<std::size_t>(d) + 1);
      if (!first_with_depth[static_cast<std::size_t>(d)]) first_with_depth[static_cast<std::size_t>(d)] = w;
      if (est.value == 0 || t < est.value) {
        est.value = t;
        first_tau_min = w;
      }
      if (est.min_depth == 0 || d < est.min_depth) est.min_depth = d;
    }
    est.running_min.push_back(est.value);
    if (est.value == 1 && est.min_depth == 1) break;
  }

  est.agree = est.value == est.min_depth;
  const auto v = static_cast<std::size_t>(est.value);
  est.witness = v < first_with_depth.size() && first_with_depth[v] ? *first_with_depth[v] : *first_tau_min;
  const int reference = horizon - (horizon + 1) / 2;
  if (est.value == 1) {
    est.stabilized = true;
  } else if (reference >= 3) {
    est.stabilized = est.running_min[static_cast<std::size_t>(reference - 3)] == est.value;
  }
  return est;
}

int periodic_min_tau(const System& system, const Word& u, int max_length) {
  if (u.empty()) throw Error(ErrorCode::InvalidArgument, "empty cycle");
  int best = 0;
  for (int len = 3; len <= max_length; ++len) {
    for (std::size_t r = 0; r < u.size(); ++r) {
      Word w(static_cast<std::size_t>(len));
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = u[(r + j) % u.size()];
      LayeredReach reach(system, w);
      if (reach.empty()) throw Error(ErrorCode::EmptyGraph, "periodic word is not in the image");
      const int t = tau_from(reach).value;
      if (best == 0 || t < best) best = t;
    }
  }
  return best;
}

}  // namespace gibbsloss
