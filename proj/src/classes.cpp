#include "gibbsloss/classes.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace gibbsloss {

std::string_view to_string(Side side) noexcept { return side == Side::Right ? "right" : "left"; }

PeriodicGraph::PeriodicGraph(const System& system, const Word& u, int q, Trim trim)
    : q_(q), n_(system.size()) {
  if (u.empty() || q <= 0 || q % static_cast<int>(u.size()) != 0)
    throw Error(ErrorCode::InvalidArgument, "analysis period must be a positive multiple of the cycle length");
  const std::size_t total = static_cast<std::size_t>(q) * n_;
  alive_.assign(total, 0);
  for (int i = 0; i < q; ++i)
    for (Symbol a : system.preimage(u[static_cast<std::size_t>(i) % u.size()])) alive_[id(i, a)] = 1;

  auto rebuild = [&] {
    out_.assign(total, {});
    in_.assign(total, {});
    for (int i = 0; i < q; ++i) {
      const int j = (i + 1) % q;
      for (std::size_t a = 0; a < n_; ++a) {
        const std::size_t from = id(i, static_cast<Symbol>(a));
        if (!alive_[from]) continue;
        for (Symbol b : system.successors(static_cast<Symbol>(a))) {
          const std::size_t to = id(j, b);
          if (!alive_[to]) continue;
          out_[from].push_back(to);
          in_[to].push_back(from);
        }
      }
    }
  };

  bool changed = true;
  while (changed) {
    rebuild();
    changed = false;
    for (std::size_t v = 0; v < total; ++v) {
      if (!alive_[v]) continue;
      if (in_[v].empty() || (trim == Trim::Both && out_[v].empty())) {
        alive_[v] = 0;
        changed = true;
      }
    }
  }
}

bool PeriodicGraph::empty() const noexcept {
  return std::none_of(alive_.begin(), alive_.end(), [](char c) { return c != 0; });
}

std::vector<char> PeriodicGraph::reach(const std::vector<std::size_t>& sources, bool forward) const {
  std::vector<char> seen(alive_.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : forward ? out_[v] : in_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<std::vector<std::size_t>> PeriodicGraph::cyclic_components() const {
  // Iterative Tarjan.
  const std::size_t total = alive_.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(total, kUnset), low(total, 0);
  std::vector<char> on_stack(total, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < total; ++root) {
    if (!alive_[root] || index[root] != kUnset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < out_[v].size()) {
        std::size_t w = out_[v][next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] != index[done]) continue;
      std::vector<std::size_t> comp;
      std::size_t w = kUnset;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != done);
      const bool self_loop = std::find(out_[done].begin(), out_[done].end(), done) != out_[done].end();
      if (comp.size() > 1 || self_loop) {
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

FiberGraph fiber_graph(const System& system, const Word& u) {
  if (u.empty()) throw Error(ErrorCode::InvalidArgument, "empty cycle");
  const int p = static_cast<int>(u.size());
  PeriodicGraph g(system, u, p);
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "the periodic point is not in the image");
  FiberGraph out;
  out.word = u;
  out.period = p;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!g.alive(v)) continue;
    out.vertices.push_back(g.vertex(v));
    for (std::size_t w : g.out(v)) out.edges.emplace_back(g.vertex(v), g.vertex(w));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

int analysis_period(const System& system, const Word& cycle, int phase_cap_factor) {
  const int p = static_cast<int>(cycle.size());
  PeriodicGraph g(system, cycle, p);
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "the periodic point is not in the image");

  long long q = p;
  for (const auto& comp : g.cyclic_components()) {
    // Cyclic index: gcd of level differences along edges inside the component.
    std::vector<long long> level(g.size(), -1);
    std::vector<char> in_comp(g.size(), 0);
    for (std::size_t v : comp) in_comp[v] = 1;
    std::deque<std::size_t> queue{comp.front()};
    level[comp.front()] = 0;
    long long h = 0;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : g.out(v)) {
        if (!in_comp[w]) continue;
        if (level[w] < 0) {
          level[w] = level[v] + 1;
          queue.push_back(w);
        } else {
          h = std::gcd(h, std::llabs(level[v] + 1 - level[w]));
        }
      }
    }
    q = std::lcm(q, h);
    if (q > static_cast<long long>(phase_cap_factor) * p)
      throw Error(ErrorCode::PhaseCap, "analysis period exceeds " + std::to_string(phase_cap_factor) + " x |u|");
  }
  return static_cast<int>(q);
}

bool ClassReport::has_transition(int from, int to) const {
  return std::binary_search(transitions.begin(), transitions.end(), std::make_pair(from, to));
}

std::vector<int> ClassReport::destinations(int c) const {
  std::vector<int> out;
  for (int d = 0; d < class_count(); ++d)
    if (d == c || has_transition(c, d)) out.push_back(d);
  return out;
}

bool ClassReport::is_marked(int c, int residue, Symbol a) const {
  const auto& m = marked.at(static_cast<std::size_t>(c)).at(static_cast<std::size_t>(residue));
  return std::binary_search(m.begin(), m.end(), a);
}

std::optional<int> ClassReport::class_of(int residue, Symbol a) const {
  const int r = ((residue % q) + q) % q;
  for (int c = 0; c < class_count(); ++c)
    if (std::binary_search(classes[static_cast<std::size_t>(c)].core.begin(),
                           classes[static_cast<std::size_t>(c)].core.end(), Vertex{r, a}))
      return c;
  return std::nullopt;
}

namespace {

// Lex-least shortest cycle through the smallest residue-0 vertex of a core.
Word class_representative(const PeriodicGraph& g, const std::vector<std::size_t>& core) {
  std::vector<char> in_core(g.size(), 0);
  for (std::size_t v : core) in_core[v] = 1;
  const std::size_t target = core.front();  // residue 0 comes first in id order
  const std::size_t q = static_cast<std::size_t>(g.period());
  // can[l][v]: v reaches target in exactly l steps inside the core.
  std::vector<std::vector<char>> can{std::vector<char>(g.size(), 0)};
  can[0][target] = 1;
  for (std::size_t len = 1;; ++len) {
    std::vector<char> next(g.size(), 0);
    for (std::size_t v : core)
      for (std::size_t w : g.out(v))
        if (in_core[w] && can[len - 1][w]) next[v] = 1;
    can.push_back(std::move(next));
    if (len % q == 0 && can[len][target]) {
      Word out{g.vertex(target).second};
      std::size_t v = target;
      for (std::size_t rest = len; rest > 1; --rest) {
        std::size_t best = static_cast<std::size_t>(-1);
        for (std::size_t w : g.out(v))
          if (in_core[w] && can[rest - 1][w] && (best == static_cast<std::size_t>(-1) || w < best)) best = w;
        v = best;
        out.push_back(g.vertex(v).second);
      }
      return out;
    }
  }
}

}  // namespace

ClassReport periodic_classes(const System& system, const Word& u, Side side, int phase_cap_factor) {
  if (u.empty()) throw Error(ErrorCode::InvalidArgument, "empty cycle");
  ClassReport report;
  report.point = make_periodic_point(u);
  report.word = report.point.cycle;
  report.side = side;
  report.q = analysis_period(system, report.word, phase_cap_factor);

  const PeriodicGraph g(system, report.word, report.q);
  const auto comps = g.cyclic_components();
  const int count = static_cast<int>(comps.size());
  const int p = static_cast<int>(report.word.size());
  std::vector<std::vector<char>> reaches_core(comps.size());  // vertices reaching core c
  std::vector<std::vector<char>> from_core(comps.size());     // vertices reachable from core c
  for (std::size_t c = 0; c < comps.size(); ++c) {
    reaches_core[c] = g.reach(comps[c], false);
    from_core[c] = g.reach(comps[c], true);
  }

  for (const auto& comp : comps) {
    TransitionClass cls;
    for (std::size_t v : comp) cls.core.push_back(g.vertex(v));
    for (int s = p; s <= report.q; s += p) {
      if (report.q % s != 0) continue;
      std::vector<Vertex> shifted;
      for (auto [i, a] : cls.core) shifted.emplace_back(((i - s) % report.q + report.q) % report.q, a);
      std::sort(shifted.begin(), shifted.end());
      if (shifted == cls.core) {
        cls.period = s;
        break;
      }
    }
    cls.representative = class_representative(g, comp);
    report.classes.push_back(std::move(cls));
  }

  // core(a) reaches core(b)
  auto reaches = [&](int a, int b) { return from_core[static_cast<std::size_t>(a)][comps[static_cast<std::size_t>(b)].front()] != 0; };
  auto transition = [&](int a, int b) { return side == Side::Right ? reaches(a, b) : reaches(b, a); };
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b)
      if (a != b && transition(a, b)) report.transitions.emplace_back(a, b);
  for (auto [a, b] : report.transitions) {
    bool nonstop = true;
    for (int c = 0; c < count && nonstop; ++c)
      if (c != a && c != b && (transition(a, c) || transition(c, b))) nonstop = false;
    report.nonstop.push_back(nonstop);
  }

  const auto& support_sets = side == Side::Right ? reaches_core : from_core;
  report.membership.assign(g.size(), {});
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!g.alive(v)) continue;
    for (int c = 0; c < count; ++c)
      if (support_sets[static_cast<std::size_t>(c)][v]) report.membership[v].push_back(c);
  }

  report.support.assign(comps.size(), std::vector<std::vector<Symbol>>(static_cast<std::size_t>(report.q)));
  report.marked = report.support;
  for (int c = 0; c < count; ++c) {
    const auto dest = report.destinations(c);
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!g.alive(v)) continue;
      auto [i, a] = g.vertex(v);
      const auto& mem = report.membership[v];
      if (std::binary_search(mem.begin(), mem.end(), c))
        report.support[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)].push_back(a);
      if (mem == dest) report.marked[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)].push_back(a);
    }
  }
  return report;
}

namespace {

long long pos_mod(long long j, long long m) { return ((j % m) + m) % m; }

void require_right(const ClassReport& report) {
  if (report.side != Side::Right)
    throw Error(ErrorCode::InvalidArgument, "marked indices are defined on right class reports");
}

// Checks that x is one period of a preimage of the report's point and returns its class.
int class_of_point(const System& system, const ClassReport& report, const Word& x) {
  const std::size_t p = report.word.size();
  bool ok = !x.empty() && x.size() % p == 0;
  for (std::size_t j = 0; ok && j < x.size(); ++j)
    ok = x[j] >= 0 && x[j] < static_cast<Symbol>(system.size()) && system.label(x[j]) == report.word[j % p] &&
         system.allowed(x[j], x[(j + 1) % x.size()]);
  if (!ok) throw Error(ErrorCode::InvalidArgument, "word is not one period of a periodic preimage");
  auto c = report.class_of(0, x[0]);
  if (!c) throw Error(ErrorCode::InvalidArgument, "periodic preimage not found in the report");
  return *c;
}

bool marked_at(const ClassReport& report, std::size_t n, int c, long long j, Symbol a) {
  const long long r = pos_mod(j, report.q);
  const auto& mem = report.membership[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(a)];
  return mem == report.destinations(c);
}

bool member_at(const ClassReport& report, std::size_t n, int c, long long j, Symbol a) {
  const long long r = pos_mod(j, report.q);
  const auto& mem = report.membership[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(a)];
  return std::binary_search(mem.begin(), mem.end(), c);
}

}  // namespace

MkIndex mk_index(const System& system, const ClassReport& report, const Word& x) {
  require_right(report);
  const int c = class_of_point(system, report, x);
  const long long span = std::lcm(static_cast<long long>(x.size()), static_cast<long long>(report.q));
  for (long long j = 0; j < span; ++j)
    if (marked_at(report, system.size(), c, j, x[static_cast<std::size_t>(j % static_cast<long long>(x.size()))]))
      return {MkIndex::Kind::MinusInfinity, 0};
  return {MkIndex::Kind::NotMarkedAnywhere, 0};
}

BridgeStats bridge_stats(const System& system, const ClassReport& report, const Word& x, const Word& x_prime,
                         const Word& v, long long m) {
  require_right(report);
  if (v.empty()) throw Error(ErrorCode::InvalidBridge, "empty bridge middle");
  const int c_from = class_of_point(system, report, x);
  const int c_to = class_of_point(system, report, x_prime);
  if (c_from == c_to) throw Error(ErrorCode::InvalidBridge, "bridge endpoints lie in the same class");

  const long long n_end = m + static_cast<long long>(v.size()) - 1;
  const long long rx = static_cast<long long>(x.size());
  const long long rxp = static_cast<long long>(x_prime.size());
  auto at = [&](long long j) -> Symbol {
    if (j < m) return x[static_cast<std::size_t>(pos_mod(j, rx))];
    if (j <= n_end) return v[static_cast<std::size_t>(j - m)];
    return x_prime[static_cast<std::size_t>(pos_mod(j, rxp))];
  };
  const long long p = static_cast<long long>(report.word.size());
  for (long long j = m; j <= n_end; ++j) {
    Symbol a = v[static_cast<std::size_t>(j - m)];
    if (a < 0 || a >= static_cast<Symbol>(system.size()) ||
        system.label(a) != report.word[static_cast<std::size_t>(pos_mod(j, p))])
      throw Error(ErrorCode::InvalidBridge, "bridge middle does not carry the point's labels");
  }
  for (long long j = m - 1; j <= n_end; ++j)
    if (!system.allowed(at(j), at(j + 1))) throw Error(ErrorCode::InvalidBridge, "bridge is not an allowed path");

  const std::size_t n = system.size();
  const long long horizon = n_end + std::lcm(rx, rxp) * report.q + 1;
  BridgeStats out;
  out.from_class = c_from;
  out.to_class = c_to;

  long long j = m;
  while (j <= horizon && at(j) == x[static_cast<std::size_t>(pos_mod(j, rx))]) ++j;
  if (j > horizon) throw Error(ErrorCode::InvalidBridge, "bridge coincides with its source point");
  out.r_x = j - 1;

  j = m;
  while (j <= horizon && member_at(report, n, c_from, j, at(j))) ++j;
  out.r_class = j - 1;

  j = m;
  while (j <= horizon && !marked_at(report, n, c_to, j, at(j))) ++j;
  if (j > horizon) throw Error(ErrorCode::MarkedNever, "no marked position after the bridge");
  out.mk = j;
  out.length = out.mk - out.r_class;
  return out;
}

std::optional<long long> transition_length(const System& system, const ClassReport& report, int from, int to) {
  require_right(report);
  if (!report.has_transition(from, to)) throw Error(ErrorCode::InvalidArgument, "no transition between the classes");
  const PeriodicGraph g(system, report.word, report.q);

  std::vector<std::size_t> core;
  for (auto [i, a] : report.classes[static_cast<std::size_t>(from)].core) core.push_back(g.id(i, a));
  std::vector<char> in_core(g.size(), 0);
  for (std::size_t v : core) in_core[v] = 1;

  auto member = [&](std::size_t v, int c) {
    const auto& mem = report.membership[v];
    return std::binary_search(mem.begin(), mem.end(), c);
  };
  const auto dest = report.destinations(to);
  auto marked = [&](std::size_t v) { return report.membership[v] == dest; };
  auto intermediate = [&](std::size_t v) { return !member(v, from) && member(v, to) && !marked(v); };

  // Intermediate vertices entered from the core and chained through intermediates.
  std::vector<char> relevant(g.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t v : core)
    for (std::size_t w : g.out(v))
      if (intermediate(w) && !relevant[w]) {
        relevant[w] = 1;
        stack.push_back(w);
      }
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : g.out(v))
      if (intermediate(w) && !relevant[w]) {
        relevant[w] = 1;
        stack.push_back(w);
      }
  }

  // Longest chain of intermediates (Kahn order); a cycle means unbounded length.
  std::vector<std::size_t> indeg(g.size(), 0);
  std::size_t relevant_count = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!relevant[v]) continue;
    ++relevant_count;
    for (std::size_t w : g.out(v))
      if (relevant[w]) ++indeg[w];
  }
  std::vector<long long> longest(g.size(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (relevant[v] && indeg[v] == 0) queue.push_back(v);
  for (std::size_t v = 0; v < g.size(); ++v)
    if (relevant[v]) longest[v] = 1;
  std::size_t processed = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    ++processed;
    for (std::size_t w : g.out(v)) {
      if (!relevant[w]) continue;
      longest[w] = std::max(longest[w], longest[v] + 1);
      if (--indeg[w] == 0) queue.push_back(w);
    }
  }
  if (processed != relevant_count) return std::nullopt;

  long long best = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const bool entry = in_core[v] || relevant[v];
    if (!entry) continue;
    for (std::size_t w : g.out(v)) {
      if (!marked(w) || member(w, from)) continue;
      best = std::max(best, (in_core[v] ? 0 : longest[v]) + 1);
    }
  }
  return best;
}

}  // namespace gibbsloss
