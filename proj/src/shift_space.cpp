#include "gibbsloss/shift_space.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace gibbsloss {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw Error(ErrorCode::MalformedInput, "empty symbol name");
    auto [it, inserted] = index_.emplace(names_[i], static_cast<Symbol>(i));
    if (!inserted) throw Error(ErrorCode::DuplicateSymbol, "symbol '" + names_[i] + "' listed twice");
  }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw Error(ErrorCode::UnknownSymbolInRelation, "unknown symbol '" + std::string(name) + "'");
}

std::size_t System::edge_count() const noexcept {
  return static_cast<std::size_t>(std::count(allowed_.begin(), allowed_.end(), char{1}));
}

void System::index() {
  const std::size_t n = size();
  succ_.assign(n, {});
  pred_.assign(n, {});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (allowed_[a * n + b]) {
        succ_[a].push_back(static_cast<Symbol>(b));
        pred_[b].push_back(static_cast<Symbol>(a));
      }
    }
  }
  by_label_.assign(labels_.size(), {});
  for (std::size_t a = 0; a < n; ++a) by_label_[static_cast<std::size_t>(label_[a])].push_back(static_cast<Symbol>(a));
}

namespace {

// Iteratively removes symbols with no successor or no predecessor; returns the
// surviving indices (in original order) and the removed ones (in removal order).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> essential_core(const std::vector<char>& allowed,
                                                                            std::size_t n) {
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> removed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      bool has_out = false;
      bool has_in = false;
      for (std::size_t b = 0; b < n; ++b) {
        if (!alive[b]) continue;
        has_out = has_out || allowed[a * n + b];
        has_in = has_in || allowed[b * n + a];
      }
      if (!has_out || !has_in) {
        alive[a] = 0;
        removed.push_back(a);
        changed = true;
      }
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t a = 0; a < n; ++a)
    if (alive[a]) kept.push_back(a);
  return {kept, removed};
}

}  // namespace

System System::from_parts(Alphabet symbols, std::vector<char> allowed, std::vector<std::string> labels) {
  const std::size_t n = symbols.size();
  if (allowed.size() != n * n || labels.size() != n)
    throw Error(ErrorCode::MalformedInput, "inconsistent system dimensions");
  if (n == 0) throw Error(ErrorCode::EmptyAfterTrim, "empty alphabet");

  auto [kept, removed] = essential_core(allowed, n);
  if (kept.empty()) throw Error(ErrorCode::EmptyAfterTrim, "no symbol lies on a bi-infinite path");

  System sys;
  std::vector<std::string> names;
  for (std::size_t a : kept) names.push_back(symbols.name(static_cast<Symbol>(a)));
  sys.symbols_ = Alphabet(std::move(names));
  for (std::size_t a : removed) sys.trimmed_.push_back(symbols.name(static_cast<Symbol>(a)));

  std::set<std::string> label_set;
  for (std::size_t a : kept) label_set.insert(labels[a]);
  sys.labels_ = Alphabet(std::vector<std::string>(label_set.begin(), label_set.end()));

  const std::size_t m = kept.size();
  sys.allowed_.assign(m * m, 0);
  sys.label_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    sys.label_[i] = sys.labels_.at(labels[kept[i]]);
    for (std::size_t j = 0; j < m; ++j) sys.allowed_[i * m + j] = allowed[kept[i] * n + kept[j]];
  }
  sys.index();
  return sys;
}

System validate_system(const RawSystem& raw) {
  if (raw.alphabet.empty()) throw Error(ErrorCode::EmptyAfterTrim, "empty alphabet");
  Alphabet symbols(raw.alphabet);
  const std::size_t n = symbols.size();

  std::vector<char> allowed(n * n, 0);
  for (const auto& [a, b] : raw.allowed) {
    allowed[static_cast<std::size_t>(symbols.at(a)) * n + static_cast<std::size_t>(symbols.at(b))] = 1;
  }

  std::vector<std::string> labels(n);
  for (const auto& [sym, lab] : raw.labels) {
    if (lab.empty()) throw Error(ErrorCode::MalformedInput, "empty label for symbol '" + sym + "'");
    labels[static_cast<std::size_t>(symbols.at(sym))] = lab;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (labels[a].empty())
      throw Error(ErrorCode::MissingLabel, "symbol '" + symbols.name(static_cast<Symbol>(a)) + "' has no label");
  }
  return System::from_parts(std::move(symbols), std::move(allowed), std::move(labels));
}

System System::reversed() const {
  const std::size_t n = size();
  std::vector<char> rev(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) rev[b * n + a] = allowed_[a * n + b];
  std::vector<std::string> lab(n);
  for (std::size_t a = 0; a < n; ++a) lab[a] = labels_.name(label_[a]);
  return from_parts(symbols_, std::move(rev), std::move(lab));
}

MixingWitness is_mixing(const System& system) {
  const std::size_t n = system.size();
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  // power holds the 0/1 pattern of A^k.
  std::vector<char> power(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) power[a * n + b] = system.allowed(static_cast<Symbol>(a), static_cast<Symbol>(b));

  auto positive = [&] { return std::all_of(power.begin(), power.end(), [](char c) { return c != 0; }); };
  for (std::size_t k = 1; k <= bound; ++k) {
    if (positive()) return {true, static_cast<int>(k), -1, -1};
    if (k == bound) break;
    std::vector<char> next(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c) {
        if (!power[a * n + c]) continue;
        for (Symbol b : system.successors(static_cast<Symbol>(c))) next[a * n + static_cast<std::size_t>(b)] = 1;
      }
    power = std::move(next);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!power[a * n + b]) return {false, 0, static_cast<Symbol>(a), static_cast<Symbol>(b)};
  return {true, static_cast<int>(bound), -1, -1};
}

Recoding higher_block_recode(const System& system, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "block length must be at least 1");
  std::vector<Word> kblocks = blocks(system, k, Target::Domain);

  bool single_char = std::all_of(system.symbols().names().begin(), system.symbols().names().end(),
                                 [](const std::string& s) { return s.size() == 1; });
  std::vector<std::string> names;
  std::vector<std::string> labels;
  for (const Word& b : kblocks) {
    names.push_back(format_word(system.symbols(), b, single_char ? "" : "."));
    labels.push_back(system.labels().name(system.label(b.front())));
  }
  const std::size_t m = kblocks.size();
  std::vector<char> allowed(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Word& a = kblocks[i];
      const Word& b = kblocks[j];
      bool overlap = std::equal(a.begin() + 1, a.end(), b.begin());
      // For k = 1 the overlap is empty and the (k+1)-block is just the pair.
      allowed[i * m + j] = overlap && system.allowed(a.back(), b.back());
    }
  }
  Recoding out{System::from_parts(Alphabet(std::move(names)), std::move(allowed), std::move(labels)), {}};
  // Recoding of an essential system is essential, so no symbol was trimmed.
  out.blocks = std::move(kblocks);
  return out;
}

std::size_t count_domain_blocks(const System& system, int n, std::size_t limit) {
  if (n < 1) return 0;
  std::vector<double> ways(system.size(), 1.0);
  for (int step = 1; step < n; ++step) {
    std::vector<double> next(system.size(), 0.0);
    for (std::size_t a = 0; a < system.size(); ++a)
      for (Symbol b : system.successors(static_cast<Symbol>(a))) next[static_cast<std::size_t>(b)] += ways[a];
    ways = std::move(next);
  }
  double total = std::accumulate(ways.begin(), ways.end(), 0.0);
  return total >= static_cast<double>(limit) ? limit : static_cast<std::size_t>(total);
}

namespace {

void size_guard(std::size_t count, std::size_t cap, const char* what) {
  if (count > cap)
    throw Error(ErrorCode::SizeGuard,
                std::string(what) + " would exceed the size cap of " + std::to_string(cap) + " words");
}

}  // namespace

std::vector<Word> blocks(const System& system, int n, Target target, std::size_t cap) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "word length must be at least 1");
  std::vector<Word> out;

  if (target == Target::Domain) {
    size_guard(count_domain_blocks(system, n, cap + 1), cap, "domain block enumeration");
    Word cur;
    auto extend = [&](auto&& self, Symbol last) -> void {
      if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
      }
      for (Symbol b : system.successors(last)) {
        cur.push_back(b);
        self(self, b);
        cur.pop_back();
      }
    };
    for (Symbol a = 0; a < static_cast<Symbol>(system.size()); ++a) {
      cur.assign(1, a);
      extend(extend, a);
    }
    return out;
  }

  // Image words: depth-first over label words, tracking the set of domain
  // symbols that can end a path with the current label prefix.
  Word cur;
  auto extend = [&](auto&& self, const std::vector<char>& reach) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      size_guard(out.size(), cap, "image block enumeration");
      return;
    }
    for (Symbol l = 0; l < static_cast<Symbol>(system.labels().size()); ++l) {
      std::vector<char> next(system.size(), 0);
      bool any = false;
      for (Symbol b : system.preimage(l)) {
        for (Symbol a : system.predecessors(b)) {
          if (reach[static_cast<std::size_t>(a)]) {
            next[static_cast<std::size_t>(b)] = 1;
            any = true;
            break;
          }
        }
      }
      if (!any) continue;
      cur.push_back(l);
      self(self, next);
      cur.pop_back();
    }
  };
  for (Symbol l = 0; l < static_cast<Symbol>(system.labels().size()); ++l) {
    std::vector<char> reach(system.size(), 0);
    for (Symbol a : system.preimage(l)) reach[static_cast<std::size_t>(a)] = 1;
    cur.assign(1, l);
    extend(extend, reach);
  }
  return out;
}

std::vector<Word> fiber(const System& system, const Word& w, std::size_t cap) {
  std::vector<Word> out;
  if (w.empty()) return out;
  const std::size_t len = w.size();
  const std::size_t n = system.size();

  // feasible[k][a]: symbol a at position k can read the remaining labels.
  // ways[k][a]: number of such completions, for the size guard.
  std::vector<std::vector<char>> feasible(len, std::vector<char>(n, 0));
  std::vector<double> ways(n, 0.0);
  for (Symbol a : system.preimage(w.back())) {
    feasible[len - 1][static_cast<std::size_t>(a)] = 1;
    ways[static_cast<std::size_t>(a)] = 1.0;
  }
  for (std::size_t k = len - 1; k-- > 0;) {
    std::vector<double> next(n, 0.0);
    for (Symbol a : system.preimage(w[k])) {
      for (Symbol b : system.successors(a)) {
        if (feasible[k + 1][static_cast<std::size_t>(b)]) {
          feasible[k][static_cast<std::size_t>(a)] = 1;
          next[static_cast<std::size_t>(a)] += ways[static_cast<std::size_t>(b)];
        }
      }
    }
    ways = std::move(next);
  }
  double total = std::accumulate(ways.begin(), ways.end(), 0.0);
  size_guard(total > static_cast<double>(cap) ? cap + 1 : static_cast<std::size_t>(total), cap, "fiber enumeration");

  Word cur;
  auto extend = [&](auto&& self) -> void {
    if (cur.size() == len) {
      out.push_back(cur);
      return;
    }
    for (Symbol b : system.successors(cur.back())) {
      if (!feasible[cur.size()][static_cast<std::size_t>(b)]) continue;
      cur.push_back(b);
      self(self);
      cur.pop_back();
    }
  };
  for (Symbol a : system.preimage(w.front())) {
    if (!feasible[0][static_cast<std::size_t>(a)]) continue;
    cur.assign(1, a);
    extend(extend);
  }
  return out;
}

bool is_domain_word(const System& system, const Word& x) {
  if (x.empty()) return false;
  for (Symbol s : x)
    if (s < 0 || s >= static_cast<Symbol>(system.size())) return false;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!system.allowed(x[i], x[i + 1])) return false;
  return true;
}

bool is_image_word(const System& system, const Word& w) {
  if (w.empty()) return false;
  std::vector<char> reach(system.size(), 0);
  for (Symbol a : system.preimage(w[0])) reach[static_cast<std::size_t>(a)] = 1;
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::vector<char> next(system.size(), 0);
    bool any = false;
    for (Symbol b : system.preimage(w[k]))
      for (Symbol a : system.predecessors(b))
        if (reach[static_cast<std::size_t>(a)]) {
          next[static_cast<std::size_t>(b)] = 1;
          any = true;
          break;
        }
    if (!any) return false;
    reach = std::move(next);
  }
  return true;
}

Word label_word(const System& system, const Word& x) {
  Word out;
  out.reserve(x.size());
  for (Symbol s : x) out.push_back(system.label(s));
  return out;
}

PeriodicPoint make_periodic_point(const Word& u) {
  if (u.empty()) throw Error(ErrorCode::InvalidArgument, "periodic point needs a nonempty cycle");
  const std::size_t n = u.size();
  std::size_t root = n;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = u[i] == u[i - d];
    if (repeats) {
      root = d;
      break;
    }
  }
  Word base(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(root));
  std::size_t best = 0;
  auto rotated_less = [&](std::size_t r, std::size_t s) {
    for (std::size_t i = 0; i < root; ++i) {
      Symbol x = base[(r + i) % root];
      Symbol y = base[(s + i) % root];
      if (x != y) return x < y;
    }
    return false;
  };
  for (std::size_t r = 1; r < root; ++r)
    if (rotated_less(r, best)) best = r;

  PeriodicPoint p;
  p.cycle.resize(root);
  for (std::size_t i = 0; i < root; ++i) p.cycle[i] = base[(best + i) % root];
  // cycle[i] = base[i + best], so the caller's word starts at cycle[root - best].
  p.phase = static_cast<int>((root - best) % root);
  return p;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  bool separated = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      separated = true;
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  if (tokens.empty()) throw Error(ErrorCode::InvalidArgument, "empty word");

  Word out;
  if (!separated && tokens.size() == 1 && !alphabet.find(tokens[0])) {
    // Unseparated text: one character per symbol.
    for (char c : tokens[0]) out.push_back(alphabet.at(std::string(1, c)));
    return out;
  }
  for (const auto& t : tokens) out.push_back(alphabet.at(t));
  return out;
}

std::string format_word(const Alphabet& alphabet, const Word& w, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += alphabet.name(w[i]);
  }
  return out;
}

bool is_periodic_in_image(const System& system, const Word& u) {
  if (u.empty()) return false;
  // u^infinity is in Y iff the |u|-layered graph of preimages has a cycle.
  const std::size_t len = u.size();
  const std::size_t n = system.size();
  // Iteratively drop vertices without a successor in the next layer.
  std::vector<std::vector<char>> alive(len, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < len; ++i)
    for (Symbol a : system.preimage(u[i])) alive[i][static_cast<std::size_t>(a)] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < len; ++i) {
      const auto& next = alive[(i + 1) % len];
      for (std::size_t a = 0; a < n; ++a) {
        if (!alive[i][a]) continue;
        bool ok = false;
        for (Symbol b : system.successors(static_cast<Symbol>(a))) ok = ok || next[static_cast<std::size_t>(b)];
        if (!ok) {
          alive[i][a] = 0;
          changed = true;
        }
      }
    }
  }
  return std::any_of(alive[0].begin(), alive[0].end(), [](char c) { return c != 0; });
}

}  // namespace gibbsloss
