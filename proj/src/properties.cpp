#include "gibbsloss/properties.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace gibbsloss {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Unknown: return "unknown-at-horizon";
  }
  return "unknown-at-horizon";
}

int exit_code(Status s) noexcept {
  switch (s) {
    case Status::Holds: return 0;
    case Status::Fails: return 1;
    case Status::Unknown: return 2;
  }
  return 2;
}

namespace {

std::string labels_text(const System& system, const Word& w) { return format_word(system.labels(), w); }
std::string symbols_text(const System& system, const Word& w) { return format_word(system.symbols(), w); }

Word reversed_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

bool is_lyndon(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const Symbol a = w[(r + i) % n];
      if (a != w[i]) {
        if (a < w[i]) return false;
        break;
      }
      if (i + 1 == n) return false;  // equal rotation: not primitive
    }
  }
  return true;
}

}  // namespace

PropertyVerdict eresolving_check(const System& system, Side side) {
  PropertyVerdict v;
  v.property = side == Side::Right ? "right-eresolving" : "left-eresolving";
  const std::size_t labels = system.labels().size();
  std::vector<char> image2(labels * labels, 0);
  for (Symbol a = 0; a < static_cast<Symbol>(system.size()); ++a)
    for (Symbol b : system.successors(a))
      image2[static_cast<std::size_t>(system.label(a)) * labels + static_cast<std::size_t>(system.label(b))] = 1;

  nlohmann::json failures = nlohmann::json::array();
  for (Symbol e = 0; e < static_cast<Symbol>(system.size()); ++e) {
    for (Symbol other = 0; other < static_cast<Symbol>(labels); ++other) {
      const Symbol first = side == Side::Right ? system.label(e) : other;
      const Symbol second = side == Side::Right ? other : system.label(e);
      if (!image2[static_cast<std::size_t>(first) * labels + static_cast<std::size_t>(second)]) continue;
      const auto neighbours = side == Side::Right ? system.successors(e) : system.predecessors(e);
      const bool ok =
          std::any_of(neighbours.begin(), neighbours.end(), [&](Symbol f) { return system.label(f) == other; });
      if (!ok) failures.push_back({{"block", labels_text(system, {first, second})}, {"symbol", system.symbols().name(e)}});
    }
  }
  if (failures.empty()) {
    v.status = Status::Holds;
    v.witness = {{"certificate", "every image 2-block extends every preimage symbol"}};
  } else {
    v.status = Status::Fails;
    v.witness = failures.front();
    v.witness["all_failures"] = failures;
  }
  return v;
}

std::vector<Word> periodic_cycles_of_length(const System& system, int length) {
  std::vector<Word> out;
  if (length < 1) return out;
  const Symbol labels = static_cast<Symbol>(system.labels().size());
  Word cur;
  // Depth-first over readable label words; reach holds the possible last symbols.
  auto extend = [&](auto&& self, const std::vector<char>& reach) -> void {
    if (static_cast<int>(cur.size()) == length) {
      if (is_lyndon(cur) && is_periodic_in_image(system, cur)) out.push_back(cur);
      return;
    }
    for (Symbol l = 0; l < labels; ++l) {
      std::vector<char> next(system.size(), 0);
      bool any = false;
      for (Symbol b : system.preimage(l))
        for (Symbol a : system.predecessors(b))
          if (reach[static_cast<std::size_t>(a)]) {
            next[static_cast<std::size_t>(b)] = 1;
            any = true;
            break;
          }
      if (!any) continue;
      cur.push_back(l);
      self(self, next);
      cur.pop_back();
    }
  };
  for (Symbol l = 0; l < labels; ++l) {
    std::vector<char> reach(system.size(), 0);
    for (Symbol a : system.preimage(l)) reach[static_cast<std::size_t>(a)] = 1;
    cur.assign(1, l);
    extend(extend, reach);
  }
  return out;
}

std::vector<Word> periodic_cycles(const System& system, int max_period) {
  std::vector<Word> out;
  for (int len = 1; len <= max_period; ++len) {
    auto more = periodic_cycles_of_length(system, len);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

PropertyVerdict fiber_mixing_certificate(const System& system, int horizon, std::size_t cap) {
  if (horizon < 3) throw Error(ErrorCode::InvalidArgument, "fiber-mixing horizon must be at least 3");
  PropertyVerdict v;
  v.property = "fiber-mixing";
  v.horizon = {{"N", horizon}};

  for (int len = 3; len <= horizon; ++len) {
    const auto words = blocks(system, len, Target::Image, cap);
    const bool all_tangled = std::all_of(words.begin(), words.end(),
                                         [&](const Word& w) { return tau_depth(system, w).value == 1; });
    if (all_tangled) {
      v.status = Status::Holds;
      v.witness = {{"length", len}, {"words_checked", words.size()}, {"certificate", "tau = 1 for every image word"}};
      return v;
    }
  }
  for (int len = 1; len <= horizon; ++len) {
    for (const Word& u : periodic_cycles_of_length(system, len)) {
      const int right = periodic_classes(system, u, Side::Right).class_count();
      const int left = periodic_classes(system, u, Side::Left).class_count();
      if (right >= 2 || left >= 2) {
        v.status = Status::Fails;
        v.witness = {{"point", labels_text(system, u)}, {"right_classes", right}, {"left_classes", left}};
        return v;
      }
    }
  }
  v.status = Status::Unknown;
  v.note = "no certificate and no periodic refutation within the horizon";
  return v;
}

namespace {

struct ContinuingFailure {
  int class_index = 0;
  Word representative;
  Word z;
};

// Searches for a label word z such that u^{-inf} z is in Y but no preimage
// left-asymptotic to a periodic ray of some class can read it.
std::optional<ContinuingFailure> continuing_failure(const System& system, const Word& cycle) {
  const ClassReport report = periodic_classes(system, cycle, Side::Right);
  const int q = report.q;
  const PeriodicGraph past(system, report.word, q, PeriodicGraph::Trim::PastOnly);
  const std::size_t n = system.size();

  std::vector<char> all(n, 0);
  for (Symbol a = 0; a < static_cast<Symbol>(n); ++a)
    if (past.alive(q - 1, a)) all[static_cast<std::size_t>(a)] = 1;

  auto step = [&](const std::vector<char>& from, Symbol label, bool& any) {
    std::vector<char> next(n, 0);
    any = false;
    for (Symbol b : system.preimage(label))
      for (Symbol a : system.predecessors(b))
        if (from[static_cast<std::size_t>(a)]) {
          next[static_cast<std::size_t>(b)] = 1;
          any = true;
          break;
        }
    return next;
  };

  for (int c = 0; c < report.class_count(); ++c) {
    std::vector<std::size_t> core;
    for (auto [i, a] : report.classes[static_cast<std::size_t>(c)].core) core.push_back(past.id(i, a));
    const auto reach = past.reach(core, true);
    std::vector<char> mine(n, 0);
    for (Symbol a = 0; a < static_cast<Symbol>(n); ++a)
      if (reach[past.id(q - 1, a)]) mine[static_cast<std::size_t>(a)] = 1;

    using State = std::pair<std::vector<char>, std::vector<char>>;
    std::set<State> seen{{all, mine}};
    std::deque<std::pair<State, Word>> queue{{{all, mine}, {}}};
    while (!queue.empty()) {
      auto [state, z] = queue.front();
      queue.pop_front();
      for (Symbol l = 0; l < static_cast<Symbol>(system.labels().size()); ++l) {
        bool any_all = false, any_mine = false;
        auto next_all = step(state.first, l, any_all);
        if (!any_all) continue;
        auto next_mine = step(state.second, l, any_mine);
        Word longer = z;
        longer.push_back(l);
        if (!any_mine) return ContinuingFailure{c, report.classes[static_cast<std::size_t>(c)].representative, longer};
        State next{std::move(next_all), std::move(next_mine)};
        if (seen.insert(next).second) queue.emplace_back(std::move(next), std::move(longer));
      }
    }
  }
  return std::nullopt;
}

PropertyVerdict continuing_side(const System& system, Side side, int period_bound) {
  PropertyVerdict v;
  v.property = side == Side::Right ? "right-continuing" : "left-continuing";
  v.horizon = {{"P", period_bound}};
  const PropertyVerdict eres = eresolving_check(system, side);
  if (eres.status == Status::Holds) {
    v.status = Status::Holds;
    v.witness = {{"certificate", eres.property}};
    return v;
  }
  const System oriented = side == Side::Right ? system : system.reversed();
  for (const Word& u : periodic_cycles(oriented, period_bound)) {
    if (auto fail = continuing_failure(oriented, u)) {
      v.status = Status::Fails;
      if (side == Side::Right) {
        v.witness = {{"point", labels_text(system, u)},
                     {"class", symbols_text(system, fail->representative)},
                     {"continuation", labels_text(system, fail->z)},
                     {"reading", "u^-inf followed by the continuation"}};
      } else {
        v.witness = {{"point", labels_text(system, reversed_word(u))},
                     {"class", symbols_text(system, reversed_word(fail->representative))},
                     {"continuation", labels_text(system, reversed_word(fail->z))},
                     {"reading", "the continuation followed by u^+inf"}};
      }
      return v;
    }
  }
  v.status = Status::Unknown;
  v.note = "not eresolving and no periodic refutation within the period bound";
  return v;
}

}  // namespace

ContinuingReport continuing_diagnosis(const System& system, int period_bound) {
  if (period_bound < 1) throw Error(ErrorCode::InvalidArgument, "period bound must be at least 1");
  ContinuingReport out;
  out.right = continuing_side(system, Side::Right, period_bound);
  out.left = continuing_side(system, Side::Left, period_bound);
  for (const Word& u : periodic_cycles(system, period_bound)) {
    DegreeRecord rec{u, periodic_classes(system, u, Side::Right).class_count(),
                     periodic_classes(system, u, Side::Left).class_count()};
    if (!out.battery.empty() &&
        (rec.right != out.battery.front().right || rec.left != out.battery.front().left))
      out.degree_constant = false;
    out.battery.push_back(std::move(rec));
  }
  return out;
}

PropertyVerdict nearly_fiber_mixing_verdict(const System& system, int period_bound, int horizon, std::size_t cap) {
  PropertyVerdict v;
  v.property = "nearly-fiber-mixing";
  v.horizon = {{"P", period_bound}, {"N", horizon}};

  const ContinuingReport cont = continuing_diagnosis(system, period_bound);
  PropertyVerdict a;
  a.property = "bi-continuing";
  a.horizon = {{"P", period_bound}};
  a.parts = {cont.right, cont.left};
  if (cont.right.status == Status::Fails || cont.left.status == Status::Fails) a.status = Status::Fails;
  else if (cont.right.status == Status::Holds && cont.left.status == Status::Holds) a.status = Status::Holds;
  else a.status = Status::Unknown;
  a.witness = {{"right", to_string(cont.right.status)}, {"left", to_string(cont.left.status)}};
  a.witness["degree_constant"] = cont.degree_constant;
  if (!cont.degree_constant)
    a.note = "class degree varies across periodic points: not both class-closing and bi-continuing";

  PropertyVerdict b;
  b.property = "period-preservation";
  b.horizon = {{"P", period_bound}};
  b.status = Status::Holds;
  PropertyVerdict c;
  c.property = "transition-free";
  c.horizon = {{"P", period_bound}};
  c.status = Status::Holds;

  for (const Word& u : periodic_cycles(system, period_bound)) {
    const ClassReport report = periodic_classes(system, u, Side::Right);
    const int point_period = static_cast<int>(report.word.size());
    if (b.status == Status::Holds) {
      for (const auto& cls : report.classes) {
        if (cls.period > point_period) {
          b.status = Status::Fails;
          b.witness = {{"point", labels_text(system, u)},
                       {"class", symbols_text(system, cls.representative)},
                       {"class_period", cls.period},
                       {"point_period", point_period}};
          break;
        }
      }
    }
    if (c.status == Status::Holds && !report.transitions.empty()) {
      const auto [from, to] = report.transitions.front();
      c.status = Status::Fails;
      c.witness = {{"point", labels_text(system, u)},
                   {"from", symbols_text(system, report.classes[static_cast<std::size_t>(from)].representative)},
                   {"to", symbols_text(system, report.classes[static_cast<std::size_t>(to)].representative)}};
    }
  }
  if (b.status == Status::Holds) b.witness = {{"points_checked", "all periodic points up to P"}};
  if (c.status == Status::Holds) c.witness = {{"points_checked", "all periodic points up to P"}};
  v.parts = {a, b, c};

  const bool any_fails = std::any_of(v.parts.begin(), v.parts.end(), [](const auto& p) { return p.status == Status::Fails; });
  const bool any_unknown =
      std::any_of(v.parts.begin(), v.parts.end(), [](const auto& p) { return p.status == Status::Unknown; });
  if (any_fails) {
    // Periodic-point refutations (B, C) are reported ahead of the continuing search.
    v.status = Status::Fails;
    nlohmann::json failed = nlohmann::json::array();
    for (const auto& p : v.parts)
      if (p.status == Status::Fails) failed.push_back(p.property);
    for (std::size_t i : {1u, 2u, 0u})
      if (v.parts[i].status == Status::Fails) {
        v.witness = {{"failed_part", v.parts[i].property}, {"detail", v.parts[i].witness}, {"failed_parts", failed}};
        break;
      }
  } else if (any_unknown) {
    v.status = Status::Unknown;
    v.note = "a sub-verdict is unknown at this horizon";
  } else {
    const DegreeEstimate est = class_degree_estimate(system, std::max(3, horizon), cap);
    v.witness = {{"class_degree", est.value}, {"degree_witness", labels_text(system, est.witness)}};
    if (est.value == 1) {
      v.status = Status::Holds;
    } else {
      v.status = Status::Unknown;
      v.note = "sub-verdicts hold but the class degree estimate is not 1";
    }
  }
  return v;
}

}  // namespace gibbsloss
