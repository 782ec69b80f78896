#include "gibbsloss/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gibbsloss {

namespace {

// Keeps only symbols on bi-infinite paths through the per-residue sets.
std::vector<std::vector<Symbol>> trim_periodic(const System& system, std::vector<std::vector<Symbol>> sets) {
  const std::size_t q = sets.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < q; ++i) {
      const auto& prev = sets[(i + q - 1) % q];
      const auto& next = sets[(i + 1) % q];
      std::vector<Symbol> kept;
      for (Symbol a : sets[i]) {
        const auto has = [](const std::vector<Symbol>& set, std::span<const Symbol> cand) {
          return std::any_of(cand.begin(), cand.end(), [&](Symbol b) { return std::binary_search(set.begin(), set.end(), b); });
        };
        if (has(prev, system.predecessors(a)) && has(next, system.successors(a))) kept.push_back(a);
      }
      if (kept.size() != sets[i].size()) {
        sets[i] = std::move(kept);
        changed = true;
      }
    }
  }
  return sets;
}

// Per-residue alphabets of C*: the marked sets trimmed to bi-infinite paths,
// or the trimmed support when a transition-free class has no marked path.
std::pair<std::vector<std::vector<Symbol>>, bool> class_alphabets(const System& system, const ClassReport& report,
                                                                  int c) {
  auto marked = trim_periodic(system, report.marked.at(static_cast<std::size_t>(c)));
  const bool complete = std::none_of(marked.begin(), marked.end(), [](const auto& s) { return s.empty(); });
  if (complete) return {marked, false};
  const bool involved = std::any_of(report.transitions.begin(), report.transitions.end(),
                                    [&](const auto& t) { return t.first == c || t.second == c; });
  if (involved) throw Error(ErrorCode::EmptyMarkedAlphabet, "class has an empty marked alphabet");
  return {trim_periodic(system, report.support.at(static_cast<std::size_t>(c))), true};
}

// log mu over positions 0..m-1 inside the class alphabets, for m = 1..length.
std::vector<double> class_cylinder_logs(const System& system, const MarkovMeasure& mu, const ClassReport& report,
                                        int c, int length) {
  const auto [alphabets, fallback] = class_alphabets(system, report, c);
  (void)fallback;
  const std::size_t q = static_cast<std::size_t>(report.q);
  const std::size_t n = system.size();
  std::vector<double> v(n, 0.0);
  for (Symbol a : alphabets[0]) v[static_cast<std::size_t>(a)] = mu.initial(a);
  std::vector<double> out;
  double log_mass = 0.0;
  for (int m = 1; m <= length; ++m) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (!(sum > 0)) {
      out.resize(static_cast<std::size_t>(length), -std::numeric_limits<double>::infinity());
      return out;
    }
    log_mass += std::log(sum);
    out.push_back(log_mass);
    std::vector<double> next(n, 0.0);
    for (Symbol b : alphabets[static_cast<std::size_t>(m) % q]) {
      double acc = 0.0;
      for (Symbol a : system.predecessors(b)) acc += v[static_cast<std::size_t>(a)] * mu.transition(a, b);
      next[static_cast<std::size_t>(b)] = acc / sum;
    }
    v = std::move(next);
  }
  return out;
}

}  // namespace

ClassMatrix class_matrix(const System& system, const Eigen::MatrixXd& transition, const ClassReport& report, int c) {
  const auto [alphabets, fallback] = class_alphabets(system, report, c);
  const std::size_t q = static_cast<std::size_t>(report.q);
  ClassMatrix out;
  out.states = alphabets[0];
  out.used_support = fallback;
  const auto k = static_cast<Eigen::Index>(out.states.size());
  const auto n = static_cast<Eigen::Index>(system.size());

  // Rows: start state; columns: current symbol.
  Eigen::MatrixXd paths = Eigen::MatrixXd::Zero(k, n);
  for (Eigen::Index r = 0; r < k; ++r) paths(r, out.states[static_cast<std::size_t>(r)]) = 1.0;
  for (std::size_t step = 1; step <= q; ++step) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, n);
    for (Symbol b : alphabets[step % q])
      for (Symbol a : system.predecessors(b)) next.col(b) += paths.col(a) * transition(a, b);
    paths = std::move(next);
  }
  out.matrix.resize(k, k);
  for (Eigen::Index j = 0; j < k; ++j) out.matrix.col(j) = paths.col(out.states[static_cast<std::size_t>(j)]);
  return out;
}

ClassMatrix class_matrix(const System& system, const MarkovMeasure& mu, const ClassReport& report, int c) {
  return class_matrix(system, mu.transition, report, c);
}

double log_class_cylinder(const System& system, const MarkovMeasure& mu, const ClassReport& report, int c,
                          int length) {
  if (length < 1) throw Error(ErrorCode::InvalidArgument, "cylinder length must be positive");
  return class_cylinder_logs(system, mu, report, c, length).back();
}

GrowthProfile growth_profile(const System& system, const MarkovMeasure& mu, const Word& u, int n_max) {
  if (n_max < 4) throw Error(ErrorCode::InvalidArgument, "growth profile needs n_max >= 4");
  GrowthProfile profile;
  profile.report = periodic_classes(system, u, Side::Right);
  profile.n_max = n_max;
  const ClassReport& report = profile.report;
  const int q = report.q;

  for (int c = 0; c < report.class_count(); ++c) {
    ClassGrowth g;
    g.index = c;
    g.period = report.classes[static_cast<std::size_t>(c)].period;
    g.matrix = class_matrix(system, mu, report, c);
    const auto pr = perron(g.matrix.matrix);
    g.lambda = pr.lambda;
    g.residual = pr.residual;
    g.rate_per_symbol = std::pow(g.lambda, 1.0 / q);

    const auto logs = class_cylinder_logs(system, mu, report, c, q * n_max);
    std::vector<double> log_k;
    for (int n = 1; n <= n_max; ++n) log_k.push_back(logs[static_cast<std::size_t>(q * n - 1)] - n * std::log(g.lambda));
    const double k_end = std::exp(log_k.back());
    double lo = k_end, hi = k_end;
    for (int n = n_max - n_max / 4; n <= n_max; ++n) {
      const double k = std::exp(log_k[static_cast<std::size_t>(n - 1)]);
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    g.coefficient = k_end;
    g.coefficient_spread = (hi - lo) / k_end;
    g.converged = g.coefficient_spread < kCoefficientSpreadTol;
    profile.classes.push_back(std::move(g));
  }

  // Orbits under the shift by one point period.
  const int count = report.class_count();
  std::vector<int> parent(static_cast<std::size_t>(count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  const int p = static_cast<int>(report.word.size());
  for (int c = 0; c < count; ++c) {
    const auto& core = report.classes[static_cast<std::size_t>(c)].core;
    std::vector<Vertex> shifted;
    for (auto [i, a] : core) shifted.emplace_back(((i - p) % q + q) % q, a);
    std::sort(shifted.begin(), shifted.end());
    for (int d = 0; d < count; ++d)
      if (report.classes[static_cast<std::size_t>(d)].core == shifted) parent[static_cast<std::size_t>(find(c))] = find(d);
  }
  for (int c = 0; c < count; ++c) profile.classes[static_cast<std::size_t>(c)].orbit = find(c);
  for (const auto& a : profile.classes)
    for (const auto& b : profile.classes)
      if (a.orbit == b.orbit && std::abs(a.lambda - b.lambda) > 1e-9 * std::max(a.lambda, b.lambda))
        profile.orbit_consistent = false;
  return profile;
}

MeasureFamily single_transition_family(const Eigen::MatrixXd& base, Symbol from, Symbol to) {
  return [base, from, to](double t) {
    Eigen::MatrixXd P = base;
    const double rest = base.row(from).sum() - base(from, to);
    if (rest > 0) P.row(from) *= (1.0 - t) / rest;
    P(from, to) = t;
    return P;
  };
}

double class_rate(const System& system, const MeasureFamily& family, const ClassReport& report, int c, double t) {
  const ClassMatrix cm = class_matrix(system, family(t), report, c);
  if (is_primitive(cm.matrix)) return perron(cm.matrix).lambda;
  return spectral_radius(cm.matrix);
}

TuneResult tune_class_rate(const System& system, const MeasureFamily& family, const ClassReport& report, int c,
                           double target, double t_lo, double t_hi) {
  if (!(t_lo < t_hi)) throw Error(ErrorCode::InvalidArgument, "parameter interval is empty");
  const double r_lo = class_rate(system, family, report, c, t_lo);
  const double r_hi = class_rate(system, family, report, c, t_hi);
  if (!(std::min(r_lo, r_hi) < target && target < std::max(r_lo, r_hi)))
    throw Error(ErrorCode::TargetOutOfRange, "target rate " + std::to_string(target) + " is outside (" +
                                                 std::to_string(std::min(r_lo, r_hi)) + ", " +
                                                 std::to_string(std::max(r_lo, r_hi)) + ")");
  const bool increasing = r_lo < r_hi;
  double lo = t_lo, hi = t_hi;
  TuneResult out;
  for (out.iterations = 1; out.iterations <= 200; ++out.iterations) {
    const double mid = 0.5 * (lo + hi);
    const double r = class_rate(system, family, report, c, mid);
    out.t = mid;
    out.lambda = r;
    if (std::abs(r - target) <= kTuneTolerance) break;
    if ((r < target) == increasing) lo = mid;
    else hi = mid;
  }
  if (std::abs(out.lambda - target) > kTuneTolerance)
    throw Error(ErrorCode::NoConvergence, "bisection did not reach the target rate");
  out.measure = make_markov(system, family(out.t));
  return out;
}

}  // namespace gibbsloss
