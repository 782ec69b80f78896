#include "gibbsloss/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace gibbsloss::oracle {

std::vector<Word> fiber(const System& system, const Word& w) {
  std::vector<Word> partial{{}};
  for (Symbol l : w) {
    std::vector<Word> next;
    for (const Word& x : partial)
      for (Symbol a = 0; a < static_cast<Symbol>(system.size()); ++a) {
        if (system.label(a) != l) continue;
        if (!x.empty() && !system.allowed(x.back(), a)) continue;
        Word y = x;
        y.push_back(a);
        next.push_back(std::move(y));
      }
    partial = std::move(next);
  }
  std::sort(partial.begin(), partial.end());
  return partial;
}

double pushforward(const System& system, const MarkovMeasure& mu, const Word& w) {
  double total = 0;
  for (const Word& x : oracle::fiber(system, w)) {
    double p = mu.initial(x.front());
    for (std::size_t k = 0; k + 1 < x.size(); ++k) p *= mu.transition(x[k], x[k + 1]);
    total += p;
  }
  return total;
}

namespace {

// Is there a fiber word from first symbol s to last symbol t (optionally through c at position n)?
bool connects(const std::vector<Word>& fib, Symbol s, Symbol t, std::size_t n = 0, Symbol c = -1) {
  return std::any_of(fib.begin(), fib.end(), [&](const Word& v) {
    return v.front() == s && v.back() == t && (c < 0 || v[n] == c);
  });
}

}  // namespace

int depth(const System& system, const Word& w) {
  if (w.size() < 3) throw Error(ErrorCode::TooShort, "depth needs |w| >= 3");
  const auto fib = oracle::fiber(system, w);
  if (fib.empty()) throw Error(ErrorCode::EmptyFiber, "word is not in the image language");
  int best = static_cast<int>(system.size()) + 1;
  for (std::size_t n = 1; n + 1 < w.size(); ++n) {
    std::vector<Symbol> occurring;
    for (const Word& v : fib) occurring.push_back(v[n]);
    std::sort(occurring.begin(), occurring.end());
    occurring.erase(std::unique(occurring.begin(), occurring.end()), occurring.end());
    const std::size_t k = occurring.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      const int size = __builtin_popcount(mask);
      if (size >= best) continue;
      const bool routes = std::all_of(fib.begin(), fib.end(), [&](const Word& u) {
        for (std::size_t j = 0; j < k; ++j)
          if ((mask >> j) & 1u)
            if (connects(fib, u.front(), u.back(), n, occurring[j])) return true;
        return false;
      });
      if (routes) best = size;
    }
  }
  return best;
}

int tau(const System& system, const Word& w) {
  const auto fib = oracle::fiber(system, w);
  if (fib.empty()) throw Error(ErrorCode::EmptyFiber, "word is not in the image language");
  const std::size_t m = fib.size();
  std::vector<std::vector<char>> two_way(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      two_way[i][j] = connects(fib, fib[i].front(), fib[j].back()) && connects(fib, fib[j].front(), fib[i].back());

  // Every set partition, as a restricted growth assignment of words to blocks.
  int best = static_cast<int>(m);
  std::vector<std::vector<std::size_t>> blocks;
  auto place = [&](std::size_t i, auto&& self) -> void {
    if (i == m) {
      best = std::min(best, static_cast<int>(blocks.size()));
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {  // deeper calls may grow `blocks`
      if (std::all_of(blocks[b].begin(), blocks[b].end(), [&](std::size_t j) { return two_way[i][j] != 0; })) {
        blocks[b].push_back(i);
        self(i + 1, self);
        blocks[b].pop_back();
      }
    }
    blocks.push_back({i});
    self(i + 1, self);
    blocks.pop_back();
  };
  place(0, place);
  return best;
}

std::vector<std::pair<Word, Symbol>> eresolving_failures(const System& system, Side side) {
  const auto n = static_cast<Symbol>(system.size());
  std::set<Word> image2;
  for (Symbol a = 0; a < n; ++a)
    for (Symbol b = 0; b < n; ++b)
      if (system.allowed(a, b)) image2.insert({system.label(a), system.label(b)});
  std::vector<std::pair<Word, Symbol>> out;
  for (const Word& ab : image2)
    for (Symbol e = 0; e < n; ++e) {
      const bool right = side == Side::Right;
      if (system.label(e) != (right ? ab[0] : ab[1])) continue;
      bool extends = false;
      for (Symbol f = 0; f < n; ++f)
        if (system.label(f) == (right ? ab[1] : ab[0]) && (right ? system.allowed(e, f) : system.allowed(f, e)))
          extends = true;
      if (!extends) out.emplace_back(ab, e);
    }
  return out;
}

namespace {

Rational exact(double x) {
  // A double is m * 2^e with an integer mantissa m of at most 53 bits.
  int e = 0;
  const double frac = std::frexp(x, &e);
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(frac, 53));
  e -= 53;
  Rational r(mantissa);
  const boost::multiprecision::cpp_int two_power = boost::multiprecision::cpp_int(1) << std::abs(e);
  return e >= 0 ? Rational(r * two_power) : Rational(r / two_power);
}

}  // namespace

std::vector<Rational> stationary(const System& system, const MarkovMeasure& mu) {
  const std::size_t n = system.size();
  // Rows: equations sum_a pi_a (P_ab - [a == b]) = 0 for b < n - 1, plus sum pi = 1.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t b = 0; b + 1 < n; ++b)
    for (std::size_t a = 0; a < n; ++a)
      m[b][a] = exact(mu.transition(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) - (a == b ? 1 : 0);
  for (std::size_t a = 0; a < n; ++a) m[n - 1][a] = 1;
  m[n - 1][n] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::NoStationary, "singular stationary system");
    std::swap(m[pivot], m[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<Rational> pi(n);
  for (std::size_t a = 0; a < n; ++a) pi[a] = m[a][n] / m[a][a];
  return pi;
}

Rational pushforward_exact(const System& system, const MarkovMeasure& mu, const Word& w) {
  const auto pi = stationary(system, mu);
  const std::size_t n = system.size();
  std::vector<Rational> v(n);
  for (std::size_t a = 0; a < n; ++a)
    if (system.label(static_cast<Symbol>(a)) == w.front()) v[a] = pi[a];
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::vector<Rational> next(n);
    for (std::size_t b = 0; b < n; ++b) {
      if (system.label(static_cast<Symbol>(b)) != w[k]) continue;
      for (std::size_t a = 0; a < n; ++a)
        if (v[a] != 0 && system.allowed(static_cast<Symbol>(a), static_cast<Symbol>(b)))
          next[b] += v[a] * exact(mu.transition(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
    }
    v = std::move(next);
  }
  Rational total = 0;
  for (const auto& x : v) total += x;
  return total;
}

namespace {

bool primitive(const std::vector<char>& adj, std::size_t n) {
  // Boolean powers up to the Wielandt bound.
  std::vector<char> power = adj;
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (std::all_of(power.begin(), power.end(), [](char c) { return c != 0; })) return true;
    std::vector<char> next(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (power[i * n + j])
          for (std::size_t l = 0; l < n; ++l)
            if (adj[j * n + l]) next[i * n + l] = 1;
    power = std::move(next);
  }
  return false;
}

}  // namespace

System random_system(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(2, 6), label_dist(1, 3);
  std::bernoulli_distribution edge(0.5);
  for (;;) {
    const auto n = static_cast<std::size_t>(size_dist(rng));
    const int label_count = label_dist(rng);
    std::vector<char> adj(n * n);
    for (auto& c : adj) c = edge(rng) ? 1 : 0;
    std::vector<std::string> names, labels;
    std::uniform_int_distribution<int> pick(0, label_count - 1);
    for (std::size_t a = 0; a < n; ++a) {
      names.push_back("s" + std::to_string(a));
      labels.push_back(std::string(1, static_cast<char>('A' + pick(rng))));
    }
    if (!primitive(adj, n)) continue;  // primitive implies essential
    return System::from_parts(Alphabet(names), adj, labels);
  }
}

MarkovMeasure random_measure(const System& system, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  const auto n = static_cast<Eigen::Index>(system.size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (Symbol a = 0; a < static_cast<Symbol>(n); ++a) {
    for (Symbol b : system.successors(a)) P(a, b) = weight(rng);
    P.row(a) /= P.row(a).sum();
  }
  return make_markov(system, P);
}

}  // namespace gibbsloss::oracle
