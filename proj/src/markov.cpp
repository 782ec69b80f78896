#include "gibbsloss/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gibbsloss {

namespace {

bool strongly_connected(const Eigen::MatrixXd& P) {
  const Eigen::Index n = P.rows();
  auto reach_all = [&](bool transpose) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      Eigen::Index v = stack.back();
      stack.pop_back();
      for (Eigen::Index w = 0; w < n; ++w) {
        const double weight = transpose ? P(w, v) : P(v, w);
        if (weight > 0 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return n > 0 && reach_all(false) && reach_all(true);
}

}  // namespace

Eigen::VectorXd stationary_vector(const Eigen::MatrixXd& P) {
  if (!strongly_connected(P)) throw Error(ErrorCode::NoStationary, "transition matrix is reducible");
  const Eigen::Index n = P.rows();
  // Solve (P^T - I) p = 0 with one equation replaced by sum(p) = 1.
  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw Error(ErrorCode::NoStationary, "stationary equations are singular");
  Eigen::VectorXd p = lu.solve(rhs);
  for (Eigen::Index i = 0; i < n; ++i)
    if (p(i) < 0) p(i) = 0;  // round-off only; irreducibility makes p strictly positive
  return p / p.sum();
}

MarkovMeasure make_markov(const System& system, const Eigen::MatrixXd& transition,
                          const std::optional<Eigen::VectorXd>& initial) {
  const auto n = static_cast<Eigen::Index>(system.size());
  if (transition.rows() != n || transition.cols() != n)
    throw Error(ErrorCode::MalformedInput, "transition matrix does not match the alphabet");
  MarkovMeasure mu;
  mu.transition = transition;
  mu.fully_supported = true;
  for (Eigen::Index a = 0; a < n; ++a) {
    double sum = 0;
    for (Eigen::Index b = 0; b < n; ++b) {
      const double v = transition(a, b);
      if (!(v >= 0) || !std::isfinite(v))
        throw Error(ErrorCode::NotStochastic, "negative or non-finite entry in row '" +
                                                  system.symbols().name(static_cast<Symbol>(a)) + "'");
      const bool allowed = system.allowed(static_cast<Symbol>(a), static_cast<Symbol>(b));
      if (v > 0 && !allowed)
        throw Error(ErrorCode::SupportViolation, "positive weight on forbidden pair (" +
                                                     system.symbols().name(static_cast<Symbol>(a)) + ", " +
                                                     system.symbols().name(static_cast<Symbol>(b)) + ")");
      if (allowed && v == 0) mu.fully_supported = false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > kStochasticTol)
      throw Error(ErrorCode::NotStochastic,
                  "row '" + system.symbols().name(static_cast<Symbol>(a)) + "' sums to " + std::to_string(sum));
  }

  if (initial) {
    const Eigen::VectorXd& p = *initial;
    if (p.size() != n) throw Error(ErrorCode::MalformedInput, "initial vector does not match the alphabet");
    if ((p.array() < 0).any() || std::abs(p.sum() - 1.0) > kStochasticTol)
      throw Error(ErrorCode::NotStochastic, "initial vector is not a probability vector");
    const Eigen::VectorXd moved = transition.transpose() * p;
    if ((moved - p).cwiseAbs().maxCoeff() > kStochasticTol)
      throw Error(ErrorCode::NotInvariant, "initial vector is not stationary for the transition matrix");
    mu.initial = p;
  } else {
    mu.initial = stationary_vector(transition);
  }
  return mu;
}

MarkovMeasure validate_markov(const System& system, const RawMeasure& raw) {
  const auto n = static_cast<Eigen::Index>(system.size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [from, row] : raw.matrix)
    for (const auto& [to, v] : row) P(system.symbols().at(from), system.symbols().at(to)) = v;

  std::optional<Eigen::VectorXd> p;
  if (raw.initial) {
    p = Eigen::VectorXd::Zero(n);
    for (const auto& [sym, v] : *raw.initial) (*p)(system.symbols().at(sym)) = v;
  }
  MarkovMeasure mu = make_markov(system, P, p);
  if (raw.fully_supported && *raw.fully_supported && !mu.fully_supported)
    throw Error(ErrorCode::SupportViolation, "measure declared fully supported but misses an allowed pair");
  return mu;
}

double log_pushforward(const System& system, const MarkovMeasure& mu, const Word& w) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "empty word");
  const std::size_t n = system.size();
  std::vector<double> v(n, 0.0);
  for (Symbol a : system.preimage(w[0])) v[static_cast<std::size_t>(a)] = mu.initial(a);
  double log_mass = 0.0;
  for (std::size_t k = 0;; ++k) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (!(sum > 0)) return kNegInf;
    log_mass += std::log(sum);
    if (k + 1 == w.size()) return log_mass;
    std::vector<double> next(n, 0.0);
    for (Symbol b : system.preimage(w[k + 1])) {
      double acc = 0.0;
      for (Symbol a : system.predecessors(b)) acc += v[static_cast<std::size_t>(a)] * mu.transition(a, b);
      next[static_cast<std::size_t>(b)] = acc / sum;
    }
    v = std::move(next);
  }
}

double pushforward(const System& system, const MarkovMeasure& mu, const Word& w, PushMode mode, std::size_t cap) {
  if (mode == PushMode::Transfer) return std::exp(log_pushforward(system, mu, w));
  double total = 0.0;
  for (const Word& x : fiber(system, w, cap)) {
    double m = mu.initial(x[0]);
    for (std::size_t k = 0; k + 1 < x.size(); ++k) m *= mu.transition(x[k], x[k + 1]);
    total += m;
  }
  return total;
}

std::vector<double> prefix_log_masses(const System& system, const MarkovMeasure& mu, const Word& u, int length) {
  if (u.empty() || length < 1) throw Error(ErrorCode::InvalidArgument, "need a nonempty cycle and positive length");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const std::size_t n = system.size();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(length));
  std::vector<double> v(n, 0.0);
  for (Symbol a : system.preimage(u[0])) v[static_cast<std::size_t>(a)] = mu.initial(a);
  double log_mass = 0.0;
  for (int m = 1; m <= length; ++m) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (!(sum > 0)) {
      out.resize(static_cast<std::size_t>(length), kNegInf);
      return out;
    }
    log_mass += std::log(sum);
    out.push_back(log_mass);
    std::vector<double> next(n, 0.0);
    for (Symbol b : system.preimage(u[static_cast<std::size_t>(m) % u.size()])) {
      double acc = 0.0;
      for (Symbol a : system.predecessors(b)) acc += v[static_cast<std::size_t>(a)] * mu.transition(a, b);
      next[static_cast<std::size_t>(b)] = acc / sum;
    }
    v = std::move(next);
  }
  return out;
}

}  // namespace gibbsloss
