#pragma once

// Markov measures on the domain shift and their pushforwards onto image cylinders.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gibbsloss/shift_space.hpp"

namespace gibbsloss {

/// Unvalidated measure description, as read from JSON.
struct RawMeasure {
  std::map<std::string, std::map<std::string, double>> matrix;
  std::optional<std::map<std::string, double>> initial;
  std::optional<bool> fully_supported;
};

struct MarkovMeasure {
  Eigen::MatrixXd transition;  // row-stochastic, indexed by domain symbols
  Eigen::VectorXd initial;     // stationary probability vector
  bool fully_supported = false;
};

inline constexpr double kStochasticTol = 1e-12;

MarkovMeasure validate_markov(const System& system, const RawMeasure& raw);

/// Validates a transition matrix given by index; computes the stationary
/// vector when `initial` is absent.
MarkovMeasure make_markov(const System& system, const Eigen::MatrixXd& transition,
                          const std::optional<Eigen::VectorXd>& initial = std::nullopt);

/// Unique stationary vector of an irreducible stochastic matrix; throws NoStationary otherwise.
Eigen::VectorXd stationary_vector(const Eigen::MatrixXd& transition);

enum class PushMode { Transfer, Brute };

/// nu[w]_0 = mu(pi^{-1}[w]_0). Returns 0 for words outside B(Y).
double pushforward(const System& system, const MarkovMeasure& mu, const Word& w, PushMode mode = PushMode::Transfer,
                   std::size_t cap = kDefaultSizeCap);

/// log nu[w]_0 by the normalized forward recursion; -inf outside B(Y).
double log_pushforward(const System& system, const MarkovMeasure& mu, const Word& w);

/// log nu[y|_[0,m)]_0 for m = 1..length, where y = u^infinity.
std::vector<double> prefix_log_masses(const System& system, const MarkovMeasure& mu, const Word& u, int length);

}  // namespace gibbsloss
