#pragma once

// Class-restricted growth matrices over periodic points, their Perron rates,
// and tuning of a one-parameter measure family to a prescribed rate.

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gibbsloss/classes.hpp"
#include "gibbsloss/markov.hpp"
#include "gibbsloss/perron.hpp"

namespace gibbsloss {

struct ClassMatrix {
  Eigen::MatrixXd matrix;     // q-step path sums inside the marked alphabets
  std::vector<Symbol> states;  // (C*)|_0, indexing rows and columns
  bool used_support = false;   // marked sets empty, fell back to C|_i (transition-free classes only)
};

/// A*_{ab}: sum over paths a = a_0, ..., a_q = b with a_i in (C*)|_i of prod P_{a_i a_{i+1}}.
ClassMatrix class_matrix(const System& system, const Eigen::MatrixXd& transition, const ClassReport& report, int c);
ClassMatrix class_matrix(const System& system, const MarkovMeasure& mu, const ClassReport& report, int c);

struct ClassGrowth {
  int index = 0;
  int period = 0;
  int orbit = 0;               // classes related by shifting the point share an orbit id
  ClassMatrix matrix;
  double lambda = 0;           // Perron root of A*, per q symbols
  double rate_per_symbol = 0;  // lambda^(1/q)
  double residual = 0;
  double coefficient = 0;      // K: mu[C*-cylinder of length q n] / lambda^n at n_max
  double coefficient_spread = 0;  // relative max spread over the last quarter
  bool converged = false;
};

struct GrowthProfile {
  ClassReport report;
  std::vector<ClassGrowth> classes;
  int n_max = 0;
  bool orbit_consistent = true;  // equal lambda on every orbit
};

inline constexpr double kCoefficientSpreadTol = 1e-6;

GrowthProfile growth_profile(const System& system, const MarkovMeasure& mu, const Word& u, int n_max = 60);

/// log mu[C*-cylinder over positions 0..length-1], restricted to the marked alphabets.
double log_class_cylinder(const System& system, const MarkovMeasure& mu, const ClassReport& report, int c,
                          int length);

using MeasureFamily = std::function<Eigen::MatrixXd(double)>;

/// Sets P(from, to) = t and rescales the rest of row `from` to sum to 1 - t.
MeasureFamily single_transition_family(const Eigen::MatrixXd& base, Symbol from, Symbol to);

struct TuneResult {
  double t = 0;
  double lambda = 0;
  int iterations = 0;
  MarkovMeasure measure;
};

inline constexpr double kTuneTolerance = 1e-10;

/// Perron rate of class c under the transition matrix of family(t). Falls back
/// to the spectral radius where the class matrix is not primitive.
double class_rate(const System& system, const MeasureFamily& family, const ClassReport& report, int c, double t);

/// Bisection for lambda(t*) = target; the target must lie strictly between
/// lambda(t_lo) and lambda(t_hi) (TargetOutOfRange otherwise).
TuneResult tune_class_rate(const System& system, const MeasureFamily& family, const ClassReport& report, int c,
                           double target, double t_lo = 0.0, double t_hi = 1.0);

}  // namespace gibbsloss
