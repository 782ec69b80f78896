#pragma once

// Necessary-condition tests for the Gibbs property of a pushforward measure
// along a periodic point y = u^infinity. A firing test refutes the Gibbs
// property; silence certifies nothing.

#include <optional>
#include <string>
#include <vector>

#include "gibbsloss/classes.hpp"
#include "gibbsloss/markov.hpp"

namespace gibbsloss {

struct RatioRow {
  int n = 0;        // prefix length m
  int residue = 0;  // m mod q
  double log_measure = 0;  // log nu[y|_[0,m)]
  double ratio = 0;        // nu[y|_[0,m+1)] / nu[y|_[0,m)]
};

struct RatioSeries {
  Word word;
  int period = 0;  // |u|
  int q = 0;       // residue modulus: lcm(|u|, analysis period)
  int n_max = 0;
  std::vector<RatioRow> single_step;
  /// lap[k][n-1] = nu[prefix(pn + k + p)] / nu[prefix(pn + k)], n = 1..n_max.
  std::vector<std::vector<double>> lap;
};

RatioSeries gibbs_ratio_series(const System& system, const MarkovMeasure& mu, const Word& u, int n_max);

enum class Verdict { PeriodReduction, TransitionalPolynomial, ContinuingVanishing, NoneFound };

std::string_view to_string(Verdict v) noexcept;

struct DiagnoseOptions {
  int n_max = 60;
  double tol_ratio = 1e-6;
  double alpha_min = 0.5;
  double fit_tol = 1e-2;
  double decay_margin = 0.05;
  double drift_factor = 10.0;
  std::optional<std::vector<Symbol>> extensions;  // label symbols; default: all
};

struct PeriodEvidence {
  std::vector<double> residue_limits;  // last |u|-step ratio per residue mod q
  double spread = 0;
  double drift = 0;
  bool fired = false;
};

struct PolynomialEvidence {
  double lambda = 0;  // dominant class rate per |u| symbols (pinned)
  double alpha = 0;
  double c = 0;
  double rms = 0;
  double lambda_free = 0;  // unconstrained three-parameter fit
  double alpha_free = 0;
  bool fired = false;
};

struct ExtensionEvidence {
  Symbol label = -1;
  Side side = Side::Right;
  std::vector<double> series;     // nu[u^n d] / nu[u^{n+1}] (or the left analogue), n = 1..n_max
  std::vector<double> quotients;  // series[n+1] / series[n]
  double decay_factor = 0;        // last quotient
  bool fired = false;
};

struct ObstructionReport {
  Verdict verdict = Verdict::NoneFound;
  Word word;
  DiagnoseOptions options;
  RatioSeries series;
  PeriodEvidence period;
  PolynomialEvidence polynomial;
  std::vector<ExtensionEvidence> extensions;
  std::string note;
};

ObstructionReport obstruction_diagnose(const System& system, const MarkovMeasure& mu, const Word& u,
                                       const DiagnoseOptions& options = {});

}  // namespace gibbsloss
