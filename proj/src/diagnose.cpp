#include "gibbsloss/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gibbsloss/growth.hpp"

namespace gibbsloss {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::PeriodReduction: return "period-reduction";
    case Verdict::TransitionalPolynomial: return "transitional-polynomial";
    case Verdict::ContinuingVanishing: return "continuing-vanishing";
    case Verdict::NoneFound: return "none-found-at-horizon";
  }
  return "unknown";
}

namespace {

int residue_modulus(const System& system, const Word& u) {
  const PeriodicPoint point = make_periodic_point(u);
  return std::lcm(static_cast<int>(u.size()), analysis_period(system, point.cycle));
}

}  // namespace

RatioSeries gibbs_ratio_series(const System& system, const MarkovMeasure& mu, const Word& u, int n_max) {
  if (n_max < 10) throw Error(ErrorCode::InvalidArgument, "ratio series need n_max >= 10");
  RatioSeries s;
  s.word = u;
  s.period = static_cast<int>(u.size());
  s.q = residue_modulus(system, u);
  s.n_max = n_max;
  const int p = s.period;
  const int length = p * (n_max + 2);
  const auto logs = prefix_log_masses(system, mu, u, length);
  auto log_at = [&](int m) { return logs[static_cast<std::size_t>(m - 1)]; };

  for (int m = 1; m < length; ++m)
    s.single_step.push_back({m, m % s.q, log_at(m), std::exp(log_at(m + 1) - log_at(m))});
  s.lap.assign(static_cast<std::size_t>(p), {});
  for (int k = 0; k < p; ++k)
    for (int n = 1; n <= n_max; ++n) {
      const int m = p * n + k;
      s.lap[static_cast<std::size_t>(k)].push_back(std::exp(log_at(m + p) - log_at(m)));
    }
  return s;
}

namespace {

PeriodEvidence period_test(const std::vector<double>& logs, int p, int q, const DiagnoseOptions& opt) {
  PeriodEvidence ev;
  const int last = static_cast<int>(logs.size()) - p;  // largest m with m + p available
  auto ratio = [&](int m) {
    return std::exp(logs[static_cast<std::size_t>(m + p - 1)] - logs[static_cast<std::size_t>(m - 1)]);
  };
  for (int r = 0; r < q; ++r) {
    int m = last - ((last - r) % q + q) % q;  // largest m <= last with m = r mod q
    ev.residue_limits.push_back(ratio(m));
    if (m - q >= 1) ev.drift = std::max(ev.drift, std::abs(ratio(m) - ratio(m - q)));
  }
  const auto [lo, hi] = std::minmax_element(ev.residue_limits.begin(), ev.residue_limits.end());
  ev.spread = *hi - *lo;
  ev.fired = ev.spread > opt.tol_ratio && ev.spread > opt.drift_factor * ev.drift;
  return ev;
}

PolynomialEvidence polynomial_test(const System& system, const MarkovMeasure& mu, const Word& u,
                                   const std::vector<double>& logs, const DiagnoseOptions& opt) {
  PolynomialEvidence ev;
  const int p = static_cast<int>(u.size());
  const ClassReport report = periodic_classes(system, u, Side::Right);
  double rate = 0;
  for (int c = 0; c < report.class_count(); ++c) {
    const double lambda = perron(class_matrix(system, mu, report, c).matrix).lambda;
    rate = std::max(rate, std::pow(lambda, 1.0 / report.q));
  }
  ev.lambda = std::pow(rate, p);

  const int n_max = opt.n_max;
  const int start = n_max / 2;
  const auto rows = static_cast<Eigen::Index>(n_max - start + 1);
  Eigen::MatrixXd pinned(rows, 2);
  Eigen::MatrixXd free(rows, 3);
  Eigen::VectorXd y_pinned(rows), y_free(rows);
  for (int n = start; n <= n_max; ++n) {
    const auto i = static_cast<Eigen::Index>(n - start);
    const double log_nu = logs[static_cast<std::size_t>(p * n - 1)];
    pinned.row(i) << std::log(static_cast<double>(n)), 1.0;
    y_pinned(i) = log_nu - n * std::log(ev.lambda);
    free.row(i) << static_cast<double>(n), std::log(static_cast<double>(n)), 1.0;
    y_free(i) = log_nu;
  }
  const Eigen::VectorXd coef = pinned.colPivHouseholderQr().solve(y_pinned);
  ev.alpha = coef(0);
  ev.c = coef(1);
  ev.rms = std::sqrt((pinned * coef - y_pinned).squaredNorm() / static_cast<double>(rows));
  const Eigen::VectorXd coef_free = free.colPivHouseholderQr().solve(y_free);
  ev.lambda_free = std::exp(coef_free(0));
  ev.alpha_free = coef_free(1);
  ev.fired = ev.alpha > opt.alpha_min && ev.rms < opt.fit_tol;
  return ev;
}

Word power_with(const Word& u, int n, std::optional<Symbol> before, std::optional<Symbol> after) {
  Word w;
  if (before) w.push_back(*before);
  for (int k = 0; k < n; ++k) w.insert(w.end(), u.begin(), u.end());
  if (after) w.push_back(*after);
  return w;
}

std::optional<ExtensionEvidence> extension_test(const System& system, const MarkovMeasure& mu, const Word& u,
                                                Symbol label, Side side, const DiagnoseOptions& opt) {
  ExtensionEvidence ev;
  ev.label = label;
  ev.side = side;
  const int n_max = opt.n_max;
  for (int n = 1; n <= n_max; ++n) {
    const Word extended = side == Side::Right ? power_with(u, n, std::nullopt, label)
                                              : power_with(u, n, label, std::nullopt);
    const double num = log_pushforward(system, mu, extended);
    const double den = log_pushforward(system, mu, power_with(u, n + 1, std::nullopt, std::nullopt));
    ev.series.push_back(std::exp(num - den));
  }
  // Only extensions that stay admissible along the tail are evidence.
  for (int n = n_max / 2; n <= n_max; ++n)
    if (!(ev.series[static_cast<std::size_t>(n - 1)] > 0)) return std::nullopt;
  for (std::size_t i = 0; i + 1 < ev.series.size(); ++i)
    ev.quotients.push_back(ev.series[i] > 0 ? ev.series[i + 1] / ev.series[i] : 0.0);
  ev.decay_factor = ev.quotients.back();
  bool decaying = true;
  for (int n = n_max - n_max / 4; n < n_max; ++n)
    decaying = decaying && ev.quotients[static_cast<std::size_t>(n - 1)] < 1.0 - opt.decay_margin;
  ev.fired = decaying;
  return ev;
}

}  // namespace

ObstructionReport obstruction_diagnose(const System& system, const MarkovMeasure& mu, const Word& u,
                                       const DiagnoseOptions& options) {
  if (options.n_max < 10) throw Error(ErrorCode::InvalidArgument, "diagnostics need n_max >= 10");
  ObstructionReport rep;
  rep.word = u;
  rep.options = options;
  rep.series = gibbs_ratio_series(system, mu, u, options.n_max);
  const int p = rep.series.period;
  const auto logs = prefix_log_masses(system, mu, u, p * (options.n_max + 2));

  rep.period = period_test(logs, p, rep.series.q, options);
  rep.polynomial = polynomial_test(system, mu, u, logs, options);

  std::vector<Symbol> labels;
  if (options.extensions) {
    labels = *options.extensions;
  } else {
    labels.resize(system.labels().size());
    std::iota(labels.begin(), labels.end(), 0);
  }
  for (Side side : {Side::Right, Side::Left}) {
    const Symbol continuation = side == Side::Right ? u.front() : u.back();
    for (Symbol d : labels) {
      if (d == continuation) continue;
      if (auto ev = extension_test(system, mu, u, d, side, options)) rep.extensions.push_back(std::move(*ev));
    }
  }
  const bool vanishing = std::any_of(rep.extensions.begin(), rep.extensions.end(), [](const auto& e) { return e.fired; });

  if (rep.period.fired) rep.verdict = Verdict::PeriodReduction;
  else if (rep.polynomial.fired) rep.verdict = Verdict::TransitionalPolynomial;
  else if (vanishing) rep.verdict = Verdict::ContinuingVanishing;
  else rep.verdict = Verdict::NoneFound;

  if (rep.verdict == Verdict::NoneFound)
    rep.note = "no obstruction found up to n_max; this is not a certificate of the Gibbs property";
  else
    rep.note = "the pushforward measure is not Gibbs";
  return rep;
}

}  // namespace gibbsloss
