#include "gibbsloss/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "gibbsloss/diagnose.hpp"
#include "gibbsloss/growth.hpp"
#include "gibbsloss/io.hpp"
#include "gibbsloss/oracle.hpp"
#include "gibbsloss/properties.hpp"

namespace gibbsloss::acceptance {

namespace {

// Collects failed expectations; the first few are kept for the report line.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (ok) return;
    if (failures_.size() < 3) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    if (ok()) {
      os << count_ << " checks";
    } else {
      os << failed_ << " of " << count_ << " checks failed:";
      for (const auto& f : failures_) os << " [" << f << "]";
    }
    return os.str();
  }

 private:
  std::size_t count_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

struct Fixtures {
  std::filesystem::path dir;
  System system(const std::string& name) const { return load_system(dir / (name + ".json")); }
  MarkovMeasure measure(const System& s, const std::string& name) const { return load_measure(s, dir / (name + ".json")); }
};

Word word(const System& s, const std::string& text) { return parse_word(s.labels(), text); }

void fig2_ratios(const Fixtures& fx, Checks& c) {
  const System s = fx.system("FIG2");
  const std::vector<std::pair<double, std::string>> params{{0.2, "fig2_p02"}, {0.3, "fig2_p03"}, {0.8, "fig2_p08"}};
  for (const auto& [p, file] : params) {
    const MarkovMeasure mu = fx.measure(s, file);
    const ObstructionReport rep = obstruction_diagnose(s, mu, word(s, "0"));
    double worst = 0;
    for (const auto& row : rep.series.single_step) {
      if (row.n < 5 || row.n > 50) continue;
      const double expected = row.n % 2 == 1 ? (1 + p) / 2 : 2 * p / (1 + p);
      worst = std::max(worst, std::abs(row.ratio - expected));
    }
    c.expect(worst <= 1e-10, "p=" + num(p) + " ratio error " + num(worst));
    c.expect(rep.verdict == Verdict::PeriodReduction, "p=" + num(p) + " verdict " + std::string(to_string(rep.verdict)));
  }
}

void fig1_polynomial(const Fixtures& fx, Checks& c) {
  const System s = fx.system("FIG1");
  const MarkovMeasure mu = fx.measure(s, "fig1_measure");
  const Symbol a = s.labels().at("a");
  oracle::Rational c1;
  double worst = 0, enum_worst = 0;
  for (int n = 1; n <= 30; ++n) {
    const Word w(static_cast<std::size_t>(n), a);
    const oracle::Rational exact = oracle::pushforward_exact(s, mu, w);
    const oracle::Rational shape = oracle::Rational(n + 2) / oracle::Rational(boost::multiprecision::cpp_int(1) << n);
    const oracle::Rational cn = exact / shape;
    if (n == 1) c1 = cn;
    worst = std::max(worst, std::abs(static_cast<double>(cn / c1) - 1.0));
    if (n <= 16) {
      const double brute = oracle::pushforward(s, mu, w);
      enum_worst = std::max(enum_worst, std::abs(brute / static_cast<double>(exact) - 1.0));
    }
    const double transfer = pushforward(s, mu, w);
    enum_worst = std::max(enum_worst, std::abs(transfer / static_cast<double>(exact) - 1.0));
  }
  c.expect(worst <= 1e-12, "nu[a^n] / ((n+2) 2^-n) deviates by " + num(worst));
  c.expect(enum_worst <= 1e-12, "enumeration/transfer vs exact deviates by " + num(enum_worst));

  const ObstructionReport rep = obstruction_diagnose(s, mu, word(s, "a"));
  c.expect(std::abs(rep.polynomial.lambda - 0.5) <= 1e-6, "lambda " + num(rep.polynomial.lambda));
  c.expect(rep.polynomial.alpha >= 0.8 && rep.polynomial.alpha <= 1.2, "alpha " + num(rep.polynomial.alpha));
  c.expect(rep.verdict == Verdict::TransitionalPolynomial, std::string("verdict ") + std::string(to_string(rep.verdict)));
}

void fig3_vanishing(const Fixtures& fx, Checks& c) {
  const System s = fx.system("FIG3");
  const MarkovMeasure mu = fx.measure(s, "fig3_measure");
  const Word u = word(s, "3");
  const Symbol two = s.labels().at("2");
  const ObstructionReport rep = obstruction_diagnose(s, mu, u);
  const ExtensionEvidence* ev = nullptr;
  for (const auto& e : rep.extensions)
    if (e.side == Side::Right && e.label == two) ev = &e;
  c.expect(ev != nullptr, "right extension by 2 missing");
  if (ev) {
    const auto& series = ev->series;  // series[n-1] = nu[3^n 2] / nu[3^{n+1}]
    bool positive = true, decreasing = true, converged = true;
    for (std::size_t n = 1; n <= series.size(); ++n) {
      positive = positive && series[n - 1] > 0;
      if (n >= 5 && n < series.size()) decreasing = decreasing && series[n] < series[n - 1];
      if (n >= 40 && n < series.size()) converged = converged && std::abs(series[n] / series[n - 1] - 1.0 / 3) <= 0.05;
    }
    c.expect(positive, "series not positive");
    c.expect(decreasing, "series not strictly decreasing from n = 5");
    c.expect(converged, "quotients not within 1/3 +- 0.05 from n = 40, last " + num(ev->decay_factor));
  }
  c.expect(rep.verdict == Verdict::ContinuingVanishing, std::string("verdict ") + std::string(to_string(rep.verdict)));
  const PropertyVerdict er = eresolving_check(s, Side::Right);
  c.expect(er.status == Status::Fails, "right eresolving did not fail");
  c.expect(er.witness.value("block", "") == "3 2" && er.witness.value("symbol", "") == "e",
           "eresolving witness " + er.witness.dump());
}

void fig4_verdicts(const Fixtures& fx, Checks& c) {
  const System s = fx.system("FIG4");
  const PropertyVerdict nfm = nearly_fiber_mixing_verdict(s, kDefaultPeriodBound, kDefaultWordHorizon);
  c.expect(nfm.status == Status::Holds, "nearly fiber-mixing " + std::string(to_string(nfm.status)));
  for (const auto& part : nfm.parts)
    c.expect(part.status == Status::Holds, part.property + " " + std::string(to_string(part.status)));
  const PropertyVerdict fm = fiber_mixing_certificate(s, 6);
  c.expect(fm.status == Status::Fails, "fiber-mixing " + std::string(to_string(fm.status)));
  c.expect(fm.witness.value("point", "") == "a" && fm.witness.value("right_classes", 0) == 2,
           "fiber-mixing witness " + fm.witness.dump());
  const DegreeEstimate deg = class_degree_estimate(s, 6);
  c.expect(deg.value == 1 && deg.stabilized, "class degree " + std::to_string(deg.value));
  const MarkovMeasure mu = fx.measure(s, "fig4_measure");
  c.expect(mu.fully_supported, "FIG4 measure not fully supported");
  const ObstructionReport rep = obstruction_diagnose(s, mu, word(s, "a"));
  c.expect(rep.verdict == Verdict::NoneFound, std::string("diagnosis ") + std::string(to_string(rep.verdict)));
}

void class_structure(const Fixtures& fx, Checks& c) {
  struct Case {
    std::string fixture, point;
    int classes, period, transitions;
  };
  const std::vector<Case> cases{{"FIG1", "a", 2, 1, 1}, {"FIG2", "0", 2, 2, 0}, {"FIG3", "3", 2, -1, -1}, {"FIG4", "a", 2, 1, 0}};
  for (const auto& k : cases) {
    const System s = fx.system(k.fixture);
    const ClassReport rep = periodic_classes(s, word(s, k.point), Side::Right);
    const std::string tag = k.fixture + " " + k.point;
    c.expect(rep.class_count() == k.classes, tag + " classes " + std::to_string(rep.class_count()));
    if (k.period > 0)
      for (const auto& cls : rep.classes) c.expect(cls.period == k.period, tag + " class period " + std::to_string(cls.period));
    if (k.transitions >= 0)
      c.expect(static_cast<int>(rep.transitions.size()) == k.transitions,
               tag + " transitions " + std::to_string(rep.transitions.size()));
    if (k.fixture == "FIG1" && !rep.nonstop.empty()) c.expect(rep.nonstop.front(), tag + " transition not nonstop");
  }
}

void oracle_equivalence(const Fixtures&, Checks& c) {
  constexpr std::size_t kFiberLimit = 8;
  int depth_checked = 0;
  for (int k = 0; k < kRandomCorpusSize; ++k) {
    const auto seed = static_cast<std::uint64_t>(k + 1);
    const System s = oracle::random_system(seed);
    const MarkovMeasure mu = oracle::random_measure(s, seed + 1000);
    const std::string tag = "seed " + std::to_string(seed);
    for (int n = 1; n <= 7; ++n) {
      for (const Word& w : blocks(s, n, Target::Image)) {
        const double transfer = pushforward(s, mu, w, PushMode::Transfer);
        const double brute = oracle::pushforward(s, mu, w);
        c.expect(std::abs(transfer - brute) <= 1e-12, tag + " pushforward differs by " + num(transfer - brute));
        if (n < 3 || n > 6) continue;
        if (oracle::fiber(s, w).size() > kFiberLimit) continue;
        ++depth_checked;
        c.expect(depth(s, w).value == oracle::depth(s, w), tag + " depth of " + format_word(s.labels(), w));
        c.expect(tau_depth(s, w).value == oracle::tau(s, w), tag + " tau of " + format_word(s.labels(), w));
      }
    }
  }
  c.expect(depth_checked > 0, "no depth comparisons were made");
}

void inequality_suite(const Fixtures& fx, Checks& c) {
  std::vector<System> systems;
  for (const char* f : {"FIG1", "FIG2", "FIG3", "FIG4"}) systems.push_back(fx.system(f));
  for (int k = 0; k < kRandomCorpusSize; ++k) systems.push_back(oracle::random_system(static_cast<std::uint64_t>(k + 1)));
  for (const System& s : systems) {
    for (int n = 3; n <= 6; ++n) {
      for (const Word& w : blocks(s, n, Target::Image)) {
        const int d = depth(s, w).value;
        const int t = tau_depth(s, w).value;
        c.expect(t <= d, "tau > depth on " + format_word(s.labels(), w));
        if (n == 6) continue;
        for (Symbol l = 0; l < static_cast<Symbol>(s.labels().size()); ++l) {
          Word right = w, left{l};
          right.push_back(l);
          left.insert(left.end(), w.begin(), w.end());
          for (const Word& ext : {right, left}) {
            if (!is_image_word(s, ext)) continue;
            c.expect(depth(s, ext).value <= d && tau_depth(s, ext).value <= t,
                     "extension monotonicity on " + format_word(s.labels(), ext));
          }
        }
      }
    }
  }
  const std::vector<std::pair<std::string, std::string>> points{{"FIG1", "a"}, {"FIG2", "0"}, {"FIG3", "3"}, {"FIG4", "a"}};
  for (const auto& [f, p] : points) {
    const System s = fx.system(f);
    const Word u = word(s, p);
    const int classes = periodic_classes(s, u, Side::Right).class_count();
    c.expect(classes == periodic_min_tau(s, u, 12), f + " recurrent degree identity");
  }
}

void numerical_hygiene(const Fixtures& fx, Checks& c) {
  struct Case {
    std::string fixture, measure, point;
  };
  const std::vector<Case> cases{{"FIG1", "fig1_measure", "a"}, {"FIG2", "fig2_p02", "0"}, {"FIG2", "fig2_p03", "0"},
                                {"FIG2", "fig2_p05", "0"},    {"FIG2", "fig2_p08", "0"}, {"FIG3", "fig3_measure", "3"},
                                {"FIG4", "fig4_measure", "a"}};
  for (const auto& k : cases) {
    const System s = fx.system(k.fixture);
    const MarkovMeasure mu = fx.measure(s, k.measure);
    const GrowthProfile profile = growth_profile(s, mu, word(s, k.point));
    for (const auto& g : profile.classes)
      c.expect(g.residual <= 1e-12, k.fixture + " class residual " + num(g.residual));
  }
  const std::vector<std::pair<std::string, std::string>> measures{
      {"FIG1", "fig1_measure"}, {"FIG2", "fig2_p03"}, {"FIG3", "fig3_measure"}, {"FIG4", "fig4_measure"}};
  for (const auto& [f, m] : measures) {
    const System s = fx.system(f);
    const MarkovMeasure mu = fx.measure(s, m);
    for (int n = 1; n <= 8; ++n) {
      double total = 0;
      for (const Word& w : blocks(s, n, Target::Image)) total += pushforward(s, mu, w);
      c.expect(std::abs(total - 1.0) <= 1e-10, f + " mass at length " + std::to_string(n) + " is " + num(total));
    }
  }
}

struct Criterion {
  int id;
  std::string name;
  double budget;
  std::function<void(const Fixtures&, Checks&)> run;
};

}  // namespace

std::vector<CriterionResult> run_all(const std::filesystem::path& fixture_dir) {
  const Fixtures fx{fixture_dir};
  const std::vector<Criterion> criteria{
      {1, "FIG2 ratio reproduction", 1.0, fig2_ratios},
      {2, "FIG1 polynomial signature", 2.0, fig1_polynomial},
      {3, "FIG3 vanishing ratio", 1.0, fig3_vanishing},
      {4, "FIG4 verdicts", 2.0, fig4_verdicts},
      {5, "class-structure reproduction", 1.0, class_structure},
      {6, "oracle equivalence", 60.0, oracle_equivalence},
      {7, "inequality suite", 60.0, inequality_suite},
      {8, "numerical hygiene", 5.0, numerical_hygiene},
  };
  std::vector<CriterionResult> out;
  for (const auto& cr : criteria) {
    CriterionResult r{cr.id, cr.name, false, 0, cr.budget, ""};
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(fx, checks);
      r.detail = checks.summary();
      r.passed = checks.ok();
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.passed && r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += "; over runtime budget";
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << "  (" << std::fixed << std::setprecision(3)
     << r.seconds << " s / budget " << std::setprecision(0) << r.budget_seconds << " s)  " << r.detail;
  return os.str();
}

}  // namespace gibbsloss::acceptance
