#include <cmath>

#include "gibbsloss/diagnose.hpp"
#include "support.hpp"

using namespace testing;

namespace {

ObstructionReport diagnose_fixture(const std::string& system, const std::string& measure, const std::string& u) {
  const System s = fixture(system);
  return obstruction_diagnose(s, fixture_measure(s, measure), labels(s, u));
}

}  // namespace

TEST_SUITE("diagnose") {

TEST_CASE("FIG2 ratios alternate along the fixed point") {
  const System s = fixture("FIG2");
  const RatioSeries r = gibbs_ratio_series(s, fixture_measure(s, "fig2_p05"), labels(s, "0"), 10);
  CHECK(r.q == 2);
  REQUIRE(r.single_step.size() >= 4);
  // nu[0]=2/3, nu[00]=1/2, nu[000]=1/3, nu[0000]=1/4.
  CHECK(r.single_step[0].ratio == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.single_step[1].ratio == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(r.single_step[2].ratio == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::exp(r.single_step[0].log_measure) == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("fixture verdicts") {
  CHECK(diagnose_fixture("FIG1", "fig1_measure", "a").verdict == Verdict::TransitionalPolynomial);
  for (const char* m : {"fig2_p02", "fig2_p03", "fig2_p05", "fig2_p08"})
    CHECK(diagnose_fixture("FIG2", m, "0").verdict == Verdict::PeriodReduction);
  CHECK(diagnose_fixture("FIG3", "fig3_measure", "3").verdict == Verdict::ContinuingVanishing);
  CHECK(diagnose_fixture("FIG3", "fig3_measure", "2").verdict == Verdict::NoneFound);
  CHECK(diagnose_fixture("FIG4", "fig4_measure", "0 a 1 2").verdict == Verdict::NoneFound);
}

TEST_CASE("FIG1 polynomial fit") {
  const ObstructionReport r = diagnose_fixture("FIG1", "fig1_measure", "a");
  CHECK(r.polynomial.fired);
  CHECK(r.polynomial.lambda == doctest::Approx(0.5).epsilon(1e-12));
  // Two classes with the same rate: nu[a^n] ~ c n 2^-n.
  CHECK(r.polynomial.alpha == doctest::Approx(1.0).epsilon(0.1));
  CHECK(r.polynomial.rms < r.options.fit_tol);
  CHECK_FALSE(r.period.fired);
}

TEST_CASE("diagnose rejects points outside the image") {
  const System s = fixture("FIG4");
  CHECK(code_of([&] { obstruction_diagnose(s, fixture_measure(s, "fig4_measure"), labels(s, "2")); }) ==
        ErrorCode::EmptyGraph);
}

TEST_CASE("Markov images of identity maps raise no obstruction") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const System s = identity_of(oracle::random_system(seed));
    const MarkovMeasure mu = oracle::random_measure(s, seed);
    for (int n = 1; n <= 2; ++n)
      for (const Word& u : blocks(s, n, Target::Image)) {
        if (!is_periodic_in_image(s, u) || make_periodic_point(u).period() != n) continue;
        DiagnoseOptions options;
        options.n_max = 30;
        const ObstructionReport r = obstruction_diagnose(s, mu, u, options);
        CHECK(r.verdict == Verdict::NoneFound);
        ++checked;
      }
  }
  CHECK(checked > 20);
}

TEST_CASE("one-symbol system has constant unit ratios") {
  const System s = make_system({"a"}, {{"a", "a"}}, {{"a", "0"}});
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  const MarkovMeasure mu = make_markov(s, one);
  const ObstructionReport r = obstruction_diagnose(s, mu, labels(s, "0"));
  CHECK(r.verdict == Verdict::NoneFound);
  for (const RatioRow& row : r.series.single_step) CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ratio series length and residues follow the options") {
  const System s = fixture("FIG4");
  const RatioSeries r = gibbs_ratio_series(s, fixture_measure(s, "fig4_measure"), labels(s, "0 a 1 2"), 12);
  CHECK(r.period == 4);
  CHECK(r.q % 4 == 0);
  for (const RatioRow& row : r.single_step) {
    CHECK(row.residue == row.n % r.q);
    CHECK(row.ratio > 0);
    CHECK(row.ratio <= 1.0 + 1e-12);
  }
  CHECK(r.lap.size() == static_cast<std::size_t>(r.period));
}

}  // TEST_SUITE
