#include <cmath>

#include "gibbsloss/growth.hpp"
#include "support.hpp"

using namespace testing;

TEST_SUITE("growth") {

TEST_CASE("perron data of small matrices") {
  Eigen::Matrix2d a;
  a << 2, 1, 1, 2;
  const auto r = perron(a);
  CHECK(r.lambda == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.right(0) == doctest::Approx(0.5));
  CHECK(r.left(1) == doctest::Approx(0.5));

  Eigen::Matrix3f f;
  f << 0, 1, 0, 0, 0, 1, 1, 1, 0;
  PerronOptions loose;
  loose.tolerance = 1e-5;
  const auto rf = perron(f, loose);
  CHECK(rf.lambda == doctest::Approx(1.3247179572).epsilon(1e-4));  // plastic number

  Eigen::Matrix2d flip;
  flip << 0, 1, 1, 0;
  CHECK_FALSE(is_primitive(flip));
  CHECK(code_of([&] { perron(flip); }) == ErrorCode::NotPrimitive);
  CHECK(spectral_radius(flip) == doctest::Approx(1.0));

  Eigen::Matrix2d negative;
  negative << 1, -1, 1, 1;
  CHECK(code_of([&] { perron(negative); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("perron root matches the spectral radius on random stochastic-like matrices") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const System s = oracle::random_system(seed);
    const MarkovMeasure mu = oracle::random_measure(s, seed);
    const Eigen::MatrixXd scaled = 0.7 * mu.transition;
    const auto r = perron(scaled);
    CHECK(r.lambda == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(spectral_radius(scaled) == doctest::Approx(r.lambda).epsilon(1e-10));
    CHECK((scaled * r.right - r.lambda * r.right).lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("FIG2 growth profile over the fixed point") {
  const System s = fixture("FIG2");
  const GrowthProfile g = growth_profile(s, fixture_measure(s, "fig2_p05"), labels(s, "0"));
  REQUIRE(g.classes.size() == 2);
  CHECK(g.orbit_consistent);
  for (const ClassGrowth& c : g.classes) {
    CHECK(c.period == 2);
    CHECK(c.lambda == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.rate_per_symbol == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(c.converged);
  }
  CHECK(g.classes[0].orbit == g.classes[1].orbit);
  // Cylinders f g f g ... and g f g f ... of length 2n: (1/3)(1/2)^(n-1) and (1/3)(1/2)^n.
  CHECK(g.classes[0].coefficient == doctest::Approx(2.0 / 3).epsilon(1e-9));
  CHECK(g.classes[1].coefficient == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("FIG1 class matrices use the trimmed marked alphabet") {
  const System s = fixture("FIG1");
  const MarkovMeasure mu = fixture_measure(s, "fig1_measure");
  const ClassReport r = periodic_classes(s, labels(s, "a"), Side::Right);
  const ClassMatrix e = class_matrix(s, mu, r, 0);
  REQUIRE(e.states.size() == 1);
  CHECK(e.matrix(0, 0) == doctest::Approx(mu.transition(0, 0)));
  const ClassMatrix gh = class_matrix(s, mu, r, 1);
  CHECK(show(s, gh.states) == "g h");
  CHECK_FALSE(gh.used_support);

  const GrowthProfile g = growth_profile(s, mu, labels(s, "a"));
  REQUIRE(g.classes.size() == 2);
  CHECK(g.classes[0].lambda == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.classes[1].lambda == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.classes[0].coefficient == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(g.classes[1].coefficient == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("FIG4 growth over the 4-cycle") {
  const System s = fixture("FIG4");
  const GrowthProfile g = growth_profile(s, fixture_measure(s, "fig4_measure"), labels(s, "0 a 1 2"));
  REQUIRE(g.classes.size() == 1);
  CHECK(g.classes[0].lambda == doctest::Approx(1.0 / 9).epsilon(1e-9));
  CHECK(g.classes[0].coefficient == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("class cylinders grow at the class rate") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const System s = oracle::random_system(seed);
    const MarkovMeasure mu = oracle::random_measure(s, seed);
    for (const Word& u : blocks(s, 1, Target::Image)) {
      if (!is_periodic_in_image(s, u)) continue;
      const GrowthProfile g = growth_profile(s, mu, u, 40);
      for (const ClassGrowth& c : g.classes) {
        if (!c.converged) continue;
        const int q = g.report.q;
        const double step = log_class_cylinder(s, mu, g.report, c.index, q * 40) -
                            log_class_cylinder(s, mu, g.report, c.index, q * 39);
        CHECK(step == doctest::Approx(std::log(c.lambda)).epsilon(1e-6));
        CHECK(c.lambda <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("tuning a single transition of FIG2") {
  const System s = fixture("FIG2");
  const MarkovMeasure mu = fixture_measure(s, "fig2_p05");
  const ClassReport r = periodic_classes(s, labels(s, "0"), Side::Right);
  const Symbol g = s.symbols().at("g"), e = s.symbols().at("e");
  const MeasureFamily family = single_transition_family(mu.transition, g, e);
  CHECK(family(0.3)(g, e) == doctest::Approx(0.3));
  CHECK(family(0.3).row(g).sum() == doctest::Approx(1.0));

  const TuneResult half = tune_class_rate(s, family, r, 0, 0.5);
  CHECK(half.t == doctest::Approx(0.5).epsilon(1e-9));
  const TuneResult quarter = tune_class_rate(s, family, r, 0, 0.25);
  CHECK(quarter.t == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(quarter.lambda == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(code_of([&] { tune_class_rate(s, family, r, 0, 1.0); }) == ErrorCode::TargetOutOfRange);
}

TEST_CASE("class rate is monotone along a single-transition family") {
  const System s = fixture("FIG2");
  const MarkovMeasure mu = fixture_measure(s, "fig2_p05");
  const ClassReport r = periodic_classes(s, labels(s, "0"), Side::Right);
  const MeasureFamily family =
      single_transition_family(mu.transition, s.symbols().at("g"), s.symbols().at("e"));
  double previous = class_rate(s, family, r, 0, 0.0);
  for (double t = 0.1; t <= 1.0; t += 0.1) {
    const double rate = class_rate(s, family, r, 0, t);
    CHECK(rate <= previous + 1e-12);
    CHECK(rate == doctest::Approx(1 - t).epsilon(1e-9));
    previous = rate;
  }
}

}  // TEST_SUITE
