#include <cmath>

#include "gibbsloss/markov.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Eigen::MatrixXd fig2_matrix(double p) {
  // Symbol order e, f, g.
  Eigen::MatrixXd m(3, 3);
  m << p, 1 - p, 0,  //
      0, 0, 1,       //
      p, 1 - p, 0;
  return m;
}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("FIG2 stationary vector at p = 1/2") {
  const System s = fixture("FIG2");
  const MarkovMeasure mu = fixture_measure(s, "fig2_p05");
  for (int i = 0; i < 3; ++i) CHECK(mu.initial(i) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(mu.fully_supported);
  const auto exact = oracle::stationary(s, mu);
  for (const auto& v : exact) CHECK(v == oracle::Rational(1, 3));
}

TEST_CASE("FIG2 pushforward values") {
  const System s = fixture("FIG2");
  const MarkovMeasure mu = fixture_measure(s, "fig2_p05");
  CHECK(pushforward(s, mu, labels(s, "0")) == doctest::Approx(2.0 / 3).epsilon(1e-13));
  CHECK(pushforward(s, mu, labels(s, "0 0")) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(pushforward(s, mu, labels(s, "1")) == doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK(oracle::pushforward_exact(s, mu, labels(s, "0 0")) == oracle::Rational(1, 2));
  CHECK(pushforward(s, mu, labels(s, "1 0 1")) == 0.0);
  CHECK(std::isinf(log_pushforward(s, mu, labels(s, "1 0 1"))));
}

TEST_CASE("pushforward modes agree with enumeration") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const System s = oracle::random_system(seed);
    const MarkovMeasure mu = oracle::random_measure(s, seed + 1000);
    for (int n = 1; n <= 5; ++n)
      for (const Word& w : blocks(s, n, Target::Image)) {
        const double reference = oracle::pushforward(s, mu, w);
        CHECK(pushforward(s, mu, w, PushMode::Transfer) == doctest::Approx(reference).epsilon(1e-12));
        CHECK(pushforward(s, mu, w, PushMode::Brute) == doctest::Approx(reference).epsilon(1e-12));
        CHECK(std::exp(log_pushforward(s, mu, w)) == doctest::Approx(reference).epsilon(1e-12));
      }
  }
}

TEST_CASE("pushforward is a consistent probability on each length") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const System s = oracle::random_system(seed);
    const MarkovMeasure mu = oracle::random_measure(s, seed);
    for (int n = 1; n <= 5; ++n) {
      double total = 0;
      for (const Word& w : blocks(s, n, Target::Image)) {
        const double mass = pushforward(s, mu, w);
        total += mass;
        double right = 0, left = 0;
        for (Symbol l = 0; l < static_cast<Symbol>(s.labels().size()); ++l) {
          Word r = w;
          r.push_back(l);
          Word lw{l};
          lw.insert(lw.end(), w.begin(), w.end());
          right += pushforward(s, mu, r);
          left += pushforward(s, mu, lw);
        }
        CHECK(right == doctest::Approx(mass).epsilon(1e-12));
        CHECK(left == doctest::Approx(mass).epsilon(1e-12));
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("prefix log masses of a periodic point") {
  const System s = fixture("FIG2");
  const MarkovMeasure mu = fixture_measure(s, "fig2_p05");
  const auto logs = prefix_log_masses(s, mu, labels(s, "0"), 6);
  REQUIRE(logs.size() == 6);
  for (int m = 1; m <= 6; ++m)
    CHECK(logs[m - 1] == doctest::Approx(std::log(pushforward(s, mu, Word(m, labels(s, "0")[0])))).epsilon(1e-12));
  for (std::size_t i = 1; i < logs.size(); ++i) CHECK(logs[i] <= logs[i - 1]);
}

TEST_CASE("stationary vector solves the balance equations") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const System s = oracle::random_system(seed);
    const MarkovMeasure mu = oracle::random_measure(s, seed);
    const Eigen::VectorXd p = stationary_vector(mu.transition);
    CHECK((p.transpose() * mu.transition - p.transpose()).norm() < 1e-12);
    CHECK(p.sum() == doctest::Approx(1.0));
    CHECK(p.minCoeff() > 0);
  }
}

TEST_CASE("measure validation errors") {
  const System s = fixture("FIG2");
  CHECK_FALSE(code_of([&] { make_markov(s, fig2_matrix(0.3)); }).has_value());

  Eigen::MatrixXd not_stochastic = fig2_matrix(0.3);
  not_stochastic(0, 0) = 0.5;
  CHECK(code_of([&] { make_markov(s, not_stochastic); }) == ErrorCode::NotStochastic);

  Eigen::MatrixXd negative = fig2_matrix(1.2);
  CHECK(code_of([&] { make_markov(s, negative); }) == ErrorCode::NotStochastic);

  Eigen::MatrixXd forbidden = fig2_matrix(0.3);
  forbidden(1, 1) = 0.5;
  forbidden(1, 2) = 0.5;
  CHECK(code_of([&] { make_markov(s, forbidden); }) == ErrorCode::SupportViolation);

  Eigen::VectorXd wrong(3);
  wrong << 0.5, 0.25, 0.25;
  CHECK(code_of([&] { make_markov(s, fig2_matrix(0.5), wrong); }) == ErrorCode::NotInvariant);

  Eigen::MatrixXd reducible = fig2_matrix(1.0);
  CHECK(code_of([&] { stationary_vector(reducible); }) == ErrorCode::NoStationary);
}

TEST_CASE("measure files") {
  const System s = fixture("FIG2");
  for (const char* name : {"fig2_p02", "fig2_p03", "fig2_p05", "fig2_p08"}) {
    const MarkovMeasure mu = fixture_measure(s, name);
    CHECK(mu.initial.sum() == doctest::Approx(1.0));
  }
  CHECK(fixture_measure(fixture("FIG1"), "fig1_measure").initial.size() == 5);
  CHECK(code_of([&] { fixture_measure(s, "does_not_exist"); }) == ErrorCode::FileNotFound);
}

}  // TEST_SUITE
