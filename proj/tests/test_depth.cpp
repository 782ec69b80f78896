#include <random>

#include "gibbsloss/depth.hpp"
#include "support.hpp"

using namespace testing;

TEST_SUITE("transition-structure") {

TEST_CASE("bridges between FIG1 words") {
  const System s = fixture("FIG1");
  const BridgePair eg = bridges(s, symbols(s, "e e e e"), symbols(s, "g g g g"));
  CHECK(eg.forward);
  CHECK_FALSE(eg.backward);
  const BridgePair ee = bridges(s, symbols(s, "e e"), symbols(s, "e e"));
  CHECK(ee.forward);
  CHECK(ee.backward);
}

TEST_CASE("FIG4 words through separated components do not bridge") {
  const System s = fixture("FIG4");
  const BridgePair b = bridges(s, symbols(s, "0_I a_I 1_I"), symbols(s, "0_I' a_I' 1_I'"));
  CHECK_FALSE(b.forward);
  CHECK_FALSE(b.backward);
}

TEST_CASE("bridges reject incomparable words") {
  const System s = fixture("FIG1");
  try {
    bridges(s, symbols(s, "e e"), symbols(s, "e e e"));
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
  try {
    bridges(s, symbols(s, "e e"), symbols(s, "f i"));
    FAIL("expected LabelMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LabelMismatch);
  }
}

TEST_CASE("bridges depend only on endpoints and labels") {
  std::mt19937_64 rng(7);
  for (const System& s : random_corpus(40)) {
    for (const Word& w : blocks(s, 5, Target::Image)) {
      const auto fib = fiber(s, w);
      if (fib.size() < 2) continue;
      std::uniform_int_distribution<std::size_t> pick(0, fib.size() - 1);
      for (int t = 0; t < 4; ++t) {
        const Word& u = fib[pick(rng)];
        const Word& v = fib[pick(rng)];
        const BridgePair b = bridges(s, u, v);
        for (const Word& u2 : fib)
          for (const Word& v2 : fib)
            if (u2.front() == u.front() && u2.back() == u.back() && v2.front() == v.front() && v2.back() == v.back()) {
              const BridgePair b2 = bridges(s, u2, v2);
              CHECK(b2.forward == b.forward);
              CHECK(b2.backward == b.backward);
            }
      }
    }
  }
}

TEST_CASE("depth examples") {
  const System fig4 = fixture("FIG4");
  CHECK(depth(fig4, labels(fig4, "a 1 2")).value == 2);
  const DepthWitness d = depth(fig4, labels(fig4, "2 0 a 1 2"));
  CHECK(d.value == 1);
  CHECK(d.position == 3);
  CHECK(show(fig4, d.routing) == "a_I");

  const System fig1 = fixture("FIG1");
  const DepthWitness bab = depth(fig1, labels(fig1, "b a b"));
  CHECK(bab.value == 1);
  CHECK(show(fig1, bab.routing) == "f");
}

TEST_CASE("depth errors") {
  const System fig1 = fixture("FIG1");
  try {
    depth(fig1, labels(fig1, "a b"));
    FAIL("expected TooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooShort);
  }
  const System fig2 = fixture("FIG2");
  try {
    depth(fig2, labels(fig2, "1 0 1"));
    FAIL("expected EmptyFiber");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyFiber);
  }
}

TEST_CASE("tau examples") {
  const System fig1 = fixture("FIG1");
  const TauWitness t = tau_depth(fig1, labels(fig1, "a a a a a"));
  CHECK(t.value == 2);
  CHECK(t.exact);
  const System fig4 = fixture("FIG4");
  CHECK(tau_depth(fig4, labels(fig4, "2 0 a 1 2")).value == 1);
  CHECK(tau_depth(fig1, labels(fig1, "b a b")).value == 1);
}

TEST_CASE("depth certificates are self-consistent") {
  for (const auto& name : fixture_names()) {
    const System s = fixture(name);
    for (const Word& w : blocks(s, 5, Target::Image)) {
      const DepthCertificate cert = depth_certificate(s, w);
      const auto fib = fiber(s, w);
      // Every fiber word is routable through the witness set at the witness position.
      const auto n = static_cast<std::size_t>(cert.depth.position - 1);
      for (const Word& u : fib) {
        bool routed = false;
        for (const Word& v : fib)
          if (v.front() == u.front() && v.back() == u.back() &&
              std::binary_search(cert.depth.routing.begin(), cert.depth.routing.end(), v[n]))
            routed = true;
        CHECK(routed);
      }
      CHECK(static_cast<int>(cert.depth.routing.size()) == cert.depth.value);
      // Partition blocks are pairwise two-way bridged.
      for (const auto& block : cert.tau.partition)
        for (const auto& [s1, t1] : block)
          for (const auto& [s2, t2] : block) {
            const bool forward = std::any_of(fib.begin(), fib.end(), [&](const Word& v) { return v.front() == s1 && v.back() == t2; });
            const bool backward = std::any_of(fib.begin(), fib.end(), [&](const Word& v) { return v.front() == s2 && v.back() == t1; });
            CHECK((forward && backward));
          }
      CHECK(static_cast<int>(cert.tau.partition.size()) == cert.tau.value);
    }
  }
}

TEST_CASE("depth and tau agree with exhaustive recomputation") {
  for (const System& s : random_corpus(60)) {
    for (int n = 3; n <= 5; ++n)
      for (const Word& w : blocks(s, n, Target::Image)) {
        if (oracle::fiber(s, w).size() > 8) continue;
        CHECK(depth(s, w).value == oracle::depth(s, w));
        CHECK(tau_depth(s, w).value == oracle::tau(s, w));
      }
  }
  for (const auto& name : fixture_names()) {
    const System s = fixture(name);
    for (const Word& w : blocks(s, 4, Target::Image)) {
      if (oracle::fiber(s, w).size() > 8) continue;
      CHECK(depth(s, w).value == oracle::depth(s, w));
      CHECK(tau_depth(s, w).value == oracle::tau(s, w));
    }
  }
}

TEST_CASE("tau never exceeds depth and both shrink under extension") {
  std::vector<System> systems = random_corpus(30);
  for (const auto& name : fixture_names()) systems.push_back(fixture(name));
  for (const System& s : systems)
    for (int n = 3; n <= 5; ++n)
      for (const Word& w : blocks(s, n, Target::Image)) {
        const int d = depth(s, w).value;
        const int t = tau_depth(s, w).value;
        CHECK(t <= d);
        for (Symbol l = 0; l < static_cast<Symbol>(s.labels().size()); ++l) {
          Word right = w;
          right.push_back(l);
          Word left{l};
          left.insert(left.end(), w.begin(), w.end());
          for (const Word& ext : {right, left})
            if (is_image_word(s, ext)) {
              CHECK(depth(s, ext).value <= d);
              CHECK(tau_depth(s, ext).value <= t);
            }
        }
      }
}

TEST_CASE("class degree estimates") {
  const DegreeEstimate fig4 = class_degree_estimate(fixture("FIG4"), 6);
  CHECK(fig4.value == 1);
  CHECK(fig4.stabilized);
  const System f4 = fixture("FIG4");
  CHECK(std::count(fig4.witness.begin(), fig4.witness.end(), f4.labels().at("2")) >= 1);

  const System fig1 = fixture("FIG1");
  const DegreeEstimate d1 = class_degree_estimate(fig1, 6);
  CHECK(d1.value == 1);
  CHECK(depth(fig1, d1.witness).value == 1);
  CHECK(tau_depth(fig1, labels(fig1, "b a b")).value == 1);

  const System id2 = identity_of(fixture("FIG2"));
  CHECK(class_degree_estimate(id2, 3).value == 1);
}

TEST_CASE("class degree estimate is non-increasing in the horizon") {
  for (const System& s : random_corpus(20)) {
    int previous = class_degree_estimate(s, 3).value;
    for (int n = 4; n <= 6; ++n) {
      const DegreeEstimate e = class_degree_estimate(s, n);
      CHECK(e.value <= previous);
      CHECK(e.min_depth >= e.value);
      previous = e.value;
      for (std::size_t i = 1; i < e.running_min.size(); ++i) CHECK(e.running_min[i] <= e.running_min[i - 1]);
    }
  }
}

TEST_CASE("degree estimate rejects tiny horizons") { CHECK_THROWS_AS(class_degree_estimate(fixture("FIG1"), 2), Error); }

}  // TEST_SUITE
