#include <set>

#include "support.hpp"

using namespace testing;

TEST_SUITE("shiftspace") {

TEST_CASE("FIG1 validates with five symbols and thirteen allowed pairs") {
  const System s = fixture("FIG1");
  CHECK(s.size() == 5);
  CHECK(s.edge_count() == 13);
  CHECK(s.trimmed().empty());
  CHECK(s.labels().names() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("fixed-point shift is a valid one-symbol system") {
  const System s = make_system({"a"}, {{"a", "a"}}, {{"a", "0"}});
  CHECK(s.size() == 1);
  CHECK(is_mixing(s).mixing);
  CHECK(is_mixing(s).exponent == 1);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_WITH_AS(make_system({"a", "b"}, {{"a", "b"}}, {{"a", "0"}, {"b", "0"}}), doctest::Contains("EmptyAfterTrim"),
                       Error);
  try {
    make_system({"a", "a"}, {{"a", "a"}}, {{"a", "0"}});
    FAIL("expected DuplicateSymbol");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateSymbol);
  }
  try {
    make_system({"a"}, {{"a", "z"}}, {{"a", "0"}});
    FAIL("expected UnknownSymbolInRelation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSymbolInRelation);
  }
  try {
    make_system({"a", "b"}, {{"a", "a"}, {"b", "b"}}, {{"a", "0"}});
    FAIL("expected MissingLabel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingLabel);
  }
}

TEST_CASE("stranded symbols are trimmed and reported") {
  // c has no predecessor, d no successor.
  const System s = make_system({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "a"}, {"c", "a"}, {"b", "d"}},
                               {{"a", "0"}, {"b", "1"}, {"c", "2"}, {"d", "3"}});
  CHECK(s.size() == 2);
  const std::set<std::string> trimmed(s.trimmed().begin(), s.trimmed().end());
  CHECK(trimmed == std::set<std::string>{"c", "d"});
}

TEST_CASE("mixing") {
  CHECK(is_mixing(fixture("FIG2")).mixing);
  const System flip = make_system({"a", "b"}, {{"a", "b"}, {"b", "a"}}, {{"a", "0"}, {"b", "0"}});
  const MixingWitness w = is_mixing(flip);
  CHECK_FALSE(w.mixing);
  CHECK(w.from >= 0);
  CHECK(w.to >= 0);
}

TEST_CASE("mixing agrees with direct matrix powers on the random corpus") {
  for (const System& s : random_corpus(40)) {
    const std::size_t n = s.size();
    std::vector<char> power(n * n), adj(n * n);
    for (Symbol a = 0; a < static_cast<Symbol>(n); ++a)
      for (Symbol b = 0; b < static_cast<Symbol>(n); ++b) adj[a * n + b] = s.allowed(a, b);
    power = adj;
    bool positive = false;
    for (std::size_t k = 1; k <= (n - 1) * (n - 1) + 1 && !positive; ++k) {
      positive = std::all_of(power.begin(), power.end(), [](char c) { return c != 0; });
      std::vector<char> next(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t l = 0; l < n; ++l)
            if (power[i * n + j] && adj[j * n + l]) next[i * n + l] = 1;
      power = next;
    }
    CHECK(is_mixing(s).mixing == positive);
  }
}

TEST_CASE("higher block recoding") {
  const System fig2 = fixture("FIG2");
  const Recoding same = higher_block_recode(fig2, 1);
  CHECK(same.system.size() == fig2.size());
  CHECK(same.system.edge_count() == fig2.edge_count());

  const Recoding two = higher_block_recode(fig2, 2);
  std::set<std::string> names;
  for (const auto& b : two.blocks) names.insert(format_word(fig2.symbols(), b, ""));
  CHECK(names == std::set<std::string>{"ee", "ef", "fg", "ge", "gf"});

  const System one = make_system({"a"}, {{"a", "a"}}, {{"a", "0"}});
  CHECK(higher_block_recode(one, 3).system.size() == 1);
}

TEST_CASE("recoding preserves the number of allowed words") {
  for (const auto& name : fixture_names()) {
    const System s = fixture(name);
    for (int k = 1; k <= 3; ++k) {
      const Recoding r = higher_block_recode(s, k);
      for (int n = k; n <= 6; ++n)
        CHECK(blocks(r.system, n - k + 1, Target::Domain).size() == blocks(s, n, Target::Domain).size());
    }
  }
}

TEST_CASE("blocks") {
  const System fig2 = fixture("FIG2");
  std::vector<std::string> image;
  for (const Word& w : blocks(fig2, 2, Target::Image)) image.push_back(format_word(fig2.labels(), w, ""));
  CHECK(image == std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(blocks(fixture("FIG1"), 1, Target::Image).size() == 2);
  const System one = make_system({"a"}, {{"a", "a"}}, {{"a", "0"}});
  const auto words = blocks(one, 4, Target::Domain);
  REQUIRE(words.size() == 1);
  CHECK(words.front() == Word{0, 0, 0, 0});
  CHECK_THROWS_AS(blocks(fixture("FIG3"), 30, Target::Domain, 1000), Error);
}

TEST_CASE("image blocks are the deduplicated labelings of domain blocks") {
  for (const auto& name : fixture_names()) {
    const System s = fixture(name);
    for (int n = 1; n <= 6; ++n) {
      std::set<Word> labeled;
      for (const Word& x : blocks(s, n, Target::Domain)) labeled.insert(label_word(s, x));
      const auto image = blocks(s, n, Target::Image);
      CHECK(std::vector<Word>(labeled.begin(), labeled.end()) == image);
    }
  }
}

TEST_CASE("fiber examples") {
  const System s = fixture("FIG1");
  auto names = [&](const std::string& w) {
    std::vector<std::string> out;
    for (const Word& x : fiber(s, labels(s, w))) out.push_back(format_word(s.symbols(), x, ""));
    return out;
  };
  CHECK(names("b") == std::vector<std::string>{"i"});
  CHECK(names("a a") == std::vector<std::string>{"ee", "ef", "fg", "fh", "gg", "gh", "hg", "hh"});
  CHECK(names("b a b") == std::vector<std::string>{"ifi"});
}

TEST_CASE("fiber equals filtered domain blocks and is nonempty exactly on image words") {
  for (const auto& name : fixture_names()) {
    const System s = fixture(name);
    for (int n = 1; n <= 7; ++n) {
      std::map<Word, std::vector<Word>> by_label;
      for (const Word& x : blocks(s, n, Target::Domain)) by_label[label_word(s, x)].push_back(x);
      for (const auto& [w, xs] : by_label) CHECK(fiber(s, w) == xs);
    }
    for (const Word& w : blocks(s, 4, Target::Image)) CHECK(is_image_word(s, w));
  }
  const System fig2 = fixture("FIG2");
  CHECK(fiber(fig2, labels(fig2, "1 0 1")).empty());
  CHECK_FALSE(is_image_word(fig2, labels(fig2, "1 0 1")));
}

TEST_CASE("periodic points of the image") {
  CHECK(is_periodic_in_image(fixture("FIG1"), labels(fixture("FIG1"), "a")));
  const System fig2 = fixture("FIG2");
  CHECK(is_periodic_in_image(fig2, labels(fig2, "0")));
  CHECK_FALSE(is_periodic_in_image(fig2, labels(fig2, "1 0")));
}

TEST_CASE("periodic point canonical form") {
  const PeriodicPoint p = make_periodic_point(Word{2, 0, 1});
  CHECK(p.cycle == Word{0, 1, 2});
  CHECK(p.phase == 2);
  const PeriodicPoint q = make_periodic_point(Word{1, 0, 1, 0});
  CHECK(q.cycle == Word{0, 1});
  CHECK(q.period() == 2);
}

TEST_CASE("word parsing") {
  const System s = fixture("FIG1");
  CHECK(parse_word(s.labels(), "a b a") == parse_word(s.labels(), "aba"));
  CHECK(parse_word(s.labels(), "a,b") == Word{0, 1});
  CHECK_THROWS_AS(parse_word(s.labels(), "a c"), Error);
  CHECK_THROWS_AS(parse_word(s.labels(), ""), Error);
  const System fig4 = fixture("FIG4");
  CHECK(parse_word(fig4.symbols(), "a_I").size() == 1);
}

TEST_CASE("every fiber word is allowed") {
  for (const System& s : random_corpus(30))
    for (const Word& w : blocks(s, 4, Target::Image))
      for (const Word& x : fiber(s, w)) {
        CHECK(is_domain_word(s, x));
        CHECK(label_word(s, x) == w);
      }
}

}  // TEST_SUITE
