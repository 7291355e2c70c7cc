#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "oracle.hpp"
#include "racg/builtin.hpp"
#include "racg/coxeter.hpp"

using namespace racg;

TEST_CASE("nerve parsing and validation") {
  auto sys = parse_nerve(
      R"({"generators":["a","b","c","d","e"],
          "edges":[["a","b"],["b","c"],["c","d"],["d","a"]]})");
  CHECK(sys.rank() == 5);
  CHECK(sys.commutes(0, 1));
  CHECK(!sys.commutes(0, 2));
  CHECK(!sys.commutes(4, 0));
  CHECK(sys.fingerprint() == builtin_nerve("fig-a1").fingerprint());

  CHECK_THROWS_AS(parse_nerve(R"({"generators":["a","a"],"edges":[]})"),
                  DomainError);
  CHECK_THROWS_AS(parse_nerve(R"({"generators":["a"],"edges":[["a","a"]]})"),
                  DomainError);
  CHECK_THROWS_AS(parse_nerve(R"({"generators":["a"],"edges":[["a","b"]]})"),
                  DomainError);
  CHECK_NOTHROW(parse_nerve(R"({"generators":["a"],"edges":[]})"));
}

TEST_CASE("normalize basics") {
  auto sys = builtin_nerve("fig-a1");
  CHECK(normalize(sys, {0, 0}).length() == 0);           // aa -> eps
  CHECK(normalize(sys, {1, 0}).letters() == Word{0, 1});  // ba -> ab
  auto free3 = builtin_nerve("free3");
  CHECK(normalize(free3, {0, 1, 0}).letters() == Word{0, 1, 0});  // aba
}

TEST_CASE("normalize against rewriting closure, short words") {
  for (const char* name : {"fig-a1", "pentagon", "free3"}) {
    auto sys = builtin_nerve(name);
    // every word of length <= 4
    std::vector<Word> words{{}};
    for (int len = 1; len <= 4; ++len) {
      std::vector<Word> next;
      for (const auto& w : words) {
        if ((int)w.size() != len - 1) continue;
        for (int s = 0; s < sys.rank(); ++s) {
          Word ws = w;
          ws.push_back(s);
          next.push_back(ws);
        }
      }
      for (auto& w : next) words.push_back(std::move(w));
    }
    for (const auto& w : words) {
      CAPTURE(name);
      CAPTURE(w);
      CHECK(normalize(sys, w).letters() == oracle::canonical(sys, w));
    }
  }
}

TEST_CASE("normalize constant on single rewriting moves") {
  auto sys = builtin_nerve("fig-a1");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Word w;
    for (int i = 0; i < 9; ++i) w.push_back(static_cast<int>(rng() % 5));
    auto base = normalize(sys, w);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (sys.commutes(w[i], w[i + 1])) {
        Word m = w;
        std::swap(m[i], m[i + 1]);
        CHECK(normalize(sys, m) == base);
      }
      if (w[i] == w[i + 1]) {
        Word m(w.begin(), w.begin() + i);
        m.insert(m.end(), w.begin() + i + 2, w.end());
        CHECK(normalize(sys, m) == base);
      }
    }
  }
}

TEST_CASE("multiply and invert") {
  auto sys = builtin_nerve("fig-a1");
  auto nf = [&](std::initializer_list<int> l) { return normalize(sys, Word(l)); };
  auto x = nf({1, 3});           // bd
  auto y = nf({4, 0, 2});        // eac
  auto xy = multiply(sys, x, y);
  CHECK(xy == nf({1, 3, 4, 0, 2}));
  CHECK(xy.length() == 5);
  CHECK(multiply(sys, xy, invert(sys, xy)).empty());
  CHECK(invert(sys, x).length() == x.length());
  // commuting product canonical either way
  CHECK(multiply(sys, nf({0}), nf({1})) == multiply(sys, nf({1}), nf({0})));
  // length subadditive
  CHECK(xy.length() <= x.length() + y.length());
}

TEST_CASE("support and standard subgroups") {
  auto sys = builtin_nerve("fig-a1");
  auto eps = normalize(sys, {});
  CHECK(support(eps) == 0);
  CHECK(in_standard_subgroup(eps, 0));
  auto w = normalize(sys, {1, 3, 4, 0, 2});  // bdeac
  CHECK(support(w) == 0b11111);
  for (int drop = 0; drop < 5; ++drop)
    CHECK(!in_standard_subgroup(w, GenSet(0b11111) & ~(GenSet(1) << drop)));
  auto bdbd = normalize(sys, {1, 3, 1, 3});
  CHECK(support(bdbd) == ((GenSet(1) << 1) | (GenSet(1) << 3)));
}

TEST_CASE("support independent of representative") {
  auto sys = builtin_nerve("fig-a1");
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Word w;
    for (int i = 0; i < 8; ++i) w.push_back(static_cast<int>(rng() % 5));
    auto nf = normalize(sys, w);
    auto reps = oracle::geodesic_representatives(sys, nf.letters());
    for (const auto& r : reps) CHECK(support(normalize(sys, r)) == support(nf));
  }
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(builtin_nerve("fig-a1")));
  CHECK(is_irreducible(builtin_nerve("fig-a2")));
  CHECK(is_irreducible(builtin_nerve("pentagon")));
  CHECK(is_irreducible(CoxeterSystem({"a"}, {})));
  CHECK(!is_irreducible(CoxeterSystem({"a", "b"}, {{0, 1}})));
}

TEST_CASE("ball enumeration") {
  auto dih = builtin_nerve("dihedral");
  CHECK(enumerate_ball(dih, 0).size() == 1);
  CHECK(enumerate_ball(dih, 3).size() == 7);  // eps,s,t,st,ts,sts,tst
  auto z2xz2 = CoxeterSystem({"a", "b"}, {{0, 1}});
  CHECK(enumerate_ball(z2xz2, 2).size() == 4);
  CHECK(enumerate_ball(z2xz2, 5, 12).size() == 4);
  CHECK_THROWS_AS(enumerate_ball(dih, 13), DomainError);

  for (const char* name : {"fig-a1", "pentagon"}) {
    auto sys = builtin_nerve(name);
    for (int r = 0; r <= 4; ++r) {
      CAPTURE(name);
      CHECK(enumerate_ball(sys, r).size() == oracle::ball(sys, r).size());
    }
  }
}

TEST_CASE("word parsing") {
  auto sys = builtin_nerve("fig-a1");
  CHECK(parse_word(sys, "b d e a c") == Word{1, 3, 4, 0, 2});
  CHECK(parse_word(sys, "b,d,e") == Word{1, 3, 4});
  CHECK_THROWS_AS(parse_word(sys, "b q"), DomainError);
  CHECK(word_to_string(sys, {1, 3}) == "b d");
}
