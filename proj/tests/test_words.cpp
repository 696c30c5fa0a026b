#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pvk/words.hpp"

using namespace pvk;

namespace {

struct Fixture {
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  GroupContext ctx;
  Fixture() {
    ctx.groups["v"] = &z4;
    ctx.groups["w"] = &s3;
  }
};

}  // namespace

TEST_CASE("plain form expands powers and drops silent letters") {
  Fixture fx;
  // g_v e1^2 e2^-3 g_w 1: one letter, two letters, three letters, one
  // letter, nothing -- seven plain letters in all
  Word w = {Atom::vertex("v", 1), Atom::edge("e1", 2), Atom::edge("e2", -3),
            Atom::vertex("w", 2), Atom::trivial_at_vertex("v")};
  CHECK(plain_length(w, fx.ctx) == 7);
  Word p = plain_form(w, fx.ctx);
  REQUIRE(p.size() == 7);
  CHECK(p[1] == Atom::edge("e1", 1));
  CHECK(p[2] == Atom::edge("e1", 1));
  CHECK(p[3] == Atom::edge("e2", -1));
  // identity vertex letters vanish as well
  Word idw = {Atom::vertex("v", 0), Atom::edge("e1", 1)};
  CHECK(plain_length(idw, fx.ctx) == 1);
  CHECK(plain_length(Word{}, fx.ctx) == 0);
}

TEST_CASE("reduction merges same-home runs and is idempotent") {
  Fixture fx;
  Word w = {Atom::vertex("v", 1), Atom::vertex("v", 3), Atom::edge("e", 1),
            Atom::edge("e", -1), Atom::vertex("w", 2)};
  Word r = reduce(w, fx.ctx);
  // 1 + 3 = 0 in Z/4 after the edge pair cancels... the two vertex letters
  // merge to the identity and vanish, the edge letters cancel
  REQUIRE(r.size() == 1);
  CHECK(r[0] == Atom::vertex("w", 2));
  CHECK(is_reduced(r, fx.ctx));
  CHECK(reduce(r, fx.ctx) == r);

  Word alternating = {Atom::vertex("v", 1), Atom::edge("e", 1),
                      Atom::vertex("v", 1)};
  CHECK(is_reduced(alternating, fx.ctx));
  CHECK(reduce(alternating, fx.ctx) == alternating);
}

TEST_CASE("inversion and concatenation satisfy the group laws") {
  Fixture fx;
  Word w = {Atom::vertex("v", 3), Atom::edge("e", 2), Atom::vertex("w", 4),
            Atom::edge("f", -1)};
  Word iw = invert(w, fx.ctx);
  CHECK(reduce(concat(w, iw), fx.ctx).empty());
  CHECK(reduce(concat(iw, w), fx.ctx).empty());
  CHECK(words_equal(invert(iw, fx.ctx), w, fx.ctx));
}

TEST_CASE("equality is equality of normal forms") {
  Fixture fx;
  Word a = {Atom::vertex("v", 1), Atom::vertex("v", 2)};
  Word b = {Atom::vertex("v", 3)};
  CHECK(words_equal(a, b, fx.ctx));
  CHECK_FALSE(words_equal(a, Word{Atom::vertex("v", 2)}, fx.ctx));
  // edge exponents accumulate
  Word c = {Atom::edge("e", 2), Atom::edge("e", -2)};
  CHECK(words_equal(c, Word{}, fx.ctx));
  // different homes never merge
  Word d = {Atom::vertex("v", 1), Atom::vertex("w", 1)};
  CHECK_FALSE(words_equal(d, Word{Atom::vertex("v", 1)}, fx.ctx));
}

TEST_CASE("reduction confluence on random words") {
  Fixture fx;
  std::mt19937_64 eng(20240817);
  auto random_word = [&](int len) {
    Word w;
    for (int i = 0; i < len; ++i) {
      switch (eng() % 4) {
        case 0:
          w.push_back(Atom::vertex("v", static_cast<int>(eng() % 4)));
          break;
        case 1:
          w.push_back(Atom::vertex("w", static_cast<int>(eng() % 6)));
          break;
        case 2:
          w.push_back(Atom::edge("e", static_cast<long long>(eng() % 5) - 2));
          break;
        default:
          w.push_back(Atom::trivial_at_edge("e"));
      }
    }
    return w;
  };
  for (int trial = 0; trial < 500; ++trial) {
    Word w = random_word(1 + static_cast<int>(eng() % 12));
    Word r = reduce(w, fx.ctx);
    CHECK(is_reduced(r, fx.ctx));
    CHECK(words_equal(w, r, fx.ctx));
    // splitting anywhere and reducing the halves first changes nothing
    std::size_t cut = eng() % (w.size() + 1);
    Word left(w.begin(), w.begin() + cut);
    Word right(w.begin() + cut, w.end());
    Word glued = concat(reduce(left, fx.ctx), reduce(right, fx.ctx));
    CHECK(words_equal(glued, w, fx.ctx));
    // inversion reverses concatenation
    Word lhs = invert(concat(left, right), fx.ctx);
    Word rhs = concat(invert(right, fx.ctx), invert(left, fx.ctx));
    CHECK(words_equal(lhs, rhs, fx.ctx));
  }
}

TEST_CASE("printing mentions every surviving letter") {
  Fixture fx;
  Word w = {Atom::vertex("v", 1), Atom::edge("e", -2)};
  std::string s = word_to_string(w, fx.ctx);
  CHECK(s.find("e") != std::string::npos);
  CHECK(word_to_string(Word{}, fx.ctx) == "1");
}
