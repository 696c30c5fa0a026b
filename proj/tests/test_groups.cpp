#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <memory>

#include "pvk/groups.hpp"

using namespace pvk;

TEST_CASE("factory groups have the expected orders and identities") {
  CHECK(FiniteGroup::trivial_group().size() == 1);
  CHECK(FiniteGroup::cyclic(7).size() == 7);
  CHECK(FiniteGroup::dihedral(4).size() == 8);
  CHECK(FiniteGroup::symmetric(4).size() == 24);
  CHECK(FiniteGroup::alternating(4).size() == 12);
  CHECK(FiniteGroup::quaternion8().size() == 8);
  CHECK(FiniteGroup::units_mod(9).size() == 6);
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(s3.identity() == 0);
  for (int a = 0; a < s3.size(); ++a) {
    CHECK(s3.mul(a, s3.identity()) == a);
    CHECK(s3.mul(a, s3.inv(a)) == s3.identity());
  }
}

TEST_CASE("abelianness and element orders") {
  CHECK(FiniteGroup::cyclic(12).is_abelian());
  CHECK_FALSE(FiniteGroup::symmetric(3).is_abelian());
  CHECK_FALSE(FiniteGroup::quaternion8().is_abelian());
  FiniteGroup z12 = FiniteGroup::cyclic(12);
  CHECK(z12.order_of(0) == 1);
  CHECK(z12.order_of(1) == 12);
  CHECK(z12.order_of(4) == 3);
  CHECK(z12.pow(1, 5) == 5);
  CHECK(z12.pow(1, -1) == 11);
}

TEST_CASE("direct and semidirect products") {
  FiniteGroup v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                               FiniteGroup::cyclic(2));
  CHECK(v4.size() == 4);
  CHECK(v4.is_abelian());
  CHECK(v4.is_pair_coded());
  auto [x, y] = v4.pair_of(v4.pair_index(1, 1));
  CHECK(x == 1);
  CHECK(y == 1);

  // Z/3 acted on by Z/2 through inversion: a copy of S3
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  std::vector<std::vector<int>> action = {{0, 1, 2}, {0, 2, 1}};
  FiniteGroup s3 = FiniteGroup::semidirect(z3, z2, action);
  CHECK(s3.size() == 6);
  CHECK_FALSE(s3.is_abelian());
}

TEST_CASE("subgroup machinery against textbook counts") {
  CHECK(all_subgroups(FiniteGroup::cyclic(6)).size() == 4);
  CHECK(all_subgroups(FiniteGroup::symmetric(3)).size() == 6);
  CHECK(all_subgroups(FiniteGroup::dihedral(4)).size() == 10);
  CHECK(all_subgroups(FiniteGroup::quaternion8()).size() == 6);
  CHECK(all_subgroups(FiniteGroup::alternating(4)).size() == 10);
  CHECK(all_subgroups(FiniteGroup::symmetric(4)).size() == 30);

  FiniteGroup s3 = FiniteGroup::symmetric(3);
  for (const auto& h : all_subgroups(s3)) {
    CHECK(is_subgroup(s3, h));
    if (h.size() == 3) CHECK(is_normal(s3, h));  // the alternating part
    if (h.size() == 2) CHECK_FALSE(is_normal(s3, h));
  }
  // closure of a transposition and a 3-cycle is everything
  int transposition = -1, three_cycle = -1;
  for (int a = 0; a < s3.size(); ++a) {
    if (s3.order_of(a) == 2) transposition = a;
    if (s3.order_of(a) == 3) three_cycle = a;
  }
  CHECK(subgroup_closure(s3, {transposition, three_cycle}).size() == 6);
  CHECK(normal_closure(s3, {transposition}).size() == 6);
  CHECK(centralizer(s3, {three_cycle}).size() == 3);
  CHECK(subgroups_of_index_at_most(s3, 2).size() == 2);  // S3 and A3
}

TEST_CASE("quotients and homomorphism enumeration") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  std::vector<int> a3;
  for (const auto& h : all_subgroups(s3))
    if (h.size() == 3) a3 = h;
  QuotientResult q = quotient(s3, a3);
  CHECK(q.group.size() == 2);
  CHECK(is_hom(s3, q.group, q.proj));

  CHECK(all_homs(FiniteGroup::cyclic(6), s3).size() == 6);
  CHECK(all_homs(s3, s3).size() == 10);
  CHECK(all_homs(FiniteGroup::quaternion8(), FiniteGroup::cyclic(2)).size() ==
        4);
  CHECK(all_homs(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)).size() == 1);
}

namespace {

QuotientTower mod_tower(int top) {
  // Z/top -> ... -> Z/2 halving at each step (top a power of two)
  QuotientTower t;
  for (int n = 2; n <= top; n *= 2) t.levels.push_back(FiniteGroup::cyclic(n));
  for (std::size_t i = 0; i + 1 < t.levels.size(); ++i) {
    int lo = t.levels[i].size();
    int hi = t.levels[i + 1].size();
    std::vector<int> down(hi);
    for (int x = 0; x < hi; ++x) down[x] = x % lo;
    t.down.push_back(down);
  }
  return t;
}

}  // namespace

TEST_CASE("towers validate and project") {
  QuotientTower t = mod_tower(8);
  t.validate();
  CHECK(t.levels.size() == 3);
  CHECK(t.project(2, 0, 7) == 1);
  CHECK(t.project(2, 2, 5) == 5);

  ApproxGroup g = ApproxGroup::tower(mod_tower(8));
  CHECK(g.depth() == 3);
  CHECK(g.level(1).size() == 4);
  CHECK(g.project(2, 1, 6) == 2);
}

TEST_CASE("thick closure is the identity on compatible families") {
  ApproxGroup g = ApproxGroup::tower(mod_tower(8));
  ApproxSubgroup h;
  h.grp = &g;
  h.elems = {{0}, {0, 2}, {0, 2, 4, 6}};  // the even part at each level
  h.validate();
  CHECK(h.transitions_surjective());
  ApproxSubgroup c = thick_closure(h);
  CHECK(c.elems == h.elems);

  ApproxSubgroup bad;
  bad.grp = &g;
  bad.elems = {{0, 1}, {0}, {0}};  // transitions miss the lower level
  CHECK_THROWS_AS(thick_closure(bad), input_error);
}

TEST_CASE("normal thickly closed hull and quotient") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  ApproxGroup g = ApproxGroup::finite(s3);
  int transposition = -1;
  for (int a = 0; a < s3.size(); ++a)
    if (s3.order_of(a) == 2) transposition = a;
  ApproxSubgroup h;
  h.grp = &g;
  h.elems = {{0, transposition}};
  ApproxSubgroup n = smallest_normal_thickly_closed(h);
  CHECK(n.elems[0].size() == 6);  // normal closure of a transposition
  ApproxGroup q = noohi_quotient(g, n);
  CHECK(q.level(0).size() == 1);
}

TEST_CASE("dense image detection over a tower") {
  ApproxGroup g = ApproxGroup::tower(mod_tower(4));
  // generator 1 maps onto every level: dense
  Homomorphism f;
  ApproxGroup zsrc = ApproxGroup::free_discrete(1);
  f.src = &zsrc;
  f.dst = &g;
  f.depth = 2;
  f.maps = {{1}, {1}};
  f.validate();
  CHECK(has_dense_image(f));
  // the doubled generator misses the odd classes at level 0
  Homomorphism f2 = f;
  f2.maps = {{0}, {2}};
  f2.validate();
  CHECK_FALSE(has_dense_image(f2));
}

TEST_CASE("semidirect verification builds each level and checks the relation") {
  auto z3 = std::make_shared<ApproxGroup>(
      ApproxGroup::finite(FiniteGroup::cyclic(3)));
  auto z2 = std::make_shared<ApproxGroup>(
      ApproxGroup::finite(FiniteGroup::cyclic(2)));
  std::vector<std::vector<std::vector<int>>> inv_action = {
      {{0, 1, 2}, {0, 2, 1}}};
  SemidirectReport rep = semidirect_check(*z3, *z2, inv_action);
  CHECK(rep.ok);
  REQUIRE(rep.levels.size() == 1);
  CHECK(rep.levels[0].size() == 6);
  CHECK_FALSE(rep.levels[0].is_abelian());

  std::vector<std::vector<std::vector<int>>> broken = {{{0, 1, 2}, {0, 1, 2}}};
  // the trivial action gives the direct product; still a valid semidirect
  CHECK(semidirect_check(*z3, *z2, broken).ok);
}

TEST_CASE("coset products agree after depth-bounded compatibilization") {
  ApproxGroup g = ApproxGroup::tower(mod_tower(8));
  std::vector<std::vector<int>> family = {{0}, {0, 2}, {0, 2, 4, 6}};
  std::vector<int> v = {0, 4};  // open at the top level
  ClosureConsistencyReport rep =
      quotient_by_closure_consistency(g, family, v, 2);
  CHECK(rep.equal);
  CHECK(rep.product_size_raw == rep.product_size_closed);
}

TEST_CASE("input validation rejects malformed data") {
  CHECK_THROWS_AS(FiniteGroup::cyclic(0), input_error);
  CHECK_THROWS_AS(FiniteGroup::units_mod(1), input_error);
  // a table whose row is not a permutation is not a group
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {"e", "x"}, {0, 1, 1, 1}),
                  input_error);
}
