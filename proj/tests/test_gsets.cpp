#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "pvk/gsets.hpp"

using namespace pvk;

namespace {

std::vector<int> subgroup_of_order(const FiniteGroup& g, int order,
                                   bool normal_only = false) {
  for (const auto& h : all_subgroups(g))
    if (static_cast<int>(h.size()) == order &&
        (!normal_only || is_normal(g, h)))
      return h;
  REQUIRE(false);
  return {};
}

std::vector<int> trivial_hom(const FiniteGroup& g) {
  return std::vector<int>(g.size(), 0);
}

std::vector<int> identity_hom(const FiniteGroup& g) {
  std::vector<int> id(g.size());
  for (int i = 0; i < g.size(); ++i) id[i] = i;
  return id;
}

// some injective homomorphism src -> dst (found by enumeration)
std::vector<int> embedding_hom(const FiniteGroup& src, const FiniteGroup& dst) {
  for (const auto& h : all_homs(src, dst)) {
    std::vector<char> seen(dst.size(), 0);
    bool inj = true;
    for (int x : h) {
      if (seen[x]) inj = false;
      seen[x] = 1;
    }
    if (inj) return h;
  }
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("coset actions and orbits") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  GSet regular = coset_action(s3, {s3.identity()});
  CHECK(regular.n_points == 6);
  regular.validate();
  CHECK(regular.total());
  CHECK(is_transitive(regular));
  CHECK_FALSE(has_fixed_point(regular));

  GSet cosets = coset_action(s3, subgroup_of_order(s3, 2));
  CHECK(cosets.n_points == 3);
  CHECK(orbits(cosets).blocks.size() == 1);
}

TEST_CASE("window edges mark truncated orbits") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  GSet x;
  x.grp = &z2;
  x.n_points = 3;
  // the generator swaps 0 and 1 and pushes 2 off the window
  x.act = {{0, 1, 2}, {1, 0, GSet::kWindowEdge}};
  x.validate();
  CHECK_FALSE(x.total());
  OrbitDecomposition od = orbits(x);
  REQUIRE(od.blocks.size() == 2);
  for (std::size_t i = 0; i < od.blocks.size(); ++i) {
    bool holds_edge_point = false;
    for (int p : od.blocks[i]) holds_edge_point |= p == 2;
    CHECK(od.truncated[i] == holds_edge_point);
  }
}

TEST_CASE("pullback along a homomorphism") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  std::vector<int> h = embedding_hom(z3, s3);
  GSet regular = coset_action(s3, {s3.identity()});
  GSet pulled = pullback(z3, h, regular);
  pulled.validate();
  CHECK(pulled.n_points == 6);
  CHECK(orbits(pulled).blocks.size() == 2);  // index of A3
  CHECK_FALSE(is_completely_decomposed(pulled));
  GSet fixed = pullback(z3, trivial_hom(z3), regular);
  CHECK(is_completely_decomposed(fixed));
}

TEST_CASE("equivariant map search") {
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  GSet regular = coset_action(z4, {z4.identity()});
  GSet halves = coset_action(z4, subgroup_of_order(z4, 2));
  CHECK(exists_equivariant_surjection(regular, halves));
  CHECK_FALSE(exists_equivariant_injection(regular, halves));
  CHECK(exists_equivariant_injection(halves, regular) ==
        false);  // no section of a strict quotient of the regular orbit
  CHECK(isomorphic_gsets(regular, regular));
  CHECK_FALSE(isomorphic_gsets(regular, halves));
}

TEST_CASE("dictionary: embeddings") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  DictReport r = check_embedding(z3, s3, embedding_hom(z3, s3), 6);
  CHECK(r.group_side);
  CHECK(r.agree());
  r = check_embedding(z3, s3, trivial_hom(z3), 6);
  CHECK_FALSE(r.group_side);
  CHECK(r.agree());
  // a surjection with kernel is not an embedding either
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  std::vector<int> mod2 = {0, 1, 0, 1, 0, 1};
  REQUIRE(is_hom(z6, z2, mod2));
  r = check_embedding(z6, z2, mod2, 6);
  CHECK_FALSE(r.group_side);
  CHECK(r.agree());
}

TEST_CASE("dictionary: dense image against connectedness") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  DictReport r = check_dense_iff_connected(s3, s3, identity_hom(s3), 6);
  CHECK(r.group_side);
  CHECK(r.agree());
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  r = check_dense_iff_connected(z3, s3, embedding_hom(z3, s3), 6);
  CHECK_FALSE(r.group_side);  // a proper subgroup is not dense at this level
  CHECK(r.agree());
}

TEST_CASE("dictionary: normal image against decomposed fixed-point pullbacks") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  DictReport r = check_normal_image(z3, s3, embedding_hom(z3, s3), 6);
  CHECK(r.group_side);  // the image is the alternating part
  CHECK(r.agree());
  r = check_normal_image(z2, s3, embedding_hom(z2, s3), 6);
  CHECK_FALSE(r.group_side);  // a two-element subgroup of S3 is not normal
  CHECK(r.agree());
}

TEST_CASE("dictionary: kernel exactness") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  std::vector<int> a3 = subgroup_of_order(s3, 3, true);
  QuotientResult q = quotient(s3, a3);
  // Z/3 -> S3 -> S3/A3: exact at S3
  std::vector<int> incl = embedding_hom(z3, s3);
  DictReport r = check_kernel_exactness(z3, s3, q.group, incl, q.proj, 6);
  CHECK(r.group_side);
  CHECK(r.agree());
  // the trivial group in place of the kernel destroys exactness
  FiniteGroup triv = FiniteGroup::trivial_group();
  r = check_kernel_exactness(triv, s3, q.group, trivial_hom(triv), q.proj, 6);
  CHECK_FALSE(r.group_side);
  CHECK(r.agree());
}

TEST_CASE("commuting families make a product action") {
  // left and right translation of Z/3 on itself commute
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  std::vector<std::vector<int>> left(3, std::vector<int>(3));
  std::vector<std::vector<int>> right(3, std::vector<int>(3));
  for (int g = 0; g < 3; ++g)
    for (int x = 0; x < 3; ++x) {
      left[g][x] = z3.mul(g, x);
      right[g][x] = z3.mul(x, z3.inv(g));
    }
  CHECK(product_commutation(left, right, 3));
  // two different transpositions of three points do not commute
  std::vector<std::vector<int>> swap01 = {{1, 0, 2}};
  std::vector<std::vector<int>> swap12 = {{0, 2, 1}};
  CHECK_FALSE(product_commutation(swap01, swap12, 3));
}
