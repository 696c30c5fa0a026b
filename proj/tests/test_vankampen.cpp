#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "pvk/counterexamples.hpp"
#include "pvk/vankampen.hpp"

using namespace pvk;

namespace {

TwoComplex triangle() {
  TwoComplex cx;
  cx.e0 = {"v0", "v1", "v2"};
  cx.e1 = {{"a", "v1", "v0"}, {"b", "v2", "v1"}, {"c", "v2", "v0"}};
  cx.e2 = {{"f", "b", "c", "a"}};
  cx.validate();
  return cx;
}

Presentation free_presentation(int rank) {
  Presentation p;
  for (int i = 1; i <= rank; ++i)
    p.edge_gens.push_back("x" + std::to_string(i));
  return p;
}

// homomorphisms from (gal x Z) into f, counted from first principles:
// a homomorphism of the product is a homomorphism of gal plus a
// commuting image of the free generator
unsigned long long product_oracle(const FiniteGroup& gal,
                                  const FiniteGroup& f) {
  unsigned long long total = 0;
  for (const std::vector<int>& h : all_homs(gal, f)) {
    std::vector<int> image;
    for (int x : h) image.push_back(x);
    total += centralizer(f, image).size();
  }
  return total;
}

}  // namespace

TEST_CASE("presentation of a triangle with constant data") {
  TwoComplex cx = triangle();
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  GroupData gd = constant_group_data(cx, z2);
  GraphWithTree tree = spanning_tree(cx);
  Presentation p = build_presentation(gd, tree);
  CHECK(p.families.size() == 3);
  CHECK(p.edge_gens.size() == 1);  // rank of the triangle
  // one edge relation per edge per generator, one face relation
  CHECK(p.relations.size() == 3 + 1);
  GroupContext ctx = p.context();
  CHECK(&ctx.at("v0") == &z2);
}

TEST_CASE("hom counting: free groups and direct products") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(count_homs(free_presentation(2), s3) == 36);
  CHECK(count_homs(free_presentation(1), s3) == 6);
  CHECK(count_homs_serial(free_presentation(2), s3) == 36);

  for (const FiniteGroup gal :
       {FiniteGroup::trivial_group(), FiniteGroup::cyclic(2),
        FiniteGroup::symmetric(3)}) {
    Presentation pz = product_with_z_presentation(gal);
    for (const FiniteGroup f :
         {FiniteGroup::cyclic(5), FiniteGroup::symmetric(3),
          FiniteGroup::dihedral(4)}) {
      CHECK(count_homs(pz, f) == product_oracle(gal, f));
    }
  }
}

TEST_CASE("parallel and serial kernels agree") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  TwoComplex cx = triangle();
  GroupData gd = constant_group_data(cx, z2);
  Presentation p = build_presentation(gd, spanning_tree(cx));
  for (const FiniteGroup f :
       {FiniteGroup::cyclic(3), FiniteGroup::symmetric(3),
        FiniteGroup::quaternion8(), FiniteGroup::alternating(4)}) {
    CHECK(count_homs(p, f) == count_homs_serial(p, f));
  }
}

TEST_CASE("budget overruns are reported, not silently truncated") {
  FiniteGroup a4 = FiniteGroup::alternating(4);
  // rank 8 free group against A4: 12^8 assignments exceed a budget of 12^3
  CHECK_THROWS_AS(count_homs(free_presentation(8), a4, 12 * 12 * 12),
                  input_error);
}

TEST_CASE("equivalence observable distinguishes different groups") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  Presentation pz = product_with_z_presentation(z2);
  Presentation free1 = free_presentation(1);
  std::vector<FiniteGroup> tests = {FiniteGroup::cyclic(2),
                                    FiniteGroup::symmetric(3),
                                    FiniteGroup::dihedral(4)};
  std::vector<const FiniteGroup*> ptrs;
  for (const FiniteGroup& t : tests) ptrs.push_back(&t);
  EquivReport same = presentation_equiv(pz, pz, ptrs);
  CHECK(same.equal);
  CHECK(same.lines.size() == tests.size());
  // Z/2 x Z has more homomorphisms into S3 than Z alone
  EquivReport diff = presentation_equiv(pz, free1, ptrs);
  CHECK_FALSE(diff.equal);
}

TEST_CASE("functorial maps carry relations to derivable relations") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  Presentation pz = product_with_z_presentation(z2);
  PresentationMap idmap;
  idmap.family_to["G"] = "G";
  idmap.family_elem_map["G"] = {0, 1};
  idmap.edge_to["z"] = {Atom::edge("z", 1)};
  FunctorialReport rep = functorial_map(pz, pz, idmap);
  CHECK(rep.maps_are_homs);
  CHECK(rep.relations_derivable);
  CHECK_FALSE(rep.inconclusive);

  // sending z to the identity also respects the commutator relation
  PresentationMap collapse = idmap;
  collapse.edge_to["z"] = {};
  CHECK(functorial_map(pz, pz, collapse).relations_derivable);

  // a non-homomorphic family map is rejected
  PresentationMap bad = idmap;
  bad.family_elem_map["G"] = {1, 1};
  CHECK_FALSE(functorial_map(pz, pz, bad).maps_are_homs);
}

TEST_CASE("bounded rewriting recognizes consequences of the relators") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  Presentation pz = product_with_z_presentation(z2);
  GroupContext ctx = pz.context();
  const std::vector<Word>& rel = pz.relations;
  CHECK(rewrite_to_trivial(Word{}, rel, ctx, 1000) == 1);
  CHECK(rewrite_to_trivial(rel[0], rel, ctx, 1000) == 1);
  // a conjugate of a relator rewrites to the empty word
  Word conj = concat(concat(Word{Atom::edge("z", 2)}, rel[0]),
                     Word{Atom::edge("z", -2)});
  CHECK(rewrite_to_trivial(reduce(conj, ctx), rel, ctx, 5000) == 1);
  // a lone generator is not a consequence
  CHECK(rewrite_to_trivial(Word{Atom::vertex("G", 1)}, rel, ctx, 1000) == 0);
}
