#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "pvk/complexes.hpp"
#include "pvk/sampling.hpp"

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

// regular fibers over a triangle glued by fixed group elements
DescentDatum regular_descent(const TwoComplex& cx, const GroupData& gd,
                             const FiniteGroup& g, int ca, int cb, int cc) {
  DescentDatum d;
  d.cx = &cx;
  d.gd = &gd;
  std::vector<std::vector<int>> reg(g.size(), std::vector<int>(g.size()));
  for (int e = 0; e < g.size(); ++e)
    for (int x = 0; x < g.size(); ++x) reg[e][x] = g.mul(e, x);
  for (const std::string& v : cx.e0) {
    d.fiber[v] = g.size();
    d.act[v] = reg;
  }
  d.phi["a"] = reg[ca];
  d.phi["b"] = reg[cb];
  d.phi["c"] = reg[cc];
  return d;
}

}  // namespace

TEST_CASE("complex validation and face vertices") {
  TwoComplex cx = triangle();
  const TwoComplex::Face& f = cx.face("f");
  CHECK(cx.face_vertex(f, 0) == "v0");
  CHECK(cx.face_vertex(f, 1) == "v1");
  CHECK(cx.face_vertex(f, 2) == "v2");
  CHECK(cx.edge("a").d1 == "v0");

  TwoComplex bad = cx;
  bad.e1[0].d0 = "nope";
  CHECK_THROWS_AS(bad.validate(), input_error);
  TwoComplex dup = cx;
  dup.e1.push_back(dup.e1[0]);
  CHECK_THROWS_AS(dup.validate(), input_error);
}

TEST_CASE("spanning tree is deterministic and counts the rank") {
  TwoComplex cx = triangle();
  GraphWithTree t = spanning_tree(cx);
  CHECK(t.tree_edges.size() == 2);
  CHECK(t.pi1_rank() == 1);
  // breadth-first from v0 reaches both neighbours directly, leaving the
  // far edge out
  CHECK(t.in_tree("a"));
  CHECK(t.in_tree("c"));
  CHECK_FALSE(t.in_tree("b"));

  TwoComplex disconnected;
  disconnected.e0 = {"x", "y"};
  CHECK_THROWS_AS(spanning_tree(disconnected), input_error);
}

TEST_CASE("constant group data is valid, tampering is caught") {
  TwoComplex cx = triangle();
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  GroupData gd = constant_group_data(cx, s3);
  CHECK(validate_group_data(gd).ok);

  GroupData broken = gd;
  broken.edge_bnd[{"a", 0}][1] = 0;  // no longer injective nor a hom
  CHECK_FALSE(validate_group_data(broken).ok);
}

TEST_CASE("descent data over a face obeys the triangle cocycle") {
  TwoComplex cx = triangle();
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  GroupData gd = constant_group_data(cx, z4);
  // phi_c must equal phi_a . phi_b over the face: 3 = 1 + 2
  DescentDatum good = regular_descent(cx, gd, z4, 1, 2, 3);
  CHECK(validate_descent(good).ok);
  DescentDatum bad = regular_descent(cx, gd, z4, 1, 2, 0);
  CHECK_FALSE(validate_descent(bad).ok);
  // equivariance breaks when one gluing is not a group translation
  DescentDatum skew = good;
  std::swap(skew.phi["a"][0], skew.phi["a"][1]);
  CHECK_FALSE(validate_descent(skew).ok);
}

TEST_CASE("discretization round trips and stays valid") {
  TwoComplex cx = triangle();
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  GroupData gd = constant_group_data(cx, z4);
  DescentDatum d = regular_descent(cx, gd, z4, 1, 2, 3);
  LcsSystem sys = discretize_descent(d);
  CHECK(validate_lcs(sys).ok);
  DescentDatum back = rebuild_descent(sys);
  CHECK(validate_descent(back).ok);
  CHECK(descent_isomorphic(d, back));
  LcsSystem sys2 = discretize_descent(back);
  CHECK(lcs_isomorphic(sys, sys2));
}

TEST_CASE("isomorphism testing distinguishes gluings") {
  TwoComplex cx = triangle();
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  GroupData gd = constant_group_data(cx, z4);
  DescentDatum d1 = regular_descent(cx, gd, z4, 1, 2, 3);
  // shifting gluings by a coboundary of per-vertex translations is invisible
  DescentDatum d2 = regular_descent(cx, gd, z4, 0, 0, 0);
  CHECK(descent_isomorphic(d1, d2));
  // no relabelling turns the regular fibers into fixed points
  DescentDatum still = d2;
  std::vector<int> id4 = {0, 1, 2, 3};
  for (const std::string& v : cx.e0) still.act[v].assign(4, id4);
  REQUIRE(validate_descent(still).ok);
  CHECK_FALSE(descent_isomorphic(d1, still));
  CHECK(descent_isomorphic(d1, d1));
}

TEST_CASE("q functor and decomposition agree on components") {
  TwoComplex cx = triangle();
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  GroupData gd = constant_group_data(cx, z2);
  // two disjoint trivial-action points per vertex, all gluings identity:
  // two components, each landing in its own Q-orbit
  DescentDatum d;
  d.cx = &cx;
  d.gd = &gd;
  std::vector<std::vector<int>> trivial_act = {{0, 1}, {0, 1}};
  for (const std::string& v : cx.e0) {
    d.fiber[v] = 2;
    d.act[v] = trivial_act;
  }
  for (const auto& e : cx.e1) d.phi[e.id] = {0, 1};
  REQUIRE(validate_descent(d).ok);
  LcsSystem sys = discretize_descent(d);
  GraphWithTree tree = spanning_tree(cx);
  QAction q = q_functor(sys, tree);
  SystemDecomposition dec = decompose_system(sys);
  CHECK(dec.n_components == 2);
  CHECK(q.n_components == 2);
  // the vertex groups act trivially and the loop edge fixes both classes
  for (const auto& [eid, row] : q.edge_act)
    for (int cpt = 0; cpt < q.n_components; ++cpt) CHECK(row[cpt] == cpt);
}

TEST_CASE("product complex and the ordered round trip") {
  TwoComplex pc = product_complex(3);
  CHECK(pc.e0.size() == 3);
  CHECK(pc.e1.size() == 9);
  CHECK(pc.e2.size() == 27);

  FiniteGroup z4 = FiniteGroup::cyclic(4);
  GroupData gd = constant_group_data(pc, z4);
  std::vector<std::vector<int>> reg(4, std::vector<int>(4));
  for (int e = 0; e < 4; ++e)
    for (int x = 0; x < 4; ++x) reg[e][x] = z4.mul(e, x);
  DescentDatum full;
  full.cx = &pc;
  full.gd = &gd;
  int zc[3] = {1, 3, 2};
  for (const std::string& v : pc.e0) {
    full.fiber[v] = 4;
    full.act[v] = reg;
  }
  for (const auto& e : pc.e1) {
    int i = e.d1[0] - '0', j = e.d0[0] - '0';
    full.phi[e.id] = reg[z4.mul(zc[i], z4.inv(zc[j]))];
  }
  REQUIRE(validate_descent(full).ok);
  OrderedDatum od = ordered_reduction(full);
  CHECK(od.phi.size() == 3);  // strictly increasing pairs of three indices
  DescentDatum rec = ordered_reconstruction(od);
  CHECK(descent_isomorphic(full, rec));

  // breaking one increasing gluing must surface in the cocycle check
  OrderedDatum broken = od;
  broken.phi.begin()->second = reg[0];
  CHECK_THROWS_AS(ordered_reconstruction(broken), input_error);
}

TEST_CASE("random systems survive fiber relabelling") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    auto inst = sample_descent_instance(seed);
    REQUIRE(validate_descent(inst->descent).ok);
    LcsSystem sys = discretize_descent(inst->descent);
    REQUIRE(validate_lcs(sys).ok);
    Sampler rng(seed + 1);
    shuffle_lcs_fibers(sys, rng);
    CHECK(validate_lcs(sys).ok);
  }
}
