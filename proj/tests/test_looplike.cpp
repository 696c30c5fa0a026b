#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "pvk/looplike.hpp"
#include "pvk/sampling.hpp"

using namespace pvk;

TEST_CASE("letter distance on a two-vertex tree") {
  auto demo = build_looplike_demo(5);
  const DistContext& dctx = *demo->dctx;
  CHECK(dctx.tree_dist("v", "w") == 1);
  CHECK(dctx.tree_path("v", "w") ==
        std::vector<std::string>{"v", "w"});

  Atom gv = Atom::vertex("v", 1);
  Atom gw = Atom::vertex("w", 1);
  Atom e = Atom::edge("e", 1);        // runs from v to w
  Atom einv = Atom::edge("e", -1);
  CHECK(dist(gv, gv, dctx) == 0);
  CHECK(dist(gv, gw, dctx) == 1);
  // a positive edge letter is entered at its origin and left at its target
  CHECK(dist(gv, e, dctx) == 0);
  CHECK(dist(e, gw, dctx) == 1);
  CHECK(dist(e, gv, dctx) == 2);
  CHECK(dist(gw, einv, dctx) == 0);   // the inverse letter enters at the target
  CHECK(dist(e, einv, dctx) == 1);
  CHECK(dist(e, e, dctx) == 2);
  // distance needs plain letters
  CHECK_THROWS_AS(dist(Atom::edge("e", 2), gv, dctx), input_error);
  CHECK_THROWS_AS(dist(Atom::trivial_at_vertex("v"), gv, dctx), input_error);
}

TEST_CASE("word weight sums adjacent distances") {
  auto demo = build_looplike_demo(5);
  const DistContext& dctx = *demo->dctx;
  CHECK(n_of_word({Atom::vertex("v", 1)}, dctx) == 1);
  Word w = {Atom::vertex("v", 2), Atom::edge("e", 1), Atom::vertex("w", 7)};
  CHECK(n_of_word(w, dctx) == 2);
  Word across = {Atom::vertex("w", 6), Atom::vertex("v", 3),
                 Atom::vertex("w", 3)};
  CHECK(n_of_word(across, dctx) == 3);
  CHECK_THROWS_AS(n_of_word({Atom::vertex("v", 1), Atom::vertex("w", 1)}, dctx),
                  input_error);
}

TEST_CASE("test set family validates and rejects broken transitions") {
  auto demo = build_looplike_demo(4);
  CHECK(demo->fam.validate(demo->ctx).ok);
  CHECK(demo->fam.points("v", 1) == 3);
  CHECK(demo->fam.points("v", 2) == 9);
  CHECK(demo->fam.edge_modulus() == 12);  // lcm(1..4)
  CHECK(demo->fam.vertex_trivial("v", 1, 3));
  CHECK_FALSE(demo->fam.vertex_trivial("v", 2, 3));

  TestSetFamily broken = demo->fam;
  broken.down[{"v", 1}][0] = 1;  // no longer equivariant
  CHECK_FALSE(broken.validate(demo->ctx).ok);
  TestSetFamily gap = demo->fam;
  gap.vact.erase({"w", 2});
  CHECK_FALSE(gap.validate(demo->ctx).ok);
}

TEST_CASE("the mirror predicate") {
  auto demo = build_looplike_demo(5);
  const GroupContext& ctx = demo->ctx;
  const DistContext& dctx = *demo->dctx;
  // weight 3, mirror homes w-v-w, products 6+3 = 0 mod 9 and middle 3
  // trivial mod 3... but the middle must be trivial at level 3, so only
  // multiples of 9 pass in the middle
  Word almost = {Atom::vertex("w", 6), Atom::vertex("v", 3),
                 Atom::vertex("w", 3)};
  LooplikeVerdict v = is_looplike(almost, demo->fam, ctx, dctx);
  CHECK_FALSE(v.value);
  CHECK_FALSE(v.inconclusive);

  Word single = {Atom::vertex("v", 3)};
  CHECK(is_looplike(single, demo->fam, ctx, dctx).value);
  Word nontrivial = {Atom::vertex("v", 1)};
  CHECK_FALSE(is_looplike(nontrivial, demo->fam, ctx, dctx).value);

  // an edge-mirrored word has weight at least two, so its middle letter
  // must be trivial on the deeper set; 3 only clears the level-1 set
  Word loop = {Atom::edge("e", 1), Atom::vertex("w", 3), Atom::edge("e", -1)};
  LooplikeVerdict lv = is_looplike(loop, demo->fam, ctx, dctx);
  CHECK(lv.n == 2);
  CHECK_FALSE(lv.value);
  // mismatched mirror homes fail outright
  Word mixed = {Atom::edge("e", 1), Atom::vertex("w", 0), Atom::edge("t", -1)};
  CHECK_FALSE(is_looplike(plain_form(mixed, ctx), demo->fam, ctx,
                          dctx).value);

  // weight beyond the family depth is inconclusive, not false
  auto shallow = build_looplike_demo(3);
  Word wide = {Atom::vertex("v", 3), Atom::vertex("w", 3),
               Atom::vertex("v", 3), Atom::vertex("w", 3),
               Atom::vertex("v", 3)};
  LooplikeVerdict sv =
      is_looplike(wide, shallow->fam, shallow->ctx, *shallow->dctx);
  CHECK(sv.inconclusive);
}

TEST_CASE("membership certificates factor through looplike chunks") {
  auto demo = build_looplike_demo(5);
  const GroupContext& ctx = demo->ctx;
  const DistContext& dctx = *demo->dctx;
  Word member = {Atom::vertex("w", 6), Atom::vertex("v", 3),
                 Atom::vertex("w", 3)};
  VCertificate cert = v_membership_bounded(member, demo->fam, ctx, dctx);
  CHECK(cert.found);
  CHECK(cert.exhausted);
  Word glued;
  for (const Word& f : cert.factors) {
    CHECK(is_looplike(f, demo->fam, ctx, dctx).value);
    glued = concat(glued, f);
  }
  CHECK(words_equal(glued, member, ctx));

  Word non_member = {Atom::vertex("v", 1)};
  CHECK_FALSE(v_membership_bounded(non_member, demo->fam, ctx, dctx).found);
  CHECK(v_membership_bounded(Word{}, demo->fam, ctx, dctx).found);
  // a tiny step bound reports exhaustion instead of deciding
  Word longish = {Atom::vertex("v", 3), Atom::vertex("w", 3),
                  Atom::vertex("v", 6)};
  VCertificate capped =
      v_membership_bounded(longish, demo->fam, ctx, dctx, 1);
  if (!capped.found) CHECK_FALSE(capped.exhausted);
}

TEST_CASE("based actions apply words right to left") {
  auto demo = build_looplike_demo(5);
  Word w = {Atom::vertex("v", 1), Atom::edge("e", 1)};
  // rightmost first: edge +1 then vertex +1
  CHECK(apply_word(w, demo->model, 0) == 2);
  CHECK(apply_word({Atom::edge("e", -1)}, demo->model, 0) == 2);
  CHECK(fixes_base({Atom::vertex("v", 3)}, demo->model));
  CHECK_FALSE(fixes_base({Atom::vertex("v", 1)}, demo->model));
}

TEST_CASE("correction data validates; cocycle breakage is caught") {
  auto demo = build_looplike_demo(5);
  CHECK(demo->eta.validate(demo->ctx).ok);
  EtaData broken = demo->eta;
  broken.delta[{"e", 1}] = (broken.delta[{"e", 1}] + 1) % 9;
  CHECK_FALSE(broken.validate(demo->ctx).ok);
  EtaData skew = demo->eta;
  skew.gal_conj["v"][1][1] = 0;  // not an automorphism any more
  CHECK_FALSE(skew.validate(demo->ctx).ok);
}

TEST_CASE("eta transport composes along the tree and inverts backwards") {
  auto demo = build_looplike_demo(5);
  const GroupContext& ctx = demo->ctx;
  const DistContext& dctx = *demo->dctx;
  for (int s = 0; s < demo->gal.size(); ++s) {
    Word there = demo->eta.eta_path("v", "w", s, ctx, dctx);
    Word back = demo->eta.eta_path("w", "v", s, ctx, dctx);
    CHECK(words_equal(concat(there, back), Word{}, ctx));
    CHECK(demo->eta.eta_path("v", "v", s, ctx, dctx).empty());
  }
}

TEST_CASE("the identity Galois element acts as the identity on words") {
  auto demo = build_looplike_demo(5);
  const GroupContext& ctx = demo->ctx;
  for (const Word& w : demo->samples) {
    Word img = sigma_action(demo->gal.identity(), "v", w, demo->eta, ctx,
                            *demo->dctx);
    CHECK(words_equal(img, w, ctx));
  }
}

TEST_CASE("composition and base-change identities hold on the demo") {
  auto demo = build_looplike_demo(4);
  PhiReport rep = verify_phi_identities(demo->eta, demo->ctx, *demo->dctx,
                                        demo->samples, demo->cx.e0);
  CHECK(rep.ok);
  CHECK(rep.checks > 0);

  // breaking one conjugation row must surface as a failed identity
  EtaData broken = demo->eta;
  std::swap(broken.gal_conj["w"][1], broken.gal_conj["w"][2]);
  PhiReport bad = verify_phi_identities(broken, demo->ctx, *demo->dctx,
                                        demo->samples, demo->cx.e0);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("relation stability on the demo and on a faced complex") {
  auto demo = build_looplike_demo(4);
  StabilityReport st =
      verify_relation_stability(demo->gd, demo->tree, demo->eta,
                                demo->arranged, "v");
  CHECK(st.r1_ok);
  CHECK(st.r2_ok);
  CHECK_FALSE(st.inconclusive);

  // a triangle with a face, trivial Galois level: the action is the
  // identity and every relation maps to itself
  TwoComplex cx;
  cx.e0 = {"v0", "v1", "v2"};
  cx.e1 = {{"a", "v1", "v0"}, {"b", "v2", "v1"}, {"c", "v2", "v0"}};
  cx.e2 = {{"f", "b", "c", "a"}};
  cx.validate();
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  GroupData gd = constant_group_data(cx, z4);
  GraphWithTree tree = spanning_tree(cx);
  FiniteGroup triv = FiniteGroup::trivial_group();
  EtaData eta;
  eta.tree = &tree;
  eta.gal = &triv;
  std::vector<int> id4 = {0, 1, 2, 3};
  for (const std::string& v : cx.e0) eta.gal_conj[v] = {id4};
  for (const auto& e : cx.e1) {
    eta.delta[{e.id, 0}] = 0;
    eta.theta[{e.id, 0}] = 0;
  }
  GroupContext ctx;
  for (const std::string& v : cx.e0) ctx.groups[v] = &z4;
  REQUIRE(eta.validate(ctx).ok);
  StabilityReport st2 = verify_relation_stability(gd, tree, eta, {0}, "v0");
  CHECK(st2.r1_ok);
  CHECK(st2.r2_ok);
}

TEST_CASE("the bundled looplike suite is clean") {
  SuiteReport rep = run_looplike_suite(4);
  CHECK(rep.failed == 0);
  CHECK(rep.run > 10);
}
