#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "pvk/json_io.hpp"

using namespace pvk;

TEST_CASE("groups resolve from compact names") {
  CHECK(group_by_name("1").size() == 1);
  CHECK(group_by_name("triv").size() == 1);
  CHECK(group_by_name("Z/6").size() == 6);
  CHECK(group_by_name("D4").size() == 8);
  CHECK(group_by_name("S4").size() == 24);
  CHECK(group_by_name("A4").size() == 12);
  CHECK(group_by_name("Q8").size() == 8);
  CHECK(group_by_name("U(9)").size() == 6);
  CHECK_FALSE(group_by_name("S3").is_abelian());
  CHECK_THROWS_AS(group_by_name("Z/0"), input_error);
  CHECK_THROWS_AS(group_by_name("E8"), input_error);
}

TEST_CASE("explicit multiplication tables round through json") {
  json j = {{"name", "K4"},
            {"elements", {"e", "a", "b", "c"}},
            {"table",
             {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0}}};
  FiniteGroup k4 = group_from_json(j);
  CHECK(k4.size() == 4);
  CHECK(k4.is_abelian());
  CHECK(k4.elem_name(3) == "c");
  json broken = j;
  broken["table"][5] = 5;  // row of a no longer a permutation
  CHECK_THROWS_AS(group_from_json(broken), input_error);
  CHECK(group_from_json(json("S3")).size() == 6);
}

TEST_CASE("towers parse with ascending levels") {
  json j = {{"levels", {"Z/2", "Z/4"}},
            {"transitions",
             {{{"from_level", 1}, {"mapping", {0, 1, 0, 1}}}}}};
  QuotientTower t = tower_from_json(j);
  CHECK(t.levels.size() == 2);
  CHECK(t.project(1, 0, 3) == 1);
  json bad = j;
  bad["transitions"][0]["mapping"] = {0, 0, 0, 0};
  CHECK_THROWS_AS(tower_from_json(bad), input_error);
}

TEST_CASE("words round trip through their json form") {
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  GroupContext ctx;
  ctx.groups["v"] = &z4;
  json j = json::array({{{"kind", "vertex"}, {"group", "v"}, {"elem", 3}},
                        {{"kind", "edge"}, {"edge", "e"}, {"exp", -2}},
                        {{"kind", "trivial"}, {"group", "v"}}});
  Word w = word_from_json(j, ctx);
  REQUIRE(w.size() == 3);
  CHECK(w[0].elem == 3);
  CHECK(w[1].exp == -2);
  CHECK(word_from_json(word_to_json(w, ctx), ctx) == w);
  json bad = json::array({{{"kind", "vertex"}, {"group", "v"}, {"elem", 9}}});
  CHECK_THROWS_AS(word_from_json(bad, ctx), input_error);
}

TEST_CASE("complexes and bundled group data parse with defaults") {
  json cj = {{"E0", {"v", "w"}},
             {"E1",
              {{{"id", "t"}, {"d0", "w"}, {"d1", "v"}},
               {{"id", "e"}, {"d0", "w"}, {"d1", "v"}}}},
             {"E2", json::array()}};
  TwoComplex cx = complex_from_json(cj);
  CHECK(cx.e0.size() == 2);
  CHECK(cx.edge("e").d1 == "v");

  json gj = {{"complex", cj}, {"constant_group", "Z/3"}};
  LoadedGroupData lg = group_data_from_json(gj);
  CHECK(validate_group_data(lg.gd).ok);
  CHECK(lg.gd.group_at("v").size() == 3);

  // a non-homomorphic boundary map parses but fails the separate validation
  json broken = gj;
  broken["edge_bnd"] = {{"e/0", {0, 0, 1}}};
  LoadedGroupData lb = group_data_from_json(broken);
  CHECK_FALSE(validate_group_data(lb.gd).ok);
  json wrong_len = gj;
  wrong_len["edge_bnd"] = {{"e/0", {0, 1}}};
  CHECK_THROWS_AS(group_data_from_json(wrong_len), input_error);
  json missing = {{"constant_group", "Z/3"}};
  CHECK_THROWS(group_data_from_json(missing));
}

TEST_CASE("presentations round trip") {
  json pj = {{"families", {{{"name", "G"}, {"group", "Z/2"}}}},
             {"edges", {"z"}},
             {"relations",
              json::array({json::array(
                  {{{"kind", "vertex"}, {"group", "G"}, {"elem", 1}},
                   {{"kind", "edge"}, {"edge", "z"}, {"exp", 1}},
                   {{"kind", "vertex"}, {"group", "G"}, {"elem", 1}},
                   {{"kind", "edge"}, {"edge", "z"}, {"exp", -1}}})})}};
  LoadedPresentation lp = presentation_from_json(pj);
  CHECK(lp.pres.families.size() == 1);
  CHECK(lp.pres.relations.size() == 1);
  LoadedPresentation again = presentation_from_json(presentation_to_json(lp.pres));
  CHECK(again.pres.edge_gens == lp.pres.edge_gens);
  CHECK(again.pres.relations == lp.pres.relations);
}

TEST_CASE("gsets close under the generators when parsed") {
  json gj = {{"group", "Z/2"},
             {"points", {"p0", "p1", "p2"}},
             {"action",
              {{"1", {{"p0", "p1"}, {"p1", "p0"}, {"p2", nullptr}}}}}};
  LoadedGSet lg = gset_from_json(gj);
  lg.gs.validate();
  CHECK(lg.gs.n_points == 3);
  CHECK(lg.gs.act[1][2] == GSet::kWindowEdge);
  CHECK(lg.gs.act[1][0] == 1);
  json bad = gj;
  bad["action"]["1"]["p0"] = "zz";
  CHECK_THROWS_AS(gset_from_json(bad), input_error);
  json sparse = gj;
  sparse["action"].erase("1");  // only the identity: Z/2 is not generated
  CHECK_THROWS_AS(gset_from_json(sparse), input_error);
}

TEST_CASE("scalars round trip including the zero") {
  PadicScalar s = PadicScalar::from_rational(3, 6, 2, 9);
  PadicScalar back = scalar_from_json(scalar_to_json(s));
  CHECK(padic_eq(s, back));
  CHECK(back.val == -2);
  PadicScalar z = scalar_from_json(scalar_to_json(PadicScalar::zero_value(5, 4)));
  CHECK(z.is_zero());
  CHECK_THROWS(scalar_from_json(json{{"l", 3}}));
  json nonunit = {{"l", 3}, {"prec", 4}, {"unit", 6}, {"val", 0}};
  CHECK_THROWS_AS(scalar_from_json(nonunit), input_error);
}
