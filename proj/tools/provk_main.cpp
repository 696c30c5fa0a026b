// Command-line front end: load the JSON schemas, run the property suites
// and the worked counterexamples, emit text or JSON reports.
//
// Exit codes: 0 all checked properties hold, 1 a property is violated,
// 2 input or schema error, 3 inconclusive (a budget or window ran out).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pvk/counterexamples.hpp"
#include "pvk/json_io.hpp"
#include "pvk/sampling.hpp"

using nlohmann::json;
using namespace pvk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInput = 2;
constexpr int kExitInconclusive = 3;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw input_error(path + ": " + e.what());
  }
  return j;
}

struct Report {
  json body;
  bool as_json = false;

  void set(const std::string& key, const json& val) { body[key] = val; }
  void emit() const {
    if (as_json) {
      std::cout << body.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : body.items()) {
      if (v.is_string())
        std::cout << k << ": " << v.get<std::string>() << "\n";
      else
        std::cout << k << ": " << v.dump() << "\n";
    }
  }
};

int suite_exit(const SuiteReport& r) {
  if (r.failed > 0) return kExitViolated;
  if (r.skipped > 0) return kExitInconclusive;
  return kExitOk;
}

void fill_suite(Report& rep, const SuiteReport& r) {
  rep.set("checks_run", r.run);
  rep.set("checks_failed", r.failed);
  rep.set("checks_skipped", r.skipped);
  if (!r.failures.empty()) rep.set("failures", r.failures);
}

std::vector<FiniteGroup> parse_group_list(const std::string& csv) {
  std::vector<FiniteGroup> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(group_by_name(item));
  }
  if (out.empty()) throw input_error("empty test group list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"provk: finite-level computations for glued group data"};
  app.require_subcommand(1);
  app.fallthrough();  // allow the global --format after a subcommand name

  std::string format = "text";
  app.add_option("--format", format, "output format: text | json")
      ->check(CLI::IsMember({"text", "json"}));

  // ---- present ----
  auto* present = app.add_subcommand(
      "present", "build the glued presentation from a group-data file");
  std::string present_file;
  present->add_option("file", present_file, "group data JSON")->required();

  // ---- homcount ----
  auto* homcount = app.add_subcommand(
      "homcount", "count homomorphisms of a presentation into a test group");
  std::string hc_file, hc_group = "S3";
  unsigned long long hc_budget = 1ull << 26;
  homcount->add_option("file", hc_file, "presentation JSON")->required();
  homcount->add_option("--group", hc_group, "test group spec");
  homcount->add_option("--budget", hc_budget, "assignment budget")
      ->check(CLI::PositiveNumber);

  // ---- equiv ----
  auto* equiv = app.add_subcommand(
      "equiv", "compare two presentations by homomorphism counts");
  std::string eq_a, eq_b, eq_tests = "Z/2,Z/3,Z/4,S3,D4";
  unsigned long long eq_budget = 1ull << 26;
  equiv->add_option("fileA", eq_a, "first presentation JSON")->required();
  equiv->add_option("fileB", eq_b, "second presentation JSON")->required();
  equiv->add_option("--tests", eq_tests, "comma-separated test groups");
  equiv->add_option("--budget", eq_budget, "assignment budget")
      ->check(CLI::PositiveNumber);

  // ---- dict-check ----
  auto* dict = app.add_subcommand(
      "dict-check", "dictionary between homomorphisms and pulled-back actions");
  std::uint64_t dict_seed = 1;
  // the dictionary is only exact when the catalog bound reaches the
  // largest group order in play
  int dict_instances = 200, dict_order = 24, dict_bound = 24;
  dict->add_option("--seed", dict_seed, "sampling seed");
  dict->add_option("--instances", dict_instances, "minimum checks to run")
      ->check(CLI::PositiveNumber);
  dict->add_option("--catalog-bound", dict_bound,
                   "index bound for the action catalogs")
      ->check(CLI::PositiveNumber);
  dict->add_option("--max-order", dict_order, "largest corpus group order")
      ->check(CLI::PositiveNumber);

  // ---- lcs ----
  auto* lcs = app.add_subcommand(
      "lcs", "validate/decompose sampled locally constant systems");
  std::uint64_t lcs_seed = 1;
  int lcs_count = 100;
  lcs->add_option("--seed", lcs_seed, "sampling seed");
  lcs->add_option("--count", lcs_count, "instances")->check(CLI::PositiveNumber);

  // ---- descent ----
  auto* descent = app.add_subcommand(
      "descent", "round-trip sampled descent data through discretization");
  std::uint64_t desc_seed = 1;
  int desc_count = 100;
  descent->add_option("--seed", desc_seed, "sampling seed");
  descent->add_option("--count", desc_count, "instances")
      ->check(CLI::PositiveNumber);

  // ---- looplike ----
  auto* looplike = app.add_subcommand(
      "looplike", "word weights, membership certificates, Galois word action");
  int loop_depth = 5;
  looplike->add_option("--depth", loop_depth, "test set family depth")
      ->check(CLI::Range(3, 12));

  // ---- counterexample ----
  auto* cex = app.add_subcommand("counterexample", "the worked obstructions");
  cex->require_subcommand(1);

  auto* picture = cex->add_subcommand(
      "picture", "staggered interval actions and the Frobenius obstruction");
  long long pic_ell = 3, pic_q = 19;
  int pic_depth = 5;
  picture->add_option("--ell", pic_ell, "odd prime");
  picture->add_option("--q", pic_q, "Frobenius multiplier");
  picture->add_option("--depth", pic_depth, "interval levels generated")
      ->check(CLI::Range(3, 9));

  auto* matrices = cex->add_subcommand(
      "matrices", "Borel coset obstruction in truncated matrices");
  long long mat_ell = 3, mat_p = 5;
  int mat_n = 2, mat_prec = 12;
  matrices->add_option("--ell", mat_ell, "odd prime");
  matrices->add_option("--p", mat_p, "twisting exponent");
  matrices->add_option("--n", mat_n, "conjugation depth")
      ->check(CLI::Range(0, 12));
  matrices->add_option("--prec", mat_prec, "working precision")
      ->check(CLI::Range(2, 30));

  auto* nodal = cex->add_subcommand(
      "nodal", "nodal-curve presentation against the direct product");
  std::string nodal_gal = "Z/2";
  unsigned long long nodal_budget = 1ull << 26;
  nodal->add_option("--gal", nodal_gal, "Galois level spec");
  nodal->add_option("--budget", nodal_budget, "assignment budget")
      ->check(CLI::PositiveNumber);

  auto* wedge = cex->add_subcommand(
      "wedge", "wedge gluing over a shared Galois level");
  std::string wedge_gal = "S3";
  int wedge_loops = 2;
  wedge->add_option("--gal", wedge_gal, "Galois level spec");
  wedge->add_option("--loops", wedge_loops, "free loop letters")
      ->check(CLI::Range(0, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  Report rep;
  rep.as_json = format == "json";

  try {
    if (*present) {
      LoadedGroupData lg = group_data_from_json(load_json_file(present_file));
      ValidationReport vr = validate_group_data(lg.gd);
      if (!vr.ok) throw input_error("group data invalid: " + vr.issues.front());
      GraphWithTree tree = spanning_tree(lg.cx);
      Presentation p = build_presentation(lg.gd, tree);
      rep.set("input", present_file);
      rep.set("tree_edges", tree.tree_edges);
      rep.set("rank", tree.pi1_rank());
      rep.set("presentation", presentation_to_json(p));
      rep.emit();
      return kExitOk;
    }

    if (*homcount) {
      LoadedPresentation lp = presentation_from_json(load_json_file(hc_file));
      FiniteGroup f = group_by_name(hc_group);
      unsigned long long n = count_homs(lp.pres, f, hc_budget);
      rep.set("input", hc_file);
      rep.set("group", f.name());
      rep.set("count", n);
      rep.emit();
      return kExitOk;
    }

    if (*equiv) {
      LoadedPresentation a = presentation_from_json(load_json_file(eq_a));
      LoadedPresentation b = presentation_from_json(load_json_file(eq_b));
      std::vector<FiniteGroup> tests = parse_group_list(eq_tests);
      std::vector<const FiniteGroup*> ptrs;
      for (const FiniteGroup& t : tests) ptrs.push_back(&t);
      EquivReport er = presentation_equiv(a.pres, b.pres, ptrs, eq_budget);
      rep.set("inputs", json::array({eq_a, eq_b}));
      rep.set("counts", er.lines);
      rep.set("equal", er.equal);
      rep.emit();
      return er.equal ? kExitOk : kExitViolated;
    }

    if (*dict) {
      SuiteReport r = run_dict_suite(dict_seed, dict_instances, dict_order,
                                     dict_bound);
      rep.set("seed", dict_seed);
      fill_suite(rep, r);
      rep.emit();
      return suite_exit(r);
    }

    if (*lcs) {
      SuiteReport r = run_lcs_suite(lcs_seed, lcs_count);
      rep.set("seed", lcs_seed);
      fill_suite(rep, r);
      rep.emit();
      return suite_exit(r);
    }

    if (*descent) {
      SuiteReport r = run_descent_suite(desc_seed, desc_count);
      rep.set("seed", desc_seed);
      fill_suite(rep, r);
      rep.emit();
      return suite_exit(r);
    }

    if (*looplike) {
      SuiteReport r = run_looplike_suite(loop_depth);
      rep.set("depth", loop_depth);
      fill_suite(rep, r);
      rep.emit();
      return suite_exit(r);
    }

    if (*picture) {
      IntervalGSet s = build_interval_gset(pic_ell, pic_depth);
      ContradictionReport cr = frobenius_obstruction(s, pic_q);
      rep.set("ell", pic_ell);
      rep.set("q", pic_q);
      rep.set("window", s.window);
      rep.set("q_used", cr.q_used);
      rep.set("level_m", cr.m);
      if (cr.inconclusive) {
        rep.set("verdict", "consistent within window: " + cr.detail);
        rep.emit();
        return kExitInconclusive;
      }
      rep.set("clash_point", cr.point);
      rep.set("label_via_b", cr.label_via_b);
      rep.set("label_via_a", cr.label_via_a);
      rep.set("verdict", cr.conflict ? "obstruction found" : "no obstruction");
      rep.emit();
      return cr.conflict ? kExitOk : kExitViolated;
    }

    if (*matrices) {
      BorelReport br = borel_obstruction(mat_ell, mat_p, mat_n, mat_prec);
      rep.set("ell", mat_ell);
      rep.set("p", mat_p);
      rep.set("n", mat_n);
      rep.set("untwisted_in_integral_borel", br.untwisted_in_u);
      rep.set("twisted_b", br.twisted.b.str());
      rep.set("twisted_b_valuation",
              br.twisted_b_zero ? json() : json(br.twisted_b_val));
      std::string verdict =
          br.obstruction
              ? "obstruction found, v=" + std::to_string(br.twisted_b_val)
              : "twisted word stays integral";
      rep.set("verdict", verdict);
      rep.emit();
      if (!br.untwisted_in_u) return kExitViolated;
      return br.obstruction ? kExitOk : kExitViolated;
    }

    if (*nodal) {
      FiniteGroup gal = group_by_name(nodal_gal);
      Presentation np = nodal_presentation(gal);
      Presentation pz = product_with_z_presentation(gal);
      std::vector<FiniteGroup> tests = parse_group_list("Z/2,Z/3,Z/4,S3,D4");
      std::vector<const FiniteGroup*> ptrs;
      for (const FiniteGroup& t : tests) ptrs.push_back(&t);
      EquivReport er = presentation_equiv(np, pz, ptrs, nodal_budget);
      rep.set("gal", gal.name());
      rep.set("rank", static_cast<int>(np.edge_gens.size()));
      rep.set("counts", er.lines);
      rep.set("matches_product_with_z", er.equal);
      rep.emit();
      return er.equal ? kExitOk : kExitViolated;
    }

    if (*wedge) {
      FiniteGroup gal = group_by_name(wedge_gal);
      // two vertex spaces carrying the conjugation action of the level
      std::vector<std::vector<int>> conj_action(
          gal.size(), std::vector<int>(gal.size()));
      for (int s = 0; s < gal.size(); ++s)
        for (int g = 0; g < gal.size(); ++g)
          conj_action[s][g] = gal.conj(s, g);
      std::vector<WedgeVertex> verts = {{"X1", &gal, conj_action},
                                        {"X2", &gal, conj_action}};
      Presentation p = wedge_presentation(verts, wedge_loops, gal);
      rep.set("gal", gal.name());
      rep.set("loops", wedge_loops);
      rep.set("presentation", presentation_to_json(p));
      rep.emit();
      return kExitOk;
    }
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
