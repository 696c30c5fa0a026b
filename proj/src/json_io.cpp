#include "pvk/json_io.hpp"

#include <cctype>
#include <sstream>

namespace pvk {

namespace {

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw input_error("cannot parse " + what + ": " + s);
  }
}

int elem_ref(const FiniteGroup& g, const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    int e = j.get<int>();
    if (e < 0 || e >= g.size())
      throw input_error(where + ": element index out of range");
    return e;
  }
  if (j.is_string()) {
    int e = g.elem_index(j.get<std::string>());
    if (e < 0)
      throw input_error(where + ": unknown element " + j.get<std::string>());
    return e;
  }
  throw input_error(where + ": element must be an index or a name");
}

}  // namespace

FiniteGroup group_by_name(const std::string& spec) {
  if (spec == "1" || spec == "triv") return FiniteGroup::trivial_group();
  if (spec == "Q8") return FiniteGroup::quaternion8();
  if (spec.rfind("Z/", 0) == 0)
    return FiniteGroup::cyclic(parse_int(spec.substr(2), "cyclic order"));
  if (spec.size() >= 2 && spec[0] == 'C' && std::isdigit(spec[1]))
    return FiniteGroup::cyclic(parse_int(spec.substr(1), "cyclic order"));
  if (spec.rfind("U(", 0) == 0 && spec.back() == ')')
    return FiniteGroup::units_mod(
        parse_int(spec.substr(2, spec.size() - 3), "unit modulus"));
  if (spec.size() >= 2 && (spec[0] == 'D' || spec[0] == 'S' || spec[0] == 'A')) {
    int n = parse_int(spec.substr(1), "group degree");
    if (spec[0] == 'D') return FiniteGroup::dihedral(n);
    if (spec[0] == 'S') return FiniteGroup::symmetric(n);
    return FiniteGroup::alternating(n);
  }
  throw input_error("unknown group spec: " + spec);
}

FiniteGroup group_from_json(const json& j) {
  if (j.is_string()) return group_by_name(j.get<std::string>());
  if (!j.is_object()) throw input_error("group spec must be a name or object");
  if (j.contains("table")) {
    std::vector<std::string> names;
    if (j.contains("elements"))
      names = j.at("elements").get<std::vector<std::string>>();
    std::vector<int> table = j.at("table").get<std::vector<int>>();
    if (names.empty()) {
      std::size_t n = 1;
      while (n * n < table.size()) ++n;
      for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
    }
    return FiniteGroup::from_table(j.value("name", std::string("table")),
                                   std::move(names), std::move(table));
  }
  if (j.contains("perm_gens"))
    return FiniteGroup::from_perm_gens(
        j.value("name", std::string("perm")), j.at("degree").get<int>(),
        j.at("perm_gens").get<std::vector<std::vector<int>>>());
  throw input_error("group object needs a table or permutation generators");
}

QuotientTower tower_from_json(const json& j) {
  QuotientTower t;
  for (const json& lj : j.at("levels")) t.levels.push_back(group_from_json(lj));
  if (t.levels.empty()) throw input_error("tower needs at least one level");
  t.down.resize(t.levels.size() - 1);
  for (const json& tj : j.at("transitions")) {
    std::size_t from = tj.at("from_level").get<std::size_t>();
    if (from == 0 || from >= t.levels.size())
      throw input_error("transition from_level out of range");
    std::vector<int> map;
    for (const json& e : tj.at("mapping"))
      map.push_back(elem_ref(t.levels[from - 1], e, "tower transition"));
    if (static_cast<int>(map.size()) != t.levels[from].size())
      throw input_error("tower transition length does not match its level");
    t.down[from - 1] = std::move(map);
  }
  t.validate();
  return t;
}

Word word_from_json(const json& j, const GroupContext& ctx) {
  Word w;
  for (const json& lj : j) {
    std::string kind = lj.at("kind").get<std::string>();
    if (kind == "vertex") {
      std::string g = lj.at("group").get<std::string>();
      w.push_back(Atom::vertex(g, elem_ref(ctx.at(g), lj.at("elem"), g)));
    } else if (kind == "edge") {
      w.push_back(Atom::edge(lj.at("edge").get<std::string>(),
                             lj.at("exp").get<long long>()));
    } else if (kind == "trivial") {
      if (lj.contains("edge"))
        w.push_back(Atom::trivial_at_edge(lj.at("edge").get<std::string>()));
      else
        w.push_back(Atom::trivial_at_vertex(lj.at("group").get<std::string>()));
    } else {
      throw input_error("unknown letter kind: " + kind);
    }
  }
  return w;
}

json word_to_json(const Word& w, const GroupContext& ctx) {
  json out = json::array();
  for (const Atom& a : w) {
    if (a.kind == Atom::Kind::vertex)
      out.push_back({{"kind", "vertex"},
                     {"group", a.owner},
                     {"elem", ctx.at(a.owner).elem_name(a.elem)}});
    else if (a.kind == Atom::Kind::edge)
      out.push_back({{"kind", "edge"}, {"edge", a.owner}, {"exp", a.exp}});
    else if (a.owner_is_edge)
      out.push_back({{"kind", "trivial"}, {"edge", a.owner}});
    else
      out.push_back({{"kind", "trivial"}, {"group", a.owner}});
  }
  return out;
}

TwoComplex complex_from_json(const json& j) {
  TwoComplex cx;
  cx.e0 = j.at("E0").get<std::vector<std::string>>();
  for (const json& e : j.at("E1"))
    cx.e1.push_back({e.at("id").get<std::string>(),
                     e.at("d0").get<std::string>(),
                     e.at("d1").get<std::string>()});
  if (j.contains("E2"))
    for (const json& f : j.at("E2"))
      cx.e2.push_back({f.at("id").get<std::string>(),
                       f.at("d0").get<std::string>(),
                       f.at("d1").get<std::string>(),
                       f.at("d2").get<std::string>()});
  cx.validate();
  return cx;
}

namespace {

// keys of the boundary-map objects look like "e/0" or "f/2/1"
std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, '/')) parts.push_back(item);
  return parts;
}

std::vector<int> full_map_from_json(const FiniteGroup& src,
                                    const FiniteGroup& dst, const json& j,
                                    const std::string& where) {
  std::vector<int> map;
  for (const json& e : j) map.push_back(elem_ref(dst, e, where));
  if (static_cast<int>(map.size()) != src.size())
    throw input_error(where + ": map length does not match the group");
  return map;
}

std::vector<int> identity_map(const FiniteGroup& g) {
  std::vector<int> id(g.size());
  for (int i = 0; i < g.size(); ++i) id[i] = i;
  return id;
}

}  // namespace

LoadedGroupData group_data_from_json(const json& j) {
  LoadedGroupData out;
  out.cx = complex_from_json(j.at("complex"));
  out.gd.cx = &out.cx;
  auto add_group = [&](const std::string& id, const json& spec) {
    out.owned.push_back(group_from_json(spec));
    out.gd.grp[id] = &out.owned.back();
  };
  std::vector<std::string> all_ids = out.cx.e0;
  for (const auto& e : out.cx.e1) all_ids.push_back(e.id);
  for (const auto& f : out.cx.e2) all_ids.push_back(f.id);
  if (j.contains("constant_group")) {
    out.owned.push_back(group_from_json(j.at("constant_group")));
    for (const std::string& id : all_ids) out.gd.grp[id] = &out.owned.back();
  } else {
    for (const std::string& id : all_ids)
      add_group(id, j.at("groups").at(id));
  }
  auto load_maps = [&](const char* field,
                       std::map<std::pair<std::string, int>, std::vector<int>>&
                           dst,
                       auto src_of, auto dst_of) {
    if (!j.contains(field)) return;
    for (const auto& [key, val] : j.at(field).items()) {
      std::vector<std::string> parts = split_key(key);
      if (parts.size() != 2) throw input_error("bad boundary key: " + key);
      int slot = parse_int(parts[1], "boundary slot");
      dst[{parts[0], slot}] = full_map_from_json(
          src_of(parts[0]), dst_of(parts[0], slot), val, key);
    }
  };
  load_maps(
      "edge_bnd", out.gd.edge_bnd,
      [&](const std::string& e) -> const FiniteGroup& {
        return out.gd.group_at(e);
      },
      [&](const std::string& e, int i) -> const FiniteGroup& {
        const auto& edge = out.cx.edge(e);
        return out.gd.group_at(i == 0 ? edge.d0 : edge.d1);
      });
  load_maps(
      "face_bnd", out.gd.face_bnd,
      [&](const std::string& f) -> const FiniteGroup& {
        return out.gd.group_at(f);
      },
      [&](const std::string& f, int k) -> const FiniteGroup& {
        const auto& face = out.cx.face(f);
        return out.gd.group_at(k == 0 ? face.d0 : k == 1 ? face.d1 : face.d2);
      });
  load_maps(
      "face_vertex", out.gd.face_vertex,
      [&](const std::string& f) -> const FiniteGroup& {
        return out.gd.group_at(f);
      },
      [&](const std::string& f, int i) -> const FiniteGroup& {
        return out.gd.group_at(out.cx.face_vertex(out.cx.face(f), i));
      });
  // defaults: identity boundary maps where sizes agree
  for (const auto& e : out.cx.e1)
    for (int i = 0; i <= 1; ++i)
      if (!out.gd.edge_bnd.count({e.id, i}))
        out.gd.edge_bnd[{e.id, i}] = identity_map(out.gd.group_at(e.id));
  for (const auto& f : out.cx.e2)
    for (int k = 0; k <= 2; ++k)
      if (!out.gd.face_bnd.count({f.id, k}))
        out.gd.face_bnd[{f.id, k}] = identity_map(out.gd.group_at(f.id));
  for (const auto& f : out.cx.e2)
    for (int i = 0; i <= 2; ++i)
      if (!out.gd.face_vertex.count({f.id, i}))
        out.gd.face_vertex[{f.id, i}] = identity_map(out.gd.group_at(f.id));
  if (j.contains("alpha"))
    for (const auto& [key, val] : j.at("alpha").items()) {
      std::vector<std::string> parts = split_key(key);
      if (parts.size() != 3) throw input_error("bad alpha key: " + key);
      int k = parse_int(parts[1], "alpha edge slot");
      int end = parse_int(parts[2], "alpha end");
      const auto& face = out.cx.face(parts[0]);
      const std::string& eid = k == 0 ? face.d0 : k == 1 ? face.d1 : face.d2;
      const auto& edge = out.cx.edge(eid);
      const FiniteGroup& gv = out.gd.group_at(end == 0 ? edge.d0 : edge.d1);
      out.gd.alpha[{parts[0], k, end}] = elem_ref(gv, val, key);
    }
  for (const auto& f : out.cx.e2)
    for (int k = 0; k <= 2; ++k)
      for (int end = 0; end <= 1; ++end)
        if (!out.gd.alpha.count({f.id, k, end}))
          out.gd.alpha[{f.id, k, end}] = 0;
  return out;
}

LoadedPresentation presentation_from_json(const json& j) {
  LoadedPresentation out;
  for (const json& fj : j.at("families")) {
    out.owned.push_back(group_from_json(fj.at("group")));
    out.pres.families.push_back(
        {fj.at("name").get<std::string>(), &out.owned.back()});
  }
  if (j.contains("edges"))
    out.pres.edge_gens = j.at("edges").get<std::vector<std::string>>();
  GroupContext ctx = out.pres.context();
  if (j.contains("relations"))
    for (const json& rj : j.at("relations"))
      out.pres.relations.push_back(word_from_json(rj, ctx));
  return out;
}

json presentation_to_json(const Presentation& p) {
  json out;
  out["families"] = json::array();
  for (const auto& fam : p.families)
    out["families"].push_back(
        {{"name", fam.name}, {"group", fam.grp->name()}, {"order", fam.grp->size()}});
  out["edges"] = p.edge_gens;
  GroupContext ctx = p.context();
  out["relations"] = json::array();
  for (const Word& r : p.relations) out["relations"].push_back(word_to_json(r, ctx));
  return out;
}

LoadedGSet gset_from_json(const json& j) {
  LoadedGSet out;
  out.owned.push_back(group_from_json(j.at("group")));
  const FiniteGroup& g = out.owned.back();
  out.gs.grp = &g;
  std::vector<std::string> points = j.at("points").get<std::vector<std::string>>();
  out.gs.n_points = static_cast<int>(points.size());
  std::map<std::string, int> pidx;
  for (int i = 0; i < out.gs.n_points; ++i) pidx[points[i]] = i;
  int window = j.value("window", -1);
  (void)window;
  // the action is given on generators; close under multiplication
  std::map<int, std::vector<int>> gen_act;
  for (const auto& [gen, tbl] : j.at("action").items()) {
    int ge = g.elem_index(gen);
    if (ge < 0) throw input_error("unknown generator in action: " + gen);
    std::vector<int> perm(out.gs.n_points, GSet::kWindowEdge);
    for (const auto& [from, to] : tbl.items()) {
      auto fit = pidx.find(from);
      if (fit == pidx.end()) throw input_error("unknown point: " + from);
      if (to.is_null()) continue;  // runs off the window
      auto tit = pidx.find(to.get<std::string>());
      if (tit == pidx.end())
        throw input_error("unknown point: " + to.get<std::string>());
      perm[fit->second] = tit->second;
    }
    gen_act[ge] = std::move(perm);
  }
  out.gs.act.assign(g.size(), std::vector<int>(out.gs.n_points,
                                               GSet::kWindowEdge));
  for (int x = 0; x < out.gs.n_points; ++x) out.gs.act[g.identity()][x] = x;
  // expand words in the given generators breadth-first
  std::vector<int> frontier{g.identity()};
  std::vector<char> done(g.size(), 0);
  done[g.identity()] = 1;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int e : frontier)
      for (const auto& [ge, perm] : gen_act) {
        int prod = g.mul(ge, e);
        if (done[prod]) continue;
        done[prod] = 1;
        for (int x = 0; x < out.gs.n_points; ++x) {
          int mid = out.gs.act[e][x];
          out.gs.act[prod][x] =
              mid == GSet::kWindowEdge ? GSet::kWindowEdge : perm[mid];
        }
        next.push_back(prod);
      }
    frontier = std::move(next);
  }
  for (int e = 0; e < g.size(); ++e)
    if (!done[e])
      throw input_error("action generators do not generate the group");
  out.gs.validate();
  return out;
}

json scalar_to_json(const PadicScalar& s) {
  if (s.is_zero()) return {{"l", s.l}, {"zero", true}, {"prec", s.prec}};
  return {{"l", s.l}, {"val", s.val}, {"unit", s.unit}, {"prec", s.prec}};
}

PadicScalar scalar_from_json(const json& j) {
  long long l = j.at("l").get<long long>();
  int prec = j.at("prec").get<int>();
  if (j.value("zero", false)) return PadicScalar::zero_value(l, prec);
  PadicScalar s = PadicScalar::from_integer(l, prec, j.at("unit").get<long long>());
  if (s.is_zero() || s.val != 0)
    throw input_error("scalar unit part must be a unit");
  s.val = j.value("val", 0LL);
  return s;
}

}  // namespace pvk
