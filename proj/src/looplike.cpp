#include "pvk/looplike.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "pvk/vankampen.hpp"

namespace pvk {

namespace {

const std::string& atom_home(const Atom& a) { return a.owner; }

std::string fmt_sigma(int s) { return "sigma=" + std::to_string(s); }

}  // namespace

DistContext::DistContext(const GraphWithTree& t) : tree(&t) {
  const TwoComplex& cx = *t.cx;
  verts_ = cx.e0;
  for (std::size_t i = 0; i < verts_.size(); ++i)
    vidx_[verts_[i]] = static_cast<int>(i);
  int n = static_cast<int>(verts_.size());
  std::vector<std::vector<int>> adj(n);
  for (const std::string& eid : t.tree_edges) {
    const TwoComplex::Edge& e = cx.edge(eid);
    adj[vidx_.at(e.d1)].push_back(vidx_.at(e.d0));
    adj[vidx_.at(e.d0)].push_back(vidx_.at(e.d1));
  }
  dist_.assign(n, std::vector<int>(n, -1));
  parent_.assign(n, std::vector<int>(n, -1));
  for (int root = 0; root < n; ++root) {
    std::queue<int> q;
    q.push(root);
    dist_[root][root] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[x])
        if (dist_[root][y] < 0) {
          dist_[root][y] = dist_[root][x] + 1;
          parent_[root][y] = x;  // next hop from y toward root
          q.push(y);
        }
    }
  }
}

int DistContext::tree_dist(const std::string& v, const std::string& w) const {
  auto iv = vidx_.find(v);
  auto iw = vidx_.find(w);
  if (iv == vidx_.end() || iw == vidx_.end())
    throw input_error("unknown vertex in distance query");
  int d = dist_[iv->second][iw->second];
  if (d < 0) throw input_error("vertices not connected by the tree");
  return d;
}

std::vector<std::string> DistContext::tree_path(const std::string& v,
                                                const std::string& w) const {
  int root = vidx_.at(v);
  int cur = vidx_.at(w);
  if (dist_[root][cur] < 0)
    throw input_error("vertices not connected by the tree");
  std::vector<std::string> rev;
  while (cur != root) {
    rev.push_back(verts_[cur]);
    cur = parent_[root][cur];
  }
  rev.push_back(verts_[root]);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

const std::string& DistContext::vert_minus(const std::string& edge_id) const {
  return tree->cx->edge(edge_id).d1;
}

const std::string& DistContext::vert_plus(const std::string& edge_id) const {
  return tree->cx->edge(edge_id).d0;
}

int dist(const Atom& a, const Atom& b, const DistContext& ctx) {
  auto edge_end = [&](const Atom& e, bool plus) -> const std::string& {
    if (e.exp != 1 && e.exp != -1)
      throw input_error("distance is defined on plain letters only");
    bool positive = (e.exp > 0) == plus;
    return positive ? ctx.vert_plus(e.owner) : ctx.vert_minus(e.owner);
  };
  if (a.kind == Atom::Kind::trivial || b.kind == Atom::Kind::trivial)
    throw input_error("distance is defined on plain letters only");
  bool ae = a.kind == Atom::Kind::edge;
  bool be = b.kind == Atom::Kind::edge;
  if (!ae && !be) return ctx.tree_dist(a.owner, b.owner);
  if (!ae && be) return ctx.tree_dist(a.owner, edge_end(b, false));
  if (ae && !be) return ctx.tree_dist(edge_end(a, true), b.owner) + 1;
  return ctx.tree_dist(edge_end(a, true), edge_end(b, false)) + 1;
}

long long n_of_word(const Word& w, const DistContext& ctx) {
  if (w.size() % 2 == 0)
    throw input_error("weight requires an odd number of plain letters");
  long long n = 1;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) n += dist(w[i], w[i + 1], ctx);
  return n;
}

int TestSetFamily::points(const std::string& v, int n) const {
  auto it = vact.find({v, n});
  if (it == vact.end())
    throw input_error("no test set for vertex " + v + " at level " +
                      std::to_string(n));
  return it->second.empty() ? 0 : static_cast<int>(it->second[0].size());
}

bool TestSetFamily::vertex_trivial(const std::string& v, int n, int g) const {
  auto it = vact.find({v, n});
  if (it == vact.end())
    throw input_error("no test set for vertex " + v + " at level " +
                      std::to_string(n));
  const std::vector<int>& row = it->second.at(g);
  for (std::size_t x = 0; x < row.size(); ++x)
    if (row[x] != static_cast<int>(x)) return false;
  return true;
}

long long TestSetFamily::edge_modulus() const {
  long long l = 1;
  for (int i = 2; i <= depth; ++i) l = std::lcm(l, static_cast<long long>(i));
  return l;
}

ValidationReport TestSetFamily::validate(const GroupContext& ctx) const {
  ValidationReport rep;
  auto note = [&](const std::string& s) {
    rep.ok = false;
    rep.issues.push_back(s);
  };
  for (const auto& [key, act] : vact) {
    const auto& [v, n] = key;
    std::string tag = v + "@" + std::to_string(n);
    const FiniteGroup& g = ctx.at(v);
    if (static_cast<int>(act.size()) != g.size()) {
      note("test set " + tag + ": action rows do not match the group");
      continue;
    }
    int np = points(v, n);
    // action law and bijectivity
    bool lawful = true;
    for (int a = 0; a < g.size() && lawful; ++a)
      for (int b = 0; b < g.size() && lawful; ++b)
        for (int x = 0; x < np; ++x)
          if (act[g.mul(a, b)][x] != act[a][act[b][x]]) {
            note("test set " + tag + ": not an action");
            lawful = false;
            break;
          }
    for (int x = 0; x < np; ++x)
      if (act[g.identity()][x] != x) {
        note("test set " + tag + ": identity moves a point");
        break;
      }
    // regular orbit through the acting quotient: transitive, and any
    // element fixing one point fixes all of them
    std::vector<char> seen(np, 0);
    for (int a = 0; a < g.size(); ++a) seen[act[a][0]] = 1;
    if (std::count(seen.begin(), seen.end(), 1) != np)
      note("test set " + tag + ": not transitive");
    for (int a = 0; a < g.size(); ++a) {
      bool fixes_some = false, moves_some = false;
      for (int x = 0; x < np; ++x)
        (act[a][x] == x ? fixes_some : moves_some) = true;
      if (fixes_some && moves_some) {
        note("test set " + tag + ": orbit is not regular for the quotient");
        break;
      }
    }
  }
  for (const auto& [key, map] : down) {
    const auto& [v, n] = key;
    std::string tag = v + "@" + std::to_string(n);
    auto hi = vact.find({v, n + 1});
    auto lo = vact.find({v, n});
    if (hi == vact.end() || lo == vact.end()) {
      note("transition " + tag + ": missing endpoint level");
      continue;
    }
    int np_hi = points(v, n + 1), np_lo = points(v, n);
    if (static_cast<int>(map.size()) != np_hi) {
      note("transition " + tag + ": wrong domain size");
      continue;
    }
    std::vector<char> hit(np_lo, 0);
    for (int x : map) {
      if (x < 0 || x >= np_lo) {
        note("transition " + tag + ": image out of range");
        break;
      }
      hit[x] = 1;
    }
    if (std::count(hit.begin(), hit.end(), 1) != np_lo)
      note("transition " + tag + ": not surjective");
    const FiniteGroup& g = ctx.at(v);
    for (int a = 0; a < g.size(); ++a)
      for (int x = 0; x < np_hi; ++x)
        if (map[hi->second[a][x]] != lo->second[a][map[x]]) {
          note("transition " + tag + ": not equivariant");
          a = g.size();
          break;
        }
  }
  // every level 1..depth present for every vertex that has any level
  std::map<std::string, std::vector<int>> levels;
  for (const auto& [key, act] : vact) levels[key.first].push_back(key.second);
  for (auto& [v, ls] : levels) {
    std::sort(ls.begin(), ls.end());
    for (int n = 1; n <= depth; ++n)
      if (!std::binary_search(ls.begin(), ls.end(), n)) {
        note("vertex " + v + ": missing level " + std::to_string(n));
        break;
      }
    for (int n = 1; n < depth; ++n)
      if (!down.count({v, n}))
        note("vertex " + v + ": missing transition at level " +
             std::to_string(n));
  }
  return rep;
}

void set_level_from_quotient(TestSetFamily& fam, const std::string& v, int n,
                             const FiniteGroup& quot,
                             const std::vector<int>& proj) {
  std::vector<std::vector<int>> act(proj.size(),
                                    std::vector<int>(quot.size()));
  for (std::size_t g = 0; g < proj.size(); ++g)
    for (int x = 0; x < quot.size(); ++x) act[g][x] = quot.mul(proj[g], x);
  fam.vact[{v, n}] = std::move(act);
}

LooplikeVerdict is_looplike(const Word& w, const TestSetFamily& fam,
                            const GroupContext& ctx, const DistContext& dctx) {
  LooplikeVerdict out;
  if (plain_form(w, ctx) != w) {
    out.reason = "not in plain form";
    return out;
  }
  if (w.empty() || w.size() % 2 == 0) {
    out.reason = "even letter count";
    return out;
  }
  out.n = n_of_word(w, dctx);
  if (out.n > fam.depth) {
    out.inconclusive = true;
    out.reason = "family depth " + std::to_string(fam.depth) +
                 " below weight " + std::to_string(out.n);
    return out;
  }
  std::size_t m = w.size() / 2;  // letters g_1..g_{2m+1}, right to left
  auto at = [&](std::size_t j) -> const Atom& { return w[w.size() - j]; };
  for (std::size_t j = 1; j <= m; ++j) {
    const Atom& left = at(m + 1 + j);
    const Atom& right = at(m + 1 - j);
    if (left.kind != right.kind || atom_home(left) != atom_home(right)) {
      out.reason = "mirror condition fails at offset " + std::to_string(j);
      return out;
    }
  }
  int n = static_cast<int>(out.n);
  long long emod = fam.edge_modulus();
  auto pair_trivial = [&](const Atom& left, const Atom& right) {
    if (left.kind == Atom::Kind::edge)
      return (left.exp + right.exp) % emod == 0;
    const FiniteGroup& g = ctx.at(left.owner);
    return fam.vertex_trivial(left.owner, n, g.mul(left.elem, right.elem));
  };
  const Atom& mid = at(m + 1);
  bool mid_ok = mid.kind == Atom::Kind::edge
                    ? mid.exp % emod == 0
                    : fam.vertex_trivial(mid.owner, n, mid.elem);
  if (!mid_ok) {
    out.reason = "middle letter acts nontrivially";
    return out;
  }
  for (std::size_t j = 1; j <= m; ++j)
    if (!pair_trivial(at(m + 1 + j), at(m + 1 - j))) {
      out.reason = "mirror pair " + std::to_string(j) + " acts nontrivially";
      return out;
    }
  out.value = true;
  return out;
}

VCertificate v_membership_bounded(const Word& g, const TestSetFamily& fam,
                                  const GroupContext& ctx,
                                  const DistContext& dctx,
                                  long long step_bound) {
  VCertificate out;
  Word p = plain_form(reduce(g, ctx), ctx);
  std::size_t len = p.size();
  if (len == 0) {
    out.found = true;
    return out;
  }
  // chunk cover: reach[i] says the prefix of length i factors into
  // contiguous looplike chunks; via[i] records the chunk start
  std::vector<int> via(len + 1, -1);
  std::vector<char> reach(len + 1, 0);
  reach[0] = 1;
  long long steps = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (!reach[i]) continue;
    for (std::size_t j = i + 1; j <= len; j += 2) {
      if (reach[j]) continue;
      if (++steps > step_bound) {
        out.exhausted = false;
        return out;
      }
      Word chunk(p.begin() + i, p.begin() + j);
      if (is_looplike(chunk, fam, ctx, dctx).value) {
        reach[j] = 1;
        via[j] = static_cast<int>(i);
      }
    }
  }
  if (!reach[len]) return out;
  std::vector<Word> factors;
  for (std::size_t j = len; j > 0;) {
    std::size_t i = static_cast<std::size_t>(via[j]);
    factors.push_back(Word(p.begin() + i, p.begin() + j));
    j = i;
  }
  std::reverse(factors.begin(), factors.end());
  out.found = true;
  out.factors = std::move(factors);
  return out;
}

int apply_word(const Word& w, const BasedAction& act, int point) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Atom& a = *it;
    if (a.kind == Atom::Kind::trivial) continue;
    if (a.kind == Atom::Kind::vertex) {
      point = act.vact.at(a.owner).at(a.elem)[point];
      continue;
    }
    const std::vector<int>& perm = act.eact.at(a.owner);
    long long k = a.exp;
    if (k >= 0) {
      for (long long s = 0; s < k; ++s) point = perm[point];
    } else {
      std::vector<int> inv(perm.size());
      for (std::size_t x = 0; x < perm.size(); ++x) inv[perm[x]] = x;
      for (long long s = 0; s < -k; ++s) point = inv[point];
    }
  }
  return point;
}

bool fixes_base(const Word& w, const BasedAction& act) {
  return apply_word(w, act, act.base) == act.base;
}

ValidationReport EtaData::validate(const GroupContext& ctx) const {
  ValidationReport rep;
  auto note = [&](const std::string& s) {
    rep.ok = false;
    rep.issues.push_back(s);
  };
  int ng = gal->size();
  for (const auto& [v, mats] : gal_conj) {
    const FiniteGroup& g = ctx.at(v);
    if (static_cast<int>(mats.size()) != ng) {
      note("conjugation at " + v + ": wrong Galois size");
      continue;
    }
    for (int s = 0; s < ng; ++s) {
      std::vector<char> seen(g.size(), 0);
      for (int x : mats[s]) seen[x] = 1;
      if (!is_hom(g, g, mats[s]) ||
          std::count(seen.begin(), seen.end(), 1) != g.size())
        note("conjugation at " + v + ", " + fmt_sigma(s) +
             ": not an automorphism");
    }
    for (int x = 0; x < g.size(); ++x)
      if (mats[gal->identity()][x] != x) {
        note("conjugation at " + v + ": identity acts nontrivially");
        break;
      }
    for (int t = 0; t < ng; ++t)
      for (int s = 0; s < ng; ++s)
        for (int x = 0; x < g.size(); ++x)
          if (mats[gal->mul(t, s)][x] != mats[t][mats[s][x]]) {
            note("conjugation at " + v + ": not a Galois action");
            t = s = ng;
            break;
          }
  }
  for (const TwoComplex::Edge& e : tree->cx->e1) {
    const FiniteGroup& go = ctx.at(e.d1);
    const FiniteGroup& gt = ctx.at(e.d0);
    for (int s = 0; s < ng; ++s)
      if (!delta.count({e.id, s}) || !theta.count({e.id, s})) {
        note("edge " + e.id + ": missing data at " + fmt_sigma(s));
        return rep;
      }
    for (int t = 0; t < ng; ++t)
      for (int s = 0; s < ng; ++s) {
        int ts = gal->mul(t, s);
        if (delta.at({e.id, ts}) !=
            go.mul(delta.at({e.id, t}), conj(e.d1, t, delta.at({e.id, s}))))
          note("edge " + e.id + ": delta cocycle fails at (" +
               std::to_string(t) + "," + std::to_string(s) + ")");
        if (theta.at({e.id, ts}) !=
            gt.mul(theta.at({e.id, t}), conj(e.d0, t, theta.at({e.id, s}))))
          note("edge " + e.id + ": theta cocycle fails at (" +
               std::to_string(t) + "," + std::to_string(s) + ")");
      }
  }
  return rep;
}

int EtaData::conj(const std::string& v, int sigma, int g) const {
  return gal_conj.at(v).at(sigma).at(g);
}

Word EtaData::eta_edge(const std::string& edge_id, bool forward, int sigma,
                       const GroupContext& ctx) const {
  const TwoComplex::Edge& e = tree->cx->edge(edge_id);
  const FiniteGroup& go = ctx.at(e.d1);
  const FiniteGroup& gt = ctx.at(e.d0);
  int d = delta.at({edge_id, sigma});
  int t = theta.at({edge_id, sigma});
  if (forward)
    return {Atom::vertex(e.d1, go.inv(d)), Atom::vertex(e.d0, t)};
  return {Atom::vertex(e.d0, gt.inv(t)), Atom::vertex(e.d1, d)};
}

Word EtaData::eta_path(const std::string& v, const std::string& w, int sigma,
                       const GroupContext& ctx, const DistContext& dctx) const {
  std::vector<std::string> path = dctx.tree_path(v, w);
  Word out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const std::string& a = path[i];
    const std::string& b = path[i + 1];
    bool found = false;
    for (const std::string& eid : tree->tree_edges) {
      const TwoComplex::Edge& e = tree->cx->edge(eid);
      if (e.d1 == a && e.d0 == b) {
        out = concat(out, eta_edge(eid, true, sigma, ctx));
        found = true;
        break;
      }
      if (e.d1 == b && e.d0 == a) {
        out = concat(out, eta_edge(eid, false, sigma, ctx));
        found = true;
        break;
      }
    }
    if (!found) throw input_error("tree path step without a tree edge");
  }
  return out;
}

Word sigma_action(int sigma, const std::string& v0, const Word& w,
                  const EtaData& eta, const GroupContext& ctx,
                  const DistContext& dctx) {
  Word out;
  for (const Atom& a : w) {
    if (a.kind == Atom::Kind::trivial) continue;
    if (a.kind == Atom::Kind::vertex) {
      out = concat(out, eta.eta_path(v0, a.owner, sigma, ctx, dctx));
      out.push_back(Atom::vertex(a.owner, eta.conj(a.owner, sigma, a.elem)));
      out = concat(out, eta.eta_path(a.owner, v0, sigma, ctx, dctx));
      continue;
    }
    const std::string& o = dctx.vert_minus(a.owner);
    const std::string& t = dctx.vert_plus(a.owner);
    const FiniteGroup& go = ctx.at(o);
    Word base = eta.eta_path(v0, o, sigma, ctx, dctx);
    base.push_back(Atom::vertex(o, go.inv(eta.delta.at({a.owner, sigma}))));
    base.push_back(Atom::edge(a.owner, 1));
    base.push_back(Atom::vertex(t, eta.theta.at({a.owner, sigma})));
    base = concat(base, eta.eta_path(t, v0, sigma, ctx, dctx));
    if (a.exp < 0) base = invert(base, ctx);
    for (long long k = 0; k < std::llabs(a.exp); ++k)
      out = concat(out, base);
  }
  return out;
}

PhiReport verify_phi_identities(const EtaData& eta, const GroupContext& ctx,
                                const DistContext& dctx,
                                const std::vector<Word>& samples,
                                const std::vector<std::string>& bases) {
  PhiReport rep;
  int ng = eta.gal->size();
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  for (const std::string& v0 : bases)
    for (int t = 0; t < ng; ++t)
      for (int s = 0; s < ng; ++s)
        for (std::size_t wi = 0; wi < samples.size(); ++wi) {
          ++rep.checks;
          Word inner = sigma_action(s, v0, samples[wi], eta, ctx, dctx);
          Word lhs = sigma_action(t, v0, inner, eta, ctx, dctx);
          Word rhs =
              sigma_action(eta.gal->mul(t, s), v0, samples[wi], eta, ctx, dctx);
          if (!words_equal(lhs, rhs, ctx))
            fail("composition fails at base " + v0 + ", tau=" +
                 std::to_string(t) + ", " + fmt_sigma(s) + ", word " +
                 std::to_string(wi));
        }
  for (const std::string& v1 : bases)
    for (const std::string& v0 : bases) {
      if (v0 == v1) continue;
      for (int s = 0; s < ng; ++s)
        for (std::size_t wi = 0; wi < samples.size(); ++wi) {
          ++rep.checks;
          Word lhs = sigma_action(s, v1, samples[wi], eta, ctx, dctx);
          Word tr = eta.eta_path(v1, v0, s, ctx, dctx);
          Word rhs = concat(
              tr, concat(sigma_action(s, v0, samples[wi], eta, ctx, dctx),
                         invert(tr, ctx)));
          if (!words_equal(lhs, rhs, ctx))
            fail("base change fails for " + v1 + " via " + v0 + ", " +
                 fmt_sigma(s) + ", word " + std::to_string(wi));
        }
    }
  return rep;
}

namespace {

// conjugate w by its first syllable until the first and last syllables
// live in different factors (or fewer than two syllables remain)
Word cyclic_reduce(Word w, const GroupContext& ctx) {
  w = reduce(w, ctx);
  while (w.size() >= 2 && atom_home(w.front()) == atom_home(w.back()) &&
         w.front().kind == w.back().kind) {
    Word head{w.front()};
    w = reduce(concat(invert(head, ctx), concat(w, head)), ctx);
  }
  return w;
}

bool conjugate_words(const Word& a, const Word& b, const GroupContext& ctx) {
  Word ca = cyclic_reduce(a, ctx);
  Word cb = cyclic_reduce(b, ctx);
  if (ca.size() != cb.size()) return false;
  if (ca.empty()) return true;
  if (ca.size() == 1) {
    const Atom& x = ca[0];
    const Atom& y = cb[0];
    if (x.kind != y.kind || x.owner != y.owner) return false;
    if (x.kind == Atom::Kind::edge) return x.exp == y.exp;
    const FiniteGroup& g = ctx.at(x.owner);
    for (int h = 0; h < g.size(); ++h)
      if (g.conj(h, x.elem) == y.elem) return true;
    return false;
  }
  // cyclically reduced words of syllable length >= 2 are conjugate exactly
  // when one is a rotation of the other
  for (std::size_t r = 0; r < ca.size(); ++r) {
    Word rot(ca.begin() + r, ca.end());
    rot.insert(rot.end(), ca.begin(), ca.begin() + r);
    if (words_equal(rot, cb, ctx)) return true;
  }
  return false;
}

}  // namespace

StabilityReport verify_relation_stability(const GroupData& gd,
                                          const GraphWithTree& tree,
                                          const EtaData& eta,
                                          const std::vector<int>& sigmas,
                                          const std::string& base_vertex,
                                          int rewrite_budget) {
  StabilityReport rep;
  const TwoComplex& cx = *gd.cx;
  GroupContext ctx;
  for (const std::string& v : cx.e0) ctx.groups[v] = &gd.group_at(v);
  DistContext dctx(tree);
  Presentation pres = build_presentation(gd, tree);
  // split the generated relations: edge relations first, face relations last
  std::size_t n_r2 = cx.e2.size();
  std::vector<Word> r1(pres.relations.begin(), pres.relations.end() - n_r2);
  std::vector<Word> r2(pres.relations.end() - n_r2, pres.relations.end());
  // conjugacy targets: the edge relation of every edge-group element
  std::vector<Word> r1_full;
  for (const TwoComplex::Edge& e : cx.e1) {
    const FiniteGroup& ge = gd.group_at(e.id);
    const FiniteGroup& gt = gd.group_at(e.d0);
    for (int h = 0; h < ge.size(); ++h) {
      Word w;
      w.push_back(Atom::vertex(e.d1, gd.bnd_edge(e.id, 1)[h]));
      if (!tree.in_tree(e.id)) w.push_back(Atom::edge(e.id, 1));
      w.push_back(Atom::vertex(e.d0, gt.inv(gd.bnd_edge(e.id, 0)[h])));
      if (!tree.in_tree(e.id)) w.push_back(Atom::edge(e.id, -1));
      r1_full.push_back(std::move(w));
    }
  }
  for (int s : sigmas) {
    for (std::size_t i = 0; i < r1.size(); ++i) {
      Word img = reduce(sigma_action(s, base_vertex, r1[i], eta, ctx, dctx),
                        ctx);
      bool matched = img.empty();
      for (const Word& tgt : r1_full) {
        if (matched) break;
        if (conjugate_words(img, tgt, ctx) ||
            conjugate_words(img, invert(tgt, ctx), ctx))
          matched = true;
      }
      if (!matched) {
        rep.r1_ok = false;
        rep.notes.push_back("edge relation " + std::to_string(i) + " at " +
                            fmt_sigma(s) + ": image is not a conjugate");
      }
    }
    for (std::size_t i = 0; i < r2.size(); ++i) {
      Word img = reduce(sigma_action(s, base_vertex, r2[i], eta, ctx, dctx),
                        ctx);
      bool matched = false, budget_hit = false;
      for (const Word& tgt : r2) {
        if (matched) break;
        for (std::size_t pl = 0; pl <= img.size() && !matched; ++pl) {
          Word h(img.begin(), img.begin() + pl);
          Word probe = reduce(
              concat(invert(h, ctx),
                     concat(img, concat(h, invert(tgt, ctx)))),
              ctx);
          int verdict = rewrite_to_trivial(probe, r1_full, ctx, rewrite_budget);
          if (verdict == 1) matched = true;
          if (verdict == -1) budget_hit = true;
        }
      }
      if (!matched) {
        if (budget_hit) {
          rep.inconclusive = true;
          rep.notes.push_back("face relation " + std::to_string(i) + " at " +
                              fmt_sigma(s) + ": rewriting budget exhausted");
        } else {
          rep.r2_ok = false;
          rep.notes.push_back("face relation " + std::to_string(i) + " at " +
                              fmt_sigma(s) +
                              ": image not matched modulo edge relations");
        }
      }
    }
  }
  return rep;
}

}  // namespace pvk
