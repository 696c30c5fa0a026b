#include "pvk/sampling.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "pvk/gsets.hpp"

namespace pvk {

int Sampler::pick(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(eng);
}

std::vector<int> Sampler::permutation(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), eng);
  return p;
}

std::vector<FiniteGroup> group_corpus_up_to(int max_order) {
  std::vector<FiniteGroup> all;
  all.push_back(FiniteGroup::trivial_group());
  for (int n = 2; n <= 12; ++n) all.push_back(FiniteGroup::cyclic(n));
  all.push_back(FiniteGroup::symmetric(3));
  all.push_back(FiniteGroup::symmetric(4));
  all.push_back(FiniteGroup::alternating(4));
  all.push_back(FiniteGroup::quaternion8());
  for (int n = 2; n <= 6; ++n) all.push_back(FiniteGroup::dihedral(n));
  all.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                            FiniteGroup::cyclic(2)));
  all.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                            FiniteGroup::cyclic(4)));
  all.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(3),
                                            FiniteGroup::cyclic(3)));
  all.push_back(FiniteGroup::units_mod(9));
  std::vector<FiniteGroup> out;
  for (FiniteGroup& g : all)
    if (g.size() <= max_order) out.push_back(std::move(g));
  return out;
}

namespace {

std::vector<int> center_of(const FiniteGroup& g) {
  std::vector<int> z;
  for (int a = 0; a < g.size(); ++a) {
    bool central = true;
    for (int b = 0; b < g.size() && central; ++b)
      central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

TwoComplex sample_complex(Sampler& rng) {
  TwoComplex cx;
  switch (rng.pick(0, 3)) {
    case 0:  // one triangle
      cx.e0 = {"v0", "v1", "v2"};
      cx.e1 = {{"a", "v1", "v0"}, {"b", "v2", "v1"}, {"c", "v2", "v0"}};
      cx.e2 = {{"f", "b", "c", "a"}};
      break;
    case 1:  // two triangles over the same long edge
      cx.e0 = {"v0", "v1", "v2"};
      cx.e1 = {{"a", "v1", "v0"},
               {"a2", "v1", "v0"},
               {"b", "v2", "v1"},
               {"c", "v2", "v0"}};
      cx.e2 = {{"f", "b", "c", "a"}, {"g", "b", "c", "a2"}};
      break;
    case 2:  // one vertex, loops, one face
      cx.e0 = {"z"};
      cx.e1 = {{"l1", "z", "z"}, {"l2", "z", "z"}, {"l3", "z", "z"}};
      cx.e2 = {{"h", "l2", "l3", "l1"}};
      break;
    default:  // faceless path with a doubled edge
      cx.e0 = {"v0", "v1", "v2"};
      cx.e1 = {{"a", "v1", "v0"}, {"b", "v2", "v1"}, {"d", "v2", "v1"}};
      break;
  }
  cx.validate();
  return cx;
}

// a G-action on at most max_fiber points: a random sum of coset actions
std::vector<std::vector<int>> sample_action(const FiniteGroup& g,
                                            int max_fiber, Sampler& rng) {
  std::vector<std::vector<int>> subs = all_subgroups(g);
  int target = rng.pick(1, max_fiber);
  std::vector<std::vector<int>> blocks;
  int total = 0;
  while (total < target) {
    const std::vector<int>& h = subs[rng.pick(0, subs.size() - 1)];
    int index = g.size() / static_cast<int>(h.size());
    if (total + index > target) continue;  // index 1 always fits
    blocks.push_back(h);
    total += index;
  }
  std::vector<std::vector<int>> act(g.size(), std::vector<int>(total));
  int base = 0;
  for (const std::vector<int>& h : blocks) {
    GSet cs = coset_action(g, h);
    for (int e = 0; e < g.size(); ++e)
      for (int x = 0; x < cs.n_points; ++x)
        act[e][base + x] = base + cs.act[e][x];
    base += cs.n_points;
  }
  return act;
}

std::vector<int> conj_perm(const std::vector<int>& pi,
                           const std::vector<int>& f) {
  // pi . f . pi^-1
  std::vector<int> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[pi[x]] = pi[f[x]];
  return out;
}

}  // namespace

std::unique_ptr<SampledInstance> sample_descent_instance(std::uint64_t seed,
                                                         int max_fiber) {
  Sampler rng(seed);
  auto inst = std::make_unique<SampledInstance>();
  inst->cx = sample_complex(rng);
  const std::vector<FiniteGroup> pool = [] {
    std::vector<FiniteGroup> p;
    p.push_back(FiniteGroup::cyclic(2));
    p.push_back(FiniteGroup::cyclic(3));
    p.push_back(FiniteGroup::cyclic(4));
    p.push_back(FiniteGroup::cyclic(6));
    p.push_back(FiniteGroup::symmetric(3));
    p.push_back(FiniteGroup::dihedral(4));
    p.push_back(FiniteGroup::quaternion8());
    return p;
  }();
  inst->grp = pool[rng.pick(0, static_cast<int>(pool.size()) - 1)];
  inst->gd = constant_group_data(inst->cx, inst->grp);
  inst->tree = spanning_tree(inst->cx);

  const FiniteGroup& g = inst->grp;
  std::vector<std::vector<int>> base = sample_action(g, max_fiber, rng);
  int n = static_cast<int>(base[0].size());
  std::vector<int> z = center_of(g);

  // gluing elements: free edges get random central elements, each face
  // forces one of its edges through the triangle relation c_d1 = c_d2 c_d0
  std::map<std::string, int> c;
  for (const auto& f : inst->cx.e2) {
    auto have = [&](const std::string& e) { return c.count(e) > 0; };
    auto fresh = [&](const std::string& e) {
      if (!have(e)) c[e] = z[rng.pick(0, static_cast<int>(z.size()) - 1)];
    };
    if (!have(f.d1)) {
      fresh(f.d2);
      fresh(f.d0);
      c[f.d1] = g.mul(c[f.d2], c[f.d0]);
    } else if (!have(f.d0)) {
      fresh(f.d2);
      c[f.d0] = g.mul(g.inv(c[f.d2]), c[f.d1]);
    } else if (!have(f.d2)) {
      c[f.d2] = g.mul(c[f.d1], g.inv(c[f.d0]));
    } else if (c[f.d1] != g.mul(c[f.d2], c[f.d0])) {
      // over-constrained shape: retreat to trivial gluing on this face
      c[f.d0] = c[f.d1] = c[f.d2] = g.identity();
    }
  }
  for (const auto& e : inst->cx.e1)
    if (!c.count(e.id)) c[e.id] = z[rng.pick(0, static_cast<int>(z.size()) - 1)];

  std::map<std::string, std::vector<int>> relabel;
  for (const auto& v : inst->cx.e0) relabel[v] = rng.permutation(n);
  DescentDatum& d = inst->descent;
  d.cx = &inst->cx;
  d.gd = &inst->gd;
  for (const auto& v : inst->cx.e0) {
    d.fiber[v] = n;
    d.act[v].resize(g.size());
    for (int e = 0; e < g.size(); ++e)
      d.act[v][e] = conj_perm(relabel[v], base[e]);
  }
  for (const auto& e : inst->cx.e1) {
    // phi: X'(target) -> X'(origin), central gluing seen through the
    // relabellings of the two ends
    const std::vector<int>& po = relabel[e.d1];
    const std::vector<int>& pt = relabel[e.d0];
    std::vector<int> phi(n);
    for (int x = 0; x < n; ++x) {
      int y = 0;
      for (int q = 0; q < n; ++q)
        if (pt[q] == x) y = q;
      phi[x] = po[base[c[e.id]][y]];
    }
    d.phi[e.id] = std::move(phi);
  }
  return inst;
}

void shuffle_lcs_fibers(LcsSystem& sys, Sampler& rng) {
  std::map<std::string, std::vector<int>> pi;
  for (const auto& [id, n] : sys.fiber) pi[id] = rng.permutation(n);
  for (auto& [id, act] : sys.act)
    for (auto& row : act) row = conj_perm(pi[id], row);
  auto remap = [&](std::vector<int>& m, const std::string& from,
                   const std::string& to) {
    // new m = pi_to . m . pi_from^-1
    std::vector<int> out(m.size());
    for (std::size_t x = 0; x < m.size(); ++x) out[pi[from][x]] = pi[to][m[x]];
    m = std::move(out);
  };
  const TwoComplex& cx = *sys.cx;
  for (const auto& e : cx.e1) {
    remap(sys.m_edge[{e.id, 0}], e.id, e.d0);
    remap(sys.m_edge[{e.id, 1}], e.id, e.d1);
  }
  for (const auto& f : cx.e2) {
    const std::string eid[3] = {f.d0, f.d1, f.d2};
    for (int k = 0; k < 3; ++k) remap(sys.m_face[{f.id, k}], f.id, eid[k]);
    for (int i = 0; i < 3; ++i)
      remap(sys.m_face_vertex[{f.id, i}], f.id, cx.face_vertex(f, i));
  }
}

std::unique_ptr<LooplikeDemo> build_looplike_demo(int depth) {
  if (depth < 3) throw input_error("looplike demo needs depth >= 3");
  auto d = std::make_unique<LooplikeDemo>();
  d->cx.e0 = {"v", "w"};
  d->cx.e1 = {{"t", "w", "v"}, {"e", "w", "v"}};
  d->cx.validate();
  d->z9 = FiniteGroup::cyclic(9);
  d->z3 = FiniteGroup::cyclic(3);
  d->gal = FiniteGroup::units_mod(9);
  d->gd = constant_group_data(d->cx, d->z9);
  d->tree.cx = &d->cx;
  d->tree.tree_edges = {"t"};
  d->dctx = std::make_unique<DistContext>(d->tree);
  for (const std::string& v : d->cx.e0) d->ctx.groups[v] = &d->z9;

  // test sets: level 1 is the mod-3 regular orbit, deeper levels the full
  // regular orbit of Z/9
  d->fam.depth = depth;
  std::vector<int> proj3(9), id9(9);
  for (int g = 0; g < 9; ++g) {
    proj3[g] = g % 3;
    id9[g] = g;
  }
  for (const std::string& v : d->cx.e0) {
    set_level_from_quotient(d->fam, v, 1, d->z3, proj3);
    for (int n = 2; n <= depth; ++n)
      set_level_from_quotient(d->fam, v, n, d->z9, id9);
    d->fam.down[{v, 1}] = proj3;
    for (int n = 2; n < depth; ++n) d->fam.down[{v, n}] = id9;
  }

  // the Galois level multiplies each Z/9 by the residue chi(sigma); the
  // correction elements are the cyclotomic differences (1 - chi) scaled by
  // a per-edge constant, which satisfies the cocycle identity
  d->eta.tree = &d->tree;
  d->eta.gal = &d->gal;
  auto chi = [&](int s) { return std::stoi(d->gal.elem_name(s)); };
  for (const std::string& v : d->cx.e0) {
    auto& rows = d->eta.gal_conj[v];
    rows.assign(d->gal.size(), std::vector<int>(9));
    for (int s = 0; s < d->gal.size(); ++s)
      for (int g = 0; g < 9; ++g) rows[s][g] = (chi(s) * g) % 9;
  }
  const int scale_delta[2] = {1, 2};  // for edges t, e
  const int scale_theta[2] = {1, 1};
  for (int s = 0; s < d->gal.size(); ++s) {
    int diff = ((1 - chi(s)) % 9 + 9) % 9;
    const std::string eids[2] = {"t", "e"};
    for (int k = 0; k < 2; ++k) {
      d->eta.delta[{eids[k], s}] = (diff * scale_delta[k]) % 9;
      d->eta.theta[{eids[k], s}] = (diff * scale_theta[k]) % 9;
    }
    if (chi(s) % 3 == 1) d->arranged.push_back(s);
  }

  d->samples = {
      {Atom::vertex("v", 1)},
      {Atom::vertex("w", 5)},
      {Atom::edge("e", 1)},
      {Atom::edge("e", -2)},
      {Atom::vertex("v", 2), Atom::edge("e", 1), Atom::vertex("w", 7)},
      {Atom::vertex("v", 4), Atom::edge("t", 1), Atom::vertex("w", 8)},
  };

  // a compatible pointed action: everything translates a three-point
  // cycle, so looplike words (whose letter sums vanish mod 3) fix 0
  d->model.n_points = 3;
  d->model.base = 0;
  std::vector<std::vector<int>> trans(9, std::vector<int>(3));
  for (int g = 0; g < 9; ++g)
    for (int x = 0; x < 3; ++x) trans[g][x] = (x + g) % 3;
  d->model.vact["v"] = trans;
  d->model.vact["w"] = trans;
  d->model.eact["t"] = {1, 2, 0};
  d->model.eact["e"] = {1, 2, 0};
  return d;
}

namespace {

// a subgroup of g repackaged as a standalone group; elems must be a sorted
// subgroup containing the identity (so the identity stays at index 0)
FiniteGroup sub_as_group(const FiniteGroup& g, std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  int m = static_cast<int>(elems.size());
  std::vector<int> where(g.size(), -1);
  std::vector<std::string> names(m);
  for (int i = 0; i < m; ++i) {
    where[elems[i]] = i;
    names[i] = g.elem_name(elems[i]);
  }
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[static_cast<std::size_t>(i) * m + j] =
          where[g.mul(elems[i], elems[j])];
  return FiniteGroup::from_table("sub(" + g.name() + ")", std::move(names),
                                 std::move(table));
}

std::vector<int> kernel_of(const FiniteGroup& g, const std::vector<int>& h) {
  std::vector<int> k;
  for (int x = 0; x < g.size(); ++x)
    if (h[x] == 0) k.push_back(x);
  return k;
}

}  // namespace

SuiteReport run_dict_suite(std::uint64_t seed, int instances, int max_order,
                           int index_bound) {
  SuiteReport rep;
  Sampler rng(seed);
  std::vector<FiniteGroup> corpus = group_corpus_up_to(max_order);
  auto fail = [&](const std::string& s) {
    ++rep.failed;
    rep.failures.push_back(s);
  };
  while (rep.run < instances) {
    const FiniteGroup& gp = corpus[rng.pick(0, corpus.size() - 1)];
    const FiniteGroup& g = corpus[rng.pick(0, corpus.size() - 1)];
    std::vector<std::vector<int>> homs = all_homs(gp, g);
    // cap the homomorphisms taken from one pair to keep the mix varied
    std::shuffle(homs.begin(), homs.end(), rng.eng);
    if (homs.size() > 4) homs.resize(4);
    for (const std::vector<int>& h : homs) {
      std::string tag = gp.name() + "->" + g.name();
      DictReport r = check_embedding(gp, g, h, index_bound);
      ++rep.run;
      if (!r.agree()) fail("embedding mismatch on " + tag);
      r = check_dense_iff_connected(gp, g, h, index_bound);
      ++rep.run;
      if (!r.agree()) fail("dense/connected mismatch on " + tag);
      r = check_normal_image(gp, g, h, index_bound);
      ++rep.run;
      if (!r.agree()) fail("normal-image mismatch on " + tag);
      // exactness: feed the kernel (exact) or a random cyclic subgroup of
      // it (generally inexact) in as the left group.  The statement assumes
      // the right map has dense image, so corestrict it to its image first.
      std::vector<int> ker = kernel_of(gp, h);
      std::vector<int> left = ker;
      if (rng.pick(0, 1) == 1)
        left = subgroup_closure(gp, {ker[rng.pick(0, ker.size() - 1)]});
      FiniteGroup gpp = sub_as_group(gp, left);
      std::vector<int> incl = left;
      std::sort(incl.begin(), incl.end());
      std::vector<int> img(h);
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      FiniteGroup gimg = sub_as_group(g, img);
      std::vector<int> h_onto(h.size());
      for (std::size_t x = 0; x < h.size(); ++x)
        h_onto[x] = static_cast<int>(
            std::lower_bound(img.begin(), img.end(), h[x]) - img.begin());
      r = check_kernel_exactness(gpp, gp, gimg, incl, h_onto, index_bound);
      ++rep.run;
      if (!r.agree()) fail("exactness mismatch on " + tag);
      if (rep.run >= instances) break;
    }
  }
  return rep;
}

namespace {

int joint_orbit_count(const QAction& q) {
  std::vector<int> uf(q.n_components);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
  for (const auto& [v, rows] : q.vertex_act)
    for (const auto& row : rows)
      for (int c = 0; c < q.n_components; ++c) unite(c, row[c]);
  for (const auto& [e, row] : q.edge_act)
    for (int c = 0; c < q.n_components; ++c) unite(c, row[c]);
  int n = 0;
  for (int c = 0; c < q.n_components; ++c)
    if (find(c) == c) ++n;
  return n;
}

}  // namespace

SuiteReport run_lcs_suite(std::uint64_t seed, int instances) {
  SuiteReport rep;
  auto fail = [&](const std::string& s) {
    ++rep.failed;
    rep.failures.push_back(s);
  };
  for (int i = 0; i < instances; ++i) {
    ++rep.run;
    std::uint64_t s = seed * 1000003ull + static_cast<std::uint64_t>(i);
    std::string tag = "instance " + std::to_string(i);
    auto inst = sample_descent_instance(s);
    if (!validate_descent(inst->descent).ok) {
      fail(tag + ": sampled descent datum invalid");
      continue;
    }
    LcsSystem sys = discretize_descent(inst->descent);
    Sampler rng(s ^ 0x9e3779b97f4a7c15ull);
    shuffle_lcs_fibers(sys, rng);
    if (!validate_lcs(sys).ok) {
      fail(tag + ": shuffled system invalid");
      continue;
    }
    QAction q = q_functor(sys, inst->tree);
    SystemDecomposition dec = decompose_system(sys);
    int orbits = joint_orbit_count(q);
    if (orbits != dec.n_components)
      fail(tag + ": " + std::to_string(orbits) + " orbits vs " +
           std::to_string(dec.n_components) + " components");
    if (dec.n_components == 1 && orbits != 1)
      fail(tag + ": connected system with disconnected image");
  }
  return rep;
}

SuiteReport run_descent_suite(std::uint64_t seed, int instances) {
  SuiteReport rep;
  auto fail = [&](const std::string& s) {
    ++rep.failed;
    rep.failures.push_back(s);
  };
  for (int i = 0; i < instances; ++i) {
    ++rep.run;
    std::uint64_t s = seed * 1000003ull + static_cast<std::uint64_t>(i);
    std::string tag = "instance " + std::to_string(i);
    auto inst = sample_descent_instance(s);
    LcsSystem sys = discretize_descent(inst->descent);
    DescentDatum back = rebuild_descent(sys);
    if (!descent_isomorphic(inst->descent, back))
      fail(tag + ": descent -> system -> descent changed the datum");
    Sampler rng(s ^ 0xd1b54a32d192ed03ull);
    shuffle_lcs_fibers(sys, rng);
    if (!validate_lcs(sys).ok) {
      fail(tag + ": shuffled system invalid");
      continue;
    }
    LcsSystem again = discretize_descent(rebuild_descent(sys));
    if (!lcs_isomorphic(sys, again))
      fail(tag + ": system -> descent -> system changed the system");

    // ordered reduction round trip over the indexed triple complex
    TwoComplex pc = product_complex(3);
    const FiniteGroup& g = inst->grp;
    GroupData pgd = constant_group_data(pc, g);
    std::vector<int> z = center_of(g);
    std::vector<int> zpick(3);
    for (int k = 0; k < 3; ++k) zpick[k] = z[rng.pick(0, z.size() - 1)];
    GSet reg = coset_action(g, {g.identity()});
    DescentDatum full;
    full.cx = &pc;
    full.gd = &pgd;
    for (const std::string& v : pc.e0) {
      full.fiber[v] = reg.n_points;
      full.act[v] = reg.act;
    }
    for (const TwoComplex::Edge& e : pc.e1) {
      int i1 = std::stoi(e.d1), j1 = std::stoi(e.d0);
      int c = g.mul(zpick[i1], g.inv(zpick[j1]));
      full.phi[e.id] = reg.act[c];
    }
    if (!validate_descent(full).ok) {
      fail(tag + ": ordered test datum invalid");
      continue;
    }
    OrderedDatum od = ordered_reduction(full);
    DescentDatum rec = ordered_reconstruction(od);
    if (!descent_isomorphic(full, rec))
      fail(tag + ": ordered reduction round trip changed the datum");
  }
  return rep;
}

SuiteReport run_looplike_suite(int depth) {
  SuiteReport rep;
  auto fail = [&](const std::string& s) {
    ++rep.failed;
    rep.failures.push_back(s);
  };
  auto demo = build_looplike_demo(depth);
  const GroupContext& ctx = demo->ctx;
  const DistContext& dctx = *demo->dctx;

  ++rep.run;
  ValidationReport fv = demo->fam.validate(ctx);
  if (!fv.ok) fail("test set family invalid: " + fv.issues.front());
  ++rep.run;
  ValidationReport ev = demo->eta.validate(ctx);
  if (!ev.ok) fail("correction data invalid: " + ev.issues.front());

  ++rep.run;
  PhiReport phi = verify_phi_identities(demo->eta, ctx, dctx, demo->samples,
                                        demo->cx.e0);
  if (!phi.ok) fail("word action identities: " + phi.failures.front());

  // eta transports of arranged Galois elements are certified products of
  // looplike words, and certified members fix the model base point
  std::vector<char> arranged_mask(demo->gal.size(), 0);
  for (int s : demo->arranged) arranged_mask[s] = 1;
  for (int s = 0; s < demo->gal.size(); ++s) {
    const std::pair<std::string, std::string> dirs[2] = {{"v", "w"},
                                                         {"w", "v"}};
    for (const auto& [x, y] : dirs) {
      ++rep.run;
      Word w = demo->eta.eta_path(x, y, s, ctx, dctx);
      VCertificate cert = v_membership_bounded(w, demo->fam, ctx, dctx);
      std::string tag = "eta(" + x + "->" + y + ") at sigma " +
                        demo->gal.elem_name(s);
      if (arranged_mask[s]) {
        if (!cert.found) {
          fail(tag + ": no membership certificate");
          continue;
        }
        if (!fixes_base(w, demo->model))
          fail(tag + ": certified word moves the base point");
        for (const Word& f : cert.factors) {
          if (!is_looplike(f, demo->fam, ctx, dctx).value)
            fail(tag + ": certificate factor is not looplike");
          if (!fixes_base(f, demo->model))
            fail(tag + ": looplike factor moves the base point");
        }
      } else if (cert.found) {
        fail(tag + ": unexpected certificate for an unarranged element");
      }
    }
  }

  // a few handmade members and non-members
  {
    ++rep.run;
    Word w = {Atom::vertex("w", 6), Atom::vertex("v", 3), Atom::vertex("w", 3)};
    VCertificate cert = v_membership_bounded(w, demo->fam, ctx, dctx);
    if (!cert.found || !fixes_base(w, demo->model))
      fail("handmade member rejected or moved the base point");
    ++rep.run;
    Word bad = {Atom::vertex("v", 1)};
    if (v_membership_bounded(bad, demo->fam, ctx, dctx).found)
      fail("level-1-nontrivial letter certified as a member");
  }

  ++rep.run;
  StabilityReport st = verify_relation_stability(demo->gd, demo->tree,
                                                 demo->eta, demo->arranged,
                                                 "v");
  if (st.inconclusive) ++rep.skipped;
  if (!st.r1_ok || !st.r2_ok)
    fail("relation stability: " +
         (st.notes.empty() ? std::string("failed") : st.notes.front()));
  return rep;
}

}  // namespace pvk
