#include "pvk/gsets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace pvk {

void GSet::validate() const {
  if (!grp) throw input_error("gset: missing group");
  if (act.size() != static_cast<std::size_t>(grp->size()))
    throw input_error("gset: one permutation per group element required");
  for (const auto& row : act) {
    if (row.size() != static_cast<std::size_t>(n_points))
      throw input_error("gset: action row has wrong length");
    for (int v : row)
      if (v != kWindowEdge && (v < 0 || v >= n_points))
        throw input_error("gset: action value out of range");
  }
  for (int p = 0; p < n_points; ++p)
    if (act[0][p] != p) throw input_error("gset: identity must act trivially");
  for (int g = 0; g < grp->size(); ++g)
    for (int h = 0; h < grp->size(); ++h) {
      int gh = grp->mul(g, h);
      for (int p = 0; p < n_points; ++p) {
        int hp = act[h][p];
        if (hp == kWindowEdge) continue;
        int ghp = act[g][hp];
        if (ghp == kWindowEdge || act[gh][p] == kWindowEdge) continue;
        if (ghp != act[gh][p])
          throw input_error("gset: action does not respect multiplication");
      }
    }
}

bool GSet::total() const {
  for (const auto& row : act)
    for (int v : row)
      if (v == kWindowEdge) return false;
  return true;
}

GSet coset_action(const FiniteGroup& g, const std::vector<int>& subgroup) {
  if (!is_subgroup(g, subgroup)) throw input_error("coset_action: not a subgroup");
  std::vector<int> coset_of(g.size(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.size(); ++x) {
    if (coset_of[x] != -1) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int s : subgroup) coset_of[g.mul(x, s)] = c;
  }
  GSet out;
  out.grp = &g;
  out.n_points = static_cast<int>(reps.size());
  out.act.assign(g.size(), std::vector<int>(out.n_points));
  for (int x = 0; x < g.size(); ++x)
    for (int c = 0; c < out.n_points; ++c)
      out.act[x][c] = coset_of[g.mul(x, reps[c])];
  return out;
}

OrbitDecomposition orbits(const GSet& x) {
  std::vector<int> root(x.n_points);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (root[a] != a) a = root[a] = root[root[a]];
    return a;
  };
  std::vector<bool> touches_edge(x.n_points, false);
  for (int g = 0; g < x.grp->size(); ++g)
    for (int p = 0; p < x.n_points; ++p) {
      int q = x.act[g][p];
      if (q == GSet::kWindowEdge)
        touches_edge[p] = true;
      else
        root[find(p)] = find(q);
    }
  std::map<int, int> block_of;
  OrbitDecomposition out;
  for (int p = 0; p < x.n_points; ++p) {
    int r = find(p);
    auto [it, fresh] = block_of.try_emplace(r, static_cast<int>(out.blocks.size()));
    if (fresh) {
      out.blocks.emplace_back();
      out.truncated.push_back(false);
    }
    out.blocks[it->second].push_back(p);
    if (touches_edge[p]) out.truncated[it->second] = true;
  }
  return out;
}

GSet pullback(const FiniteGroup& src, const std::vector<int>& f, const GSet& y) {
  if (f.size() != static_cast<std::size_t>(src.size()))
    throw input_error("pullback: map has wrong size");
  GSet out;
  out.grp = &src;
  out.n_points = y.n_points;
  out.act.reserve(src.size());
  for (int x = 0; x < src.size(); ++x) out.act.push_back(y.act[f[x]]);
  return out;
}

bool is_completely_decomposed(const GSet& x) {
  for (int g = 0; g < x.grp->size(); ++g)
    for (int p = 0; p < x.n_points; ++p)
      if (x.act[g][p] != p) return false;
  return true;
}

bool is_transitive(const GSet& x) {
  OrbitDecomposition d = orbits(x);
  return d.blocks.size() == 1;
}

bool has_fixed_point(const GSet& x) {
  for (int p = 0; p < x.n_points; ++p) {
    bool fixed = true;
    for (int g = 0; g < x.grp->size(); ++g)
      if (x.act[g][p] != p) {
        fixed = false;
        break;
      }
    if (fixed) return true;
  }
  return false;
}

bool is_equivariant(const GSet& x, const GSet& y, const std::vector<int>& map) {
  for (int g = 0; g < x.grp->size(); ++g)
    for (int p = 0; p < x.n_points; ++p)
      if (map[x.act[g][p]] != y.act[g][map[p]]) return false;
  return true;
}

namespace {

// Equivariant maps are determined by one image per orbit; an image y for
// orbit representative p is legal when Stab(p) fixes y.  Backtracks over
// the per-orbit choices with an injectivity / surjectivity goal.
bool search_equivariant(const GSet& x, const GSet& y, bool want_injective,
                        bool want_surjective) {
  OrbitDecomposition dec = orbits(x);
  int nb = static_cast<int>(dec.blocks.size());
  std::vector<int> map(x.n_points, -1);
  std::vector<int> used(y.n_points, 0);
  std::function<bool(int)> go = [&](int b) -> bool {
    if (b == nb) {
      if (want_surjective)
        for (int c : used)
          if (!c) return false;
      return true;
    }
    int rep = dec.blocks[b][0];
    for (int img = 0; img < y.n_points; ++img) {
      bool ok = true;
      for (int g = 0; g < x.grp->size() && ok; ++g)
        if (x.act[g][rep] == rep && y.act[g][img] != img) ok = false;
      if (!ok) continue;
      // propagate along the orbit
      std::vector<std::pair<int, int>> placed;
      map[rep] = img;
      used[img]++;
      placed.emplace_back(rep, img);
      for (int g = 0; g < x.grp->size() && ok; ++g) {
        int p2 = x.act[g][rep], i2 = y.act[g][img];
        if (map[p2] == -1) {
          map[p2] = i2;
          used[i2]++;
          placed.emplace_back(p2, i2);
        } else if (map[p2] != i2) {
          ok = false;
        }
      }
      if (ok && want_injective)
        for (auto [p2, i2] : placed)
          if (used[i2] > 1) {
            ok = false;
            break;
          }
      if (ok && go(b + 1)) return true;
      for (auto [p2, i2] : placed) {
        map[p2] = -1;
        used[i2]--;
      }
    }
    return false;
  };
  return go(0);
}

}  // namespace

bool exists_equivariant_injection(const GSet& x, const GSet& y) {
  return search_equivariant(x, y, true, false);
}

bool exists_equivariant_surjection(const GSet& x, const GSet& y) {
  return search_equivariant(x, y, false, true);
}

bool isomorphic_gsets(const GSet& x, const GSet& y) {
  return x.n_points == y.n_points && search_equivariant(x, y, true, true);
}

// ---- dictionary checks ----

namespace {

bool injective_map(const std::vector<int>& f) {
  std::set<int> seen(f.begin(), f.end());
  return seen.size() == f.size();
}

bool surjective_map(const std::vector<int>& f, int target_size) {
  std::set<int> seen(f.begin(), f.end());
  return static_cast<int>(seen.size()) == target_size;
}

}  // namespace

DictReport check_embedding(const FiniteGroup& gpp, const FiniteGroup& gp,
                           const std::vector<int>& hp, int index_bound) {
  DictReport rep;
  rep.group_side = injective_map(hp);
  auto cat_pp = subgroups_of_index_at_most(gpp, index_bound);
  auto cat_p = subgroups_of_index_at_most(gp, index_bound);
  rep.gset_side = true;
  for (const auto& u : cat_pp) {
    GSet x = coset_action(gpp, u);
    bool covered = false;
    for (const auto& w : cat_pp) {
      GSet xp = coset_action(gpp, w);
      if (!exists_equivariant_surjection(xp, x)) continue;
      for (const auto& v : cat_p) {
        GSet y = pullback(gpp, hp, coset_action(gp, v));
        if (exists_equivariant_injection(xp, y)) {
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered) {
      rep.gset_side = false;
      rep.notes.push_back("no refinement embeds for a subgroup of index " +
                          std::to_string(gpp.size() / u.size()));
      break;
    }
  }
  return rep;
}

DictReport check_dense_iff_connected(const FiniteGroup& gp,
                                     const FiniteGroup& g,
                                     const std::vector<int>& h,
                                     int index_bound) {
  DictReport rep;
  rep.group_side = surjective_map(h, g.size());
  rep.gset_side = true;
  for (const auto& u : subgroups_of_index_at_most(g, index_bound)) {
    GSet y = coset_action(g, u);
    if (!is_transitive(pullback(gp, h, y))) {
      rep.gset_side = false;
      rep.notes.push_back("pullback of a transitive action of index " +
                          std::to_string(g.size() / u.size()) +
                          " is disconnected");
      break;
    }
  }
  return rep;
}

DictReport check_normal_image(const FiniteGroup& gpp, const FiniteGroup& gp,
                              const std::vector<int>& hp, int index_bound) {
  DictReport rep;
  std::vector<int> im(hp);
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  rep.group_side = is_normal(gp, im);
  rep.gset_side = true;
  for (const auto& u : subgroups_of_index_at_most(gp, index_bound)) {
    GSet x = pullback(gpp, hp, coset_action(gp, u));
    if (has_fixed_point(x) && !is_completely_decomposed(x)) {
      rep.gset_side = false;
      rep.notes.push_back("a pullback with a fixed point is not completely "
                          "decomposed (index " +
                          std::to_string(gp.size() / u.size()) + ")");
      break;
    }
  }
  return rep;
}

DictReport check_kernel_exactness(const FiniteGroup& gpp,
                                  const FiniteGroup& gp, const FiniteGroup& g,
                                  const std::vector<int>& hp,
                                  const std::vector<int>& h, int index_bound) {
  DictReport rep;
  for (int x = 0; x < gpp.size(); ++x)
    if (h[hp[x]] != 0) {
      rep.notes.push_back("precondition violated: composite is nontrivial");
      return rep;
    }
  std::vector<int> im(hp);
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  std::vector<int> ker;
  for (int x = 0; x < gp.size(); ++x)
    if (h[x] == 0) ker.push_back(x);
  rep.group_side = normal_closure(gp, im) == ker;

  auto cat_p = subgroups_of_index_at_most(gp, index_bound);
  auto cat = subgroups_of_index_at_most(g, index_bound);
  rep.gset_side = true;
  for (const auto& u : cat_p) {
    GSet y = coset_action(gp, u);
    if (!is_completely_decomposed(pullback(gpp, hp, y))) continue;
    bool from_base = false;
    for (const auto& u0 : cat) {
      if (isomorphic_gsets(pullback(gp, h, coset_action(g, u0)), y)) {
        from_base = true;
        break;
      }
    }
    if (!from_base) {
      rep.gset_side = false;
      rep.notes.push_back("a decomposed-pullback action of index " +
                          std::to_string(gp.size() / u.size()) +
                          " does not descend");
      break;
    }
  }
  return rep;
}

bool product_commutation(const std::vector<std::vector<int>>& fam1,
                         const std::vector<std::vector<int>>& fam2,
                         int n_points) {
  for (const auto& p1 : fam1)
    for (const auto& p2 : fam2)
      for (int s = 0; s < n_points; ++s)
        if (p1[p2[s]] != p2[p1[s]]) return false;
  return true;
}

}  // namespace pvk
