#include "pvk/counterexamples.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace pvk {

namespace {

long long pos_mod(long long x, long long m) { return ((x % m) + m) % m; }

int index_of(const std::vector<IntervalGSet::Interval>& iv, long long pos) {
  for (std::size_t i = 0; i < iv.size(); ++i)
    if (pos >= iv[i].start && pos < iv[i].start + iv[i].size)
      return static_cast<int>(i);
  return -1;
}

}  // namespace

int IntervalGSet::a_index_of(long long pos) const { return index_of(a, pos); }
int IntervalGSet::b_index_of(long long pos) const { return index_of(b, pos); }

long long IntervalGSet::act_a(long long pos, long long k) const {
  int i = a_index_of(pos);
  if (i < 0) return pos;  // uncovered tail: fixed
  const Interval& iv = a[i];
  return iv.start + pos_mod(pos - iv.start + k, iv.size);
}

long long IntervalGSet::act_b(long long pos, long long k) const {
  int i = b_index_of(pos);
  if (i < 0) return pos;
  const Interval& iv = b[i];
  return iv.start + pos_mod(pos - iv.start + k, iv.size);
}

IntervalGSet build_interval_gset(long long l, int depth) {
  if (l < 3 || l % 2 == 0) throw input_error("prime must be odd");
  for (long long d = 3; d * d <= l; d += 2)
    if (l % d == 0) throw input_error("modulus is not prime");
  if (depth < 3) throw input_error("depth must be at least 3");
  IntervalGSet s;
  s.l = l;
  s.depth = depth;
  long long pos = 0;
  for (int m = 1; m <= depth; m += 2) {
    long long size = modulus_of(l, m);
    s.a.push_back({m, pos, size});
    pos += size;
  }
  long long a_end = pos;
  pos = 0;
  for (int m = 2; m <= depth; m += 2) {
    long long size = modulus_of(l, m);
    s.b.push_back({m, pos, size});
    pos += size;
  }
  s.window = std::max(a_end, pos);
  s.s0 = 0;
  // the staggered layout makes b_m start inside a_{m-1} and end inside
  // a_{m+1}; the overlap with a_{m+1} is an initial segment of it
  for (const IntervalGSet::Interval& bm : s.b) {
    int ai = s.a_index_of(bm.start + bm.size - 1);
    if (ai < 0 || s.a[ai].level != bm.level + 1) continue;  // window edge
    long long overlap = bm.start + bm.size - s.a[ai].start;
    if (overlap < 2)
      throw input_error("interval layout lost the two anchor labels");
  }
  return s;
}

namespace {

// Chase a semilinear map from one seed value to a fixpoint: an assignment
// phi(x) = y forces phi(gamma x) = gamma^q y along both interval families.
struct Propagation {
  bool consistent = true;
  long long clash_point = -1;
  long long clash_old = -1;
  long long clash_new = -1;
  std::vector<long long> phi;  // -1 where undetermined
};

Propagation propagate(const IntervalGSet& s, long long q, long long seed_pos,
                      long long seed_val, int max_level) {
  Propagation out;
  out.phi.assign(static_cast<std::size_t>(s.window), -1);
  std::deque<long long> work;
  auto assign = [&](long long x, long long y) {
    if (out.phi[x] == y) return;
    if (out.phi[x] != -1) {
      out.consistent = false;
      out.clash_point = x;
      out.clash_old = out.phi[x];
      out.clash_new = y;
      return;
    }
    out.phi[x] = y;
    work.push_back(x);
  };
  assign(seed_pos, seed_val);
  while (!work.empty() && out.consistent) {
    long long x = work.front();
    work.pop_front();
    long long y = out.phi[x];
    int ai = s.a_index_of(x);
    if (ai >= 0 && s.a[ai].level <= max_level) {
      if (s.a_index_of(y) != ai) {
        out.consistent = false;
        out.clash_point = x;
        out.clash_old = y;
        out.clash_new = -1;
        break;
      }
      assign(s.act_a(x, 1), s.act_a(y, q % s.a[ai].size));
    }
    if (!out.consistent) break;
    int bi = s.b_index_of(x);
    if (bi >= 0 && s.b[bi].level <= max_level) {
      if (s.b_index_of(y) != bi) {
        out.consistent = false;
        out.clash_point = x;
        out.clash_old = y;
        out.clash_new = -1;
        break;
      }
      assign(s.act_b(x, 1), s.act_b(y, q % s.b[bi].size));
    }
  }
  return out;
}

}  // namespace

ContradictionReport frobenius_obstruction(const IntervalGSet& s, long long q) {
  ContradictionReport rep;
  rep.q = q;
  if (q <= 0 || q % s.l == 0)
    throw input_error("multiplier must be positive and coprime to l");
  if ((q - 1) % s.l != 0)
    throw input_error("multiplier must be 1 modulo l");
  long long big = modulus_of(s.l, s.depth + 2);
  long long qu = q % big;
  auto level_of = [&](long long v) {
    int m = 0;
    while (m <= s.depth + 1 && (v - 1) % modulus_of(s.l, m + 1) == 0) ++m;
    return m;
  };
  int m = level_of(qu);
  // the construction needs an even m; replacing q by q^l bumps the exact
  // l-valuation of q - 1 by one
  while (m % 2 == 1 && m <= s.depth) {
    qu = pow_ll(qu, s.l, big);
    m = level_of(qu);
  }
  rep.q_used = qu;
  rep.m = m;
  if (m + 1 > s.depth) {
    rep.inconclusive = true;
    rep.detail = "consistent within the window: every generated level has "
                 "multiplier 1, the identity map satisfies all constraints";
    return rep;
  }
  // determine phi on all levels up to m from phi(s0) = s0
  Propagation low = propagate(s, qu, s.s0, s.s0, m);
  if (!low.consistent) {
    rep.conflict = true;
    rep.point = low.clash_point;
    rep.detail = "low levels already inconsistent";
    return rep;
  }
  const IntervalGSet::Interval* am1 = nullptr;
  for (const auto& iv : s.a)
    if (iv.level == m + 1) am1 = &iv;
  if (am1 == nullptr) throw input_error("window misses the deciding level");
  long long s1 = am1->start;      // label 0 of a_{m+1}
  long long s2 = am1->start + 1;  // label 1
  if (low.phi[s1] == -1 || low.phi[s2] == -1) {
    rep.inconclusive = true;
    rep.detail = "propagation through the low levels did not reach the "
                 "anchor labels";
    return rep;
  }
  rep.point = s2;
  rep.label_via_b = low.phi[s2] - am1->start;
  rep.label_via_a = pos_mod(low.phi[s1] - am1->start + qu, am1->size);
  rep.conflict = rep.label_via_a != rep.label_via_b;
  rep.detail = rep.conflict
                   ? "the two label systems force different images at the "
                     "second anchor of the deciding interval"
                   : "no conflict at the deciding interval";
  return rep;
}

BruteForceReport brute_force_phi(const IntervalGSet& s, long long q_used) {
  BruteForceReport rep;
  rep.candidates = s.window;
  for (long long t = 0; t < s.window; ++t) {
    Propagation pr = propagate(s, q_used, 0, t, s.depth);
    if (!pr.consistent) continue;
    ++rep.consistent;
    if (pr.phi[s.s0] == s.s0) ++rep.fixing_s0;
  }
  return rep;
}

BorelReport borel_obstruction(long long l, long long p, int n, int prec) {
  if (p < 2 || p == l) throw input_error("twisting prime must differ from l");
  if (n < 1) throw input_error("conjugation exponent must be positive");
  long long u1 = unit_generator(l);
  auto s = [&](long long v) { return PadicScalar::from_integer(l, prec, v); };
  std::vector<BorelLetter> untwisted = {
      {4, -n, {}, false},  {1, 1, {}, false},
      {3, 1, {}, false},   {1, -1, {}, false},
      {3, 0, padic_neg(s(u1)), true},
      {4, n, {}, false}};
  std::vector<BorelLetter> twisted = {
      {4, -n, {}, false},  {1, p, {}, false},
      {3, p, {}, false},   {1, -p, {}, false},
      {3, 0, padic_neg(s(p * u1)), true},
      {4, n, {}, false}};
  BorelReport rep;
  rep.untwisted = psi_word(l, prec, untwisted);
  rep.twisted = psi_word(l, prec, twisted);
  rep.untwisted_in_u = in_integral_borel(rep.untwisted);
  rep.twisted_b_zero = rep.twisted.b.is_zero();
  rep.twisted_b_val = rep.twisted_b_zero ? 0 : rep.twisted.b.val;
  rep.obstruction = !in_integral_borel(rep.twisted);
  return rep;
}

TwoComplex nodal_complex() {
  TwoComplex cx;
  cx.e0 = {"C"};
  cx.e1 = {{"CC", "C", "C"}, {"p01", "C", "C"}, {"p10", "C", "C"}};
  auto pair_edge = [](int x, int y) -> std::string {
    if (x == y) return "CC";
    return x == 0 ? "p01" : "p10";
  };
  cx.e2.push_back({"CCC", "CC", "CC", "CC"});
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int c = 0; c <= 1; ++c) {
        if (a == b && b == c) continue;
        std::string id = "p" + std::to_string(a) + std::to_string(b) +
                         std::to_string(c);
        cx.e2.push_back({id, pair_edge(b, c), pair_edge(a, c),
                         pair_edge(a, b)});
      }
  cx.validate();
  return cx;
}

Presentation nodal_presentation(const FiniteGroup& gal_level) {
  TwoComplex cx = nodal_complex();
  GroupData gd = constant_group_data(cx, gal_level);
  GraphWithTree tree = spanning_tree(cx);
  return build_presentation(gd, tree);
}

Presentation product_with_z_presentation(const FiniteGroup& gal_level) {
  Presentation p;
  p.families.push_back({"G", &gal_level});
  p.edge_gens.push_back("z");
  for (int g : gal_level.generators())
    p.relations.push_back({Atom::vertex("G", g), Atom::edge("z", 1),
                           Atom::vertex("G", gal_level.inv(g)),
                           Atom::edge("z", -1)});
  return p;
}

Presentation wedge_presentation(const std::vector<WedgeVertex>& vertices,
                                int loop_count,
                                const FiniteGroup& gal_level) {
  if (loop_count < 0) throw input_error("negative loop count");
  Presentation p;
  p.families.push_back({"Gal", &gal_level});
  for (const WedgeVertex& v : vertices) {
    if (v.grp == nullptr) throw input_error("wedge vertex without a group");
    const FiniteGroup& g = *v.grp;
    if (static_cast<int>(v.action.size()) != gal_level.size())
      throw input_error("wedge vertex " + v.name +
                        ": action rows do not match the Galois level");
    for (int s = 0; s < gal_level.size(); ++s) {
      std::vector<char> seen(g.size(), 0);
      for (int x : v.action[s]) seen[x] = 1;
      if (!is_hom(g, g, v.action[s]) ||
          std::count(seen.begin(), seen.end(), 1) != g.size())
        throw input_error("wedge vertex " + v.name +
                          ": action is not by automorphisms");
    }
    for (int x = 0; x < g.size(); ++x)
      if (v.action[gal_level.identity()][x] != x)
        throw input_error("wedge vertex " + v.name +
                          ": Galois identity acts nontrivially");
    for (int t = 0; t < gal_level.size(); ++t)
      for (int s = 0; s < gal_level.size(); ++s)
        for (int x = 0; x < g.size(); ++x)
          if (v.action[gal_level.mul(t, s)][x] != v.action[t][v.action[s][x]])
            throw input_error("wedge vertex " + v.name +
                              ": action is not a Galois action");
    p.families.push_back({v.name, v.grp});
  }
  std::vector<std::string> loops;
  for (int i = 1; i <= loop_count; ++i) {
    loops.push_back("z" + std::to_string(i));
    p.edge_gens.push_back(loops.back());
  }
  for (const WedgeVertex& v : vertices)
    for (int s : gal_level.generators())
      for (int g : v.grp->generators())
        p.relations.push_back(
            {Atom::vertex("Gal", s), Atom::vertex(v.name, g),
             Atom::vertex("Gal", gal_level.inv(s)),
             Atom::vertex(v.name, v.grp->inv(v.action[s][g]))});
  for (const std::string& z : loops)
    for (int s : gal_level.generators())
      p.relations.push_back({Atom::vertex("Gal", s), Atom::edge(z, 1),
                             Atom::vertex("Gal", gal_level.inv(s)),
                             Atom::edge(z, -1)});
  return p;
}

}  // namespace pvk
