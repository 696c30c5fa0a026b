#include "pvk/vankampen.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pvk {

GroupContext Presentation::context() const {
  GroupContext ctx;
  for (const auto& fam : families) ctx.groups[fam.name] = fam.grp;
  return ctx;
}

const FiniteGroup& Presentation::family_group(const std::string& name) const {
  for (const auto& fam : families)
    if (fam.name == name) return *fam.grp;
  throw input_error("unknown vertex family: " + name);
}

unsigned long long Presentation::assignment_space(int q) const {
  unsigned long long total = 1;
  auto mul_checked = [&](unsigned long long f) {
    if (f != 0 && total > ~0ull / f) total = ~0ull;
    else total *= f;
  };
  for (const auto& fam : families) {
    std::size_t g = fam.grp->generators().size();
    for (std::size_t i = 0; i < g; ++i) mul_checked(q);
  }
  for (std::size_t i = 0; i < edge_gens.size(); ++i) mul_checked(q);
  return total;
}

Presentation build_presentation(const GroupData& gd, const GraphWithTree& tree) {
  const TwoComplex& cx = *gd.cx;
  Presentation p;
  for (const auto& v : cx.e0) p.families.push_back({v, &gd.group_at(v)});
  for (const auto& e : cx.e1)
    if (!tree.in_tree(e.id)) p.edge_gens.push_back(e.id);
  auto edge_word = [&](const std::string& id, long long exp) -> Word {
    if (tree.in_tree(id)) return {};  // tree edges carry the empty word
    return {Atom::edge(id, exp)};
  };
  for (const auto& e : cx.e1) {
    const FiniteGroup& ge = gd.group_at(e.id);
    for (int g : ge.generators()) {
      Word w;
      w.push_back(Atom::vertex(e.d1, gd.bnd_edge(e.id, 1)[g]));
      Word fwd = edge_word(e.id, 1);
      w.insert(w.end(), fwd.begin(), fwd.end());
      const FiniteGroup& gt = gd.group_at(e.d0);
      w.push_back(Atom::vertex(e.d0, gt.inv(gd.bnd_edge(e.id, 0)[g])));
      Word bwd = edge_word(e.id, -1);
      w.insert(w.end(), bwd.begin(), bwd.end());
      p.relations.push_back(std::move(w));
    }
  }
  for (const auto& f : cx.e2) {
    std::string v0 = cx.face_vertex(f, 0);
    std::string v1 = cx.face_vertex(f, 1);
    std::string v2 = cx.face_vertex(f, 2);
    const FiniteGroup& g0 = gd.group_at(v0);
    const FiniteGroup& g1 = gd.group_at(v1);
    const FiniteGroup& g2 = gd.group_at(v2);
    Word w;
    auto append = [&](Word part) {
      w.insert(w.end(), part.begin(), part.end());
    };
    append(edge_word(f.d2, 1));
    w.push_back(Atom::vertex(v1, gd.alpha_at(f.id, 2, 0)));
    w.push_back(Atom::vertex(v1, g1.inv(gd.alpha_at(f.id, 0, 1))));
    append(edge_word(f.d0, 1));
    w.push_back(Atom::vertex(v2, gd.alpha_at(f.id, 0, 0)));
    w.push_back(Atom::vertex(v2, g2.inv(gd.alpha_at(f.id, 1, 0))));
    append(edge_word(f.d1, -1));
    w.push_back(Atom::vertex(v0, gd.alpha_at(f.id, 1, 1)));
    w.push_back(Atom::vertex(v0, g0.inv(gd.alpha_at(f.id, 2, 1))));
    p.relations.push_back(std::move(w));
  }
  return p;
}

namespace {

// relation compiled against a fixed family/edge numbering
struct CompiledLetter {
  bool is_edge = false;
  int index = 0;       // family index or edge index
  int elem = 0;        // vertex letters
  long long exp = 0;   // edge letters
};

std::vector<std::vector<CompiledLetter>> compile_relations(
    const Presentation& p) {
  std::map<std::string, int> fam_idx, edge_idx;
  for (std::size_t i = 0; i < p.families.size(); ++i)
    fam_idx[p.families[i].name] = static_cast<int>(i);
  for (std::size_t i = 0; i < p.edge_gens.size(); ++i)
    edge_idx[p.edge_gens[i]] = static_cast<int>(i);
  std::vector<std::vector<CompiledLetter>> out;
  for (const Word& r : p.relations) {
    std::vector<CompiledLetter> cr;
    for (const Atom& a : r) {
      CompiledLetter cl;
      if (a.kind == Atom::Kind::trivial) continue;
      if (a.kind == Atom::Kind::vertex) {
        cl.is_edge = false;
        cl.index = fam_idx.at(a.owner);
        cl.elem = a.elem;
      } else {
        auto it = edge_idx.find(a.owner);
        if (it == edge_idx.end()) continue;  // tree edge: empty word
        cl.is_edge = true;
        cl.index = it->second;
        cl.exp = a.exp;
      }
      cr.push_back(cl);
    }
    out.push_back(std::move(cr));
  }
  return out;
}

bool relations_hold(const std::vector<std::vector<CompiledLetter>>& rels,
                    const FiniteGroup& f,
                    const std::vector<const std::vector<int>*>& homs,
                    const std::vector<int>& edge_img) {
  for (const auto& r : rels) {
    int acc = 0;
    for (const CompiledLetter& cl : r)
      acc = f.mul(acc, cl.is_edge ? f.pow(edge_img[cl.index], cl.exp)
                                  : (*homs[cl.index])[cl.elem]);
    if (acc != 0) return false;
  }
  return true;
}

struct AssignmentSpace {
  std::vector<std::vector<std::vector<int>>> fam_homs;  // per family
  unsigned long long total = 1;
};

AssignmentSpace hom_space(const Presentation& p, const FiniteGroup& f,
                          unsigned long long budget) {
  if (p.assignment_space(f.size()) > budget)
    throw input_error("hom counting budget exceeded");
  AssignmentSpace sp;
  for (const auto& fam : p.families) {
    sp.fam_homs.push_back(all_homs(*fam.grp, f));
    sp.total *= sp.fam_homs.back().size();
  }
  for (std::size_t i = 0; i < p.edge_gens.size(); ++i)
    sp.total *= static_cast<unsigned long long>(f.size());
  return sp;
}

}  // namespace

unsigned long long count_homs(const Presentation& p, const FiniteGroup& f,
                              unsigned long long budget) {
  AssignmentSpace sp = hom_space(p, f, budget);
  auto rels = compile_relations(p);
  int nf = static_cast<int>(p.families.size());
  int ne = static_cast<int>(p.edge_gens.size());
  unsigned long long count = 0;
  unsigned long long total = sp.total;
#ifdef _OPENMP
#pragma omp parallel reduction(+ : count)
#endif
  {
#ifdef _OPENMP
    int tid = omp_get_thread_num();
    int nthreads = omp_get_num_threads();
#else
    int tid = 0;
    int nthreads = 1;
#endif
    unsigned long long lo = total / nthreads * tid +
                            std::min<unsigned long long>(tid, total % nthreads);
    unsigned long long len = total / nthreads + (tid < static_cast<int>(total % nthreads) ? 1 : 0);
    // decode the first assignment of the chunk, then step through the rest
    // like an odometer: family digits first, edge digits above them
    std::vector<int> digit(nf + ne, 0);
    std::vector<const std::vector<int>*> homs(nf);
    std::vector<int> edge_img(ne);
    unsigned long long c = lo;
    for (int i = 0; i < nf; ++i) {
      digit[i] = static_cast<int>(c % sp.fam_homs[i].size());
      homs[i] = &sp.fam_homs[i][digit[i]];
      c /= sp.fam_homs[i].size();
    }
    for (int i = 0; i < ne; ++i) {
      digit[nf + i] = static_cast<int>(c % f.size());
      edge_img[i] = digit[nf + i];
      c /= f.size();
    }
    for (unsigned long long done = 0; done < len; ++done) {
      if (relations_hold(rels, f, homs, edge_img)) ++count;
      for (int i = 0; i < nf + ne; ++i) {
        int radix = i < nf ? static_cast<int>(sp.fam_homs[i].size())
                           : f.size();
        if (++digit[i] == radix) {
          digit[i] = 0;
        } else {
          if (i < nf)
            homs[i] = &sp.fam_homs[i][digit[i]];
          else
            edge_img[i - nf] = digit[i];
          break;
        }
        if (i < nf)
          homs[i] = &sp.fam_homs[i][0];
        else
          edge_img[i - nf] = 0;
      }
    }
  }
  return count;
}

unsigned long long count_homs_serial(const Presentation& p,
                                     const FiniteGroup& f,
                                     unsigned long long budget) {
  // straightforward nested recursion kept as the reference implementation
  AssignmentSpace sp = hom_space(p, f, budget);
  GroupContext ctx = p.context();
  int nf = static_cast<int>(p.families.size());
  int ne = static_cast<int>(p.edge_gens.size());
  std::vector<const std::vector<int>*> homs(nf);
  std::vector<int> edge_img(ne);
  unsigned long long count = 0;
  auto eval = [&]() {
    for (const Word& r : p.relations) {
      int acc = 0;
      for (const Atom& a : r) {
        if (a.kind == Atom::Kind::trivial) continue;
        if (a.kind == Atom::Kind::vertex) {
          int fi = 0;
          while (p.families[fi].name != a.owner) ++fi;
          acc = f.mul(acc, (*homs[fi])[a.elem]);
        } else {
          auto it = std::find(p.edge_gens.begin(), p.edge_gens.end(), a.owner);
          if (it == p.edge_gens.end()) continue;
          acc = f.mul(acc, f.pow(edge_img[it - p.edge_gens.begin()], a.exp));
        }
      }
      if (acc != 0) return false;
    }
    return true;
  };
  std::function<void(int)> go = [&](int slot) {
    if (slot == nf + ne) {
      if (eval()) ++count;
      return;
    }
    if (slot < nf) {
      for (const auto& h : sp.fam_homs[slot]) {
        homs[slot] = &h;
        go(slot + 1);
      }
    } else {
      for (int x = 0; x < f.size(); ++x) {
        edge_img[slot - nf] = x;
        go(slot + 1);
      }
    }
  };
  go(0);
  return count;
}

EquivReport presentation_equiv(const Presentation& a, const Presentation& b,
                               const std::vector<const FiniteGroup*>& tests,
                               unsigned long long budget) {
  EquivReport rep;
  for (const FiniteGroup* f : tests) {
    unsigned long long ca = count_homs(a, *f, budget);
    unsigned long long cb = count_homs(b, *f, budget);
    rep.lines.push_back(f->name() + ": " + std::to_string(ca) + " vs " +
                        std::to_string(cb));
    if (ca != cb) rep.equal = false;
  }
  return rep;
}

// ---- bounded rewriting ----

namespace {

// canonical form for matching: reduced, with edge powers split into steps
Word expanded_form(const Word& w, const GroupContext& ctx) {
  Word red = reduce(w, ctx);
  Word out;
  for (const Atom& a : red) {
    if (a.kind == Atom::Kind::edge) {
      long long step = a.exp > 0 ? 1 : -1;
      for (long long i = 0; i != a.exp; i += step)
        out.push_back(Atom::edge(a.owner, step));
    } else {
      out.push_back(a);
    }
  }
  return out;
}

std::string word_key(const Word& w) {
  std::string s;
  for (const Atom& a : w) {
    s += a.kind == Atom::Kind::edge ? "e" : "v";
    s += a.owner;
    s += ":";
    s += std::to_string(a.kind == Atom::Kind::edge ? a.exp : a.elem);
    s += ";";
  }
  return s;
}

}  // namespace

int rewrite_to_trivial(const Word& w, const std::vector<Word>& relators,
                       const GroupContext& ctx, int budget) {
  Word start = expanded_form(w, ctx);
  if (start.empty()) return 1;
  // all rotations of every relator and its inverse, in expanded form
  std::vector<Word> variants;
  for (const Word& r : relators) {
    for (const Word& base : {expanded_form(r, ctx),
                             expanded_form(invert(r, ctx), ctx)}) {
      if (base.empty()) continue;
      for (std::size_t rot = 0; rot < base.size(); ++rot) {
        Word v(base.begin() + rot, base.end());
        v.insert(v.end(), base.begin(), base.begin() + rot);
        variants.push_back(expanded_form(v, ctx));
      }
    }
  }
  std::queue<Word> work;
  std::set<std::string> seen;
  work.push(start);
  seen.insert(word_key(start));
  int steps = 0;
  while (!work.empty()) {
    if (++steps > budget) return -1;
    Word cur = work.front();
    work.pop();
    for (const Word& var : variants) {
      // replace an occurrence of at least half the relator by the rest
      for (std::size_t cut = (var.size() + 1) / 2; cut <= var.size(); ++cut) {
        Word prefix(var.begin(), var.begin() + cut);
        Word tail_inv = invert(Word(var.begin() + cut, var.end()), ctx);
        if (prefix.size() > cur.size()) continue;
        for (std::size_t at = 0; at + prefix.size() <= cur.size(); ++at) {
          if (!std::equal(prefix.begin(), prefix.end(), cur.begin() + at))
            continue;
          Word next(cur.begin(), cur.begin() + at);
          next.insert(next.end(), tail_inv.begin(), tail_inv.end());
          next.insert(next.end(), cur.begin() + at + prefix.size(), cur.end());
          next = expanded_form(next, ctx);
          if (next.empty()) return 1;
          std::string key = word_key(next);
          if (seen.insert(key).second) work.push(next);
        }
      }
    }
  }
  return 0;
}

FunctorialReport functorial_map(const Presentation& src,
                                const Presentation& dst,
                                const PresentationMap& map,
                                int rewrite_budget) {
  FunctorialReport rep;
  GroupContext dctx = dst.context();
  rep.maps_are_homs = true;
  for (const auto& fam : src.families) {
    auto to = map.family_to.find(fam.name);
    auto em = map.family_elem_map.find(fam.name);
    if (to == map.family_to.end() || em == map.family_elem_map.end()) {
      rep.maps_are_homs = false;
      rep.notes.push_back("no image specified for family " + fam.name);
      continue;
    }
    if (!is_hom(*fam.grp, dst.family_group(to->second), em->second)) {
      rep.maps_are_homs = false;
      rep.notes.push_back("family map at " + fam.name + " is not a homomorphism");
    }
  }
  if (!rep.maps_are_homs) return rep;
  auto translate = [&](const Word& w) {
    Word out;
    for (const Atom& a : w) {
      if (a.kind == Atom::Kind::trivial) continue;
      if (a.kind == Atom::Kind::vertex) {
        out.push_back(Atom::vertex(map.family_to.at(a.owner),
                                   map.family_elem_map.at(a.owner)[a.elem]));
      } else {
        auto it = map.edge_to.find(a.owner);
        Word img = it != map.edge_to.end() ? it->second
                                           : Word{Atom::edge(a.owner, 1)};
        long long step = a.exp > 0 ? 1 : -1;
        Word img_step = step > 0 ? img : invert(img, dctx);
        for (long long i = 0; i != a.exp; i += step)
          out.insert(out.end(), img_step.begin(), img_step.end());
      }
    }
    return out;
  };
  rep.relations_derivable = true;
  for (const Word& r : src.relations) {
    int res = rewrite_to_trivial(translate(r), dst.relations, dctx,
                                 rewrite_budget);
    if (res == 0) {
      rep.relations_derivable = false;
      rep.notes.push_back("image relation not derivable: " +
                          word_to_string(r, src.context()));
    } else if (res == -1) {
      rep.inconclusive = true;
      rep.notes.push_back("rewriting budget exhausted on: " +
                          word_to_string(r, src.context()));
    }
  }
  if (rep.inconclusive) rep.relations_derivable = false;
  return rep;
}

}  // namespace pvk
