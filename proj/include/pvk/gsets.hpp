#ifndef PVK_GSETS_HPP_
#define PVK_GSETS_HPP_

// Finite-level G-sets and the translation dictionary between properties of
// group homomorphisms and properties of the pullback functors on actions.
// Each dictionary check computes both sides independently and reports
// mismatches; the action catalogs are built from subgroup lattices.

#include <string>
#include <vector>

#include "pvk/groups.hpp"

namespace pvk {

// Action of one finite level on a finite carrier.  A carrier entry may be
// marked as escaping the window (act value kWindowEdge) when the set is a
// window into a countable carrier; orbits through such points are reported
// as truncated rather than silently wrapped.
struct GSet {
  static constexpr int kWindowEdge = -1;

  const FiniteGroup* grp = nullptr;
  int n_points = 0;
  std::vector<std::vector<int>> act;  // act[group elem][point], may be kWindowEdge

  void validate() const;  // identity acts as id; composition respected where defined
  bool total() const;     // no window-edge entries
};

GSet coset_action(const FiniteGroup& g, const std::vector<int>& subgroup);

struct OrbitDecomposition {
  std::vector<std::vector<int>> blocks;
  std::vector<bool> truncated;  // per block: ran off the window edge
};
OrbitDecomposition orbits(const GSet& x);

// Pullback along a level homomorphism f : G'' -> G' (full element map).
GSet pullback(const FiniteGroup& src, const std::vector<int>& f, const GSet& y);

// Every orbit trivial (pointwise fixed)?
bool is_completely_decomposed(const GSet& x);

bool is_transitive(const GSet& x);
bool has_fixed_point(const GSet& x);

// Equivariant maps between total G-sets over the same group.
bool is_equivariant(const GSet& x, const GSet& y, const std::vector<int>& map);
bool exists_equivariant_injection(const GSet& x, const GSet& y);
bool exists_equivariant_surjection(const GSet& x, const GSet& y);
bool isomorphic_gsets(const GSet& x, const GSet& y);

// ---- dictionary checks ----
// Each check takes level homomorphisms (full element maps between finite
// levels) and walks a catalog of transitive actions obtained from the
// subgroup lattice, up to the given index bound.

struct DictReport {
  bool group_side = false;  // property of the homomorphism(s)
  bool gset_side = false;   // property of the pullback functor(s)
  bool agree() const { return group_side == gset_side; }
  std::vector<std::string> notes;
};

// Item: h' is an embedding  <=>  every X admits X' with X' ->> X and an
// injection X' -> h'^* Y for some Y.
DictReport check_embedding(const FiniteGroup& gpp, const FiniteGroup& gp,
                           const std::vector<int>& hp, int index_bound);

// Item: h has dense image  <=>  pullback preserves connectedness.
DictReport check_dense_iff_connected(const FiniteGroup& gp,
                                     const FiniteGroup& g,
                                     const std::vector<int>& h,
                                     int index_bound);

// Item: the closed image of h' is normal  <=>  every pullback with a fixed
// point is completely decomposed.
DictReport check_normal_image(const FiniteGroup& gpp, const FiniteGroup& gp,
                              const std::vector<int>& hp, int index_bound);

// Item: the sequence G'' -> G' -> G is nearly exact at G'  <=>  every Y
// whose h'-pullback is completely decomposed comes from G.  Precondition:
// the composite kills G'' (checked, and returned in `notes` if violated).
DictReport check_kernel_exactness(const FiniteGroup& gpp,
                                  const FiniteGroup& gp, const FiniteGroup& g,
                                  const std::vector<int>& hp,
                                  const std::vector<int>& h, int index_bound);

// Two commuting families of permutations make the carrier a product-group
// action: verify g1 g2 . s == g2 g1 . s pointwise.
bool product_commutation(const std::vector<std::vector<int>>& fam1,
                         const std::vector<std::vector<int>>& fam2,
                         int n_points);

}  // namespace pvk

#endif  // PVK_GSETS_HPP_
