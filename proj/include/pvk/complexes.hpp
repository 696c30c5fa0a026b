#ifndef PVK_COMPLEXES_HPP_
#define PVK_COMPLEXES_HPP_

// Two-dimensional complexes (vertices, oriented edges, triangle faces),
// twisted group data on them, locally constant set systems, the functor
// down to actions of the fundamental data, and descent data with the
// triangle cocycle condition.
//
// Conventions: for an edge e, boundary 0 is the target and boundary 1 the
// origin.  For a face f with vertices (v0, v1, v2), boundary k is the edge
// omitting vertex k, so d2 f = v0 -> v1, d0 f = v1 -> v2, d1 f = v0 -> v2.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pvk/groups.hpp"

namespace pvk {

struct TwoComplex {
  struct Edge {
    std::string id;
    std::string d0;  // target vertex
    std::string d1;  // origin vertex
  };
  struct Face {
    std::string id;
    std::string d0, d1, d2;  // edge ids
  };

  std::vector<std::string> e0;
  std::vector<Edge> e1;
  std::vector<Face> e2;

  void validate() const;  // ids unique, boundaries resolve, vertex identities
  const Edge& edge(const std::string& id) const;
  const Face& face(const std::string& id) const;
  bool has_edge(const std::string& id) const;
  // vertex i of a face (derived from the simplicial identities), i in 0..2
  std::string face_vertex(const Face& f, int i) const;
};

// A spanning tree of the 1-skeleton plus the data derived from it.
struct GraphWithTree {
  const TwoComplex* cx = nullptr;
  std::vector<std::string> tree_edges;  // subset of e1, by id

  bool in_tree(const std::string& edge_id) const;
  int pi1_rank() const;  // |E1| - |tree|
};

// Deterministic spanning tree: breadth-first from the lexicographically
// least vertex, edges examined in id order.  Rejects disconnected graphs.
GraphWithTree spanning_tree(const TwoComplex& cx);

// Twisted group data: a finite level group per simplex, a homomorphism per
// boundary map (including the composite face-to-vertex maps), and the
// twisting elements alpha making each composite square commute up to inner
// automorphism.
struct GroupData {
  const TwoComplex* cx = nullptr;
  std::map<std::string, const FiniteGroup*> grp;  // per simplex id
  // edge id, i -> full map G(e) -> G(vertex d_i e); face id, k -> full map
  // G(f) -> G(edge d_k f); face-to-vertex composites keyed by vertex slot.
  std::map<std::pair<std::string, int>, std::vector<int>> edge_bnd;
  std::map<std::pair<std::string, int>, std::vector<int>> face_bnd;
  std::map<std::pair<std::string, int>, std::vector<int>> face_vertex;
  // (face id, edge slot k, edge end) -> element of the group at that end's
  // vertex; `end` is 0 for the target of d_k f and 1 for its origin.
  std::map<std::tuple<std::string, int, int>, int> alpha;

  const FiniteGroup& group_at(const std::string& id) const;
  const std::vector<int>& bnd_edge(const std::string& e, int i) const;
  const std::vector<int>& bnd_face(const std::string& f, int k) const;
  const std::vector<int>& bnd_face_vertex(const std::string& f, int i) const;
  int alpha_at(const std::string& f, int k, int end) const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
};

// Check all boundary maps are homomorphisms and the six squares per face
// commute after conjugating by alpha.
ValidationReport validate_group_data(const GroupData& gd);

// Group data with identical groups, identity boundaries and trivial alpha
// at every simplex (the untwisted case).
GroupData constant_group_data(const TwoComplex& cx, const FiniteGroup& g);

// Locally constant system: a finite fiber per simplex with an action of the
// simplex group, and a bijective equivariant comparison map per boundary
// map, satisfying the alpha-twisted triangle law.
struct LcsSystem {
  const TwoComplex* cx = nullptr;
  const GroupData* gd = nullptr;
  std::map<std::string, int> fiber;                           // per simplex
  std::map<std::string, std::vector<std::vector<int>>> act;   // per simplex
  std::map<std::pair<std::string, int>, std::vector<int>> m_edge;        // e, i
  std::map<std::pair<std::string, int>, std::vector<int>> m_face;        // f, k
  std::map<std::pair<std::string, int>, std::vector<int>> m_face_vertex; // f, i
};

ValidationReport validate_lcs(const LcsSystem& sys);

// The action the system induces on the components of its tree-restricted
// total graph: vertex groups act through their fibers, a non-tree edge acts
// by transporting along its comparison maps, tree edges act trivially.
struct QAction {
  const TwoComplex* cx = nullptr;
  const GroupData* gd = nullptr;
  GraphWithTree tree;
  int n_components = 0;
  std::map<std::string, std::vector<int>> component_of;      // vertex id -> per fiber point
  std::map<std::string, std::vector<std::vector<int>>> vertex_act;  // per vertex group elem
  std::map<std::string, std::vector<int>> edge_act;          // per edge id, on components
};

QAction q_functor(const LcsSystem& sys, const GraphWithTree& tree);

// Finest decomposition into subsystems: points across all fibers are glued
// by the group actions and the comparison maps.
struct SystemDecomposition {
  int n_components = 0;
  std::map<std::string, std::vector<int>> component_of;  // simplex id -> per point
};
SystemDecomposition decompose_system(const LcsSystem& sys);

// Descent datum: a fiber with group action per vertex and an equivariant
// gluing bijection per edge (from the target pullback to the origin
// pullback).  The cocycle condition is the alpha-twisted triangle identity
// over each face.
struct DescentDatum {
  const TwoComplex* cx = nullptr;
  const GroupData* gd = nullptr;
  std::map<std::string, int> fiber;                          // per vertex
  std::map<std::string, std::vector<std::vector<int>>> act;  // per vertex
  std::map<std::string, std::vector<int>> phi;  // per edge: X'(target) -> X'(origin)
};

ValidationReport validate_descent(const DescentDatum& d);

// Equivalence between descent data and locally constant systems.
LcsSystem discretize_descent(const DescentDatum& d);
DescentDatum rebuild_descent(const LcsSystem& sys);

// Isomorphism test used by the round-trip checks (explicit per-simplex
// bijections commuting with actions and comparison maps).
bool lcs_isomorphic(const LcsSystem& a, const LcsSystem& b);
bool descent_isomorphic(const DescentDatum& a, const DescentDatum& b);

// ---- ordered reduction over an indexed disjoint union ----

// The full pair/triple complex over indices 0..n-1: vertices "i", edges
// "i,j" (origin i, target j), faces "i,j,k".
TwoComplex product_complex(int n);

// A datum over product_complex(n) reduced to the strictly increasing part.
struct OrderedDatum {
  int n = 0;
  const GroupData* gd = nullptr;  // over the full product complex
  std::map<std::string, int> fiber;
  std::map<std::string, std::vector<std::vector<int>>> act;
  std::map<std::string, std::vector<int>> phi;  // only edges "i,j" with i < j
};

// Keep only the increasing edges/faces of a full datum.
OrderedDatum ordered_reduction(const DescentDatum& d);

// Reconstruct the full datum: identity on the diagonal, inverses across it;
// verifies the cocycle on all n^3 faces.  Requires the diagonal structure
// maps to be injective (identity boundaries), else input_error.
DescentDatum ordered_reconstruction(const OrderedDatum& o);

}  // namespace pvk

#endif  // PVK_COMPLEXES_HPP_
