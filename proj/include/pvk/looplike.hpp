#ifndef PVK_LOOPLIKE_HPP_
#define PVK_LOOPLIKE_HPP_

// Openness machinery over a graph of groups: the asymmetric letter
// distance, the weight N of a word, the looplike predicate against a
// family of Galois test sets, certified membership in the subgroup the
// looplike elements generate, and the Galois word action built from the
// per-edge correction elements delta/theta.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvk/complexes.hpp"
#include "pvk/words.hpp"

namespace pvk {

// Tree distances and edge endpoints used by the letter distance.  For an
// oriented edge letter e, vert_minus is the origin and vert_plus the
// target; an inverse letter swaps them.
struct DistContext {
  const GraphWithTree* tree = nullptr;

  explicit DistContext(const GraphWithTree& t);

  int tree_dist(const std::string& v, const std::string& w) const;
  // Vertices of the unique simple tree path, v first, w last.
  std::vector<std::string> tree_path(const std::string& v,
                                     const std::string& w) const;
  const std::string& vert_minus(const std::string& edge_id) const;  // origin
  const std::string& vert_plus(const std::string& edge_id) const;   // target

 private:
  std::map<std::string, int> vidx_;
  std::vector<std::vector<int>> dist_;    // pairwise tree distances
  std::vector<std::vector<int>> parent_;  // parent_[root][v]: next hop to root
  std::vector<std::string> verts_;
};

// Four-case distance on letters; not symmetric.  Edge letters must be
// plain (exponent +-1).
int dist(const Atom& a, const Atom& b, const DistContext& ctx);

// The weight N(w) = sum of dist over adjacent letter pairs, plus one.
// Letters are indexed right to left, so the pair order is exactly the
// storage order.  Requires a plain word of odd length.
long long n_of_word(const Word& w, const DistContext& ctx);

// Galois test sets: for each vertex v and weight N up to `depth`, a finite
// set on which the vertex group acts through a quotient; the orbit of any
// point is regular for that quotient.  Non-tree edge letters act on a
// cyclic set of size lcm(1..depth) by translation.
struct TestSetFamily {
  int depth = 1;
  // (vertex id, N) -> action table [group element][point]
  std::map<std::pair<std::string, int>, std::vector<std::vector<int>>> vact;
  // (vertex id, N) -> surjection c^{N+1} -> c^N (keyed by the lower N)
  std::map<std::pair<std::string, int>, std::vector<int>> down;

  int points(const std::string& v, int n) const;
  bool vertex_trivial(const std::string& v, int n, int g) const;
  long long edge_modulus() const;  // lcm(1..depth)

  ValidationReport validate(const GroupContext& ctx) const;
};

// Register the level-N set of v as the regular orbit of a quotient of the
// working group, given the full projection map onto the quotient.
void set_level_from_quotient(TestSetFamily& fam, const std::string& v, int n,
                             const FiniteGroup& quot,
                             const std::vector<int>& proj);

struct LooplikeVerdict {
  bool value = false;
  bool inconclusive = false;  // family shallower than N(w)
  std::string reason;
  long long n = 0;  // N(w) when defined
};

// The mirror predicate: w plain of length 2m+1, homes palindromic, the
// middle letter and every mirror-pair product act trivially on the test
// set of their home at level N(w).
LooplikeVerdict is_looplike(const Word& w, const TestSetFamily& fam,
                            const GroupContext& ctx, const DistContext& dctx);

struct VCertificate {
  bool found = false;
  bool exhausted = true;  // false when the step bound cut the search
  std::vector<Word> factors;  // looplike words multiplying to the input
};

// Semi-decision for membership in the subgroup generated by looplike
// elements: search factorizations of the plain form into contiguous
// looplike chunks.  The identity gets the empty certificate.
VCertificate v_membership_bounded(const Word& g, const TestSetFamily& fam,
                                  const GroupContext& ctx,
                                  const DistContext& dctx,
                                  long long step_bound = 100000);

// A pointed permutation action used to check that certified members fix
// the base point: each vertex group and each non-tree edge letter acts.
struct BasedAction {
  int n_points = 0;
  int base = 0;
  std::map<std::string, std::vector<std::vector<int>>> vact;  // per vertex
  std::map<std::string, std::vector<int>> eact;               // per edge
};

int apply_word(const Word& w, const BasedAction& act, int point);
bool fixes_base(const Word& w, const BasedAction& act);

// Per-edge correction elements: for every edge E and Galois element s,
// delta lives in the group at the origin and theta in the group at the
// target, each a cocycle for the Galois conjugation action on that group.
struct EtaData {
  const GraphWithTree* tree = nullptr;
  const FiniteGroup* gal = nullptr;
  std::map<std::pair<std::string, int>, int> delta;  // (edge id, sigma)
  std::map<std::pair<std::string, int>, int> theta;
  // Conjugation action of the Galois level on each vertex group:
  // gal_conj[v][sigma][g].
  std::map<std::string, std::vector<std::vector<int>>> gal_conj;

  ValidationReport validate(const GroupContext& ctx) const;

  int conj(const std::string& v, int sigma, int g) const;
  // eta for one edge traversal: delta^-1 theta read origin -> target, the
  // inverse when traversed target -> origin.
  Word eta_edge(const std::string& edge_id, bool forward, int sigma,
                const GroupContext& ctx) const;
  // eta along the unique tree path from v to w (empty when v == w).
  Word eta_path(const std::string& v, const std::string& w, int sigma,
                const GroupContext& ctx, const DistContext& dctx) const;
};

// The word action phi_{v0}(sigma): vertex letters are conjugated and
// sandwiched between eta transports to and from the base vertex, edge
// letters additionally absorb delta^-1 and theta.  Output is unreduced.
Word sigma_action(int sigma, const std::string& v0, const Word& w,
                  const EtaData& eta, const GroupContext& ctx,
                  const DistContext& dctx);

struct PhiReport {
  bool ok = true;
  long long checks = 0;
  std::vector<std::string> failures;
};

// Exhaustive over the Galois level: the composition law
// phi(t) . phi(s) = phi(ts) for every sample word and base vertex, and the
// base-change identity phi_{v1}(s)(w) = eta_{s,v1->v0} phi_{v0}(s)(w)
// eta_{s,v1->v0}^-1 for every ordered vertex pair.
PhiReport verify_phi_identities(const EtaData& eta, const GroupContext& ctx,
                                const DistContext& dctx,
                                const std::vector<Word>& samples,
                                const std::vector<std::string>& base_vertices);

struct StabilityReport {
  bool r1_ok = true;
  bool r2_ok = true;
  bool inconclusive = false;
  std::vector<std::string> notes;
};

// Edge relations are carried by the action to exact conjugates of edge
// relations (checked by free-product conjugacy on cyclically reduced
// words); face relations to conjugates of face relations modulo the edge
// relations (bounded rewriting).
StabilityReport verify_relation_stability(const GroupData& gd,
                                          const GraphWithTree& tree,
                                          const EtaData& eta,
                                          const std::vector<int>& sigmas,
                                          const std::string& base_vertex,
                                          int rewrite_budget = 20000);

}  // namespace pvk

#endif  // PVK_LOOPLIKE_HPP_
