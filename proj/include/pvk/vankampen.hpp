#ifndef PVK_VANKAMPEN_HPP_
#define PVK_VANKAMPEN_HPP_

// Presentations of the glued fundamental data: one finite vertex group per
// component, one free letter per non-tree edge, edge relations
//   (origin boundary of g) e (target boundary of g)^-1 e^-1
// and the nine-letter face relations with the twisting elements.  Tree
// edges contribute the empty word.  The observable used for comparing
// presentations is the number of homomorphisms into finite test groups.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pvk/complexes.hpp"
#include "pvk/words.hpp"

namespace pvk {

struct Presentation {
  struct VertexFamily {
    std::string name;
    const FiniteGroup* grp = nullptr;
  };
  std::vector<VertexFamily> families;
  std::vector<std::string> edge_gens;
  std::vector<Word> relations;

  GroupContext context() const;
  const FiniteGroup& family_group(const std::string& name) const;
  // budget estimate: candidate assignments into a test group of size q
  unsigned long long assignment_space(int q) const;
};

Presentation build_presentation(const GroupData& gd, const GraphWithTree& tree);

// Number of pairs (per-family homomorphism into f, element of f per edge
// letter) under which every relation evaluates to the identity.  Counting
// splits into independent chunks over the assignment space; the parallel
// kernel and the serial reference must agree.
unsigned long long count_homs(const Presentation& p, const FiniteGroup& f,
                              unsigned long long budget = 1ull << 26);
unsigned long long count_homs_serial(const Presentation& p,
                                     const FiniteGroup& f,
                                     unsigned long long budget = 1ull << 26);

// Agreement of the homomorphism counts over a family of test groups (the
// chosen equivalence observable; no claim beyond the tested family).
struct EquivReport {
  bool equal = true;
  std::vector<std::string> lines;  // one per test group
};
EquivReport presentation_equiv(const Presentation& a, const Presentation& b,
                               const std::vector<const FiniteGroup*>& tests,
                               unsigned long long budget = 1ull << 26);

// A map of presentations: each source family is sent through a full element
// map into a target family, each source edge letter to a word in the
// target.  The report confirms that the image of every source relation can
// be rewritten to the empty word using the target relations (bounded
// search; `inconclusive` when the budget runs out).
struct PresentationMap {
  std::map<std::string, std::string> family_to;             // family name map
  std::map<std::string, std::vector<int>> family_elem_map;  // full element maps
  std::map<std::string, Word> edge_to;
};

struct FunctorialReport {
  bool maps_are_homs = false;
  bool relations_derivable = false;
  bool inconclusive = false;
  std::vector<std::string> notes;
};

FunctorialReport functorial_map(const Presentation& src,
                                const Presentation& dst,
                                const PresentationMap& map,
                                int rewrite_budget = 20000);

// Bounded Dehn-style rewriting: repeatedly replace an occurrence of at
// least half of a relator by the inverse of the rest; breadth-first with a
// step budget.  Returns 1 (trivial), 0 (not shown trivial), -1 (budget).
int rewrite_to_trivial(const Word& w, const std::vector<Word>& relators,
                       const GroupContext& ctx, int budget);

}  // namespace pvk

#endif  // PVK_VANKAMPEN_HPP_
