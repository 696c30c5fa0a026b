#ifndef PVK_COUNTEREXAMPLES_HPP_
#define PVK_COUNTEREXAMPLES_HPP_

// Executable reconstructions of the worked examples: the interval set with
// two staggered cyclic actions and its Frobenius obstruction, the Borel
// coset obstruction, the nodal-curve presentation and the wedge gluing.

#include <string>
#include <vector>

#include "pvk/padics.hpp"
#include "pvk/vankampen.hpp"

namespace pvk {

// A window of the countable set carrying two actions: generator one cycles
// each a-interval (sizes l, l^3, l^5, ...), generator two each b-interval
// (sizes l^2, l^4, ...).  Only intervals complete inside the window act.
struct IntervalGSet {
  struct Interval {
    int level = 0;        // the interval has l^level points
    long long start = 0;  // first window position (0-based)
    long long size = 0;
  };

  long long l = 3;
  int depth = 3;
  long long window = 0;
  std::vector<Interval> a;  // odd levels, consecutive
  std::vector<Interval> b;  // even levels, consecutive
  long long s0 = 0;         // base point, in a_1 and b_2

  int a_index_of(long long pos) const;  // -1 when not covered
  int b_index_of(long long pos) const;
  long long act_a(long long pos, long long k) const;  // generator one, k-th power
  long long act_b(long long pos, long long k) const;
};

IntervalGSet build_interval_gset(long long l, int depth);

// Outcome of chasing a semilinear map fixing the base point: the values a
// conflicting point receives along the two label systems.
struct ContradictionReport {
  bool conflict = false;
  bool inconclusive = false;  // the deciding levels exceed the window
  long long q = 0;       // input multiplier
  long long q_used = 0;  // after the l-power fallback, reduced mod l^(m+2)
  int m = 0;             // largest level with q_used = 1 mod l^m
  long long point = -1;  // window position of the clash
  long long label_via_b = -1;  // forced value as a label of a_{m+1}
  long long label_via_a = -1;
  std::string detail;
};

ContradictionReport frobenius_obstruction(const IntervalGSet& s, long long q);

// Independent confirmation: the window is connected through overlapping
// intervals, so a candidate map is determined by the image of position 0.
// Every choice is propagated to a fixpoint and checked.
struct BruteForceReport {
  long long candidates = 0;
  long long consistent = 0;
  long long fixing_s0 = 0;
};

BruteForceReport brute_force_phi(const IntervalGSet& s, long long q_used);

// The matrix obstruction: the untwisted commutator word collapses to the
// identity, while the p-twisted variant has upper entry of valuation
// v_l(p(u1^p - u1)) - n and escapes the integral subgroup once n is large.
struct BorelReport {
  bool untwisted_in_u = false;
  bool twisted_b_zero = false;
  long long twisted_b_val = 0;  // valuation of the twisted upper entry
  bool obstruction = false;     // twisted word outside the integral Borel
  BorelElement untwisted, twisted;
};

BorelReport borel_obstruction(long long l, long long p, int n, int prec);

// The nodal curve: one vertex, the diagonal loop and the two gluing
// points, seven faces from the triple fiber product.
TwoComplex nodal_complex();

// Its fundamental-group presentation at a finite Galois level (the level
// group sits on every simplex, boundaries are identities).  The face
// relations collapse the three loops to a single one commuting with the
// level group.  The caller keeps gal_level alive.
Presentation nodal_presentation(const FiniteGroup& gal_level);

// Direct presentation of (level group) x Z, the comparison target.
Presentation product_with_z_presentation(const FiniteGroup& gal_level);

// Wedge of vertex spaces and loops over a shared Galois level: each vertex
// group carries an action of the level (conjugation), loops commute with
// it, and the per-component Galois copies are identified by sharing one
// family.
struct WedgeVertex {
  std::string name;
  const FiniteGroup* grp = nullptr;
  // action[sigma][g]: automorphism of grp per Galois element
  std::vector<std::vector<int>> action;
};

Presentation wedge_presentation(const std::vector<WedgeVertex>& vertices,
                                int loop_count,
                                const FiniteGroup& gal_level);

}  // namespace pvk

#endif  // PVK_COUNTEREXAMPLES_HPP_
