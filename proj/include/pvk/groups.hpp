#ifndef PVK_GROUPS_HPP_
#define PVK_GROUPS_HPP_

// Finite groups, quotient towers and level-wise approximations of
// topological groups by their finite quotients.  Everything downstream
// (G-sets, presentations, descent) works with one finite level at a time;
// the tower types keep the levels and the transition maps together.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pvk {

// Thrown when input data violates a documented precondition.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A finite group with a fixed element enumeration; identity is element 0.
// Groups up to kTableCap elements keep a full multiplication table, larger
// groups built from permutation generators multiply permutations directly.
class FiniteGroup {
 public:
  static constexpr std::size_t kTableCap = 5000;

  FiniteGroup() = default;

  static FiniteGroup from_table(std::string name,
                                std::vector<std::string> elem_names,
                                std::vector<int> table);
  static FiniteGroup trivial_group();
  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);  // order 2n, n >= 1
  static FiniteGroup symmetric(int n);
  static FiniteGroup alternating(int n);
  static FiniteGroup quaternion8();
  static FiniteGroup units_mod(int n);  // multiplicative group (Z/n)^x
  static FiniteGroup from_perm_gens(std::string name, int degree,
                                    std::vector<std::vector<int>> gens);
  static FiniteGroup direct_product(const FiniteGroup& a,
                                    const FiniteGroup& b);
  // action[q][k]: the automorphism of `k_grp` attached to element q of
  // `q_grp`, as a permutation of the elements of `k_grp`.
  static FiniteGroup semidirect(const FiniteGroup& k_grp,
                                const FiniteGroup& q_grp,
                                const std::vector<std::vector<int>>& action);

  int size() const { return n_; }
  int identity() const { return 0; }
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  int conj(int a, int b) const { return mul(mul(a, b), inv(a)); }  // a b a^-1
  int pow(int a, long long e) const;
  int order_of(int a) const;
  bool is_abelian() const;

  const std::string& name() const { return name_; }
  const std::string& elem_name(int i) const { return names_[i]; }
  int elem_index(const std::string& s) const;  // -1 if absent

  // A small generating sequence (greedy, deterministic); cached.
  const std::vector<int>& generators() const;

  // For products/semidirects built by the factories above: decode element
  // i into its (first, second) factor pair.  Empty unless product-like.
  bool is_pair_coded() const { return pair_second_size_ > 0; }
  std::pair<int, int> pair_of(int i) const;
  int pair_index(int first, int second) const;

 private:
  void finish();  // compute inverses, validate group axioms

  std::string name_;
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<int> table_;  // row-major n*n, empty when perm backend in use
  std::vector<int> inv_;
  // permutation backend (used only above kTableCap)
  int degree_ = 0;
  std::vector<std::vector<int>> perms_;
  std::unordered_map<std::string, int> perm_index_;
  int pair_second_size_ = 0;
  mutable std::vector<int> gens_;  // cache
};

// ---- subgroup machinery (all at a single finite level) ----

std::vector<int> subgroup_closure(const FiniteGroup& g,
                                  const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h);
bool is_normal(const FiniteGroup& g, const std::vector<int>& h);
std::vector<int> normal_closure(const FiniteGroup& g,
                                const std::vector<int>& gens);
std::vector<int> centralizer(const FiniteGroup& g, const std::vector<int>& s);
std::vector<int> conjugate_subgroup(const FiniteGroup& g,
                                    const std::vector<int>& h, int x);
bool conjugate_subgroups(const FiniteGroup& g, const std::vector<int>& h1,
                         const std::vector<int>& h2);
// Every subgroup, found by closing unions of cyclic subgroups to a fixpoint.
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g);
// Subgroups of index <= bound (convenience filter over all_subgroups).
std::vector<std::vector<int>> subgroups_of_index_at_most(const FiniteGroup& g,
                                                         int bound);

// Quotient of g by a normal subgroup: the coset group plus the projection.
struct QuotientResult {
  FiniteGroup group;
  std::vector<int> proj;  // g element -> quotient element
};
QuotientResult quotient(const FiniteGroup& g, const std::vector<int>& n);

// Full element maps g -> f that are homomorphisms.
bool is_hom(const FiniteGroup& g, const FiniteGroup& f,
            const std::vector<int>& map);
std::vector<std::vector<int>> all_homs(const FiniteGroup& g,
                                       const FiniteGroup& f);

// ---- towers and approximations ----

// Finite quotients levels[0] <- levels[1] <- ... with surjective
// transition homomorphisms down[i] : levels[i+1] -> levels[i].
struct QuotientTower {
  std::vector<FiniteGroup> levels;
  std::vector<std::vector<int>> down;
  void validate() const;
  int project(int from_level, int to_level, int elem) const;
};

// A topological group presented through its finite approximations.
class ApproxGroup {
 public:
  enum class Kind { finite, free_discrete, tower, product, semidirect };

  static ApproxGroup finite(FiniteGroup g);
  static ApproxGroup free_discrete(int rank);
  static ApproxGroup tower(QuotientTower t);
  static ApproxGroup product(std::shared_ptr<const ApproxGroup> a,
                             std::shared_ptr<const ApproxGroup> b);
  // action[level][q][k] as in FiniteGroup::semidirect, one matrix per level,
  // compatible with the transition maps of both factors.
  static ApproxGroup semidirect(std::shared_ptr<const ApproxGroup> k,
                                std::shared_ptr<const ApproxGroup> q,
                                std::vector<std::vector<std::vector<int>>> action);

  Kind kind() const { return kind_; }
  int free_rank() const { return free_rank_; }
  bool has_levels() const { return kind_ != Kind::free_discrete; }
  int depth() const;
  // Level access; a plain finite group serves every level.
  const FiniteGroup& level(int i) const;
  int project(int from_level, int to_level, int elem) const;
  const QuotientTower& tower() const { return tw_; }
  const ApproxGroup& factor(int i) const;

 private:
  Kind kind_ = Kind::finite;
  int free_rank_ = 0;
  QuotientTower tw_;
  std::shared_ptr<const ApproxGroup> fac_a_, fac_b_;
};

// Level-wise homomorphism between approximations.  For a free source the
// per-level data is the list of generator images; otherwise a full element
// map per level.  Squares against the transition maps must commute.
struct Homomorphism {
  const ApproxGroup* src = nullptr;
  const ApproxGroup* dst = nullptr;
  int depth = 0;
  std::vector<std::vector<int>> maps;  // maps[level][elem or generator]

  void validate() const;
  int apply(int level, int src_elem) const;  // finite/tower source only
  std::vector<int> image(int level) const;   // subgroup of dst.level(level)
  std::vector<int> kernel(int level) const;  // finite/tower source only
};

// Compatible family of subgroups H_n <= G_n with transitions mapping
// H_{n+1} onto H_n.
struct ApproxSubgroup {
  const ApproxGroup* grp = nullptr;
  std::vector<std::vector<int>> elems;  // per level, sorted

  void validate() const;
  bool transitions_surjective() const;
};

// Thick closure.  On a compatible family this is the identity; a family
// with non-surjective transitions is rejected (the closure would have to
// look past the available depth).
ApproxSubgroup thick_closure(const ApproxSubgroup& h);

// Smallest normal thickly-closed subgroup containing h: level-wise normal
// closure (compatibility is preserved).
ApproxSubgroup smallest_normal_thickly_closed(const ApproxSubgroup& h);

// Does the image of f meet every finite level of the target fully?
bool has_dense_image(const Homomorphism& f);

// Quotient by a normal compatible family, taken level by level.
ApproxGroup noohi_quotient(const ApproxGroup& g, const ApproxSubgroup& n);

// Report for the semidirect verification: the ambient product is built per
// level and the defining relation q k q^-1 = (q acting on k) is checked
// exhaustively.
struct SemidirectReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<FiniteGroup> levels;  // the semidirect products
};
SemidirectReport semidirect_check(const ApproxGroup& k, const ApproxGroup& q,
                                  const std::vector<std::vector<std::vector<int>>>& action);

// Shadow of the N V = closure(N) V identity: given a (possibly
// incompatible) level family n_family and an open subgroup v at `level`,
// compare the coset products using the family as given and using its
// depth-bounded compatibilization.
struct ClosureConsistencyReport {
  bool equal = true;
  std::size_t product_size_raw = 0;
  std::size_t product_size_closed = 0;
};
ClosureConsistencyReport quotient_by_closure_consistency(
    const ApproxGroup& g, const std::vector<std::vector<int>>& n_family,
    const std::vector<int>& v, int level);

}  // namespace pvk

#endif  // PVK_GROUPS_HPP_
