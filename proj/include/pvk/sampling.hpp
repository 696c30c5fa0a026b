#ifndef PVK_SAMPLING_HPP_
#define PVK_SAMPLING_HPP_

// Seeded generation of valid test instances: small group corpus, random
// complexes with untwisted constant group data, random descent data (built
// from central gluings and relabelled fiberwise so the instances do not
// look special), and the derived locally constant systems.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "pvk/complexes.hpp"
#include "pvk/looplike.hpp"

namespace pvk {

struct Sampler {
  std::mt19937_64 eng;
  explicit Sampler(std::uint64_t seed) : eng(seed) {}
  int pick(int lo, int hi);  // inclusive
  std::vector<int> permutation(int n);
};

// All groups of order <= max_order from the builder set (cyclics, dihedral,
// symmetric, alternating, quaternion, units, and a few direct products).
std::vector<FiniteGroup> group_corpus_up_to(int max_order);

// A self-contained instance; the inner pointers target the sibling fields,
// so the struct lives on the heap and is not copyable.
struct SampledInstance {
  TwoComplex cx;
  FiniteGroup grp;
  GroupData gd;        // constant data over cx with group grp
  GraphWithTree tree;
  DescentDatum descent;

  SampledInstance() = default;
  SampledInstance(const SampledInstance&) = delete;
  SampledInstance& operator=(const SampledInstance&) = delete;
};

// Random complex shape, random small group, random vertex action on at
// most max_fiber points, gluing bijections from central elements, the
// whole thing relabelled by random per-vertex bijections.
std::unique_ptr<SampledInstance> sample_descent_instance(std::uint64_t seed,
                                                         int max_fiber = 6);

// Fiberwise relabelling of a system by random bijections (validity is
// preserved; used to un-special-case discretized systems).
void shuffle_lcs_fibers(LcsSystem& sys, Sampler& rng);

// A fixed two-vertex configuration exercising the Galois word action: both
// vertex groups are Z/9, the Galois level is the units modulo 9 acting by
// multiplication, the correction elements are the cyclotomic differences
// (1 - chi(sigma)) and the test sets are the mod-3 and mod-9 regular
// orbits.  Used by the looplike suite and the command-line front end.
struct LooplikeDemo {
  TwoComplex cx;
  FiniteGroup z9, z3, gal;
  GroupData gd;  // constant Z/9 data over cx
  GraphWithTree tree;
  std::unique_ptr<DistContext> dctx;
  GroupContext ctx;
  TestSetFamily fam;
  EtaData eta;
  std::vector<int> arranged;  // sigma acting trivially on the level-1 sets
  std::vector<Word> samples;
  BasedAction model;  // compatible pointed action (mod-3 translations)

  LooplikeDemo() = default;
  LooplikeDemo(const LooplikeDemo&) = delete;
  LooplikeDemo& operator=(const LooplikeDemo&) = delete;
};

std::unique_ptr<LooplikeDemo> build_looplike_demo(int depth = 5);

// Shared seeded property suites, used by the command-line front end and
// the acceptance harness.  `failed` counts property violations, `skipped`
// counts instances the checker could not decide (budget or window).
struct SuiteReport {
  int run = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<std::string> failures;
};

// Translation dictionary: sample group pairs from the corpus, enumerate
// the homomorphisms between them, and check items embedding, dense-iff-
// connected, normal image and kernel exactness on each.
SuiteReport run_dict_suite(std::uint64_t seed, int instances, int max_order,
                           int index_bound);

// Discretized random descent data: validity, orbit count of the induced
// component action against the system decomposition, connectedness.
SuiteReport run_lcs_suite(std::uint64_t seed, int instances);

// Round trips descent -> system -> descent and system -> descent -> system
// up to isomorphism, plus the ordered reduction/reconstruction round trip.
SuiteReport run_descent_suite(std::uint64_t seed, int instances);

// The fixed demo: family and cocycle validation, the composition and
// base-change identities, membership certificates for the eta transports
// of arranged Galois elements, base-point stabilization of certified
// members, and relation stability.
SuiteReport run_looplike_suite(int depth = 5);

}  // namespace pvk

#endif  // PVK_SAMPLING_HPP_
