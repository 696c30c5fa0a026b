// Benchmark: the parallel homomorphism-count kernel against the serial
// reference, on the nodal presentation and on a free-rank presentation,
// over a few test groups.  Prints wall times and verifies agreement.

#include <chrono>
#include <cstdio>
#include <vector>

#include "pvk/counterexamples.hpp"
#include "pvk/vankampen.hpp"

using namespace pvk;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void run_case(const char* label, const Presentation& p, const FiniteGroup& f) {
  unsigned long long budget = 1ull << 28;
  auto t0 = std::chrono::steady_clock::now();
  unsigned long long serial = count_homs_serial(p, f, budget);
  double ts = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  unsigned long long parallel = count_homs(p, f, budget);
  double tp = seconds_since(t0);
  std::printf("%-24s into %-6s count=%-10llu serial=%8.4fs parallel=%8.4fs %s\n",
              label, f.name().c_str(), parallel, ts, tp,
              serial == parallel ? "agree" : "MISMATCH");
}

}  // namespace

int main() {
  FiniteGroup triv = FiniteGroup::trivial_group();
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  FiniteGroup d4 = FiniteGroup::dihedral(4);
  FiniteGroup q8 = FiniteGroup::quaternion8();
  FiniteGroup a4 = FiniteGroup::alternating(4);

  Presentation nodal_triv = nodal_presentation(triv);
  Presentation nodal_z2 = nodal_presentation(z2);
  Presentation nodal_s3 = nodal_presentation(s3);

  for (const FiniteGroup* f : {&s3, &d4, &q8, &a4}) {
    run_case("nodal (trivial level)", nodal_triv, *f);
    run_case("nodal (Z/2 level)", nodal_z2, *f);
  }
  run_case("nodal (S3 level)", nodal_s3, s3);
  run_case("nodal (S3 level)", nodal_s3, d4);

  // heavier loads: free presentations enumerate |F|^rank assignments
  Presentation free6, free8;
  for (int i = 1; i <= 8; ++i) {
    if (i <= 6) free6.edge_gens.push_back("x" + std::to_string(i));
    free8.edge_gens.push_back("x" + std::to_string(i));
  }
  run_case("free rank 6", free6, a4);
  run_case("free rank 8", free8, d4);
  run_case("free rank 6", free6, FiniteGroup::symmetric(4));
  return 0;
}
