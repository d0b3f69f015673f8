#pragma once

// Freeness tests, branch-and-bound maximum-free-set search, image location
// profiles, and the seeded exploration harness for no-free-set hunting.

#include <cstdint>
#include <string>
#include <vector>

#include "smlab/core.hpp"
#include "smlab/rng.hpp"

namespace smlab {

// H is free when every k-subset of H has an image disjoint from H.
// Subsets smaller than the arity are free vacuously.
bool is_free(const SetMapping& f, Mask H);

struct FreeSearchResult {
  int max_size = 0;
  std::vector<int> witness;  // lexicographically least among optima
  std::uint64_t nodes_explored = 0;
  bool exhausted = false;    // true: max_size is proved optimal
};

// Depth-first include/exclude search over elements in increasing order with
// incremental freeness checking. The bound |chosen| + |still-addable| prunes
// branches that cannot beat the incumbent, so the first strict improvement
// found is the lexicographically least optimum.
FreeSearchResult max_free_set(const SetMapping& f,
                              std::uint64_t budget = kDefaultSearchBudget);
FreeSearchResult max_free_set(const GammaFamily& gamma, int k,
                              std::uint64_t budget = kDefaultSearchBudget);

// Whether an interval pattern holds for every tuple of the mapping, with
// intervals cut by the sorted tuple coordinates x0 < x1 < ... Supported for
// arity 3 and 4.
struct LocationProfile {
  bool below_min;  // image < x0
  bool inside_01;  // image inside the open interval (x0, x1)
  bool inside_12;  // image inside the open interval (x1, x2)
  bool above_max;  // image > the largest coordinate
  bool avoids_12;  // image misses the open interval (x1, x2)
};

LocationProfile location_profile(const SetMapping& f);

struct ExploreParams {
  int carrier = 10;
  int k = 4;
  std::vector<int> ranges = {3};  // one range per sampled rho
  int cap = 4;                    // keep instances with all |image| < cap
  int target = 7;                 // hunt for max free set below this
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultSearchBudget;  // per-trial search budget
  int trials = 1;
  bool inside_only = false;  // also require the inside-(x1,x2) profile
};

struct ExplorationRecord {
  int trial = 0;
  std::uint64_t seed = 0;  // per-trial derived seed
  int carrier = 0;
  int k = 0;
  std::vector<int> ranges;
  int cap = 0;
  int target = 0;
  bool cap_ok = false;
  bool filter_ok = false;
  int max_free_observed = 0;
  bool exhausted = false;
  std::uint64_t nodes = 0;
  bool found_counterexample = false;  // exhausted search stayed below target
};

// Samples families uniformly over rho tables for the given ranges, filters,
// searches, and logs. Never claims a theorem: a counterexample flag is set
// only when the search itself proved optimality below the target.
std::vector<ExplorationRecord> explore_no_free_t(const ExploreParams& p);

GammaFamily sample_family(Carrier c, std::span<const int> ranges,
                          SplitMix64& rng);

}  // namespace smlab
