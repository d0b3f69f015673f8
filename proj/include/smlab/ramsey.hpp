#pragma once

// Triple classification under a pair function, homogeneous-set extraction,
// capture checks on homogeneous tuples, and a small exhaustive/backtracking
// arrow-relation decider that returns verified counterexample colorings.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smlab/core.hpp"

namespace smlab {

// For a < b < c, the least l in {1,2,3} whose inequality holds:
//   (1) max(rho{a,b}, rho{b,c}) <= rho{a,c}
//   (2) max(rho{a,b}, rho{a,c}) <= rho{b,c}
//   (3) max(rho{b,c}, rho{a,c}) <= rho{a,b}
// The largest of the three pair values always sits on some right-hand side,
// so at least one possibility holds.
int rho_type(const Rho& rho, int a, int b, int c);

// One label per family member; triples are equivalent iff vectors match,
// so there are at most 3^|family| classes.
using TypeVector = std::vector<std::uint8_t>;
TypeVector type_color(const GammaFamily& gamma, int a, int b, int c);

// Lexicographically least subset of A of the given size whose 3-subsets all
// share one type vector; absent when none exists.
std::optional<std::vector<int>> find_homogeneous(const GammaFamily& gamma,
                                                 Mask A, int target = 5);

// For a type-homogeneous five-element set b0 < ... < b4: the middle element
// is rho-close to the other four, for every rho, hence lands in the image
// of the remaining 4-tuple. Rejects sets that are not homogeneous.
bool verify_homog5_close(const GammaFamily& gamma, std::span<const int> B,
                         std::string* diag = nullptr);

// Case split of an ordered triple a < b < c:
//   ia:   rho{a,b} <= rho{b,c}     (otherwise Ib, a strict >)
//   iia:  rho{a,b} <= rho{a,c}     (otherwise IIb)
//   iiia: rho{b,c} >  rho{a,c}     (otherwise IIIb, ties included)
struct TripleCases {
  bool ia;
  bool iia;
  bool iiia;
  friend bool operator==(const TripleCases&, const TripleCases&) = default;
};

TripleCases triple_cases(const Rho& rho, int a, int b, int c);

using TripleCaseVector = std::vector<TripleCases>;
TripleCaseVector family_triple_cases(const GammaFamily& gamma, int a, int b,
                                     int c);

// For a quad a < b < c < d whose triples all satisfy ia and iia and agree on
// the third case, per rho: b is rho-close to {a,c,d} for every rho. The
// closeness is re-derived from the three case inequalities and cross-checked
// against rho_close. Rejects quads violating the case preconditions.
bool verify_quad_close(const GammaFamily& gamma, std::span<const int> quad,
                       std::string* diag = nullptr);

// A c-coloring of the k-subsets of {0..n-1} certifying that no target-size
// set is homogeneous in its color.
struct ColoringWitness {
  int n = 0;
  int k = 0;
  int colors = 0;
  std::vector<int> targets;             // one size per color
  std::vector<std::uint8_t> assignment;  // colex-indexed, one per k-subset
};

// Exhaustively confirms the witness: no color i admits a homogeneous set of
// size targets[i].
bool verify_witness(const ColoringWitness& w, std::string* diag = nullptr);

enum class ArrowVerdict { kHolds, kFails, kInfeasible };

struct ArrowResult {
  ArrowVerdict verdict = ArrowVerdict::kInfeasible;
  std::optional<ColoringWitness> witness;  // verified, on kFails
  std::uint64_t nodes = 0;
};

// Decides whether every c-coloring of k-subsets of an n-set has, for some
// color i, a homogeneous set of size targets[i]. Backtracking over tuples
// in colex order; when all targets are equal the first tuple's color is
// fixed (color permutations then act on witnesses, so nothing is lost).
// Budget exhaustion yields kInfeasible, never a guess.
ArrowResult arrow_holds(int n, int k, std::span<const int> targets,
                        std::uint64_t budget = kDefaultSearchBudget);

}  // namespace smlab
