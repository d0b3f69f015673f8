#pragma once

// Condition triples over a background family: a support set inside the
// background carrier, a local pair function on the support, and the set
// mapping generated by the restricted background plus the local function.
// Operations: the extension order, amalgamation of compatible conditions,
// single-point extension with fresh-high values, and chain union.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smlab/core.hpp"

namespace smlab {

class Condition {
 public:
  // local_values is indexed by pair_index over support positions.
  Condition(GammaFamily background, int k, std::vector<int> support,
            std::vector<int> local_values);

  const GammaFamily& background() const { return background_; }
  int k() const { return k_; }
  const std::vector<int>& support() const { return support_; }
  Mask support_mask() const { return mask_of(support_); }

  // Value of the local function on a pair of support elements, in
  // background labels.
  int local_value(int x, int y) const;

  // All pairs as (x, y, value) with x < y, in background labels.
  std::vector<std::array<int, 3>> local_pairs() const;

  // Largest local value; -1 when the support has no pairs.
  int max_local_value() const;

  // The generated mapping, absent while the support is smaller than k.
  const std::optional<SetMapping>& mapping() const { return mapping_; }

  // Image of a sorted k-tuple of support elements, in background labels.
  Mask image_in_background(std::span<const int> bg_tuple) const;

  friend bool operator==(const Condition&, const Condition&) = default;

 private:
  int position_of(int bg_element) const;

  GammaFamily background_;
  int k_;
  std::vector<int> support_;      // ascending background labels
  std::vector<int> local_values_; // by pair_index over support positions
  std::optional<SetMapping> mapping_;  // on the re-indexed support carrier
};

Condition make_condition(const GammaFamily& background, int k,
                         std::vector<int> support,
                         std::vector<int> local_values);

// Variant taking (x, y, value) entries in background labels; every support
// pair must appear exactly once.
Condition make_condition(const GammaFamily& background, int k,
                         std::vector<int> support,
                         std::span<const std::array<int, 3>> pairs);

// q extends p: supports nest, the local functions agree on p's pairs, and
// the mappings agree on every k-tuple of p's support.
bool extends(const Condition& q, const Condition& p,
             std::string* why = nullptr);

// Merge two conditions that agree on their overlap (same local values on
// shared pairs, same images on k-tuples of the shared support). Every cross
// pair receives one more than the largest value of either input, so the
// result extends both. Incompatible inputs are rejected with the violating
// pair or tuple named.
Condition amalgamate(const Condition& pi, const Condition& pj);

// Add one point; its new pairs receive one more than the largest existing
// value (zero if none), so old images never change and the new point stays
// out of all of them.
Condition extend_with_point(const Condition& p, int alpha);

// Union of a chain ordered by extension (each entry extended by the next).
// Supports and tables are united, the mapping is regenerated on the union
// support and re-verified to agree with every member.
Condition chain_union(std::span<const Condition> chain);

}  // namespace smlab
