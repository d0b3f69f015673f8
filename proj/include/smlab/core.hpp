#pragma once

// Carriers, symmetric pair functions, and generated set mappings.
//
// A carrier is {0..m-1}. A Rho assigns a value below its range to every
// unordered pair of distinct carrier elements. A GammaFamily is a nonempty
// list of Rho on one carrier and generates a SetMapping of arity k by the
// closeness rule: x lands in F(t) iff x is outside t and, for every rho in
// the family, each value rho{x,g} (g in t) is dominated by some rho-value
// of a pair inside t. Since domination by "some pair" is domination by the
// largest pair value, generation uses one per-tuple maximum per rho; the
// equivalence with the quantifier form is covered by tests.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smlab/bits.hpp"

namespace smlab {

class Carrier {
 public:
  explicit Carrier(int size);
  int size() const { return size_; }
  Mask universe() const { return mask_all(size_); }
  friend bool operator==(const Carrier&, const Carrier&) = default;

 private:
  int size_;
};

// Index of the unordered pair {x,y}, x != y, in a dense upper-triangular
// table: pairs ordered by larger element, then smaller.
inline std::size_t pair_index(int x, int y) {
  if (x > y) std::swap(x, y);
  return static_cast<std::size_t>(y) * static_cast<std::size_t>(y - 1) / 2 +
         static_cast<std::size_t>(x);
}

class Rho {
 public:
  // values[pair_index(x,y)] holds rho{x,y}; all entries below range_size.
  Rho(Carrier carrier, int range_size, std::vector<int> values);

  static Rho max_rho(Carrier c);
  static Rho min_rho(Carrier c);
  static Rho constant(Carrier c, int value = 0, int range_size = 1);

  const Carrier& carrier() const { return carrier_; }
  int carrier_size() const { return carrier_.size(); }
  int range_size() const { return range_; }
  int operator()(int x, int y) const;
  const std::vector<int>& values() const { return values_; }

  friend bool operator==(const Rho&, const Rho&) = default;

 private:
  Carrier carrier_;
  int range_;
  std::vector<int> values_;
};

class GammaFamily {
 public:
  GammaFamily(Carrier carrier, std::vector<Rho> rhos);

  const Carrier& carrier() const { return carrier_; }
  int carrier_size() const { return carrier_.size(); }
  std::span<const Rho> rhos() const { return rhos_; }
  const Rho& rho(std::size_t i) const { return rhos_[i]; }
  std::size_t size() const { return rhos_.size(); }

  GammaFamily with_rho(Rho extra) const;

  friend bool operator==(const GammaFamily&, const GammaFamily&) = default;

 private:
  Carrier carrier_;
  std::vector<Rho> rhos_;
};

// Explicit table from k-subsets of the carrier (colex-indexed) to subsets
// of the carrier; every image is disjoint from its tuple.
class SetMapping {
 public:
  SetMapping(Carrier carrier, int arity, std::vector<Mask> images);

  const Carrier& carrier() const { return carrier_; }
  int carrier_size() const { return carrier_.size(); }
  int arity() const { return arity_; }
  std::uint64_t tuple_count() const { return images_.size(); }
  Mask image(std::span<const int> tuple) const;
  Mask image_at(std::uint64_t rank) const { return images_[rank]; }
  const std::vector<Mask>& images() const { return images_; }

  friend bool operator==(const SetMapping&, const SetMapping&) = default;

 private:
  Carrier carrier_;
  int arity_;
  std::vector<Mask> images_;
};

// Largest rho-value over pairs inside B; |B| >= 2 required.
int max_pair_value(const Rho& rho, Mask B);

// x is rho-close to B: for every g in B some pair of B dominates rho{x,g}.
// Requires x outside B and |B| >= 2.
bool rho_close(const Rho& rho, int x, Mask B);

// Image of a single sorted tuple under the mapping the family generates.
Mask generated_image(const GammaFamily& gamma, std::span<const int> tuple);

// The full mapping of arity k generated by the family; k >= 2 and the
// carrier must have at least k elements.
SetMapping generate(const GammaFamily& gamma, int k);

struct RestrictedFamily {
  GammaFamily family;         // on the carrier {0..|B|-1}
  std::vector<int> elements;  // new index -> original element
};

// Every rho restricted to pairs from B, re-indexed order-preservingly.
// |B| >= 2 required.
RestrictedFamily restrict_family(const GammaFamily& gamma, Mask B);

// gamma1 lives on a carrier embedded into gamma2's carrier via `embed`
// (strictly increasing). Requires every member of gamma2 restricted to the
// embedded set to occur in gamma1; then checks F1(t) subset of F2(embed(t))
// for every k-tuple t. A false return reports the violating tuple.
bool check_monotonicity(const GammaFamily& gamma1, const GammaFamily& gamma2,
                        std::span<const int> embed, int k,
                        std::string* violation = nullptr);

// Requires gamma2 restricted to the embedded set to equal gamma1
// elementwise; then checks F1(t) = F2(embed(t)) restricted to the embedded
// set, for every k-tuple t.
bool check_restriction_eq(const GammaFamily& gamma1, const GammaFamily& gamma2,
                          std::span<const int> embed, int k,
                          std::string* violation = nullptr);

// For every alpha and every level v below the range: the number of xi < alpha
// with rho{xi,alpha} <= v stays within bound(v).
bool check_sublevel_bound(const Rho& rho,
                          const std::function<std::int64_t(int)>& bound,
                          std::string* violation = nullptr);

// For a family of exactly {max-function, rho1}: the image of each tuple sits
// inside {x <= g* : rho1{x,g*} <= v*} where g* is the largest tuple element
// and v* the largest rho1-value over tuple pairs.
bool check_envelope(const GammaFamily& gamma, int k, std::span<const int> tuple,
                    std::string* violation = nullptr);

// |F(t)| < cap for every tuple.
bool image_cap_ok(const SetMapping& f, int cap);

}  // namespace smlab
