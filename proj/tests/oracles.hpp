#pragma once

// Brute-force reference implementations, straight from the definitions and
// kept independent of the library's search and generation paths.

#include <optional>
#include <vector>

#include "smlab/core.hpp"

namespace smlab::oracle {

// Literal closeness: for every g in B there exist distinct g', g'' in B
// with rho{x,g} <= rho{g',g''}.
inline bool rho_close_literal(const Rho& rho, int x, Mask B) {
  const std::vector<int> elems = mask_elements(B);
  for (int g : elems) {
    bool dominated = false;
    for (std::size_t i = 0; i < elems.size() && !dominated; ++i)
      for (std::size_t j = 0; j < elems.size() && !dominated; ++j) {
        if (i == j) continue;
        if (rho(x, g) <= rho(elems[i], elems[j])) dominated = true;
      }
    if (!dominated) return false;
  }
  return true;
}

// Literal generation of one tuple image from the quantifier form.
inline Mask generated_image_literal(const GammaFamily& gamma,
                                    std::span<const int> tuple) {
  const Mask tuple_mask = mask_of(tuple);
  Mask img = 0;
  for (int x = 0; x < gamma.carrier_size(); ++x) {
    if (mask_test(tuple_mask, x)) continue;
    bool good = true;
    for (const Rho& rho : gamma.rhos())
      if (!rho_close_literal(rho, x, tuple_mask)) {
        good = false;
        break;
      }
    if (good) img |= Mask{1} << x;
  }
  return img;
}

// Literal freeness: every k-subset of H has an image disjoint from H.
inline bool is_free_literal(const SetMapping& f, Mask H) {
  const int m = f.carrier_size();
  const int k = f.arity();
  if (std::popcount(H) < k) return true;
  bool free = true;
  for (Mask sub = 0; sub < (Mask{1} << m); ++sub) {
    if (std::popcount(sub) != k || (sub & ~H)) continue;
    const std::vector<int> t = mask_elements(sub);
    if (f.image(t) & H) {
      free = false;
      break;
    }
  }
  return free;
}

struct NaiveFreeResult {
  int max_size = 0;
  std::vector<int> witness;
};

// Full enumeration over all subsets; ties broken toward the
// lexicographically least sorted tuple.
inline NaiveFreeResult naive_max_free(const SetMapping& f) {
  const int m = f.carrier_size();
  NaiveFreeResult best;
  for (Mask H = 0; H < (Mask{1} << m); ++H) {
    if (!is_free_literal(f, H)) continue;
    const int size = std::popcount(H);
    if (size < best.max_size) continue;
    std::vector<int> elems = mask_elements(H);
    if (size > best.max_size || elems < best.witness) {
      best.max_size = size;
      best.witness = std::move(elems);
    }
  }
  return best;
}

}  // namespace smlab::oracle
