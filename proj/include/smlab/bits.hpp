#pragma once

// Small-universe subset and combination utilities. Carriers are the sets
// {0..m-1} with m <= 64, so every subset fits in a single 64-bit mask.

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace smlab {

using Mask = std::uint64_t;

inline constexpr int kMaxCarrier = 64;

inline constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

inline constexpr Mask mask_all(int n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

inline constexpr bool mask_test(Mask m, int i) { return (m >> i) & Mask{1}; }

inline Mask mask_of(std::span<const int> xs) {
  Mask m = 0;
  for (int x : xs) m |= Mask{1} << x;
  return m;
}

inline std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// C(n, r) for 0 <= r <= n <= 64; every such value fits in a uint64_t.
std::uint64_t binomial(int n, int r);

// Rank of a sorted tuple in colexicographic order. Independent of the
// universe size: rank = sum_i C(t[i], i+1).
std::uint64_t colex_rank(std::span<const int> tuple);

void colex_unrank(std::uint64_t rank, int k, std::span<int> out);

void first_combination(std::span<int> t);

// Advance a sorted k-tuple over {0..n-1} in colex order; false once the
// last combination has been produced.
bool next_combination_colex(std::span<int> t, int n);

// Advance in lexicographic order on the sorted-tuple representation.
bool next_combination_lex(std::span<int> t, int n);

template <class F>
void for_each_combination_colex(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> t(static_cast<std::size_t>(k));
  first_combination(t);
  do {
    f(std::span<const int>(t));
  } while (k > 0 && next_combination_colex(t, n));
}

template <class F>
void for_each_combination_lex(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> t(static_cast<std::size_t>(k));
  first_combination(t);
  do {
    f(std::span<const int>(t));
  } while (k > 0 && next_combination_lex(t, n));
}

}  // namespace smlab
