#include "smlab/bits.hpp"

#include <array>
#include <stdexcept>

namespace smlab {

namespace {

struct BinomialTable {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  BinomialTable() {
    for (int n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (int r = 1; r <= n; ++r)
        c[n][r] = c[n - 1][r - 1] + (r <= n - 1 ? c[n - 1][r] : 0);
    }
  }
};

const BinomialTable g_binomial;

}  // namespace

std::uint64_t binomial(int n, int r) {
  if (n < 0 || r < 0 || r > n) return 0;
  if (n > 64) throw std::invalid_argument("binomial: n > 64 unsupported");
  return g_binomial.c[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
}

std::uint64_t colex_rank(std::span<const int> tuple) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    rank += binomial(tuple[i], static_cast<int>(i) + 1);
  return rank;
}

void colex_unrank(std::uint64_t rank, int k, std::span<int> out) {
  for (int i = k; i >= 1; --i) {
    int v = i - 1;
    while (binomial(v + 1, i) <= rank) ++v;
    out[static_cast<std::size_t>(i - 1)] = v;
    rank -= binomial(v, i);
  }
}

void first_combination(std::span<int> t) {
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(i);
}

bool next_combination_colex(std::span<int> t, int n) {
  const int k = static_cast<int>(t.size());
  for (int i = 0; i < k; ++i) {
    const int limit = (i + 1 < k) ? t[static_cast<std::size_t>(i) + 1] : n;
    if (t[static_cast<std::size_t>(i)] + 1 < limit) {
      ++t[static_cast<std::size_t>(i)];
      for (int j = 0; j < i; ++j) t[static_cast<std::size_t>(j)] = j;
      return true;
    }
  }
  return false;
}

bool next_combination_lex(std::span<int> t, int n) {
  const int k = static_cast<int>(t.size());
  for (int i = k - 1; i >= 0; --i) {
    if (t[static_cast<std::size_t>(i)] < n - k + i) {
      ++t[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j) - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace smlab
