#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "smlab/bits.hpp"

using namespace smlab;

TEST_CASE("binomial values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 4) == 210);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK(binomial(4, 7) == 0);
}

TEST_CASE("colex iteration matches colex ranks") {
  std::uint64_t expected = 0;
  for_each_combination_colex(7, 3, [&](std::span<const int> t) {
    CHECK(colex_rank(t) == expected);
    std::vector<int> back(3);
    colex_unrank(expected, 3, back);
    CHECK(std::equal(back.begin(), back.end(), t.begin()));
    ++expected;
  });
  CHECK(expected == binomial(7, 3));
}

TEST_CASE("lex iteration is sorted ascending") {
  std::vector<std::vector<int>> seen;
  for_each_combination_lex(5, 2, [&](std::span<const int> t) {
    seen.emplace_back(t.begin(), t.end());
  });
  CHECK(seen.size() == 10);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(seen.front() == std::vector<int>{0, 1});
  CHECK(seen.back() == std::vector<int>{3, 4});
}

TEST_CASE("mask round trips") {
  const std::vector<int> xs{0, 3, 5};
  CHECK(mask_elements(mask_of(xs)) == xs);
  CHECK(mask_all(3) == 0b111);
  CHECK(mask_test(mask_of(xs), 3));
  CHECK(!mask_test(mask_of(xs), 2));
}
