#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "smlab/core.hpp"
#include "smlab/freeset.hpp"
#include "smlab/rng.hpp"

using namespace smlab;

namespace {

Mask image_of(const GammaFamily& gamma, std::vector<int> tuple) {
  return generated_image(gamma, tuple);
}

}  // namespace

TEST_CASE("closeness under the max function") {
  const Rho rho = Rho::max_rho(Carrier(10));
  CHECK(rho_close(rho, 0, mask_of(std::vector<int>{1, 3})));
  CHECK(oracle::rho_close_literal(rho, 0, mask_of(std::vector<int>{1, 3})));
  // max{0,9} = 9 exceeds every pair value of {1,3}
  CHECK(!rho_close(rho, 9, mask_of(std::vector<int>{1, 3})));
}

TEST_CASE("closeness under constant and min functions") {
  const Rho constant = Rho::constant(Carrier(10));
  const Rho min_fn = Rho::min_rho(Carrier(10));
  for (int x : {0, 4, 9}) {
    CHECK(rho_close(constant, x, mask_of(std::vector<int>{1, 3})));
  }
  CHECK(rho_close(min_fn, 0, mask_of(std::vector<int>{1, 3})));
}

TEST_CASE("closeness rejects bad domains") {
  const Rho rho = Rho::max_rho(Carrier(5));
  CHECK_THROWS_AS(rho_close(rho, 1, mask_of(std::vector<int>{1, 3})),
                  std::invalid_argument);
  CHECK_THROWS_AS(rho_close(rho, 0, mask_of(std::vector<int>{3})),
                  std::invalid_argument);
}

TEST_CASE("derived closeness equals the quantifier form on every input") {
  SplitMix64 rng(2024);
  for (int m : {4, 6, 7}) {
    const Carrier c(m);
    std::vector<Rho> rhos{Rho::max_rho(c), Rho::min_rho(c), Rho::constant(c)};
    for (int trial = 0; trial < 3; ++trial)
      rhos.push_back(sample_family(c, std::vector<int>{4}, rng).rho(0));
    for (const Rho& rho : rhos) {
      for (Mask B = 0; B < (Mask{1} << m); ++B) {
        if (std::popcount(B) < 2) continue;
        for (int x = 0; x < m; ++x) {
          if (mask_test(B, x)) continue;
          CHECK(rho_close(rho, x, B) == oracle::rho_close_literal(rho, x, B));
        }
      }
    }
  }
}

TEST_CASE("generation under the max function") {
  const GammaFamily gamma(Carrier(4), {Rho::max_rho(Carrier(4))});
  CHECK(image_of(gamma, {1, 3}) == mask_of(std::vector<int>{0, 2}));
  CHECK(oracle::generated_image_literal(gamma, std::vector<int>{1, 3}) ==
        mask_of(std::vector<int>{0, 2}));

  const GammaFamily big(Carrier(10), {Rho::max_rho(Carrier(10))});
  CHECK(image_of(big, {2, 5, 7, 9}) ==
        mask_of(std::vector<int>{0, 1, 3, 4, 6, 8}));
}

TEST_CASE("generation under a constant function fills the complement") {
  const GammaFamily gamma(Carrier(6), {Rho::constant(Carrier(6))});
  for (int k : {2, 3}) {
    const SetMapping f = generate(gamma, k);
    for_each_combination_colex(6, k, [&](std::span<const int> t) {
      CHECK(f.image(t) == (mask_all(6) & ~mask_of(t)));
    });
  }
}

TEST_CASE("generation rejects bad parameters") {
  const GammaFamily gamma(Carrier(3), {Rho::max_rho(Carrier(3))});
  CHECK_THROWS_AS(generate(gamma, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate(gamma, 4), std::invalid_argument);
}

TEST_CASE("generation matches the literal rule on random families") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    const int m = rng.range(3, 7);
    const int k = rng.range(2, std::min(m, 4));
    std::vector<int> ranges(static_cast<std::size_t>(rng.range(1, 3)));
    for (int& L : ranges) L = rng.range(1, 4);
    const GammaFamily gamma = sample_family(Carrier(m), ranges, rng);
    const SetMapping f = generate(gamma, k);
    std::uint64_t rank = 0;
    for_each_combination_colex(m, k, [&](std::span<const int> t) {
      const Mask img = f.image_at(rank++);
      CHECK(img == oracle::generated_image_literal(gamma, t));
      CHECK((img & mask_of(t)) == 0);  // disjointness
    });
  }
}

TEST_CASE("restriction keeps original values and records the embedding") {
  const GammaFamily gamma(Carrier(10), {Rho::max_rho(Carrier(10))});
  const RestrictedFamily r =
      restrict_family(gamma, mask_of(std::vector<int>{2, 5, 7}));
  CHECK(r.elements == std::vector<int>{2, 5, 7});
  CHECK(r.family.carrier_size() == 3);
  CHECK(r.family.rho(0)(0, 1) == 5);
  CHECK(r.family.rho(0)(0, 2) == 7);
  CHECK(r.family.rho(0)(1, 2) == 7);
}

TEST_CASE("restriction to the full carrier is the identity") {
  SplitMix64 rng(11);
  const GammaFamily gamma =
      sample_family(Carrier(6), std::vector<int>{3, 2}, rng);
  const RestrictedFamily r = restrict_family(gamma, mask_all(6));
  CHECK(r.family == gamma);
  CHECK(r.family.size() == 2);  // order and length preserved
  CHECK_THROWS_AS(restrict_family(gamma, mask_of(std::vector<int>{4})),
                  std::invalid_argument);
}

TEST_CASE("containment check on a mixed pair of families") {
  const Carrier small(6), big(8);
  const GammaFamily gamma1(small, {Rho::max_rho(small), Rho::min_rho(small)});
  const GammaFamily gamma2(big, {Rho::max_rho(big)});
  const std::vector<int> embed{0, 1, 2, 3, 4, 5};
  CHECK(check_monotonicity(gamma1, gamma2, embed, 3));

  // Brute-force both sides for good measure.
  for_each_combination_lex(6, 3, [&](std::span<const int> t) {
    const Mask f1 = oracle::generated_image_literal(gamma1, t);
    const Mask f2 = oracle::generated_image_literal(gamma2, t);
    CHECK((f1 & ~f2) == 0);
  });
}

TEST_CASE("containment check requires its hypothesis") {
  const Carrier c(5);
  const GammaFamily gamma1(c, {Rho::min_rho(c)});
  const GammaFamily gamma2(c, {Rho::max_rho(c)});
  const std::vector<int> embed{0, 1, 2, 3, 4};
  CHECK_THROWS_AS(check_monotonicity(gamma1, gamma2, embed, 2),
                  std::invalid_argument);
}

TEST_CASE("restriction equality check") {
  const GammaFamily gamma2(Carrier(8), {Rho::max_rho(Carrier(8))});
  const std::vector<int> embed{0, 2, 4, 6};
  const GammaFamily gamma1 =
      restrict_family(gamma2, mask_of(embed)).family;
  CHECK(check_restriction_eq(gamma1, gamma2, embed, 2));

  // Identity embedding.
  const std::vector<int> full{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(check_restriction_eq(gamma2, gamma2, full, 2));
}

TEST_CASE("restriction checks hold on seeded random instances") {
  SplitMix64 rng(2025);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = rng.range(4, 9);
    const int k = rng.range(2, 4);
    if (m <= k) continue;
    std::vector<int> ranges(static_cast<std::size_t>(rng.range(1, 3)));
    for (int& L : ranges) L = rng.range(1, 5);
    const GammaFamily gamma2 = sample_family(Carrier(m), ranges, rng);

    const int sub_size = rng.range(std::max(2, k), m);
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = m - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    perm.resize(static_cast<std::size_t>(sub_size));
    std::sort(perm.begin(), perm.end());

    GammaFamily gamma1 = restrict_family(gamma2, mask_of(perm)).family;
    CHECK(check_restriction_eq(gamma1, gamma2, perm, k));
    if (rng.chance(1, 2))
      gamma1 = gamma1.with_rho(
          sample_family(gamma1.carrier(), std::vector<int>{3}, rng).rho(0));
    CHECK(check_monotonicity(gamma1, gamma2, perm, k));
  }
}

TEST_CASE("adding a family member never enlarges an image") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = rng.range(4, 8);
    const int k = rng.range(2, 3);
    const GammaFamily gamma =
        sample_family(Carrier(m), std::vector<int>{4}, rng);
    const GammaFamily larger = gamma.with_rho(
        sample_family(Carrier(m), std::vector<int>{3}, rng).rho(0));
    for_each_combination_lex(m, k, [&](std::span<const int> t) {
      CHECK((generated_image(larger, t) & ~generated_image(gamma, t)) == 0);
    });
  }
}

TEST_CASE("max-function families generate initial segments") {
  for (int m = 2; m <= 8; ++m) {
    const GammaFamily gamma(Carrier(m), {Rho::max_rho(Carrier(m))});
    for (int k = 2; k <= m; ++k) {
      for_each_combination_lex(m, k, [&](std::span<const int> t) {
        const Mask expected = mask_all(t.back() + 1) & ~mask_of(t);
        CHECK(generated_image(gamma, t) == expected);
      });
    }
  }
}

TEST_CASE("sublevel counting bound") {
  const Rho min_fn = Rho::min_rho(Carrier(9));
  CHECK(check_sublevel_bound(
      min_fn, [](int v) { return static_cast<std::int64_t>(v) + 1; }));

  const Rho flat = Rho::constant(Carrier(5));
  std::string why;
  CHECK(!check_sublevel_bound(flat, [](int) { return std::int64_t{1}; }, &why));
  CHECK(!why.empty());

  const Rho lonely = Rho::constant(Carrier(1));
  CHECK(check_sublevel_bound(lonely, [](int) { return std::int64_t{0}; }));
}

TEST_CASE("two-member envelope") {
  const Carrier c(6);
  const GammaFamily gamma(c, {Rho::max_rho(c), Rho::min_rho(c)});
  CHECK(check_envelope(gamma, 2, std::vector<int>{1, 3}));

  const GammaFamily flat(c, {Rho::max_rho(c), Rho::constant(c)});
  for_each_combination_lex(6, 3, [&](std::span<const int> t) {
    CHECK(check_envelope(flat, 3, t));
  });

  const GammaFamily wrong(c, {Rho::min_rho(c), Rho::max_rho(c)});
  CHECK_THROWS_AS(check_envelope(wrong, 2, std::vector<int>{0, 1}),
                  std::invalid_argument);
}

TEST_CASE("envelope holds on random second members") {
  SplitMix64 rng(88);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = rng.range(3, 8);
    const int k = rng.range(2, std::min(m, 4));
    const Carrier c(m);
    const GammaFamily gamma(
        c, {Rho::max_rho(c),
            sample_family(c, std::vector<int>{rng.range(1, 5)}, rng).rho(0)});
    std::vector<int> t(static_cast<std::size_t>(k));
    first_combination(t);
    do {
      CHECK(check_envelope(gamma, k, t));
    } while (next_combination_lex(t, m));
  }
}

TEST_CASE("image size cap") {
  const GammaFamily max4(Carrier(4), {Rho::max_rho(Carrier(4))});
  CHECK(image_cap_ok(generate(max4, 2), 4));

  const GammaFamily max2(Carrier(2), {Rho::max_rho(Carrier(2))});
  CHECK(image_cap_ok(generate(max2, 2), 1));  // the only image is empty

  const GammaFamily flat6(Carrier(6), {Rho::constant(Carrier(6))});
  CHECK(!image_cap_ok(generate(flat6, 2), 4));
}

TEST_CASE("type validation") {
  CHECK_THROWS_AS(Carrier(0), std::invalid_argument);
  CHECK_THROWS_AS(Carrier(65), std::invalid_argument);
  CHECK_THROWS_AS(Rho(Carrier(3), 2, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Rho(Carrier(3), 2, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(GammaFamily(Carrier(3), {}), std::invalid_argument);
  CHECK_THROWS_AS(
      GammaFamily(Carrier(3), {Rho::max_rho(Carrier(4))}),
      std::invalid_argument);
  // An image that meets its own tuple is rejected.
  CHECK_THROWS_AS(SetMapping(Carrier(3), 2, {Mask{1}, 0, 0}),
                  std::invalid_argument);
}
