#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "smlab/bounds.hpp"
#include "smlab/rng.hpp"

using namespace smlab;

namespace {

// Reference evaluation by plain repeated multiplication, kept apart from
// the library's pow-and-guard path.
BigInt slow_pow(const BigInt& base, std::uint64_t exp) {
  BigInt acc(1);
  for (std::uint64_t i = 0; i < exp; ++i) acc *= base;
  return acc;
}

TowerExpr random_expr(SplitMix64& rng, int depth) {
  if (depth == 0) return TowerExpr::lit(rng.range(0, 6));
  switch (rng.range(0, 3)) {
    case 0:
      return TowerExpr::lit(rng.range(0, 9));
    case 1:
      return TowerExpr::pow(random_expr(rng, depth - 1),
                            TowerExpr::lit(rng.range(0, 3)));
    case 2:
      return TowerExpr::prod(
          {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    default:
      return TowerExpr::sum(
          {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
  }
}

}  // namespace

TEST_CASE("star evaluates as exponentiation") {
  CHECK(*star(TowerExpr::lit(2), TowerExpr::lit(3)).evaluate() == 8);
  CHECK(*star(TowerExpr::lit(3), TowerExpr::lit(7)).evaluate() == 2187);
  const TowerExpr a = TowerExpr::pow(TowerExpr::lit(5), TowerExpr::lit(90));
  CHECK(star(a, TowerExpr::lit(1)).identical(a.normalized()));
}

TEST_CASE("star chains fold to the right") {
  const std::vector<TowerExpr> v223{TowerExpr::lit(2), TowerExpr::lit(2),
                                    TowerExpr::lit(3)};
  CHECK(*star_chain(v223).evaluate() == 256);

  const std::vector<TowerExpr> v337{TowerExpr::lit(3), TowerExpr::lit(3),
                                    TowerExpr::lit(7)};
  const TowerExpr s = star_chain(v337);
  const auto val = s.evaluate();
  REQUIRE(val.has_value());
  CHECK(*val == slow_pow(BigInt(3), 2187));
  CHECK(val->str().size() == 1044);

  const std::vector<TowerExpr> single{TowerExpr::lit(2)};
  CHECK_THROWS_AS(star_chain(single), std::invalid_argument);
}

TEST_CASE("grouping identity on explicit and random splits") {
  const auto lit_chain = [](std::vector<int> xs) {
    std::vector<TowerExpr> out;
    for (int x : xs) out.push_back(TowerExpr::lit(x));
    return out;
  };
  // 2*3*2*2 == 2*3*(2*2)
  const TowerExpr whole = star_chain(lit_chain({2, 3, 2, 2}));
  std::vector<TowerExpr> grouped = lit_chain({2, 3});
  grouped.push_back(star_chain(lit_chain({2, 2})));
  CHECK(whole.identical(star_chain(grouped)));

  SplitMix64 rng(606);
  for (int trial = 0; trial < 500; ++trial) {
    const int len = rng.range(3, 6);
    std::vector<int> xs(static_cast<std::size_t>(len));
    for (int& x : xs) x = rng.range(2, 4);
    const std::size_t cut =
        static_cast<std::size_t>(rng.range(1, len - 1));
    std::vector<TowerExpr> all = lit_chain(xs);
    std::vector<TowerExpr> head(all.begin(), all.begin() + cut);
    std::vector<TowerExpr> tail(all.begin() + cut, all.end());
    if (tail.size() < 2) continue;
    head.push_back(star_chain(tail));
    CHECK(star_chain(all).identical(star_chain(head)));
  }
}

TEST_CASE("upper bound formula") {
  CHECK(*erdos_rado_upper(2, 3, 2).evaluate() == 8);
  CHECK(*erdos_rado_upper(2, 2, 2).evaluate() == 2);

  const TowerExpr e = erdos_rado_upper(3, 5, 3);
  CHECK(e.str() == "3^4782969");  // 3^(9^7)
  CHECK(!e.evaluate().has_value());

  CHECK_THROWS_AS(erdos_rado_upper(2, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(erdos_rado_upper(4, 3, 2), std::invalid_argument);

  SplitMix64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int l = rng.range(2, 6), r = rng.range(2, 5);
    const TowerExpr got = erdos_rado_upper(2, l, r);
    const TowerExpr want = TowerExpr::pow(
        TowerExpr::lit(r), TowerExpr::lit(r * (l - 2) + 1));
    CHECK(got.identical(want.normalized()));
  }
}

TEST_CASE("upper bound pair at zero") {
  const SUpperBounds b = s_upper(0);
  const auto literal = b.literal.evaluate();
  REQUIRE(literal.has_value());
  CHECK(*literal == slow_pow(BigInt(3), 2187));
  CHECK(*literal >= 5);  // trivially above the definitional floor
  CHECK(b.via_erdos_rado.identical(erdos_rado_upper(3, 5, 3)));
  // 3^2187 against 3^(9^7): the stated chain is the smaller one.
  CHECK(compare(b.literal, b.via_erdos_rado) == Order::kLess);
}

TEST_CASE("tower numbers") {
  CHECK(*tower(1, TowerExpr::lit(7)).evaluate() == 7);
  CHECK(*tower(2, TowerExpr::lit(7)).evaluate() == 128);
  CHECK(*tower(3, TowerExpr::lit(7)).evaluate() == BigInt(1) << 128);
  CHECK_THROWS_AS(tower(0, TowerExpr::lit(7)), std::invalid_argument);
}

TEST_CASE("tower lower bounds") {
  CHECK(*t_lower(2).evaluate() == 128);
  CHECK(t_lower(3).str() == "2^128");
  CHECK_THROWS_AS(t_lower(1), std::invalid_argument);
}

TEST_CASE("stepping up a failing fact") {
  ArrowFact base;
  base.holds = false;
  base.n = TowerExpr::lit(8);
  base.uniformity = 3;
  base.targets = {4, 4};
  base.provenance = {"base: verified coloring on 8 points"};

  const ArrowFact once = stepping_up(base);
  CHECK(*once.n.evaluate() == 256);
  CHECK(once.uniformity == 4);
  CHECK(once.targets == std::vector<long long>{7, 7});

  const ArrowFact twice = stepping_up(once);
  CHECK(twice.n.str() == "2^256");
  CHECK(twice.uniformity == 5);
  CHECK(twice.targets == std::vector<long long>{14, 14});
  CHECK(twice.provenance.size() == 3);

  // Replaying the chain from its base reproduces the fact.
  const ArrowFact replay = stepping_up(stepping_up(base));
  CHECK(replay.n.identical(twice.n));
  CHECK(replay.targets == twice.targets);
  CHECK(replay.uniformity == twice.uniformity);

  ArrowFact holds = base;
  holds.holds = true;
  CHECK_THROWS_AS(stepping_up(holds), std::invalid_argument);
  ArrowFact low = base;
  low.uniformity = 2;
  CHECK_THROWS_AS(stepping_up(low), std::invalid_argument);
  ArrowFact wide = base;
  wide.targets = {4, 4, 4};
  CHECK_THROWS_AS(stepping_up(wide), std::invalid_argument);
}

TEST_CASE("normalization is idempotent and value-preserving") {
  SplitMix64 rng(999);
  for (int trial = 0; trial < 400; ++trial) {
    const TowerExpr e = random_expr(rng, 3);
    const TowerExpr n1 = e.normalized();
    CHECK(n1.identical(n1.normalized()));
    const auto v0 = e.evaluate();
    const auto v1 = n1.evaluate();
    if (v0 && v1) CHECK(*v0 == *v1);
    // Small expressions stay evaluable either way.
    CHECK(v0.has_value() == v1.has_value());
  }
}

TEST_CASE("comparison agrees with exact arithmetic") {
  const TowerExpr a = TowerExpr::pow(TowerExpr::lit(3), TowerExpr::lit(2187));
  const TowerExpr b = TowerExpr::pow(TowerExpr::lit(2), TowerExpr::lit(128));
  CHECK(compare(a, b) == Order::kGreater);
  CHECK(compare(b, a) == Order::kLess);
  CHECK(compare(a, a) == Order::kEqual);

  SplitMix64 rng(515);
  for (int trial = 0; trial < 300; ++trial) {
    const TowerExpr x = random_expr(rng, 3);
    const TowerExpr y = random_expr(rng, 3);
    const auto vx = x.evaluate(), vy = y.evaluate();
    if (!vx || !vy) continue;
    const Order got = compare(x, y);
    if (*vx < *vy) CHECK(got == Order::kLess);
    else if (*vx > *vy) CHECK(got == Order::kGreater);
    else CHECK(got == Order::kEqual);
  }
}

TEST_CASE("comparison handles towers beyond evaluation") {
  // Regression pins for the symbolic path.
  CHECK(compare(tower(5, TowerExpr::lit(7)), s_upper(4).literal) ==
        Order::kGreater);
  CHECK(compare(tower(4, TowerExpr::lit(7)), s_upper(4).literal) ==
        Order::kLess);
  CHECK(compare(s_upper(6).literal, s_upper(6).literal) == Order::kEqual);
}

TEST_CASE("crossover table") {
  const CrossoverTable table = crossover(8);
  REQUIRE(table.rows.size() == 7);
  for (const CrossoverRow& row : table.rows) {
    // Where both sides evaluate exactly, the verdict must match.
    const EvalLimits wide{100'000};
    const auto t = row.t_low.evaluate(wide);
    const auto s = row.s_up.literal.evaluate(wide);
    if (t && s) {
      const Order exact = *t < *s   ? Order::kLess
                          : *t > *s ? Order::kGreater
                                    : Order::kEqual;
      CHECK(row.t_vs_literal == exact);
    }
    CHECK(row.t_vs_literal != Order::kEqual);
  }
  // Regression pins from a comparator run over n = 2..8.
  REQUIRE(table.first_exceeds_literal.has_value());
  CHECK(*table.first_exceeds_literal == 5);
  REQUIRE(table.first_exceeds_erdos_rado.has_value());
  CHECK(*table.first_exceeds_erdos_rado == 5);
  CHECK_THROWS_AS(crossover(1), std::invalid_argument);
}
