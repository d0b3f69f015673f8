#pragma once

// Exact expression trees over arbitrary-precision nonnegative integers with
// literal, power, product, and sum nodes; the right-associated star fold;
// upper/lower Ramsey-bound formulas; the stepping-up transform on failing
// arrow facts; and a sound comparator that answers Unknown rather than
// guessing when neither exact evaluation nor iterated-log bounding decides.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smlab {

using BigInt = boost::multiprecision::cpp_int;

struct EvalLimits {
  // Exact evaluation proceeds while results stay within this many bits
  // (~10^6 decimal digits); larger values are handled symbolically.
  std::uint64_t max_bits = 3'321'929;
};

class TowerExpr {
 public:
  enum class Kind { kLit, kPow, kProd, kSum };

  TowerExpr() : TowerExpr(lit(0)) {}

  static TowerExpr lit(BigInt v);
  static TowerExpr pow(TowerExpr base, TowerExpr exp);
  static TowerExpr prod(std::vector<TowerExpr> factors);
  static TowerExpr sum(std::vector<TowerExpr> terms);

  Kind kind() const;
  const BigInt& literal() const;          // kLit
  const TowerExpr& base() const;          // kPow
  const TowerExpr& exponent() const;      // kPow
  std::span<const TowerExpr> children() const;  // kProd / kSum

  // Value-preserving normal form: literal subtrees folded while small,
  // trivial powers removed, nested products/sums flattened, and left-nested
  // power chains rotated right (a^b)^c -> a^(b*c). Idempotent.
  TowerExpr normalized() const;

  // Exact value when it fits under the bit limit. An absent result
  // guarantees the value has more than lim.max_bits bits.
  std::optional<BigInt> evaluate(const EvalLimits& lim = {}) const;

  bool identical(const TowerExpr& o) const;  // structural equality
  std::string str() const;

 private:
  struct Node;
  explicit TowerExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Order { kLess, kEqual, kGreater, kUnknown };

// Sound comparison: exact when both values fit under the limit, otherwise
// iterated-log reduction with conservative integer bounds. Never returns a
// strict order that exact evaluation would contradict.
Order compare(const TowerExpr& a, const TowerExpr& b,
              const EvalLimits& lim = {});

// a star b = a^b, for a >= 1.
TowerExpr star(const TowerExpr& a, const TowerExpr& b);

// Right-associated star fold of at least two values; satisfies the grouping
// identity v1*...*vm*(v{m+1}*...*vn) = v1*...*vn.
TowerExpr star_chain(std::span<const TowerExpr> values);

// Upper bound for the least n making every r-coloring of k-subsets of an
// n-set admit an l-set homogeneous in one color:
//   r * r^(k-1) * r^(k-2) * ... * r^2 * (r(l-k)+1),  star-folded.
// Requires r >= 2 and l >= k >= 2; the middle chain is empty for k = 2.
TowerExpr erdos_rado_upper(int k, int l, int r);

// Both readings of the upper bound on the least n with n -> (5)^3 over
// 3^(n+1) colors: the stated chain 3^(n+1) * 3^(2n+1) * (2*3^(n+1)+1), and
// the general formula instantiated at k=3, l=5, r=3^(n+1) (whose middle
// term is 3^(2n+2)). Both are reported side by side.
struct SUpperBounds {
  TowerExpr literal;
  TowerExpr via_erdos_rado;
};
SUpperBounds s_upper(int n);

// tower(1,x) = x, tower(n+1,x) = 2^tower(n,x).
TowerExpr tower(int n, const TowerExpr& x);

// Strict lower bound tower(n,7) on the n-th step of the chain
// t[i+1] = least N with N -> (t[i],7)^5, t[0] = 5; stated for n >= 2 only.
TowerExpr t_lower(int n);

// A (possibly negative) arrow statement about k-subsets of an n-set, with
// the derivation chain that produced it.
struct ArrowFact {
  bool holds = false;
  TowerExpr n;
  int uniformity = 0;
  std::vector<long long> targets;
  std::vector<std::string> provenance;
};

// From a failing fact on (l1,l2) at uniformity k >= 3: a failing fact on
// (2*l1+k-4, 2*l2+k-4) at uniformity k+1 over a ground set of size 2^n.
ArrowFact stepping_up(const ArrowFact& fact);

struct CrossoverRow {
  int n = 0;
  TowerExpr t_low;
  SUpperBounds s_up;
  Order t_vs_literal = Order::kUnknown;
  Order t_vs_erdos_rado = Order::kUnknown;
};

struct CrossoverTable {
  std::vector<CrossoverRow> rows;  // n = 2 .. n_max
  std::optional<int> first_exceeds_literal;
  std::optional<int> first_exceeds_erdos_rado;
};

// Per-n comparison of the lower bound against both upper-bound variants,
// reporting the least n in range where the lower bound provably exceeds.
CrossoverTable crossover(int n_max, const EvalLimits& lim = {});

}  // namespace smlab
