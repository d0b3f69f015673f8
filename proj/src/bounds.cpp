#include "smlab/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace smlab {

struct TowerExpr::Node {
  Kind kind;
  BigInt lit;                   // kLit
  std::vector<TowerExpr> kids;  // kPow: {base, exponent}; kProd/kSum: members
};

namespace {

std::uint64_t bit_count(const BigInt& v) {
  if (v.is_zero()) return 0;
  return boost::multiprecision::msb(v) + 1;
}

bool is_power_of_two(const BigInt& v) {
  if (v.is_zero()) return false;
  const BigInt masked = v & (v - 1);
  return masked.is_zero();
}

}  // namespace

TowerExpr TowerExpr::lit(BigInt v) {
  if (v < 0) throw std::invalid_argument("literals must be nonnegative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLit;
  n->lit = std::move(v);
  return TowerExpr(std::move(n));
}

TowerExpr TowerExpr::pow(TowerExpr base, TowerExpr exp) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPow;
  n->kids = {std::move(base), std::move(exp)};
  return TowerExpr(std::move(n));
}

TowerExpr TowerExpr::prod(std::vector<TowerExpr> factors) {
  if (factors.empty()) return lit(1);
  if (factors.size() == 1) return factors[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::kProd;
  n->kids = std::move(factors);
  return TowerExpr(std::move(n));
}

TowerExpr TowerExpr::sum(std::vector<TowerExpr> terms) {
  if (terms.empty()) return lit(0);
  if (terms.size() == 1) return terms[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::kSum;
  n->kids = std::move(terms);
  return TowerExpr(std::move(n));
}

TowerExpr::Kind TowerExpr::kind() const { return node_->kind; }

const BigInt& TowerExpr::literal() const {
  if (node_->kind != Kind::kLit) throw std::logic_error("not a literal");
  return node_->lit;
}

const TowerExpr& TowerExpr::base() const {
  if (node_->kind != Kind::kPow) throw std::logic_error("not a power");
  return node_->kids[0];
}

const TowerExpr& TowerExpr::exponent() const {
  if (node_->kind != Kind::kPow) throw std::logic_error("not a power");
  return node_->kids[1];
}

std::span<const TowerExpr> TowerExpr::children() const {
  if (node_->kind != Kind::kProd && node_->kind != Kind::kSum)
    throw std::logic_error("no children on this node");
  return node_->kids;
}

bool TowerExpr::identical(const TowerExpr& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case Kind::kLit:
      return node_->lit == o.node_->lit;
    default:
      if (node_->kids.size() != o.node_->kids.size()) return false;
      for (std::size_t i = 0; i < node_->kids.size(); ++i)
        if (!node_->kids[i].identical(o.node_->kids[i])) return false;
      return true;
  }
}

namespace {

// Literal powers fold during normalization only while the result stays
// within one machine word, keeping normal forms small and predictable.
constexpr std::uint64_t kFoldBits = 64;

bool is_lit(const TowerExpr& e, const BigInt& v) {
  return e.kind() == TowerExpr::Kind::kLit && e.literal() == v;
}

}  // namespace

TowerExpr TowerExpr::normalized() const {
  switch (kind()) {
    case Kind::kLit:
      return *this;

    case Kind::kPow: {
      TowerExpr b = base().normalized();
      TowerExpr e = exponent().normalized();
      if (is_lit(e, 0)) return lit(1);
      if (is_lit(e, 1)) return b;
      if (is_lit(b, 1)) return lit(1);
      if (b.kind() == Kind::kLit && e.kind() == Kind::kLit) {
        if (b.literal().is_zero()) return lit(0);  // exponent >= 1 here
        const std::uint64_t eb = bit_count(e.literal());
        if (eb <= 32) {
          const auto ev = e.literal().convert_to<std::uint64_t>();
          if (ev * bit_count(b.literal()) <= kFoldBits)
            return lit(boost::multiprecision::pow(
                b.literal(), static_cast<unsigned>(ev)));
        }
      }
      if (b.kind() == Kind::kPow) {
        // (x^y)^e = x^(y*e): keeps power chains right-nested.
        TowerExpr inner_base = b.base();
        TowerExpr inner_exp = b.exponent();
        return pow(std::move(inner_base),
                   prod({std::move(inner_exp), std::move(e)}))
            .normalized();
      }
      return pow(std::move(b), std::move(e));
    }

    case Kind::kProd: {
      std::vector<TowerExpr> flat;
      BigInt coeff(1);
      for (const TowerExpr& kid : children()) {
        TowerExpr k = kid.normalized();
        if (k.kind() == Kind::kLit) {
          coeff *= k.literal();
        } else if (k.kind() == Kind::kProd) {
          for (const TowerExpr& g : k.children()) {
            if (g.kind() == Kind::kLit)
              coeff *= g.literal();
            else
              flat.push_back(g);
          }
        } else {
          flat.push_back(std::move(k));
        }
      }
      if (coeff.is_zero()) return lit(0);
      if (flat.empty()) return lit(coeff);
      if (coeff != 1) flat.insert(flat.begin(), lit(coeff));
      return prod(std::move(flat));
    }

    case Kind::kSum: {
      std::vector<TowerExpr> flat;
      BigInt constant(0);
      for (const TowerExpr& kid : children()) {
        TowerExpr k = kid.normalized();
        if (k.kind() == Kind::kLit) {
          constant += k.literal();
        } else if (k.kind() == Kind::kSum) {
          for (const TowerExpr& g : k.children()) {
            if (g.kind() == Kind::kLit)
              constant += g.literal();
            else
              flat.push_back(g);
          }
        } else {
          flat.push_back(std::move(k));
        }
      }
      if (flat.empty()) return lit(constant);
      if (!constant.is_zero()) flat.push_back(lit(constant));
      return sum(std::move(flat));
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<BigInt> TowerExpr::evaluate(const EvalLimits& lim) const {
  switch (kind()) {
    case Kind::kLit:
      return literal();

    case Kind::kSum: {
      BigInt acc(0);
      for (const TowerExpr& kid : children()) {
        auto v = kid.evaluate(lim);
        if (!v) return std::nullopt;  // some term already exceeds the limit
        acc += *v;
      }
      if (bit_count(acc) > lim.max_bits) return std::nullopt;
      return acc;
    }

    case Kind::kProd: {
      std::vector<BigInt> vals;
      vals.reserve(children().size());
      bool huge = false;
      for (const TowerExpr& kid : children()) {
        auto v = kid.evaluate(lim);
        if (!v) {
          huge = true;
          continue;
        }
        if (v->is_zero()) return BigInt(0);  // zero absorbs any factor
        vals.push_back(std::move(*v));
      }
      if (huge) return std::nullopt;  // a huge factor and no zero
      BigInt acc(1);
      for (const BigInt& v : vals) {
        acc *= v;
        if (bit_count(acc) > 2 * lim.max_bits) return std::nullopt;
      }
      if (bit_count(acc) > lim.max_bits) return std::nullopt;
      return acc;
    }

    case Kind::kPow: {
      auto e = exponent().evaluate(lim);
      if (e && e->is_zero()) return BigInt(1);
      auto b = base().evaluate(lim);
      if (b) {
        if (b->is_zero()) return BigInt(0);  // exponent >= 1 or huge
        if (*b == 1) return BigInt(1);
      }
      if (!e || !b) return std::nullopt;  // remaining cases grow past the cap
      // b >= 2: the value has at least e*(bits(b)-1) bits.
      const BigInt floor_bits = *e * (bit_count(*b) - 1);
      if (floor_bits > lim.max_bits) return std::nullopt;
      const auto ev = e->convert_to<std::uint64_t>();
      BigInt r = boost::multiprecision::pow(*b, static_cast<unsigned>(ev));
      if (bit_count(r) > lim.max_bits) return std::nullopt;
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

std::string TowerExpr::str() const {
  switch (kind()) {
    case Kind::kLit:
      return literal().str();
    case Kind::kPow: {
      const auto wrap = [](const TowerExpr& e) {
        const std::string s = e.str();
        return e.kind() == Kind::kLit ? s : "(" + s + ")";
      };
      return wrap(base()) + "^" + wrap(exponent());
    }
    case Kind::kProd: {
      std::string s;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) s += "*";
        const TowerExpr& kid = children()[i];
        const std::string ks = kid.str();
        s += (kid.kind() == Kind::kSum || kid.kind() == Kind::kProd)
                 ? "(" + ks + ")"
                 : ks;
      }
      return s;
    }
    case Kind::kSum: {
      std::string s;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) s += "+";
        s += children()[i].str();
      }
      return s;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

struct Log2Bounds {
  std::optional<TowerExpr> lo;  // integer lower bound on log2
  std::optional<TowerExpr> hi;  // integer upper bound on log2
};

// Conservative integer bounds on log2(e). For literals v >= 1 these come
// from the bit length; powers multiply the base bounds by the exponent;
// products add. Sums never appear at unevaluable levels of the expressions
// built here, so they stay unbounded (the comparator then reports Unknown).
Log2Bounds log2_bounds(const TowerExpr& e) {
  using Kind = TowerExpr::Kind;
  switch (e.kind()) {
    case Kind::kLit: {
      const BigInt& v = e.literal();
      if (v.is_zero()) return {};
      const std::uint64_t bits = bit_count(v);
      if (is_power_of_two(v)) {
        TowerExpr exact = TowerExpr::lit(BigInt(bits - 1));
        return {exact, exact};
      }
      return {TowerExpr::lit(BigInt(bits - 1)), TowerExpr::lit(BigInt(bits))};
    }
    case Kind::kPow: {
      const Log2Bounds base = log2_bounds(e.base());
      Log2Bounds out;
      if (base.lo)
        out.lo = TowerExpr::prod({e.exponent(), *base.lo}).normalized();
      if (base.hi)
        out.hi = TowerExpr::prod({e.exponent(), *base.hi}).normalized();
      return out;
    }
    case Kind::kProd: {
      std::vector<TowerExpr> lows, highs;
      for (const TowerExpr& kid : e.children()) {
        Log2Bounds b = log2_bounds(kid);
        if (!b.lo || !b.hi) return {};
        lows.push_back(std::move(*b.lo));
        highs.push_back(std::move(*b.hi));
      }
      return {TowerExpr::sum(std::move(lows)).normalized(),
              TowerExpr::sum(std::move(highs)).normalized()};
    }
    case Kind::kSum:
      return {};
  }
  throw std::logic_error("unreachable");
}

Order compare_impl(const TowerExpr& a, const TowerExpr& b,
                   const EvalLimits& lim, int depth) {
  const auto va = a.evaluate(lim);
  const auto vb = b.evaluate(lim);
  if (va && vb) {
    if (*va < *vb) return Order::kLess;
    if (*va > *vb) return Order::kGreater;
    return Order::kEqual;
  }
  // An absent value is guaranteed to exceed the bit limit; a present value
  // within the limit is therefore smaller.
  if (va && !vb && bit_count(*va) <= lim.max_bits) return Order::kLess;
  if (vb && !va && bit_count(*vb) <= lim.max_bits) return Order::kGreater;
  if (depth <= 0) return Order::kUnknown;

  if (a.identical(b)) return Order::kEqual;

  const Log2Bounds la = log2_bounds(a);
  const Log2Bounds lb = log2_bounds(b);
  if (la.lo && lb.hi &&
      compare_impl(*la.lo, *lb.hi, lim, depth - 1) == Order::kGreater)
    return Order::kGreater;
  if (la.hi && lb.lo &&
      compare_impl(*la.hi, *lb.lo, lim, depth - 1) == Order::kLess)
    return Order::kLess;
  return Order::kUnknown;
}

}  // namespace

Order compare(const TowerExpr& a, const TowerExpr& b, const EvalLimits& lim) {
  return compare_impl(a.normalized(), b.normalized(), lim, 64);
}

TowerExpr star(const TowerExpr& a, const TowerExpr& b) {
  const auto av = a.evaluate();
  if (av && *av < 1)
    throw std::invalid_argument("star needs a base of at least 1");
  return TowerExpr::pow(a, b).normalized();
}

TowerExpr star_chain(std::span<const TowerExpr> values) {
  if (values.size() < 2)
    throw std::invalid_argument("star chain needs at least two values");
  TowerExpr acc = values.back();
  for (std::size_t i = values.size() - 1; i-- > 0;)
    acc = TowerExpr::pow(values[i], std::move(acc));
  return acc.normalized();
}

TowerExpr erdos_rado_upper(int k, int l, int r) {
  if (r < 2) throw std::invalid_argument("need at least two colors");
  if (k < 2 || l < k) throw std::invalid_argument("need l >= k >= 2");
  std::vector<TowerExpr> chain;
  chain.push_back(TowerExpr::lit(r));
  for (int e = k - 1; e >= 2; --e)
    chain.push_back(TowerExpr::pow(TowerExpr::lit(r), TowerExpr::lit(e)));
  chain.push_back(TowerExpr::lit(BigInt(r) * (l - k) + 1));
  return star_chain(chain);
}

SUpperBounds s_upper(int n) {
  if (n < 0) throw std::invalid_argument("need n >= 0");
  if (n > 100000) throw std::invalid_argument("n too large");
  const TowerExpr three = TowerExpr::lit(3);
  const TowerExpr head = TowerExpr::pow(three, TowerExpr::lit(n + 1));
  const TowerExpr mid = TowerExpr::pow(three, TowerExpr::lit(2 * n + 1));
  const TowerExpr bracket = TowerExpr::sum(
      {TowerExpr::prod({TowerExpr::lit(2), head}), TowerExpr::lit(1)});
  const std::vector<TowerExpr> chain = {head, mid, bracket.normalized()};
  SUpperBounds out{star_chain(chain), TowerExpr::lit(0)};

  const BigInt r = boost::multiprecision::pow(BigInt(3),
                                              static_cast<unsigned>(n) + 1);
  const std::vector<TowerExpr> formula_chain = {
      TowerExpr::lit(r), TowerExpr::pow(TowerExpr::lit(r), TowerExpr::lit(2)),
      TowerExpr::lit(r * 2 + 1)};
  out.via_erdos_rado = star_chain(formula_chain);
  return out;
}

TowerExpr tower(int n, const TowerExpr& x) {
  if (n < 1) throw std::invalid_argument("tower height must be >= 1");
  if (n > 4096) throw std::invalid_argument("tower height too large");
  TowerExpr acc = x.normalized();
  for (int i = 1; i < n; ++i)
    acc = TowerExpr::pow(TowerExpr::lit(2), std::move(acc)).normalized();
  return acc;
}

TowerExpr t_lower(int n) {
  if (n < 2)
    throw std::invalid_argument("lower bound is stated for n >= 2 only");
  return tower(n, TowerExpr::lit(7));
}

ArrowFact stepping_up(const ArrowFact& fact) {
  if (fact.holds)
    throw std::invalid_argument("stepping-up applies to failing facts");
  if (fact.uniformity < 3)
    throw std::invalid_argument("stepping-up needs uniformity >= 3");
  if (fact.targets.size() != 2)
    throw std::invalid_argument("stepping-up needs exactly two targets");
  ArrowFact out;
  out.holds = false;
  out.n = TowerExpr::pow(TowerExpr::lit(2), fact.n).normalized();
  out.uniformity = fact.uniformity + 1;
  const long long k = fact.uniformity;
  out.targets = {2 * fact.targets[0] + k - 4, 2 * fact.targets[1] + k - 4};
  out.provenance = fact.provenance;
  out.provenance.push_back(
      "stepping-up: ground set 2^n, uniformity " + std::to_string(k) + "->" +
      std::to_string(k + 1) + ", targets (" + std::to_string(out.targets[0]) +
      "," + std::to_string(out.targets[1]) + ")");
  return out;
}

CrossoverTable crossover(int n_max, const EvalLimits& lim) {
  if (n_max < 2) throw std::invalid_argument("need n_max >= 2");
  CrossoverTable table;
  for (int n = 2; n <= n_max; ++n) {
    CrossoverRow row;
    row.n = n;
    row.t_low = t_lower(n);
    row.s_up = s_upper(n);
    row.t_vs_literal = compare(row.t_low, row.s_up.literal, lim);
    row.t_vs_erdos_rado = compare(row.t_low, row.s_up.via_erdos_rado, lim);
    if (row.t_vs_literal == Order::kGreater && !table.first_exceeds_literal)
      table.first_exceeds_literal = n;
    if (row.t_vs_erdos_rado == Order::kGreater &&
        !table.first_exceeds_erdos_rado)
      table.first_exceeds_erdos_rado = n;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace smlab
