#include "smlab/conditions.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace smlab {

namespace {

std::string pair_str(int x, int y) {
  return "{" + std::to_string(x) + "," + std::to_string(y) + "}";
}

std::string tuple_str(std::span<const int> t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + "}";
}

}  // namespace

Condition::Condition(GammaFamily background, int k, std::vector<int> support,
                     std::vector<int> local_values)
    : background_(std::move(background)), k_(k), support_(std::move(support)),
      local_values_(std::move(local_values)) {
  if (k_ < 2) throw std::invalid_argument("arity must be >= 2");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] < 0 || support_[i] >= background_.carrier_size())
      throw std::invalid_argument("support element outside background carrier");
    if (i > 0 && support_[i - 1] >= support_[i])
      throw std::invalid_argument("support must be strictly increasing");
  }
  const std::size_t s = support_.size();
  if (local_values_.size() != s * (s - 1) / 2)
    throw std::invalid_argument("local table must cover every support pair");
  for (int v : local_values_)
    if (v < 0) throw std::invalid_argument("local values must be >= 0");

  if (static_cast<int>(s) >= k_) {
    const RestrictedFamily restricted =
        restrict_family(background_, mask_of(support_));
    const int range = max_local_value() + 1;
    Rho local(Carrier(static_cast<int>(s)), range, local_values_);
    mapping_ = generate(restricted.family.with_rho(std::move(local)), k_);
  }
}

int Condition::position_of(int bg_element) const {
  const auto it =
      std::lower_bound(support_.begin(), support_.end(), bg_element);
  if (it == support_.end() || *it != bg_element)
    throw std::invalid_argument("element " + std::to_string(bg_element) +
                                " is not in the support");
  return static_cast<int>(it - support_.begin());
}

int Condition::local_value(int x, int y) const {
  if (x == y) throw std::invalid_argument("no diagonal pairs");
  return local_values_[pair_index(position_of(x), position_of(y))];
}

std::vector<std::array<int, 3>> Condition::local_pairs() const {
  std::vector<std::array<int, 3>> out;
  out.reserve(local_values_.size());
  for (std::size_t j = 1; j < support_.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      out.push_back({support_[i], support_[j],
                     local_values_[pair_index(static_cast<int>(i),
                                              static_cast<int>(j))]});
  return out;
}

int Condition::max_local_value() const {
  int best = -1;
  for (int v : local_values_) best = std::max(best, v);
  return best;
}

Mask Condition::image_in_background(std::span<const int> bg_tuple) const {
  if (!mapping_)
    throw std::invalid_argument("support smaller than the arity has no tuples");
  std::vector<int> local(bg_tuple.size());
  for (std::size_t i = 0; i < bg_tuple.size(); ++i)
    local[i] = position_of(bg_tuple[i]);
  Mask out = 0;
  Mask img = mapping_->image(local);
  while (img) {
    const int pos = std::countr_zero(img);
    img &= img - 1;
    out |= Mask{1} << support_[static_cast<std::size_t>(pos)];
  }
  return out;
}

Condition make_condition(const GammaFamily& background, int k,
                         std::vector<int> support,
                         std::vector<int> local_values) {
  return Condition(background, k, std::move(support), std::move(local_values));
}

Condition make_condition(const GammaFamily& background, int k,
                         std::vector<int> support,
                         std::span<const std::array<int, 3>> pairs) {
  std::sort(support.begin(), support.end());
  const std::size_t s = support.size();
  std::vector<int> values(s * (s - 1) / 2, -1);
  const auto position = [&](int x) {
    const auto it = std::lower_bound(support.begin(), support.end(), x);
    if (it == support.end() || *it != x)
      throw std::invalid_argument("pair element " + std::to_string(x) +
                                  " is outside the support");
    return static_cast<int>(it - support.begin());
  };
  for (const auto& [x, y, v] : pairs) {
    if (x == y) throw std::invalid_argument("no diagonal pairs");
    const std::size_t idx =
        pair_index(position(x), position(y));
    if (values[idx] != -1)
      throw std::invalid_argument("duplicate pair " + pair_str(x, y));
    values[idx] = v;
  }
  for (std::size_t j = 1; j < s; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (values[pair_index(static_cast<int>(i), static_cast<int>(j))] == -1)
        throw std::invalid_argument("missing pair " +
                                    pair_str(support[i], support[j]));
  return Condition(background, k, std::move(support), std::move(values));
}

bool extends(const Condition& q, const Condition& p, std::string* why) {
  if (!(q.background() == p.background()) || q.k() != p.k())
    throw std::invalid_argument("conditions live over different backgrounds");
  const Mask ps = p.support_mask();
  if (ps & ~q.support_mask()) {
    if (why) *why = "support is not a superset";
    return false;
  }
  const std::vector<int>& sup = p.support();
  for (std::size_t j = 1; j < sup.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (q.local_value(sup[i], sup[j]) != p.local_value(sup[i], sup[j])) {
        if (why)
          *why = "local value changed on pair " + pair_str(sup[i], sup[j]);
        return false;
      }
  bool ok = true;
  if (static_cast<int>(sup.size()) >= p.k()) {
    for_each_combination_colex(static_cast<int>(sup.size()), p.k(),
                               [&](std::span<const int> idx) {
      if (!ok) return;
      std::vector<int> t(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        t[i] = sup[static_cast<std::size_t>(idx[i])];
      if (q.image_in_background(t) != p.image_in_background(t)) {
        ok = false;
        if (why) *why = "mapping changed at tuple " + tuple_str(t);
      }
    });
  }
  return ok;
}

Condition amalgamate(const Condition& pi, const Condition& pj) {
  if (!(pi.background() == pj.background()) || pi.k() != pj.k())
    throw std::invalid_argument("conditions live over different backgrounds");
  const Mask mi = pi.support_mask();
  const Mask mj = pj.support_mask();
  const std::vector<int> shared = mask_elements(mi & mj);

  for (std::size_t j = 1; j < shared.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (pi.local_value(shared[i], shared[j]) !=
          pj.local_value(shared[i], shared[j]))
        throw std::invalid_argument(
            "incompatible conditions: local values differ on pair " +
            pair_str(shared[i], shared[j]));
  if (static_cast<int>(shared.size()) >= pi.k()) {
    std::string bad;
    for_each_combination_colex(static_cast<int>(shared.size()), pi.k(),
                               [&](std::span<const int> idx) {
      if (!bad.empty()) return;
      std::vector<int> t(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        t[i] = shared[static_cast<std::size_t>(idx[i])];
      if (pi.image_in_background(t) != pj.image_in_background(t))
        bad = tuple_str(t);
    });
    if (!bad.empty())
      throw std::invalid_argument(
          "incompatible conditions: mappings differ at tuple " + bad);
  }

  const std::vector<int> support = mask_elements(mi | mj);
  const int fresh =
      std::max(pi.max_local_value(), pj.max_local_value()) + 1;  // 0 if none
  const std::size_t s = support.size();
  std::vector<int> values(s * (s - 1) / 2);
  for (std::size_t j = 1; j < s; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const int x = support[i], y = support[j];
      const bool in_i = mask_test(mi, x) && mask_test(mi, y);
      const bool in_j = mask_test(mj, x) && mask_test(mj, y);
      int v;
      if (in_i)
        v = pi.local_value(x, y);
      else if (in_j)
        v = pj.local_value(x, y);
      else
        v = fresh;
      values[pair_index(static_cast<int>(i), static_cast<int>(j))] = v;
    }
  Condition q(pi.background(), pi.k(), support, std::move(values));
#ifndef NDEBUG
  assert(extends(q, pi) && extends(q, pj));
#endif
  return q;
}

Condition extend_with_point(const Condition& p, int alpha) {
  if (alpha < 0 || alpha >= p.background().carrier_size())
    throw std::invalid_argument("point outside background carrier");
  if (mask_test(p.support_mask(), alpha))
    throw std::invalid_argument("point already in the support");

  std::vector<int> support = p.support();
  support.insert(std::lower_bound(support.begin(), support.end(), alpha),
                 alpha);
  const int fresh = p.max_local_value() + 1;  // 0 when no pairs yet
  const std::size_t s = support.size();
  std::vector<int> values(s * (s - 1) / 2);
  for (std::size_t j = 1; j < s; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const int x = support[i], y = support[j];
      values[pair_index(static_cast<int>(i), static_cast<int>(j))] =
          (x == alpha || y == alpha) ? fresh : p.local_value(x, y);
    }
  Condition q(p.background(), p.k(), std::move(support), std::move(values));
#ifndef NDEBUG
  assert(extends(q, p));
  if (static_cast<int>(p.support().size()) >= p.k()) {
    for_each_combination_colex(static_cast<int>(p.support().size()), p.k(),
                               [&](std::span<const int> idx) {
      std::vector<int> t(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        t[i] = p.support()[static_cast<std::size_t>(idx[i])];
      assert(!mask_test(q.image_in_background(t), alpha));
    });
  }
#endif
  return q;
}

Condition chain_union(std::span<const Condition> chain) {
  if (chain.empty()) throw std::invalid_argument("chain must be nonempty");
  for (std::size_t i = 1; i < chain.size(); ++i) {
    std::string why;
    if (!extends(chain[i], chain[i - 1], &why))
      throw std::invalid_argument("not a chain at position " +
                                  std::to_string(i) + ": " + why);
  }

  Mask union_mask = 0;
  for (const Condition& c : chain) union_mask |= c.support_mask();
  const std::vector<int> support = mask_elements(union_mask);
  const std::size_t s = support.size();
  std::vector<int> values(s * (s - 1) / 2, -1);
  for (const Condition& c : chain)
    for (const auto& [x, y, v] : c.local_pairs()) {
      const std::size_t idx = pair_index(
          static_cast<int>(std::lower_bound(support.begin(), support.end(), x) -
                           support.begin()),
          static_cast<int>(std::lower_bound(support.begin(), support.end(), y) -
                           support.begin()));
      if (values[idx] != -1 && values[idx] != v)
        throw std::logic_error("chain members disagree on pair " +
                               pair_str(x, y));
      values[idx] = v;
    }
  for (int v : values)
    if (v == -1) throw std::logic_error("chain union left a pair unset");

  Condition u(chain.front().background(), chain.front().k(), support,
              std::move(values));
  // The regenerated mapping must restrict to every member's mapping.
  for (const Condition& c : chain) {
    std::string why;
    if (!extends(u, c, &why))
      throw std::logic_error("union fails to extend a member: " + why);
  }
  return u;
}

}  // namespace smlab
