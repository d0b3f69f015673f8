#include "smlab/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace smlab {

namespace {

std::string tuple_str(std::span<const int> t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  s += "}";
  return s;
}

void require_sorted_tuple(std::span<const int> tuple, int carrier_size) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= carrier_size)
      throw std::invalid_argument("tuple element outside carrier: " +
                                  std::to_string(tuple[i]));
    if (i > 0 && tuple[i - 1] >= tuple[i])
      throw std::invalid_argument("tuple must be strictly increasing");
  }
}

}  // namespace

Carrier::Carrier(int size) : size_(size) {
  if (size < 1) throw std::invalid_argument("carrier size must be >= 1");
  if (size > kMaxCarrier)
    throw std::invalid_argument("carrier size must be <= 64");
}

Rho::Rho(Carrier carrier, int range_size, std::vector<int> values)
    : carrier_(carrier), range_(range_size), values_(std::move(values)) {
  if (range_ < 1) throw std::invalid_argument("rho range must be >= 1");
  const std::size_t m = static_cast<std::size_t>(carrier_.size());
  if (values_.size() != m * (m - 1) / 2)
    throw std::invalid_argument("rho table must cover every pair exactly once");
  for (int v : values_)
    if (v < 0 || v >= range_)
      throw std::invalid_argument("rho value " + std::to_string(v) +
                                  " out of range (range " +
                                  std::to_string(range_) + ")");
}

Rho Rho::max_rho(Carrier c) {
  std::vector<int> vals(static_cast<std::size_t>(c.size()) *
                        static_cast<std::size_t>(c.size() - 1) / 2);
  for (int y = 0; y < c.size(); ++y)
    for (int x = 0; x < y; ++x) vals[pair_index(x, y)] = y;
  return Rho(c, c.size(), std::move(vals));
}

Rho Rho::min_rho(Carrier c) {
  std::vector<int> vals(static_cast<std::size_t>(c.size()) *
                        static_cast<std::size_t>(c.size() - 1) / 2);
  for (int y = 0; y < c.size(); ++y)
    for (int x = 0; x < y; ++x) vals[pair_index(x, y)] = x;
  return Rho(c, c.size(), std::move(vals));
}

Rho Rho::constant(Carrier c, int value, int range_size) {
  std::vector<int> vals(static_cast<std::size_t>(c.size()) *
                            static_cast<std::size_t>(c.size() - 1) / 2,
                        value);
  return Rho(c, range_size, std::move(vals));
}

int Rho::operator()(int x, int y) const {
  if (x == y) throw std::invalid_argument("rho is undefined on the diagonal");
  if (x < 0 || y < 0 || x >= carrier_.size() || y >= carrier_.size())
    throw std::invalid_argument("rho argument outside carrier");
  return values_[pair_index(x, y)];
}

GammaFamily::GammaFamily(Carrier carrier, std::vector<Rho> rhos)
    : carrier_(carrier), rhos_(std::move(rhos)) {
  if (rhos_.empty()) throw std::invalid_argument("family must be nonempty");
  for (const Rho& r : rhos_)
    if (!(r.carrier() == carrier_))
      throw std::invalid_argument("family members must share one carrier");
}

GammaFamily GammaFamily::with_rho(Rho extra) const {
  std::vector<Rho> rs = rhos_;
  rs.push_back(std::move(extra));
  return GammaFamily(carrier_, std::move(rs));
}

SetMapping::SetMapping(Carrier carrier, int arity, std::vector<Mask> images)
    : carrier_(carrier), arity_(arity), images_(std::move(images)) {
  if (arity_ < 2) throw std::invalid_argument("mapping arity must be >= 2");
  const std::uint64_t expected = binomial(carrier_.size(), arity_);
  if (images_.size() != expected)
    throw std::invalid_argument("mapping table must cover every tuple");
  const Mask universe = carrier_.universe();
  std::uint64_t rank = 0;
  for_each_combination_colex(carrier_.size(), arity_, [&](std::span<const int> t) {
    const Mask img = images_[rank++];
    if (img & ~universe)
      throw std::invalid_argument("image leaves the carrier at tuple " +
                                  tuple_str(t));
    if (img & mask_of(t))
      throw std::invalid_argument("image meets its own tuple at " +
                                  tuple_str(t));
  });
}

Mask SetMapping::image(std::span<const int> tuple) const {
  require_sorted_tuple(tuple, carrier_.size());
  if (static_cast<int>(tuple.size()) != arity_)
    throw std::invalid_argument("tuple size does not match arity");
  return images_[colex_rank(tuple)];
}

int max_pair_value(const Rho& rho, Mask B) {
  if (std::popcount(B) < 2)
    throw std::invalid_argument("need at least two elements for a pair");
  int best = -1;
  for (Mask rest = B; rest;) {
    const int y = std::countr_zero(rest);
    rest &= rest - 1;
    for (Mask lower = rest; lower;) {
      const int z = std::countr_zero(lower);
      lower &= lower - 1;
      best = std::max(best, rho(y, z));
    }
  }
  return best;
}

bool rho_close(const Rho& rho, int x, Mask B) {
  if (x < 0 || x >= rho.carrier_size())
    throw std::invalid_argument("x outside carrier");
  if (mask_test(B, x)) throw std::invalid_argument("x must lie outside B");
  if (B & ~rho.carrier().universe())
    throw std::invalid_argument("B outside carrier");
  const int bound = max_pair_value(rho, B);  // also rejects |B| < 2
  for (Mask rest = B; rest;) {
    const int g = std::countr_zero(rest);
    rest &= rest - 1;
    if (rho(x, g) > bound) return false;
  }
  return true;
}

Mask generated_image(const GammaFamily& gamma, std::span<const int> tuple) {
  require_sorted_tuple(tuple, gamma.carrier_size());
  if (tuple.size() < 2)
    throw std::invalid_argument("generation needs tuples of size >= 2");
  const Mask tuple_mask = mask_of(tuple);

  // Per-rho maximum over pairs inside the tuple.
  std::vector<int> bound(gamma.size());
  for (std::size_t r = 0; r < gamma.size(); ++r)
    bound[r] = max_pair_value(gamma.rho(r), tuple_mask);

  Mask img = 0;
  for (int x = 0; x < gamma.carrier_size(); ++x) {
    if (mask_test(tuple_mask, x)) continue;
    bool close = true;
    for (std::size_t r = 0; r < gamma.size() && close; ++r) {
      const Rho& rho = gamma.rho(r);
      for (int g : tuple) {
        if (rho(x, g) > bound[r]) {
          close = false;
          break;
        }
      }
    }
    if (close) img |= Mask{1} << x;
  }
  return img;
}

SetMapping generate(const GammaFamily& gamma, int k) {
  if (k < 2) throw std::invalid_argument("arity must be >= 2");
  if (gamma.carrier_size() < k)
    throw std::invalid_argument("carrier smaller than arity");
  std::vector<Mask> images;
  images.reserve(binomial(gamma.carrier_size(), k));
  for_each_combination_colex(gamma.carrier_size(), k,
                             [&](std::span<const int> t) {
                               images.push_back(generated_image(gamma, t));
                             });
  return SetMapping(gamma.carrier(), k, std::move(images));
}

RestrictedFamily restrict_family(const GammaFamily& gamma, Mask B) {
  if (B & ~gamma.carrier().universe())
    throw std::invalid_argument("restriction set outside carrier");
  std::vector<int> elements = mask_elements(B);
  if (elements.size() < 2)
    throw std::invalid_argument("restriction needs at least two elements");
  const Carrier small(static_cast<int>(elements.size()));
  std::vector<Rho> rhos;
  rhos.reserve(gamma.size());
  for (const Rho& rho : gamma.rhos()) {
    std::vector<int> vals(elements.size() * (elements.size() - 1) / 2);
    for (std::size_t j = 1; j < elements.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        vals[pair_index(static_cast<int>(i), static_cast<int>(j))] =
            rho(elements[i], elements[j]);
    rhos.emplace_back(small, rho.range_size(), std::move(vals));
  }
  return RestrictedFamily{GammaFamily(small, std::move(rhos)),
                          std::move(elements)};
}

namespace {

void require_embedding(const GammaFamily& gamma1, const GammaFamily& gamma2,
                       std::span<const int> embed, int k) {
  if (static_cast<int>(embed.size()) != gamma1.carrier_size())
    throw std::invalid_argument("embedding must enumerate the small carrier");
  require_sorted_tuple(embed, gamma2.carrier_size());
  if (k < 2 || gamma1.carrier_size() < k)
    throw std::invalid_argument("arity must fit inside the small carrier");
}

Mask map_mask(Mask small, std::span<const int> embed) {
  Mask out = 0;
  for (Mask rest = small; rest;) {
    const int i = std::countr_zero(rest);
    rest &= rest - 1;
    out |= Mask{1} << embed[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<int> map_tuple(std::span<const int> t, std::span<const int> embed) {
  std::vector<int> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    out[i] = embed[static_cast<std::size_t>(t[i])];
  return out;
}

}  // namespace

// Pair functions are compared by their value tables; the declared range is
// bookkeeping and does not affect closeness.
static bool same_function(const Rho& a, const Rho& b) {
  return a.carrier() == b.carrier() && a.values() == b.values();
}

bool check_monotonicity(const GammaFamily& gamma1, const GammaFamily& gamma2,
                        std::span<const int> embed, int k,
                        std::string* violation) {
  require_embedding(gamma1, gamma2, embed, k);
  const RestrictedFamily restricted = restrict_family(gamma2, mask_of(embed));
  for (const Rho& r : restricted.family.rhos()) {
    bool found = false;
    for (const Rho& own : gamma1.rhos())
      if (same_function(own, r)) {
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument(
          "hypothesis violated: a restricted member is missing from the "
          "smaller family");
  }

  bool ok = true;
  for_each_combination_colex(gamma1.carrier_size(), k,
                             [&](std::span<const int> t) {
    if (!ok) return;
    const Mask f1 = generated_image(gamma1, t);
    const std::vector<int> big = map_tuple(t, embed);
    const Mask f2 = generated_image(gamma2, big);
    if (map_mask(f1, embed) & ~f2) {
      ok = false;
      if (violation) *violation = "containment fails at tuple " + tuple_str(big);
    }
  });
  return ok;
}

bool check_restriction_eq(const GammaFamily& gamma1, const GammaFamily& gamma2,
                          std::span<const int> embed, int k,
                          std::string* violation) {
  require_embedding(gamma1, gamma2, embed, k);
  const RestrictedFamily restricted = restrict_family(gamma2, mask_of(embed));
  bool hypothesis = restricted.family.size() == gamma1.size();
  for (std::size_t i = 0; hypothesis && i < gamma1.size(); ++i)
    hypothesis = same_function(restricted.family.rho(i), gamma1.rho(i));
  if (!hypothesis)
    throw std::invalid_argument(
        "hypothesis violated: restriction does not equal the smaller family");

  const Mask embedded = mask_of(embed);
  bool ok = true;
  for_each_combination_colex(gamma1.carrier_size(), k,
                             [&](std::span<const int> t) {
    if (!ok) return;
    const Mask f1 = generated_image(gamma1, t);
    const std::vector<int> big = map_tuple(t, embed);
    const Mask f2 = generated_image(gamma2, big);
    if (map_mask(f1, embed) != (f2 & embedded)) {
      ok = false;
      if (violation) *violation = "equality fails at tuple " + tuple_str(big);
    }
  });
  return ok;
}

bool check_sublevel_bound(const Rho& rho,
                          const std::function<std::int64_t(int)>& bound,
                          std::string* violation) {
  for (int alpha = 0; alpha < rho.carrier_size(); ++alpha) {
    for (int v = 0; v < rho.range_size(); ++v) {
      std::int64_t count = 0;
      for (int xi = 0; xi < alpha; ++xi)
        if (rho(xi, alpha) <= v) ++count;
      if (count > bound(v)) {
        if (violation)
          *violation = "level " + std::to_string(v) + " below " +
                       std::to_string(alpha) + " holds " +
                       std::to_string(count) + " elements";
        return false;
      }
    }
  }
  return true;
}

bool check_envelope(const GammaFamily& gamma, int k,
                    std::span<const int> tuple, std::string* violation) {
  if (gamma.size() != 2)
    throw std::invalid_argument("envelope check needs a two-member family");
  const Rho expected_max = Rho::max_rho(gamma.carrier());
  if (gamma.rho(0).values() != expected_max.values())
    throw std::invalid_argument(
        "envelope check needs the max-function first in the family");
  require_sorted_tuple(tuple, gamma.carrier_size());
  if (static_cast<int>(tuple.size()) != k || k < 2)
    throw std::invalid_argument("tuple size must equal the arity");

  const Rho& rho1 = gamma.rho(1);
  const int g_star = tuple.back();
  const int v_star = max_pair_value(rho1, mask_of(tuple));
  const Mask img = generated_image(gamma, tuple);
  for (Mask rest = img; rest;) {
    const int x = std::countr_zero(rest);
    rest &= rest - 1;
    if (x > g_star || rho1(x, g_star) > v_star) {
      if (violation)
        *violation = "element " + std::to_string(x) +
                     " escapes the envelope of tuple " + tuple_str(tuple);
      return false;
    }
  }
  return true;
}

bool image_cap_ok(const SetMapping& f, int cap) {
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  for (Mask img : f.images())
    if (std::popcount(img) >= cap) return false;
  return true;
}

}  // namespace smlab
