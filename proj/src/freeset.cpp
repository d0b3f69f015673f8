#include "smlab/freeset.hpp"

#include <algorithm>
#include <stdexcept>

namespace smlab {

bool is_free(const SetMapping& f, Mask H) {
  if (H & ~f.carrier().universe())
    throw std::invalid_argument("subset outside carrier");
  const int k = f.arity();
  const std::vector<int> elems = mask_elements(H);
  if (static_cast<int>(elems.size()) < k) return true;
  bool free = true;
  for_each_combination_lex(static_cast<int>(elems.size()), k,
                           [&](std::span<const int> idx) {
    if (!free) return;
    std::vector<int> t(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      t[i] = elems[static_cast<std::size_t>(idx[i])];
    if (f.image(t) & H) free = false;
  });
  return free;
}

namespace {

struct Search {
  const SetMapping& f;
  int m, k;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool truncated = false;
  std::vector<int> current;
  Mask current_mask = 0;
  Mask forbidden = 0;  // union of images of tuples inside `current`
  std::vector<int> best;

  explicit Search(const SetMapping& mapping, std::uint64_t node_budget)
      : f(mapping), m(mapping.carrier_size()), k(mapping.arity()),
        budget(node_budget) {}

  // Images of the tuples created by adding `e`; false if any of them meets
  // the enlarged set.
  bool admits(int e, Mask* new_images) {
    *new_images = 0;
    if (static_cast<int>(current.size()) < k - 1) return true;
    const Mask enlarged = current_mask | (Mask{1} << e);
    bool ok = true;
    for_each_combination_lex(static_cast<int>(current.size()), k - 1,
                             [&](std::span<const int> idx) {
      if (!ok) return;
      std::vector<int> t;
      t.reserve(static_cast<std::size_t>(k));
      for (int i : idx) t.push_back(current[static_cast<std::size_t>(i)]);
      t.push_back(e);  // e exceeds every chosen element
      const Mask img = f.image(t);
      if (img & enlarged) {
        ok = false;
        return;
      }
      *new_images |= img;
    });
    return ok;
  }

  void dfs(int next) {
    if (truncated) return;
    if (++nodes > budget) {
      truncated = true;
      return;
    }
    // Elements still addable: undecided and not yet forbidden.
    const Mask candidates = mask_all(m) & ~mask_all(next) & ~forbidden;
    if (static_cast<int>(current.size()) + std::popcount(candidates) <=
        static_cast<int>(best.size()))
      return;
    if (next == m) {
      best = current;  // strictly larger by the bound above
      return;
    }
    if (mask_test(candidates, next)) {
      Mask new_images = 0;
      if (admits(next, &new_images)) {
        current.push_back(next);
        current_mask |= Mask{1} << next;
        const Mask saved = forbidden;
        forbidden |= new_images;
        dfs(next + 1);
        forbidden = saved;
        current_mask &= ~(Mask{1} << next);
        current.pop_back();
      }
    }
    dfs(next + 1);
  }
};

}  // namespace

FreeSearchResult max_free_set(const SetMapping& f, std::uint64_t budget) {
  if (budget == 0) throw std::invalid_argument("budget must be positive");
  Search s(f, budget);
  s.dfs(0);
  FreeSearchResult r;
  r.max_size = static_cast<int>(s.best.size());
  r.witness = std::move(s.best);
  r.nodes_explored = s.nodes;
  r.exhausted = !s.truncated;
  return r;
}

FreeSearchResult max_free_set(const GammaFamily& gamma, int k,
                              std::uint64_t budget) {
  return max_free_set(generate(gamma, k), budget);
}

LocationProfile location_profile(const SetMapping& f) {
  const int k = f.arity();
  if (k != 3 && k != 4)
    throw std::invalid_argument("location profile supports arity 3 and 4");
  LocationProfile p{true, true, true, true, true};
  for_each_combination_colex(f.carrier_size(), k, [&](std::span<const int> t) {
    const Mask img = f.image(t);
    if (!img) return;
    const Mask below_x0 = mask_all(t[0]);
    const Mask open_01 = mask_all(t[1]) & ~mask_all(t[0] + 1);
    const Mask open_12 = mask_all(t[2]) & ~mask_all(t[1] + 1);
    const Mask above_top = ~mask_all(t[static_cast<std::size_t>(k) - 1] + 1);
    if (img & ~below_x0) p.below_min = false;
    if (img & ~open_01) p.inside_01 = false;
    if (img & ~open_12) p.inside_12 = false;
    if (img & ~above_top) p.above_max = false;
    if (img & open_12) p.avoids_12 = false;
  });
  return p;
}

GammaFamily sample_family(Carrier c, std::span<const int> ranges,
                          SplitMix64& rng) {
  if (ranges.empty()) throw std::invalid_argument("need at least one range");
  const std::size_t pairs = static_cast<std::size_t>(c.size()) *
                            static_cast<std::size_t>(c.size() - 1) / 2;
  std::vector<Rho> rhos;
  rhos.reserve(ranges.size());
  for (int range : ranges) {
    if (range < 1) throw std::invalid_argument("range must be >= 1");
    std::vector<int> vals(pairs);
    for (int& v : vals)
      v = static_cast<int>(rng.below(static_cast<std::uint64_t>(range)));
    rhos.emplace_back(c, range, std::move(vals));
  }
  return GammaFamily(c, std::move(rhos));
}

std::vector<ExplorationRecord> explore_no_free_t(const ExploreParams& p) {
  if (p.k < 2) throw std::invalid_argument("arity must be >= 2");
  if (p.target < p.k + 1)
    throw std::invalid_argument("target must be at least arity + 1");
  if (p.carrier < p.k)
    throw std::invalid_argument("carrier smaller than arity");
  if (p.trials < 0) throw std::invalid_argument("trials must be >= 0");
  if (p.cap < 1) throw std::invalid_argument("cap must be >= 1");
  if (p.inside_only && p.k != 3 && p.k != 4)
    throw std::invalid_argument("location filter supports arity 3 and 4");

  SplitMix64 master(p.seed);
  std::vector<ExplorationRecord> records;
  records.reserve(static_cast<std::size_t>(p.trials));
  for (int trial = 0; trial < p.trials; ++trial) {
    ExplorationRecord rec;
    rec.trial = trial;
    rec.seed = master.next();
    rec.carrier = p.carrier;
    rec.k = p.k;
    rec.ranges = p.ranges;
    rec.cap = p.cap;
    rec.target = p.target;

    SplitMix64 rng(rec.seed);
    const GammaFamily family = sample_family(Carrier(p.carrier), p.ranges, rng);
    const SetMapping f = generate(family, p.k);
    rec.cap_ok = image_cap_ok(f, p.cap);
    rec.filter_ok = !p.inside_only || location_profile(f).inside_12;
    if (rec.cap_ok && rec.filter_ok && p.budget > 0) {
      const FreeSearchResult r = max_free_set(f, p.budget);
      rec.max_free_observed = r.max_size;
      rec.exhausted = r.exhausted;
      rec.nodes = r.nodes_explored;
      rec.found_counterexample = r.exhausted && r.max_size < p.target;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace smlab
