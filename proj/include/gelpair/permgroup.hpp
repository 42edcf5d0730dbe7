#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "gelpair/perm.hpp"

namespace gelpair {

// Permutation group with a base and strong generating set built by the
// deterministic Schreier-Sims algorithm.  The chain certifies the order
// (product of basic orbit lengths) and answers membership by sifting.
class PermGroup {
 public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;  // strong generators first needed at this level
    std::vector<Point> orbit;       // basic orbit of base, BFS order
    std::vector<std::int32_t> parent;  // Schreier vector: predecessor point
    std::vector<std::int32_t> via;     // generator index (into level_gens cache)
  };

  PermGroup() = default;

  // base_hint: points placed first in the base, in order.  Used for point
  // stabilizers.  seed permutes generator processing order only; the
  // resulting group is the same, the chain may differ.
  explicit PermGroup(std::vector<Permutation> generators,
                     std::vector<Point> base_hint = {}, std::uint64_t seed = 0) {
    if (generators.empty()) throw data_error("empty generator list");
    degree_ = generators[0].degree();
    if (degree_ == 0) throw data_error("degree 0 group");
    for (const auto& g : generators) {
      if (g.degree() != degree_) throw degree_mismatch();
      if (!g.is_identity()) gens_.push_back(g);
    }
    if (seed != 0 && gens_.size() > 1) {
      std::mt19937_64 rng(seed);
      std::shuffle(gens_.begin(), gens_.end(), rng);
    }
    build_chain(base_hint);
  }

  std::size_t degree() const { return degree_; }

  const std::vector<Permutation>& generators() const { return gens_; }

  const std::vector<Level>& chain() const { return levels_; }

  std::uint64_t order() const { return order_; }

  bool trivial() const { return order_ == 1; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  std::vector<Permutation> strong_generators() const {
    std::vector<Permutation> out;
    for (const auto& l : levels_) out.insert(out.end(), l.gens.begin(), l.gens.end());
    if (out.empty()) out.push_back(Permutation::identity(degree_));
    return out;
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) throw degree_mismatch();
    Permutation r = p;
    if (!sift(r, 0)) return false;
    return r.is_identity();
  }

  // Transversal element u with base(level)^u = pt.
  Permutation transversal(std::size_t level, Point pt) const {
    const Level& L = levels_[level];
    std::vector<std::int32_t> path;
    Point x = pt;
    while (x != L.base) {
      path.push_back(L.via[x]);
      x = static_cast<Point>(L.parent[x]);
    }
    Permutation u = Permutation::identity(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      u = u * level_gen_cache_[*it];
    return u;
  }

  bool in_basic_orbit(std::size_t level, Point pt) const {
    return levels_[level].parent[pt] >= 0;
  }

  // Uniformly random element: product of random transversal elements.
  Permutation random_element(std::mt19937_64& rng) const {
    Permutation g = Permutation::identity(degree_);
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      const auto& orbit = levels_[l].orbit;
      std::uniform_int_distribution<std::size_t> d(0, orbit.size() - 1);
      g = transversal(l, orbit[d(rng)]) * g;
    }
    return g;
  }

  // Orbit of a point under the whole group.
  std::vector<Point> orbit_of(Point pt) const {
    std::vector<Point> orb{pt};
    std::vector<bool> seen(degree_, false);
    seen[pt] = true;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens_) {
        Point y = g[orb[i]];
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    return orb;
  }

  std::vector<std::vector<Point>> orbits() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> done(degree_, false);
    for (Point p = 0; p < degree_; ++p) {
      if (done[p]) continue;
      auto orb = orbit_of(p);
      for (Point x : orb) done[x] = true;
      out.push_back(std::move(orb));
    }
    return out;
  }

  // Subgroup fixing pt, via a chain based at pt: the strong generators
  // fixing pt generate the stabilizer.
  PermGroup point_stabilizer(Point pt) const {
    if (pt >= degree_) throw data_error("stabilizer point out of range");
    PermGroup rebased(gens_.empty()
                          ? std::vector<Permutation>{Permutation::identity(degree_)}
                          : gens_,
                      {pt});
    std::vector<Permutation> sgens;
    for (const auto& level : rebased.levels_)
      for (const auto& g : level.gens)
        if (g[pt] == pt) sgens.push_back(g);
    if (sgens.empty()) sgens.push_back(Permutation::identity(degree_));
    return PermGroup(std::move(sgens));
  }

 private:
  void build_chain(const std::vector<Point>& base_hint) {
    levels_.clear();
    level_gen_cache_.clear();
    for (Point b : base_hint) add_level(b);
    if (levels_.empty() && !gens_.empty()) add_level(first_moved(gens_[0]));
    if (!levels_.empty())
      for (const auto& g : gens_) levels_[0].gens.push_back(g);
    for (std::size_t l = 0; l < levels_.size(); ++l) recompute_orbit(l);

    // Holt-style bottom-up completeness loop: verify Schreier generators
    // of each level sift to the identity through the chain below it.
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool complete = true;
      const std::size_t li = static_cast<std::size_t>(i);
      const std::size_t orbit_n = levels_[li].orbit.size();
      const std::size_t gens_n = levels_[li].gens.size();
      for (std::size_t oi = 0; oi < orbit_n && complete; ++oi) {
        Point b = levels_[li].orbit[oi];
        Permutation ub = transversal(li, b);
        for (std::size_t gi = 0; gi < gens_n && complete; ++gi) {
          Permutation g = levels_[li].gens[gi];
          Permutation s = ub * g * transversal(li, g[b]).inverse();
          auto [res, lvl] = residue_level(s, li + 1);
          if (!res.is_identity()) {
            if (lvl == levels_.size()) add_level(first_moved(res));
            levels_[lvl].gens.push_back(res);
            // the new generator lies in every stabilizer above lvl, so
            // basic orbits up the chain may grow
            for (std::size_t j = 0; j <= lvl; ++j) recompute_orbit(j);
            complete = false;
            i = static_cast<std::ptrdiff_t>(lvl);
          }
        }
      }
      if (complete) --i;
    }

    unsigned __int128 o = 1;
    for (const auto& l : levels_) {
      o *= l.orbit.size();
      if (o > static_cast<unsigned __int128>(1000000000000000000ull))
        throw data_error("group order exceeds 10^18");
    }
    order_ = static_cast<std::uint64_t>(o);
  }

  static Point first_moved(const Permutation& g) {
    for (Point i = 0; i < g.degree(); ++i)
      if (g[i] != i) return i;
    return 0;
  }

  void add_level(Point b) {
    Level L;
    L.base = b;
    L.parent.assign(degree_, -1);
    L.via.assign(degree_, -1);
    levels_.push_back(std::move(L));
  }

  void recompute_orbit(std::size_t li) {
    Level& L = levels_[li];
    L.parent.assign(degree_, -1);
    L.via.assign(degree_, -1);
    L.orbit.clear();
    L.orbit.push_back(L.base);
    L.parent[L.base] = L.base;
    L.via[L.base] = -1;
    // generators available at this level: all gens of levels >= li
    std::vector<std::pair<const Permutation*, std::int32_t>> avail;
    for (std::size_t j = li; j < levels_.size(); ++j)
      for (const auto& g : levels_[j].gens) avail.push_back({&g, cache_index(g)});
    for (std::size_t i = 0; i < L.orbit.size(); ++i) {
      Point x = L.orbit[i];
      for (auto& [gp, idx] : avail) {
        Point y = (*gp)[x];
        if (L.parent[y] < 0) {
          L.parent[y] = x;
          L.via[y] = idx;
          L.orbit.push_back(y);
        }
      }
    }
  }

  std::int32_t cache_index(const Permutation& g) {
    for (std::size_t i = 0; i < level_gen_cache_.size(); ++i)
      if (level_gen_cache_[i] == g) return static_cast<std::int32_t>(i);
    level_gen_cache_.push_back(g);
    return static_cast<std::int32_t>(level_gen_cache_.size() - 1);
  }

  // Sifts r through levels starting at `from`.  Returns false if some base
  // image falls outside its basic orbit (r is left at the failing state).
  bool sift(Permutation& r, std::size_t from) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      Point x = r[levels_[l].base];
      if (levels_[l].parent[x] < 0) return false;
      r = r * transversal(l, x).inverse();
    }
    return true;
  }

  // Residue of g after sifting from `from`, and the level it stopped at
  // (levels_.size() if it sifted through every level).
  std::pair<Permutation, std::size_t> residue_level(const Permutation& g,
                                                    std::size_t from) const {
    Permutation r = g;
    for (std::size_t l = from; l < levels_.size(); ++l) {
      Point x = r[levels_[l].base];
      if (levels_[l].parent[x] < 0) return {r, l};
      r = r * transversal(l, x).inverse();
    }
    return {r, levels_.size()};
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
  std::vector<Permutation> level_gen_cache_;
  std::uint64_t order_ = 1;
};

inline PermGroup build_group(std::vector<Permutation> gens, std::uint64_t seed = 0) {
  return PermGroup(std::move(gens), {}, seed);
}

inline bool membership(const PermGroup& g, const Permutation& p) { return g.contains(p); }

inline bool is_subgroup(const PermGroup& g, const PermGroup& h) {
  if (g.degree() != h.degree()) return false;
  for (const auto& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

inline PermGroup point_stabilizer(const PermGroup& g, Point pt) {
  return g.point_stabilizer(pt);
}

// Normal closure of <seeds> in G.
inline PermGroup normal_closure(const PermGroup& g, std::vector<Permutation> seeds) {
  std::vector<Permutation> kgens;
  for (auto& s : seeds)
    if (!s.is_identity()) kgens.push_back(s);
  if (kgens.empty()) return PermGroup({Permutation::identity(g.degree())});
  PermGroup k(kgens);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Permutation> add;
    for (const auto& s : kgens)
      for (const auto& x : g.generators()) {
        Permutation c = conjugate(s, x);
        if (!k.contains(c)) add.push_back(c);
      }
    if (!add.empty()) {
      kgens.insert(kgens.end(), add.begin(), add.end());
      k = PermGroup(kgens);
      changed = true;
    }
  }
  return k;
}

inline PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> comms;
  const auto& gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      comms.push_back(gs[i].inverse() * gs[j].inverse() * gs[i] * gs[j]);
  if (comms.empty()) comms.push_back(Permutation::identity(g.degree()));
  return normal_closure(g, comms);
}

inline bool is_normal_in(const PermGroup& g, const PermGroup& n) {
  for (const auto& x : g.generators())
    for (const auto& s : n.generators())
      if (!n.contains(conjugate(s, x))) return false;
  return true;
}

// Action of G on the right cosets of H.  Cosets are canonicalised by
// greedy base-image minimisation through H's chain, which yields a unique
// representative per coset.
struct CosetAction {
  PermGroup image;
  std::uint64_t kernel_order = 1;
  std::vector<Permutation> reps;  // canonical coset representatives

  // image of an arbitrary element of G under the action homomorphism
  Permutation act(const Permutation& g) const {
    std::vector<Point> img(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      auto it = index_of.find(canonical_key(reps[i] * g));
      img[i] = static_cast<Point>(it->second);
    }
    return Permutation(std::move(img));
  }

  // -- internal --
  const PermGroup* subgroup = nullptr;
  std::unordered_map<std::vector<Point>, std::size_t, PointVecHash> index_of;

  std::vector<Point> canonical_key(const Permutation& g) const {
    return canonicalize(g).images();
  }

  Permutation canonicalize(Permutation g) const {
    const auto& chain = subgroup->chain();
    for (std::size_t l = 0; l < chain.size(); ++l) {
      Point best_from = chain[l].base;
      Point best = g[chain[l].base];
      for (Point d : chain[l].orbit) {
        if (g[d] < best) {
          best = g[d];
          best_from = d;
        }
      }
      if (best_from != chain[l].base) g = subgroup->transversal(l, best_from) * g;
    }
    return g;
  }
};

inline CosetAction coset_action(const PermGroup& g, const PermGroup& h,
                                const Budgets& budgets = {}) {
  if (!is_subgroup(g, h)) throw data_error("coset_action: H is not a subgroup of G");
  std::uint64_t index = g.order() / h.order();
  if (index > budgets.max_index)
    throw budget_error("coset action index " + std::to_string(index) +
                       " exceeds budget " + std::to_string(budgets.max_index));
  CosetAction ca;
  ca.subgroup = &h;
  ca.reps.push_back(ca.canonicalize(Permutation::identity(g.degree())));
  ca.index_of.emplace(ca.reps[0].images(), 0);
  for (std::size_t i = 0; i < ca.reps.size(); ++i) {
    for (const auto& s : g.generators()) {
      Permutation c = ca.canonicalize(ca.reps[i] * s);
      auto [it, fresh] = ca.index_of.emplace(c.images(), ca.reps.size());
      (void)it;
      if (fresh) ca.reps.push_back(std::move(c));
    }
  }
  if (ca.reps.size() != index) throw data_error("coset enumeration mismatch");
  std::size_t n = ca.reps.size();
  std::vector<Permutation> img_gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto key = ca.canonical_key(ca.reps[i] * s);
      img[i] = static_cast<Point>(ca.index_of.at(key));
    }
    img_gens.emplace_back(std::move(img));
  }
  if (img_gens.empty()) img_gens.push_back(Permutation::identity(n));
  ca.image = PermGroup(img_gens);
  ca.kernel_order = g.order() / ca.image.order();
  return ca;
}

}  // namespace gelpair
