#pragma once

#include <optional>
#include <vector>

#include "gelpair/permgroup.hpp"

namespace gelpair {

// Depth-first search over a stabilizer chain for elements g of G with
// a_i^g = b_i for every constraint pair.  A partial point map with
// bidirectional closure under the pair relations does the pruning; leaf
// candidates are verified exactly.
class TransporterSearch {
 public:
  TransporterSearch(const PermGroup& g,
                    std::vector<std::pair<Permutation, Permutation>> pairs)
      : g_(g), n_(g.degree()) {
    for (auto& [a, b] : pairs) {
      Constraint c;
      c.a = a.images();
      c.b = b.images();
      c.ai = a.inverse().images();
      c.bi = b.inverse().images();
      c.alen = cycle_lengths(a);
      c.blen = cycle_lengths(b);
      cons_.push_back(std::move(c));
    }
    fwd_.assign(n_, -1);
    rev_.assign(n_, -1);
  }

  // First solution, if any.
  std::optional<Permutation> find_one() {
    mode_enumerate_ = false;
    found_.reset();
    dfs(0, Permutation::identity(n_));
    return found_;
  }

  // All solutions of a_i^g = a_i form a subgroup; returns it.  `seeds` are
  // known solutions used to prune from the start.
  PermGroup stabilizer(std::vector<Permutation> seeds = {}) {
    mode_enumerate_ = true;
    sub_gens_ = {Permutation::identity(n_)};
    for (auto& s : seeds)
      if (!s.is_identity()) sub_gens_.push_back(std::move(s));
    sub_ = PermGroup(sub_gens_);
    dfs(0, Permutation::identity(n_));
    return std::move(*sub_);
  }

 private:
  struct Constraint {
    std::vector<Point> a, b, ai, bi;
    std::vector<std::uint32_t> alen, blen;
  };

  static std::vector<std::uint32_t> cycle_lengths(const Permutation& p) {
    std::vector<std::uint32_t> len(p.degree(), 0);
    std::vector<bool> seen(p.degree(), false);
    for (std::size_t i = 0; i < p.degree(); ++i) {
      if (seen[i]) continue;
      std::vector<Point> cyc;
      for (Point x = static_cast<Point>(i); !seen[x]; x = p[x]) {
        seen[x] = true;
        cyc.push_back(x);
      }
      for (Point x : cyc) len[x] = static_cast<std::uint32_t>(cyc.size());
    }
    return len;
  }

  bool assign(Point x, Point y) {
    std::vector<std::pair<Point, Point>> work{{x, y}};
    while (!work.empty()) {
      auto [u, v] = work.back();
      work.pop_back();
      if (fwd_[u] >= 0) {
        if (fwd_[u] != v) return false;
        continue;
      }
      if (rev_[v] >= 0) return false;
      for (const auto& c : cons_)
        if (c.alen[u] != c.blen[v]) return false;
      fwd_[u] = v;
      rev_[v] = u;
      trail_.push_back(u);
      for (const auto& c : cons_) {
        work.push_back({c.a[u], c.b[v]});
        work.push_back({c.ai[u], c.bi[v]});
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      Point u = trail_.back();
      trail_.pop_back();
      rev_[fwd_[u]] = -1;
      fwd_[u] = -1;
    }
  }

  bool satisfied(const Permutation& g) const {
    for (const auto& c : cons_)
      for (Point x = 0; x < n_; ++x)
        if (g[c.a[x]] != c.b[g[x]]) return false;
    return true;
  }

  // returns true to cut the whole search (find_one succeeded)
  bool dfs(std::size_t level, const Permutation& tail) {
    const auto& chain = g_.chain();
    if (level == chain.size()) {
      if (!satisfied(tail)) return false;
      if (!mode_enumerate_) {
        found_ = tail;
        return true;
      }
      if (!sub_->contains(tail)) {
        sub_gens_.push_back(tail);
        sub_ = PermGroup(sub_gens_);
      }
      return false;
    }
    Point beta = chain[level].base;
    for (Point delta : chain[level].orbit) {
      Point gamma = tail[delta];
      if (fwd_[beta] >= 0 && fwd_[beta] != gamma) continue;
      if (mode_enumerate_ && level == 0 && !min_in_sub_orbit(gamma)) continue;
      std::size_t mark = trail_.size();
      if (assign(beta, gamma)) {
        if (dfs(level + 1, g_.transversal(level, delta) * tail)) return true;
      }
      undo(mark);
    }
    return false;
  }

  // prune right cosets of the known subgroup: keep candidates minimal in
  // their orbit under it
  bool min_in_sub_orbit(Point gamma) const {
    std::vector<Point> orb{gamma};
    std::vector<bool> seen(n_, false);
    seen[gamma] = true;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& k : sub_gens_) {
        Point y = k[orb[i]];
        if (!seen[y]) {
          if (y < gamma) return false;
          seen[y] = true;
          orb.push_back(y);
        }
      }
    return true;
  }

  const PermGroup& g_;
  Point n_;
  std::vector<Constraint> cons_;
  std::vector<std::int32_t> fwd_, rev_;
  std::vector<Point> trail_;
  bool mode_enumerate_ = false;
  std::optional<Permutation> found_;
  std::vector<Permutation> sub_gens_;
  std::optional<PermGroup> sub_;
};

// Conjugating element t with t^-1 a t = b, if one exists in G.
// Cycle type is checked first and rejects fast.
inline std::optional<Permutation> are_conjugate(const PermGroup& g, const Permutation& a,
                                                const Permutation& b) {
  if (!g.contains(a) || !g.contains(b))
    throw data_error("are_conjugate: element outside the group");
  if (a.cycle_type() != b.cycle_type()) return std::nullopt;
  if (a == b) return Permutation::identity(g.degree());
  TransporterSearch ts(g, {{a, b}});
  return ts.find_one();
}

inline PermGroup centralizer_subgroup(const PermGroup& g,
                                      const std::vector<Permutation>& elems,
                                      std::vector<Permutation> seeds = {}) {
  bool central = true;
  for (const auto& e : elems) {
    for (const auto& x : g.generators())
      if (conjugate(e, x) != e) {
        central = false;
        break;
      }
    if (!central) break;
  }
  if (central) return g;  // everything commutes, the centralizer is all of G
  std::vector<std::pair<Permutation, Permutation>> pairs;
  for (const auto& e : elems) pairs.push_back({e, e});
  TransporterSearch ts(g, std::move(pairs));
  for (const auto& e : elems) seeds.push_back(e);
  // a seed is only usable if it is itself a solution
  std::vector<Permutation> good;
  for (auto& s : seeds) {
    bool ok = true;
    for (const auto& e : elems)
      if (conjugate(e, s) != e) {
        ok = false;
        break;
      }
    if (ok) good.push_back(std::move(s));
  }
  return ts.stabilizer(std::move(good));
}

inline std::uint64_t centralizer_order(const PermGroup& g, const Permutation& p) {
  if (!g.contains(p)) throw data_error("centralizer_order: element outside the group");
  return centralizer_subgroup(g, {p}).order();
}

inline PermGroup center(const PermGroup& g) {
  if (g.generators().empty()) return PermGroup({Permutation::identity(g.degree())});
  std::vector<Permutation> elems;
  for (const auto& x : g.generators()) elems.push_back(x);
  return centralizer_subgroup(g, elems);
}

}  // namespace gelpair
