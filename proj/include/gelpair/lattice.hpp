#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gelpair/classes.hpp"

namespace gelpair {

// A group small enough to hold element-by-element (the full-lattice
// budget), with subgroups as bitsets over element indices.
class SmallGroup {
 public:
  explicit SmallGroup(const PermGroup& g, std::uint64_t budget = 5000) : src_(&g) {
    if (g.order() > budget)
      throw budget_error("group of order " + std::to_string(g.order()) +
                         " exceeds the full-lattice budget " + std::to_string(budget));
    elems_.push_back(Permutation::identity(g.degree()));
    index_.emplace(elems_[0], 0);
    for (std::size_t i = 0; i < elems_.size(); ++i)
      for (const auto& x : g.generators()) {
        auto y = elems_[i] * x;
        if (index_.emplace(y, elems_.size()).second) elems_.push_back(std::move(y));
      }
    if (elems_.size() != g.order()) throw data_error("element enumeration mismatch");
    inv_.resize(elems_.size());
    for (std::uint32_t i = 0; i < elems_.size(); ++i)
      inv_[i] = index_.at(elems_[i].inverse());
  }

  std::size_t size() const { return elems_.size(); }
  const PermGroup& group() const { return *src_; }
  const Permutation& element(std::uint32_t i) const { return elems_[i]; }
  std::uint32_t index_of(const Permutation& p) const { return index_.at(p); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return index_.at(elems_[a] * elems_[b]);
  }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t conj(std::uint32_t a, std::uint32_t by) const {
    return index_.at(conjugate(elems_[a], elems_[by]));
  }

  // ---- subgroups as bitsets ----
  using Bits = std::vector<std::uint64_t>;

  Bits empty_bits() const { return Bits((size() + 63) / 64, 0); }
  static void set_bit(Bits& b, std::uint32_t i) { b[i >> 6] |= 1ull << (i & 63); }
  static bool get_bit(const Bits& b, std::uint32_t i) {
    return (b[i >> 6] >> (i & 63)) & 1;
  }
  static std::size_t popcount(const Bits& b) {
    std::size_t c = 0;
    for (auto w : b) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  static bool subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] & ~b[i]) return false;
    return true;
  }

  std::vector<std::uint32_t> members(const Bits& b) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < size(); ++i)
      if (get_bit(b, i)) out.push_back(i);
    return out;
  }

  Bits closure(const std::vector<std::uint32_t>& gens) const {
    Bits b = empty_bits();
    std::vector<std::uint32_t> frontier{0};
    set_bit(b, 0);
    for (auto g : gens)
      if (!get_bit(b, g)) {
        set_bit(b, g);
        frontier.push_back(g);
      }
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (auto g : gens) {
        std::uint32_t y = mul(frontier[i], g);
        if (!get_bit(b, y)) {
          set_bit(b, y);
          frontier.push_back(y);
        }
      }
    return b;
  }

  Bits conjugate_set(const Bits& b, std::uint32_t by) const {
    Bits out = empty_bits();
    for (std::uint32_t i = 0; i < size(); ++i)
      if (get_bit(b, i)) set_bit(out, conj(i, by));
    return out;
  }

  // full conjugation orbit of a subgroup bitset: canonical (minimal)
  // member and the class length
  std::pair<Bits, std::size_t> conjugacy_orbit(const Bits& b) const {
    Bits best = b;
    std::unordered_set<Bits, BitsHash> seen{b};
    std::vector<Bits> frontier{b};
    std::vector<std::uint32_t> gen_idx;
    for (const auto& x : src_->generators()) gen_idx.push_back(index_.at(x));
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (auto g : gen_idx) {
        Bits c = conjugate_set(frontier[i], g);
        if (seen.insert(c).second) {
          if (c < best) best = c;
          frontier.push_back(std::move(c));
        }
      }
    return {best, seen.size()};
  }

  Bits canonical_conjugate(const Bits& b) const { return conjugacy_orbit(b).first; }

  PermGroup subgroup(const std::vector<std::uint32_t>& gens) const {
    std::vector<Permutation> ps;
    for (auto g : gens) ps.push_back(elems_[g]);
    if (ps.empty()) ps.push_back(Permutation::identity(src_->degree()));
    return PermGroup(std::move(ps));
  }

  struct BitsHash {
    std::size_t operator()(const Bits& b) const {
      std::size_t h = 1469598103934665603ull;
      for (auto w : b) {
        h ^= w;
        h *= 1099511628211ull;
      }
      return h;
    }
  };

 private:
  const PermGroup* src_;
  std::vector<Permutation> elems_;
  std::unordered_map<Permutation, std::uint32_t, PermHash> index_;
  std::vector<std::uint32_t> inv_;
};

// One conjugacy class of subgroups found by the lattice enumeration.
struct SubgroupClass {
  SmallGroup::Bits canon;               // canonical (minimal) member bitset
  std::vector<std::uint32_t> gens;      // generators of the canonical member
  std::uint64_t order = 1;
  std::size_t conjugates = 1;           // subgroups in the class
};

// Cyclic extension enumeration of subgroup conjugacy classes: every
// subgroup reachable by a chain of normal extensions of prime index is
// found, which covers all solvable subgroups.  Perfect subgroups enter
// only through `seeds` (their upward extensions are then found too).
inline std::vector<SubgroupClass> subgroup_classes(
    const SmallGroup& sg, const std::vector<std::vector<std::uint32_t>>& seeds = {},
    bool include_whole = false) {
  using Bits = SmallGroup::Bits;
  std::unordered_map<Bits, std::size_t, SmallGroup::BitsHash> known;
  std::vector<SubgroupClass> classes;

  auto insert = [&](const std::vector<std::uint32_t>& gens) -> bool {
    Bits b = sg.closure(gens);
    auto [canon, count] = sg.conjugacy_orbit(b);
    if (known.count(canon)) return false;
    SubgroupClass c;
    c.canon = canon;
    c.order = SmallGroup::popcount(b);
    c.conjugates = count;
    // regenerate generators inside the canonical member
    std::vector<std::uint32_t> cgens;
    Bits cur = sg.empty_bits();
    SmallGroup::set_bit(cur, 0);
    for (std::uint32_t i = 0; i < sg.size(); ++i)
      if (SmallGroup::get_bit(canon, i) && !SmallGroup::get_bit(cur, i)) {
        cgens.push_back(i);
        cur = sg.closure(cgens);
        if (SmallGroup::popcount(cur) == c.order) break;
      }
    c.gens = std::move(cgens);
    known.emplace(canon, classes.size());
    classes.push_back(std::move(c));
    return true;
  };

  insert({});  // trivial subgroup
  for (const auto& s : seeds) insert(s);

  std::vector<std::uint64_t> primes;
  for (auto [p, e] : factorize(sg.size())) {
    (void)e;
    primes.push_back(p);
  }

  // process classes in discovery order; each extension either exists
  // already or is appended, so one pass over the growing list suffices
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    Bits h = classes[ci].canon;
    std::uint64_t ord = classes[ci].order;
    std::vector<std::uint32_t> hgens = classes[ci].gens;
    // normalizer scan: g normalizes H iff every generator conjugates in
    std::vector<std::uint32_t> normalizer;
    for (std::uint32_t g = 0; g < sg.size(); ++g) {
      bool ok = true;
      for (auto x : hgens)
        if (!SmallGroup::get_bit(h, sg.conj(x, g))) {
          ok = false;
          break;
        }
      if (ok && hgens.empty()) ok = true;
      if (ok) normalizer.push_back(g);
    }
    for (auto g : normalizer) {
      if (SmallGroup::get_bit(h, g)) continue;
      std::uint64_t go = sg.element(g).order();
      for (auto p : primes) {
        if (go % p != 0) continue;
        // force g^p into H by replacing g with a power when possible
        std::uint32_t cand = g;
        // candidate of order contributing index p: need cand^p in H
        std::uint32_t cp = cand;
        for (std::uint64_t t = 1; t < p; ++t) cp = sg.mul(cp, cand);
        if (!SmallGroup::get_bit(h, cp)) continue;
        std::uint64_t next_order = ord * p;
        if (next_order > sg.size() || (!include_whole && next_order == sg.size()))
          continue;
        auto gens2 = hgens;
        gens2.push_back(cand);
        insert(gens2);
      }
    }
  }
  return classes;
}

// Does some conjugate of A lie inside B?  A and B are canonical class
// representatives inside the same SmallGroup.
inline bool class_below(const SmallGroup& sg, const SubgroupClass& a,
                        const SubgroupClass& b) {
  if (b.order % a.order != 0) return false;
  if (a.order == b.order) return a.canon == b.canon;
  for (std::uint32_t g = 0; g < sg.size(); ++g) {
    bool ok = true;
    for (auto x : a.gens)
      if (!SmallGroup::get_bit(b.canon, sg.conj(x, g))) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace gelpair
