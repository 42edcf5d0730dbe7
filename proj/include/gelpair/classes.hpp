#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "gelpair/backtrack.hpp"
#include "gelpair/permgroup.hpp"

namespace gelpair {

inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

// Conjugacy class data: representatives, sizes, centralizer orders,
// element orders and prime power maps, in canonical order (element order,
// size, minimal representative image list), identity first.
struct ClassData {
  std::uint64_t group_order = 1;
  std::vector<Permutation> reps;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> centralizer_orders;
  std::vector<std::uint64_t> element_orders;
  std::map<std::uint64_t, std::vector<std::size_t>> power_maps;  // prime -> class map

  std::size_t count() const { return reps.size(); }

  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (auto o : element_orders) e = std::lcm(e, o);
    return e;
  }

  // class of reps[k]^e, via the prime power maps
  std::size_t power_class(std::size_t k, std::uint64_t e) const {
    std::uint64_t m = element_orders[k];
    e %= m;
    if (e == 0) return 0;
    std::size_t c = k;
    for (auto [p, mult] : factorize(e))
      for (unsigned i = 0; i < mult; ++i) c = power_maps.at(p)[c];
    return c;
  }

  // index of the class of inverses of class k
  std::size_t inverse_class(std::size_t k) const {
    return power_class(k, element_orders[k] - 1);
  }
};

namespace detail {

// Enumerates a full conjugacy class by conjugation-orbit BFS.
inline std::vector<Permutation> enumerate_class(const PermGroup& g, const Permutation& rep,
                                                std::uint64_t expect_size,
                                                std::uint64_t budget) {
  if (expect_size > budget)
    throw budget_error("conjugacy class of size " + std::to_string(expect_size) +
                       " exceeds enumeration budget " + std::to_string(budget) +
                       "; use an ingested character table for this group");
  std::vector<Permutation> orb{rep};
  std::unordered_map<Permutation, bool, PermHash> seen;
  seen.emplace(rep, true);
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const auto& x : g.generators()) {
      Permutation c = conjugate(orb[i], x);
      if (seen.emplace(c, true).second) orb.push_back(std::move(c));
    }
  if (expect_size != 0 && orb.size() != expect_size)
    throw data_error("class enumeration size mismatch");
  return orb;
}

inline Permutation minimal_class_element(const PermGroup& g, const Permutation& rep,
                                         std::uint64_t size, std::uint64_t budget) {
  auto elems = enumerate_class(g, rep, size, budget);
  return *std::min_element(elems.begin(), elems.end());
}

}  // namespace detail

// Finds the conjugacy classes by random sampling with centralizer-order
// accounting until the class equation closes, then sorts canonically.
// Central classes are collected first so size-1 classes cannot stall the
// sampling.
inline ClassData conjugacy_classes(const PermGroup& g, const Budgets& budgets = {},
                                   std::uint64_t seed = 1) {
  if (g.order() > budgets.max_order)
    throw budget_error("group order " + std::to_string(g.order()) +
                       " exceeds compute budget " + std::to_string(budgets.max_order) +
                       "; provide an ingested character table instead");
  struct Cls {
    Permutation rep;
    std::uint64_t size, cent, ord;
  };
  std::vector<Cls> classes;
  std::uint64_t covered = 0;

  auto classify = [&](const Permutation& p) -> std::ptrdiff_t {
    auto ord = p.order();
    auto ct = p.cycle_type();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].ord != ord) continue;
      if (classes[i].rep.cycle_type() != ct) continue;
      if (are_conjugate(g, classes[i].rep, p)) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  };

  auto add_class = [&](const Permutation& p) -> bool {
    if (classify(p) >= 0) return false;
    std::uint64_t c = centralizer_order(g, p);
    classes.push_back({p, g.order() / c, c, p.order()});
    covered += g.order() / c;
    if (classes.size() > budgets.max_classes)
      throw budget_error("class count exceeds budget " +
                         std::to_string(budgets.max_classes) +
                         "; provide an ingested character table instead");
    return true;
  };

  add_class(Permutation::identity(g.degree()));
  {
    // central elements are their own classes and too small for sampling
    // to find; enumerate the center outright
    PermGroup z = center(g);
    if (z.order() > 4096)
      throw budget_error("center too large for class enumeration; "
                         "provide an ingested character table instead");
    std::vector<Permutation> zel{Permutation::identity(g.degree())};
    std::unordered_map<Permutation, bool, PermHash> seen;
    seen.emplace(zel[0], true);
    for (std::size_t i = 0; i < zel.size(); ++i)
      for (const auto& x : z.generators()) {
        Permutation y = zel[i] * x;
        if (seen.emplace(y, true).second) zel.push_back(std::move(y));
      }
    for (const auto& e : zel)
      if (!e.is_identity() && classify(e) < 0) {
        classes.push_back({e, 1, g.order(), e.order()});
        covered += 1;
        if (classes.size() > budgets.max_classes)
          throw budget_error("class count exceeds budget " +
                             std::to_string(budgets.max_classes) +
                             "; provide an ingested character table instead");
      }
  }

  std::mt19937_64 rng(seed);
  std::size_t stall = 0;
  while (covered < g.order()) {
    Permutation p = g.random_element(rng);
    std::vector<Permutation> batch{p};
    // powers reach small classes that sampling would rarely hit
    for (std::uint64_t d = 2; d < p.order(); ++d) batch.push_back(p.power(d));
    bool any = false;
    for (const auto& q : batch)
      if (add_class(q)) any = true;
    stall = any ? 0 : stall + 1;
    if (stall > 20000) throw data_error("conjugacy class search stalled");
  }

  // canonical order: element order, size, then minimal class element
  std::vector<std::size_t> idx(classes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::map<std::size_t, Permutation> min_elem;
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> key_count;
  for (const auto& c : classes) ++key_count[{c.ord, c.size}];
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (key_count[{classes[i].ord, classes[i].size}] > 1)
      min_elem.emplace(i, detail::minimal_class_element(g, classes[i].rep, classes[i].size,
                                                        budgets.class_enum_budget));
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (classes[a].ord != classes[b].ord) return classes[a].ord < classes[b].ord;
    if (classes[a].size != classes[b].size) return classes[a].size < classes[b].size;
    if (a == b) return false;
    return min_elem.at(a) < min_elem.at(b);
  });

  ClassData cd;
  cd.group_order = g.order();
  for (std::size_t i : idx) {
    // use the minimal element as the canonical representative when known
    auto it = min_elem.find(i);
    cd.reps.push_back(it == min_elem.end() ? classes[i].rep : it->second);
    cd.sizes.push_back(classes[i].size);
    cd.centralizer_orders.push_back(classes[i].cent);
    cd.element_orders.push_back(classes[i].ord);
  }

  auto find_class = [&](const Permutation& p) -> std::size_t {
    auto ord = p.order();
    auto ct = p.cycle_type();
    for (std::size_t i = 0; i < cd.reps.size(); ++i) {
      if (cd.element_orders[i] != ord) continue;
      if (cd.reps[i].cycle_type() != ct) continue;
      if (are_conjugate(g, cd.reps[i], p)) return i;
    }
    throw data_error("power map classification failed");
  };
  // maps for every prime up to the largest element order, so that powers
  // by arbitrary residues factor through them (Cauchy covers the primes
  // dividing |G|)
  std::uint64_t max_ord = *std::max_element(cd.element_orders.begin(),
                                            cd.element_orders.end());
  for (std::uint64_t p = 2; p <= max_ord; ++p) {
    bool prime = p >= 2;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    std::vector<std::size_t> pm(cd.reps.size());
    for (std::size_t k = 0; k < cd.reps.size(); ++k) pm[k] = find_class(cd.reps[k].power(p));
    cd.power_maps.emplace(p, std::move(pm));
  }
  return cd;
}

// Resolves the class index of arbitrary group elements.  Unique
// (order, cycle type) buckets answer immediately; ambiguous buckets are
// materialised once into a hash table.
class ClassLookup {
 public:
  ClassLookup(const PermGroup& g, const ClassData& cd, const Budgets& budgets = {})
      : g_(g), cd_(cd), budgets_(budgets) {
    for (std::size_t i = 0; i < cd.count(); ++i)
      buckets_[key(cd.reps[i])].push_back(i);
  }

  std::size_t class_of(const Permutation& p) {
    auto bit = buckets_.find(key(p));
    if (bit == buckets_.end())
      throw data_error("element matches no conjugacy class: data corruption");
    auto& bucket = bit->second;
    if (bucket.size() == 1) return bucket[0];
    auto it = resolved_.find(p);
    if (it != resolved_.end()) return it->second;
    for (std::size_t k : bucket) materialize(k);
    return resolved_.at(p);
  }

 private:
  using Key = std::vector<Point>;

  Key key(const Permutation& p) const {
    auto ct = p.cycle_type();
    return ct;  // cycle type determines element order as well
  }

  void materialize(std::size_t k) {
    if (done_.count(k)) return;
    auto elems = detail::enumerate_class(g_, cd_.reps[k], cd_.sizes[k],
                                         budgets_.class_enum_budget);
    for (auto& e : elems) {
      auto [it, fresh] = resolved_.emplace(std::move(e), k);
      if (!fresh && it->second != k) throw data_error("classes overlap: data corruption");
    }
    done_.emplace(k, true);
  }

  const PermGroup& g_;
  const ClassData& cd_;
  Budgets budgets_;
  std::unordered_map<Key, std::vector<std::size_t>, PointVecHash> buckets_;
  std::unordered_map<Permutation, std::size_t, PermHash> resolved_;
  std::unordered_map<std::size_t, bool> done_;
};

}  // namespace gelpair
