#pragma once

#include <map>
#include <string>

#include "gelpair/backtrack.hpp"
#include "gelpair/lattice.hpp"

namespace gelpair {

// Isomorphism-type labels for report rows.  Display metadata only: labels
// come from order plus cheap structural invariants (abelian invariants,
// derived/center/involution statistics, normal decompositions), never
// from a general isomorphism test, and they never feed verdict logic.

namespace label_detail {

inline std::vector<Permutation> all_elements(const PermGroup& g, std::uint64_t cap) {
  if (g.order() > cap) throw budget_error("group too large to materialize for labeling");
  std::vector<Permutation> all{Permutation::identity(g.degree())};
  std::unordered_map<Permutation, bool, PermHash> seen;
  seen.emplace(all[0], true);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& x : g.generators()) {
      auto y = all[i] * x;
      if (seen.emplace(y, true).second) all.push_back(y);
    }
  return all;
}

inline bool is_abelian(const PermGroup& g) {
  const auto& gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (gs[i] * gs[j] != gs[j] * gs[i]) return false;
  return true;
}

// Abelian invariants by element-order counting: for each prime the
// partition lambda is recovered from N_k = #{x : x^(p^k) = 1} =
// p^(sum min(k, lambda_i)).
inline std::string abelian_label(const PermGroup& g, std::uint64_t cap) {
  auto elems = all_elements(g, cap);
  std::map<std::uint64_t, std::vector<unsigned>> parts;  // prime -> partition
  for (auto [p, a] : factorize(g.order())) {
    std::vector<std::uint64_t> nk{1};  // N_0
    for (unsigned k = 1; k <= a; ++k) {
      std::uint64_t pk = 1;
      for (unsigned t = 0; t < k; ++t) pk *= p;
      std::uint64_t cnt = 0;
      for (const auto& e : elems)
        if (pk % e.order() == 0) ++cnt;
      nk.push_back(cnt);
    }
    std::vector<unsigned> s;  // s_k = log_p N_k
    for (auto v : nk) {
      unsigned lg = 0;
      while (v > 1) {
        v /= p;
        ++lg;
      }
      s.push_back(lg);
    }
    std::vector<unsigned> r;  // r_k = #parts >= k
    for (std::size_t k = 1; k < s.size(); ++k) r.push_back(s[k] - s[k - 1]);
    std::vector<unsigned> lambda;
    for (std::size_t k = 0; k < r.size(); ++k) {
      unsigned next = (k + 1 < r.size()) ? r[k + 1] : 0;
      for (unsigned t = 0; t < r[k] - next; ++t) lambda.push_back(k + 1);
    }
    if (!lambda.empty()) parts[p] = lambda;
  }
  // cyclic factors grouped as q^m
  std::map<std::uint64_t, unsigned> factors;  // prime power -> count
  for (auto& [p, lambda] : parts)
    for (auto l : lambda) {
      std::uint64_t q = 1;
      for (unsigned t = 0; t < l; ++t) q *= p;
      ++factors[q];
    }
  if (factors.empty()) return "1";
  std::string out;
  for (auto& [q, m] : factors) {
    if (!out.empty()) out += "x";
    out += std::to_string(q);
    if (m > 1) out += "^" + std::to_string(m);
  }
  return out;
}

struct Stats {
  std::uint64_t order = 1, derived = 1, center = 1;
  std::size_t involutions = 0;
  std::uint64_t max_elt_order = 1;
  bool has(std::uint64_t o, const std::vector<std::uint64_t>& orders) const {
    return std::find(orders.begin(), orders.end(), o) != orders.end();
  }
};

inline std::string recognized(const PermGroup& g, std::uint64_t cap) {
  std::uint64_t n = g.order();
  std::uint64_t d = derived_subgroup(g).order();
  bool perfect = (d == n);
  if (perfect) {
    switch (n) {
      case 60: return "A5";
      case 120: return "SL(2,5)";
      case 168: return "L3(2)";
      case 360: return "A6";
      case 504: return "L2(8)";
      case 660: return "L2(11)";
      case 720: return "SL(2,9)";
      case 960: return "2^4:A5";
      case 2520: return "A7";
      case 5616: return "L3(3)";
      case 6072: return "L2(23)";
      case 7800: return "L2(25)";
      case 7920: return "M11";
      case 95040: return "M12";
      case 190080: return "2.M12";
      case 443520: return "M22";
      default: break;
    }
    if (n == 20160) {
      // A8 has elements of order 15, L3(4) does not
      auto elems = all_elements(g, cap);
      for (const auto& e : elems)
        if (e.order() == 15) return "A8";
      return "L3(4)";
    }
    return "";
  }
  if (n > 2000) {
    if (n == 40320 && d == 20160) return "L3(4).2";
    return "";
  }
  auto elems = all_elements(g, cap);
  Stats st;
  st.order = n;
  st.derived = d;
  st.center = center(g).order();
  std::uint64_t maxo = 1;
  for (const auto& e : elems) {
    auto o = e.order();
    if (o == 2) ++st.involutions;
    maxo = std::max(maxo, o);
  }
  st.max_elt_order = maxo;
  if (n == 6) return "S3";
  if (n == 8) return st.involutions == 1 ? "Q8" : "D8";
  if (n == 10) return "D10";
  if (n == 12) {
    if (d == 4) return "A4";
    return st.involutions == 1 ? "Dic3" : "D12";
  }
  if (n == 14) return "D14";
  if (n == 20) {
    if (st.involutions == 1) return "Dic5";
    return st.involutions == 5 ? "F5" : "D20";
  }
  if (n == 24 && d == 12) return "S4";
  if (n == 24 && d == 8 && st.center == 2 && st.involutions == 1) return "SL(2,3)";
  if (n == 120 && d == 60) return st.center == 2 ? "2xA5" : "S5";
  if (n == 720 && d == 360) {
    std::vector<std::uint64_t> orders;
    for (const auto& e : elems) orders.push_back(e.order());
    if (st.has(10, orders)) return "PGL(2,9)";
    if (st.has(8, orders)) return "A6.2";
    return "S6";
  }
  if (n == 1440 && d == 360) return "A6.2^2";
  return "";
}

}  // namespace label_detail

inline std::string iso_label(const PermGroup& g, std::uint64_t lattice_budget = 5000) {
  using namespace label_detail;
  const std::uint64_t cap = 1000000;
  std::uint64_t n = g.order();
  if (n == 1) return "1";
  if (is_abelian(g)) return abelian_label(g, cap);
  std::string name = recognized(g, cap);
  if (!name.empty()) return name;
  if (n > lattice_budget) return "g" + std::to_string(n);

  // normal abelian kernel with a recognizable quotient, preferring the
  // largest kernel; equal-size kernels tie-break on the lexicographically
  // larger abelian label (so a C4xC4 kernel wins over an elementary 2^4)
  try {
    SmallGroup sg(g, lattice_budget);
    auto classes = subgroup_classes(sg, {}, false);
    std::string best, best_kernel_label;
    std::uint64_t best_order = 0;
    for (const auto& c : classes) {
      if (c.conjugates != 1 || c.order == 1 || c.order == n) continue;
      auto kern = sg.subgroup(c.gens);
      if (!is_abelian(kern)) continue;
      if (c.order < best_order) continue;
      std::string klabel = abelian_label(kern, cap);
      if (c.order == best_order && klabel <= best_kernel_label) continue;
      auto ca = coset_action(g, kern);
      if (ca.kernel_order != c.order) continue;
      std::string q = iso_label(ca.image, lattice_budget);
      if (q.empty() || q[0] == 'g') continue;
      best = klabel + ":" + q;
      best_kernel_label = klabel;
      best_order = c.order;
    }
    if (!best.empty()) return best;
  } catch (const budget_error&) {
  }

  auto d = derived_subgroup(g);
  if (d.order() > 1 && d.order() < n) {
    auto ca = coset_action(g, d);
    return iso_label(d, lattice_budget) + "." + iso_label(ca.image, lattice_budget);
  }
  return "g" + std::to_string(n);
}

}  // namespace gelpair
