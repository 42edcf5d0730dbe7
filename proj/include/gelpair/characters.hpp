#pragma once

#include <optional>
#include <vector>

#include "gelpair/chartab.hpp"

namespace gelpair {

// Map from subgroup classes to parent-group classes: the bridge for
// restriction and induction.
struct ClassFusion {
  const CharacterTable* sub = nullptr;    // table of H
  const CharacterTable* super = nullptr;  // table of G
  std::vector<std::size_t> map;           // H-class index -> G-class index

  bool identity_like() const {
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] != i) return false;
    return map.size() == super->count();
  }
};

// Structural gates every fusion must pass, whether computed or loaded.
inline void verify_fusion(const ClassFusion& f) {
  if (!f.sub || !f.super) throw data_error("fusion lacks tables");
  if (f.map.size() != f.sub->count()) throw data_error("fusion map length mismatch");
  if (f.map[0] != 0) throw data_error("fusion does not send identity to identity");
  for (std::size_t c = 0; c < f.map.size(); ++c) {
    if (f.map[c] >= f.super->count()) throw data_error("fusion index out of range");
    if (f.sub->classes.element_orders[c] != f.super->classes.element_orders[f.map[c]])
      throw data_error("fusion does not preserve element orders");
    if (f.super->classes.centralizer_orders[f.map[c]] %
            f.sub->classes.centralizer_orders[c] !=
        0)
      throw data_error("fusion violates centralizer divisibility");
  }
  // compatibility with power maps on both sides
  for (auto& [p, pm_sub] : f.sub->classes.power_maps) {
    auto it = f.super->classes.power_maps.find(p);
    if (it == f.super->classes.power_maps.end()) continue;
    for (std::size_t c = 0; c < f.map.size(); ++c)
      if (f.map[pm_sub[c]] != it->second[f.map[c]])
        throw data_error("fusion does not commute with power maps");
  }
}

// Locates each H-class inside its G-class.  Candidates are pruned by
// element order and cycle type before the conjugacy backtrack runs.
inline ClassFusion compute_fusion(const PermGroup& g, const PermGroup& h,
                                  const CharacterTable& tg, const CharacterTable& th) {
  if (!is_subgroup(g, h)) throw data_error("compute_fusion: H is not a subgroup of G");
  ClassFusion f;
  f.sub = &th;
  f.super = &tg;
  f.map.resize(th.count());
  for (std::size_t c = 0; c < th.count(); ++c) {
    const Permutation& rep = th.classes.reps.at(c);
    bool found = false;
    for (std::size_t k = 0; k < tg.count(); ++k) {
      if (tg.classes.element_orders[k] != th.classes.element_orders[c]) continue;
      if (tg.classes.reps[k].cycle_type() != rep.cycle_type()) continue;
      if (are_conjugate(g, rep, tg.classes.reps[k])) {
        f.map[c] = k;
        found = true;
        break;
      }
    }
    if (!found)
      throw data_error("subgroup class not conjugate into any parent class: "
                       "data corruption");
  }
  verify_fusion(f);
  return f;
}

inline Character restrict_character(const Character& chi, const ClassFusion& f) {
  if (chi.table != f.super) throw data_error("restrict: character not on the parent table");
  std::vector<Cyclotomic> vals(f.sub->count());
  for (std::size_t c = 0; c < f.sub->count(); ++c) vals[c] = chi.values[f.map[c]];
  return Character{f.sub, std::move(vals)};
}

// Induced character by the centralizer-order formula:
//   (psi ^ G)(g) = |C_G(g)| * sum over H-classes c fusing to g of
//                  psi(c) / |C_H(c)|
inline Character induce_character(const Character& psi, const ClassFusion& f) {
  if (psi.table != f.sub) throw data_error("induce: character not on the subgroup table");
  std::vector<Cyclotomic> vals(f.super->count(), Cyclotomic::zero());
  for (std::size_t c = 0; c < f.sub->count(); ++c) {
    std::size_t k = f.map[c];
    mpq_class w(1, static_cast<unsigned long>(f.sub->classes.centralizer_orders[c]));
    vals[k] += w * psi.values[c];
  }
  for (std::size_t k = 0; k < f.super->count(); ++k)
    vals[k] = mpq_class(static_cast<unsigned long>(f.super->classes.centralizer_orders[k])) *
              vals[k];
  return Character{f.super, std::move(vals)};
}

// (1/|G|) sum over classes of size * alpha * conj(beta), exact.
inline Cyclotomic inner_product(const Character& a, const Character& b) {
  if (a.table != b.table) throw data_error("inner product across different tables");
  const auto& cd = a.table->classes;
  Cyclotomic acc;
  for (std::size_t k = 0; k < cd.count(); ++k)
    acc += mpq_class(static_cast<unsigned long>(cd.sizes[k])) *
           (a.values[k] * complex_conjugate(b.values[k]));
  return mpq_class(1, static_cast<unsigned long>(cd.group_order)) * acc;
}

// Certified non-negative integer multiplicity of two true characters.
inline mpz_class multiplicity(const Character& a, const Character& b) {
  auto m = inner_product(a, b).as_rational_integer();
  if (!m || *m < 0)
    throw data_error("inner product of true characters is not a non-negative "
                     "integer: upstream corruption");
  return *m;
}

// Decomposition over the irreducibles with exact degree bookkeeping.
inline std::vector<std::pair<std::size_t, mpz_class>> decompose(const Character& a) {
  const CharacterTable& t = *a.table;
  std::vector<std::pair<std::size_t, mpz_class>> out;
  mpz_class total = 0;
  for (std::size_t i = 0; i < t.count(); ++i) {
    mpz_class m = multiplicity(a, irreducible(t, i));
    if (m != 0) {
      total += m * static_cast<unsigned long>(t.degrees[i]);
      out.push_back({i, std::move(m)});
    }
  }
  auto deg = a.values[0].as_rational_integer();
  if (!deg || total != *deg)
    throw data_error("decomposition does not account for the degree");
  return out;
}

inline bool multiplicity_free(const Character& a) {
  for (auto& [i, m] : decompose(a))
    if (m > 1) return false;
  return true;
}

// Fixed points of class representatives: the permutation character of the
// natural action.
inline Character permutation_character(const CharacterTable& t) {
  std::vector<Cyclotomic> vals;
  for (const auto& rep : t.classes.reps) {
    long fixed = 0;
    for (Point x = 0; x < rep.degree(); ++x)
      if (rep[x] == x) ++fixed;
    vals.push_back(Cyclotomic::integer(fixed));
  }
  return Character{&t, std::move(vals)};
}

}  // namespace gelpair
