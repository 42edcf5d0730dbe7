#pragma once

#include <string>
#include <vector>

#include "gelpair/classes.hpp"
#include "gelpair/cyclo.hpp"
#include "gelpair/modp.hpp"

namespace gelpair {

// Full table of irreducible character values over the conjugacy classes,
// rows canonically ordered: trivial character first, then ascending
// degree with a lexicographic tie-break on the value lists.
struct CharacterTable {
  std::string group_name;
  ClassData classes;
  std::uint64_t exponent = 1;
  std::vector<std::vector<Cyclotomic>> irreducibles;
  std::vector<std::uint64_t> degrees;

  std::size_t count() const { return irreducibles.size(); }
  std::uint64_t order() const { return classes.group_order; }
};

// Class function attached to a table.
struct Character {
  const CharacterTable* table = nullptr;
  std::vector<Cyclotomic> values;

  Cyclotomic degree_value() const { return values.at(0); }
};

inline Character irreducible(const CharacterTable& t, std::size_t i) {
  return Character{&t, t.irreducibles.at(i)};
}

inline Character trivial_character(const CharacterTable& t) {
  return Character{&t, std::vector<Cyclotomic>(t.count(), Cyclotomic::one())};
}

inline Character regular_character(const CharacterTable& t) {
  std::vector<Cyclotomic> v(t.count(), Cyclotomic::zero());
  v[0] = Cyclotomic::integer(static_cast<long>(t.order()));
  return Character{&t, std::move(v)};
}

// a_{ijk} counts pairs (x, y) in C_i x C_j with x y = g_k; computed as
// #{x in C_i : x^-1 g_k in C_j} by enumerating C_i once.
inline std::vector<std::vector<std::int64_t>> class_matrix(const PermGroup& g,
                                                           const ClassData& cd,
                                                           ClassLookup& lookup,
                                                           std::size_t i,
                                                           const Budgets& budgets = {}) {
  std::size_t r = cd.count();
  std::vector<std::vector<std::int64_t>> a(r, std::vector<std::int64_t>(r, 0));
  auto elems = detail::enumerate_class(g, cd.reps[i], cd.sizes[i], budgets.class_enum_budget);
  for (auto& x : elems) {
    Permutation xi = x.inverse();
    for (std::size_t k = 0; k < r; ++k) {
      std::size_t j = lookup.class_of(xi * cd.reps[k]);
      ++a[j][k];
    }
  }
  return a;
}

namespace detail {

struct DixonScratch {
  std::vector<std::size_t> class_order;  // by ascending size, identity skipped
  std::map<std::size_t, std::vector<std::vector<std::int64_t>>> matrices;
};

// One simultaneous-eigenvector pass mod p.  Throws data_error on a
// degenerate split (caller retries with the next admissible prime).
inline std::vector<std::vector<Cyclotomic>> dixon_mod_p(
    const PermGroup& g, const ClassData& cd, ClassLookup& lookup, std::uint64_t p,
    std::uint64_t e, DixonScratch& scratch, const Budgets& budgets) {
  const std::size_t r = cd.count();
  ModP f{p};
  std::mt19937_64 rng(0xD15C0);

  // subspaces: column vectors over F_p, reduced so that coordinates can be
  // read off pivot rows
  struct Space {
    std::vector<std::vector<std::uint64_t>> vecs;  // each of length r
    std::vector<std::size_t> pivots;
  };
  auto reduce_space = [&](std::vector<std::vector<std::uint64_t>> vecs) -> Space {
    Space s;
    for (auto& v : vecs) {
      for (std::size_t t = 0; t < s.vecs.size(); ++t)
        if (v[s.pivots[t]] != 0) {
          std::uint64_t c = v[s.pivots[t]];
          for (std::size_t x = 0; x < r; ++x) v[x] = f.sub(v[x], f.mul(c, s.vecs[t][x]));
        }
      std::size_t piv = r;
      for (std::size_t x = 0; x < r; ++x)
        if (v[x] != 0) {
          piv = x;
          break;
        }
      if (piv == r) continue;
      std::uint64_t iv = f.inv(v[piv]);
      for (std::size_t x = 0; x < r; ++x) v[x] = f.mul(v[x], iv);
      for (std::size_t t = 0; t < s.vecs.size(); ++t)
        if (s.vecs[t][piv] != 0) {
          std::uint64_t c = s.vecs[t][piv];
          for (std::size_t x = 0; x < r; ++x)
            s.vecs[t][x] = f.sub(s.vecs[t][x], f.mul(c, v[x]));
        }
      s.vecs.push_back(std::move(v));
      s.pivots.push_back(piv);
    }
    return s;
  };

  std::vector<Space> spaces;
  {
    std::vector<std::vector<std::uint64_t>> full(r, std::vector<std::uint64_t>(r, 0));
    for (std::size_t x = 0; x < r; ++x) full[x][x] = 1;
    spaces.push_back(reduce_space(std::move(full)));
  }

  auto all_split = [&] {
    for (const auto& s : spaces)
      if (s.vecs.size() > 1) return false;
    return true;
  };

  for (std::size_t ci : scratch.class_order) {
    if (all_split()) break;
    auto mit = scratch.matrices.find(ci);
    if (mit == scratch.matrices.end())
      mit = scratch.matrices.emplace(ci, class_matrix(g, cd, lookup, ci, budgets)).first;
    const auto& am = mit->second;
    MatP a(r, std::vector<std::uint64_t>(r));
    for (std::size_t x = 0; x < r; ++x)
      for (std::size_t y = 0; y < r; ++y)
        a[x][y] = static_cast<std::uint64_t>(am[x][y] % static_cast<std::int64_t>(p));

    auto roots = poly_roots(f, char_poly(f, a), rng);

    std::vector<Space> next;
    for (auto& s : spaces) {
      if (s.vecs.size() == 1) {
        next.push_back(std::move(s));
        continue;
      }
      std::size_t d = s.vecs.size();
      // images of basis vectors under a
      std::vector<std::vector<std::uint64_t>> img(d, std::vector<std::uint64_t>(r, 0));
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t x = 0; x < r; ++x) {
          std::uint64_t acc = 0;
          for (std::size_t y = 0; y < r; ++y)
            if (s.vecs[j][y]) acc = f.add(acc, f.mul(a[x][y], s.vecs[j][y]));
          img[j][x] = acc;
        }
      std::size_t covered = 0;
      for (std::uint64_t lambda : roots) {
        // kernel of (a - lambda) restricted to the span
        MatP m(r, std::vector<std::uint64_t>(d));
        for (std::size_t x = 0; x < r; ++x)
          for (std::size_t j = 0; j < d; ++j)
            m[x][j] = f.sub(img[j][x], f.mul(lambda, s.vecs[j][x]));
        auto ker = nullspace(f, std::move(m));
        if (ker.empty()) continue;
        std::vector<std::vector<std::uint64_t>> vecs;
        for (auto& c : ker) {
          std::vector<std::uint64_t> v(r, 0);
          for (std::size_t j = 0; j < d; ++j)
            if (c[j])
              for (std::size_t x = 0; x < r; ++x)
               v[x] = f.add(v[x], f.mul(c[j], s.vecs[j][x]));
          vecs.push_back(std::move(v));
        }
        Space ns = reduce_space(std::move(vecs));
        covered += ns.vecs.size();
        if (!ns.vecs.empty()) next.push_back(std::move(ns));
      }
      if (covered != d)
        throw data_error("eigenspace split lost dimensions (degenerate prime)");
    }
    spaces = std::move(next);
  }

  if (!all_split())
    throw data_error("class matrices exhausted before full eigenspace split");

  // primitive e-th root in F_p fixes the embedding Z[zeta_e] -> F_p
  std::uint64_t w = f.pow(primitive_root(p), (p - 1) / e);

  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& s : spaces) {
    const auto& v0 = s.vecs[0];
    if (v0[0] == 0) throw data_error("eigenvector vanishes at the identity class");
    std::uint64_t scale = f.inv(v0[0]);
    std::vector<std::uint64_t> omega(r);
    for (std::size_t k = 0; k < r; ++k) omega[k] = f.mul(v0[k], scale);

    // degree from the norm identity: sum_k w(k) w(k*) / n_k = |G| / d^2
    std::uint64_t c = 0;
    for (std::size_t k = 0; k < r; ++k) {
      std::size_t kinv = cd.inverse_class(k);
      c = f.add(c, f.mul(f.mul(omega[k], omega[kinv]), f.inv(cd.sizes[k] % p)));
    }
    std::uint64_t d2 = f.mul(g.order() % p, f.inv(c));
    auto root = f.sqrt(d2);
    if (!root) throw data_error("degree is not a quadratic residue (degenerate prime)");
    std::uint64_t deg = std::min(*root, p - *root);

    std::vector<std::uint64_t> chibar(r);
    for (std::size_t k = 0; k < r; ++k)
      chibar[k] = f.mul(f.mul(deg, omega[k]), f.inv(cd.sizes[k] % p));

    // recover exact values: chi(g_k) = sum_j mu_j zeta_m^j with mu_j the
    // eigenvalue multiplicities, computed by the inverse DFT mod p over
    // the power classes
    std::vector<Cyclotomic> row(r);
    for (std::size_t k = 0; k < r; ++k) {
      std::uint64_t m = cd.element_orders[k];
      std::uint64_t zm = f.pow(w, e / m);
      std::uint64_t zmi = f.inv(zm);
      std::uint64_t minv = f.inv(m % p);
      Cyclotomic val;
      std::uint64_t total = 0;
      for (std::uint64_t j = 0; j < m; ++j) {
        std::uint64_t mu = 0;
        for (std::uint64_t l = 0; l < m; ++l)
          mu = f.add(mu, f.mul(chibar[cd.power_class(k, l)], f.pow(zmi, j * l % m)));
        mu = f.mul(mu, minv);
        if (mu > deg)
          throw data_error("eigenvalue multiplicity exceeds the degree (degenerate prime)");
        total += mu;
        if (mu) val += mpq_class(static_cast<unsigned long>(mu)) * Cyclotomic::root(m, j);
      }
      if (total != deg) throw data_error("eigenvalue multiplicities do not sum to the degree");
      row[k] = std::move(val);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

// Exact verification gates every table must pass (computed or ingested):
// orthogonality both ways, degree bookkeeping, and Galois consistency of
// values on power classes.  Throws data_error with a description.
inline void verify_table(const CharacterTable& t) {
  const auto& cd = t.classes;
  std::size_t r = t.count();
  if (r != cd.count()) throw data_error("table not square over the classes");
  std::uint64_t order = cd.group_order;

  mpz_class dd = 0;
  for (std::size_t i = 0; i < r; ++i) {
    auto d = t.irreducibles[i][0].as_rational_integer();
    if (!d || *d <= 0) throw data_error("character degree is not a positive integer");
    if (mpz_class(static_cast<unsigned long>(t.degrees[i])) != *d)
      throw data_error("degree column mismatch");
    if (order % t.degrees[i] != 0)
      throw data_error("character degree does not divide the group order");
    dd += *d * *d;
  }
  if (dd != mpz_class(static_cast<unsigned long>(order)))
    throw data_error("sum of squared degrees differs from the group order");

  for (std::size_t i = 0; i < r; ++i)
    if (!(t.irreducibles[0][i] == Cyclotomic::one()))
      throw data_error("first row is not the trivial character");

  // row orthogonality, exact
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Cyclotomic acc;
      for (std::size_t k = 0; k < r; ++k)
        acc += mpq_class(static_cast<unsigned long>(cd.sizes[k])) *
               (t.irreducibles[i][k] * complex_conjugate(t.irreducibles[j][k]));
      Cyclotomic expect =
          (i == j) ? Cyclotomic::integer(static_cast<long>(order)) : Cyclotomic::zero();
      if (!(acc == expect)) throw data_error("row orthogonality fails");
    }

  // column orthogonality, exact
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k; l < r; ++l) {
      Cyclotomic acc;
      for (std::size_t i = 0; i < r; ++i)
        acc += t.irreducibles[i][k] * complex_conjugate(t.irreducibles[i][l]);
      Cyclotomic expect = (k == l)
                              ? Cyclotomic::integer(static_cast<long>(cd.centralizer_orders[k]))
                              : Cyclotomic::zero();
      if (!(acc == expect)) throw data_error("column orthogonality fails");
    }

  // power-map / Galois consistency: each value decomposes into eigenvalue
  // multiplicities, and the p-th power class carries the pushed-forward
  // multiset
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      std::uint64_t m = cd.element_orders[k];
      std::vector<mpz_class> mu(m);
      mpz_class total = 0;
      for (std::uint64_t j = 0; j < m; ++j) {
        Cyclotomic acc;
        for (std::uint64_t l = 0; l < m; ++l)
          acc += t.irreducibles[i][cd.power_class(k, l)] *
                 Cyclotomic::root(m, (m - j % m) * l % m);
        auto q = acc.as_rational();
        if (!q || q->get_num() % static_cast<long>(m) != 0)
          throw data_error("eigenvalue multiplicity is not integral");
        mu[j] = q->get_num() / static_cast<long>(m);
        if (q->get_den() != 1) throw data_error("eigenvalue multiplicity is not integral");
        if (mu[j] < 0 || mu[j] > static_cast<long>(t.degrees[i]))
          throw data_error("eigenvalue multiplicity out of range");
        total += mu[j];
      }
      if (total != static_cast<long>(t.degrees[i]))
        throw data_error("eigenvalue multiplicities do not sum to the degree");
      for (auto [p, pm] : cd.power_maps) {
        Cyclotomic pushed;
        for (std::uint64_t j = 0; j < m; ++j)
          if (mu[j] != 0)
            pushed += mpq_class(mu[j]) * Cyclotomic::root(m, j * (p % m) % m);
        if (!(pushed == t.irreducibles[i][pm[k]]))
          throw data_error("power-map Galois consistency fails");
      }
    }
  }
}

// Computes the character table by the class-matrix eigenvector method
// modulo an admissible prime (p = 1 mod exponent, p > 2 sqrt|G|), lifting
// eigenvalue multiplicities to exact cyclotomics; retries with the next
// admissible prime on a degenerate split.  The verification gates are part
// of the computation, not optional.
inline CharacterTable compute_table(const PermGroup& g, const ClassData& cd,
                                    const Budgets& budgets = {},
                                    const std::string& name = "") {
  std::uint64_t e = cd.exponent();
  std::uint64_t bound = 1;
  while (bound * bound <= 4 * g.order()) ++bound;  // smallest with bound^2 > 4|G|

  detail::DixonScratch scratch;
  {
    std::vector<std::size_t> idx(cd.count());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return cd.sizes[a] != cd.sizes[b] ? cd.sizes[a] < cd.sizes[b] : a < b;
    });
    for (auto i : idx)
      if (cd.sizes[i] > 1 || !cd.reps[i].is_identity()) scratch.class_order.push_back(i);
  }
  ClassLookup lookup(g, cd, budgets);

  std::uint64_t k0 = (bound + e - 1) / e;
  if (k0 == 0) k0 = 1;
  int attempts = 0;
  std::string last_error;
  for (std::uint64_t k = k0; attempts < 8; ++k) {
    std::uint64_t p = k * e + 1;
    if (!is_prime_u64(p)) continue;
    ++attempts;
    try {
      auto rows = detail::dixon_mod_p(g, cd, lookup, p, e, scratch, budgets);
      CharacterTable t;
      t.group_name = name;
      t.classes = cd;
      t.exponent = e;
      // canonical row order: trivial first, then (degree, values)
      std::vector<Cyclotomic> triv(cd.count(), Cyclotomic::one());
      std::sort(rows.begin(), rows.end(),
                [&](const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
                  bool ta = a == triv, tb = b == triv;
                  if (ta != tb) return ta;
                  auto da = a[0].as_rational_integer(), db = b[0].as_rational_integer();
                  if (!da || !db) throw data_error("non-integer degree after lift");
                  if (*da != *db) return *da < *db;
                  for (std::size_t k2 = 0; k2 < a.size(); ++k2) {
                    int c = compare(a[k2], b[k2]);
                    if (c != 0) return c < 0;
                  }
                  return false;
                });
      for (auto& row : rows) {
        t.degrees.push_back(
            static_cast<std::uint64_t>(row[0].as_rational_integer()->get_ui()));
        t.irreducibles.push_back(std::move(row));
      }
      verify_table(t);
      return t;
    } catch (const data_error& err) {
      last_error = err.what();
      continue;
    }
  }
  throw data_error("character table computation failed after prime retries: " +
                   last_error);
}

inline CharacterTable compute_table(const PermGroup& g, const Budgets& budgets = {},
                                    const std::string& name = "",
                                    std::uint64_t seed = 1) {
  return compute_table(g, conjugacy_classes(g, budgets, seed), budgets, name);
}

}  // namespace gelpair
