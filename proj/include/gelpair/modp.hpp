#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "gelpair/common.hpp"

namespace gelpair {

// Arithmetic, polynomial root finding and small linear algebra over F_p
// for the eigenvalue stage of the character table computation.  p stays
// below 2^31 so products fit in unsigned 64-bit.
struct ModP {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b % p) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a % p * (b % p) % p; }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t inv(std::uint64_t a) const {
    a %= p;
    if (a == 0) throw data_error("division by zero mod p");
    return pow(a, p - 2);
  }

  // Tonelli-Shanks; empty optional when a is a non-residue.
  std::optional<std::uint64_t> sqrt(std::uint64_t a) const {
    a %= p;
    if (a == 0) return 0;
    if (pow(a, (p - 1) / 2) != 1) return std::nullopt;
    if (p % 4 == 3) return pow(a, (p + 1) / 4);
    std::uint64_t q = p - 1, s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    std::uint64_t z = 2;
    while (pow(z, (p - 1) / 2) == 1) ++z;
    std::uint64_t m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
    while (t != 1) {
      std::uint64_t t2 = t, i = 0;
      while (t2 != 1) {
        t2 = mul(t2, t2);
        ++i;
        if (i == m) return std::nullopt;
      }
      std::uint64_t b = pow(c, std::uint64_t{1} << (m - i - 1));
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return r;
  }
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t primitive_root(std::uint64_t p) {
  std::vector<std::uint64_t> qs;
  std::uint64_t m = p - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      qs.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) qs.push_back(m);
  ModP f{p};
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (auto q : qs)
      if (f.pow(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

// --- dense polynomials over F_p, coefficient vectors low-to-high ---

using PolyP = std::vector<std::uint64_t>;

inline PolyP poly_trim(PolyP a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline PolyP poly_mul(const ModP& f, const PolyP& a, const PolyP& b) {
  if (a.empty() || b.empty()) return {};
  PolyP c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  return poly_trim(std::move(c));
}

inline PolyP poly_mod(const ModP& f, PolyP a, const PolyP& m) {
  a = poly_trim(std::move(a));
  std::uint64_t lead_inv = f.inv(m.back());
  while (a.size() >= m.size()) {
    std::uint64_t c = f.mul(a.back(), lead_inv);
    std::size_t off = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[off + i] = f.sub(a[off + i], f.mul(c, m[i]));
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

inline PolyP poly_powmod(const ModP& f, PolyP base, std::uint64_t e, const PolyP& m) {
  PolyP r{1};
  base = poly_mod(f, std::move(base), m);
  while (e) {
    if (e & 1) r = poly_mod(f, poly_mul(f, r, base), m);
    base = poly_mod(f, poly_mul(f, base, base), m);
    e >>= 1;
  }
  return r;
}

inline PolyP poly_gcd(const ModP& f, PolyP a, PolyP b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    PolyP r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t li = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, li);
  }
  return a;
}

// quotient of an exact division a / d
inline PolyP poly_div(const ModP& f, PolyP a, const PolyP& d) {
  a = poly_trim(std::move(a));
  if (a.size() < d.size()) return {};
  PolyP q(a.size() - d.size() + 1, 0);
  std::uint64_t li = f.inv(d.back());
  for (std::size_t k = a.size(); k >= d.size(); --k) {
    std::uint64_t c = f.mul(a[k - 1], li);
    q[k - d.size()] = c;
    if (c)
      for (std::size_t i = 0; i < d.size(); ++i)
        a[k - d.size() + i] = f.sub(a[k - d.size() + i], f.mul(c, d[i]));
    if (k == d.size()) break;
  }
  return poly_trim(std::move(q));
}

// All roots of a nonzero polynomial in F_p (Cantor-Zassenhaus on the
// squarefree linear part).
inline std::vector<std::uint64_t> poly_roots(const ModP& f, const PolyP& poly,
                                             std::mt19937_64& rng) {
  std::vector<std::uint64_t> roots;
  PolyP a = poly_trim(poly);
  if (a.size() <= 1) return roots;
  // strip factors of x (0 is reported once, whatever its multiplicity)
  if (a[0] == 0) {
    roots.push_back(0);
    while (a[0] == 0) {
      a.erase(a.begin());
      if (a.size() <= 1) return roots;
    }
  }
  // keep only distinct roots: gcd with x^p - x
  PolyP xp = poly_powmod(f, PolyP{0, 1}, f.p, a);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = f.sub(xp[1], 1);
  PolyP g = poly_gcd(f, a, poly_trim(std::move(xp)));
  std::vector<PolyP> work;
  if (g.size() >= 2) work.push_back(std::move(g));
  std::uniform_int_distribution<std::uint64_t> dist(0, f.p - 1);
  while (!work.empty()) {
    PolyP cur = std::move(work.back());
    work.pop_back();
    if (cur.size() == 2) {
      roots.push_back(f.sub(0, f.mul(cur[0], f.inv(cur[1]))));
      continue;
    }
    for (;;) {
      std::uint64_t shift = dist(rng);
      PolyP h = poly_powmod(f, PolyP{shift, 1}, (f.p - 1) / 2, cur);
      if (h.empty())
        h = PolyP{f.p - 1};
      else if (h.size() >= 1)
        h[0] = f.sub(h[0], 1);
      PolyP d = poly_gcd(f, cur, poly_trim(std::move(h)));
      if (d.size() >= 2 && d.size() < cur.size()) {
        PolyP quot = poly_div(f, cur, d);
        work.push_back(std::move(d));
        work.push_back(std::move(quot));
        break;
      }
    }
  }
  return roots;
}

// --- small dense linear algebra over F_p ---

using MatP = std::vector<std::vector<std::uint64_t>>;

// Basis of the nullspace {c : M c = 0} of an r x d matrix.
inline std::vector<std::vector<std::uint64_t>> nullspace(const ModP& f, MatP m) {
  if (m.empty()) return {};
  std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::ptrdiff_t> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t sel = rank;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[rank]);
    std::uint64_t iv = f.inv(m[rank][c]);
    for (std::size_t j = c; j < cols; ++j) m[rank][j] = f.mul(m[rank][j], iv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][c] == 0) continue;
      std::uint64_t t = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = f.sub(m[i][j], f.mul(t, m[rank][j]));
    }
    pivot_of_col[c] = static_cast<std::ptrdiff_t>(rank);
    ++rank;
  }
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[c] = 1;
    for (std::size_t c2 = 0; c2 < cols; ++c2)
      if (pivot_of_col[c2] >= 0)
        v[c2] = f.sub(0, m[static_cast<std::size_t>(pivot_of_col[c2])][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial of a square matrix via Hessenberg reduction.
inline PolyP char_poly(const ModP& f, MatP a) {
  std::size_t n = a.size();
  // reduce to upper Hessenberg by similarity transforms
  for (std::size_t c = 0; c + 2 <= n; ++c) {
    std::size_t piv = c + 1;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    if (piv != c + 1) {
      std::swap(a[piv], a[c + 1]);
      for (std::size_t i = 0; i < n; ++i) std::swap(a[i][piv], a[i][c + 1]);
    }
    std::uint64_t iv = f.inv(a[c + 1][c]);
    for (std::size_t i = c + 2; i < n; ++i) {
      if (a[i][c] == 0) continue;
      std::uint64_t t = f.mul(a[i][c], iv);
      for (std::size_t j = 0; j < n; ++j) a[i][j] = f.sub(a[i][j], f.mul(t, a[c + 1][j]));
      for (std::size_t j = 0; j < n; ++j) a[j][c + 1] = f.add(a[j][c + 1], f.mul(t, a[j][i]));
    }
  }
  // p_m(x) over the leading principal Hessenberg minors
  std::vector<PolyP> p(n + 1);
  p[0] = PolyP{1};
  for (std::size_t m = 1; m <= n; ++m) {
    // (x - a[m-1][m-1]) * p[m-1]
    PolyP t = poly_mul(f, PolyP{f.sub(0, a[m - 1][m - 1]), 1}, p[m - 1]);
    std::uint64_t prod = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      prod = f.mul(prod, a[i][i - 1]);
      if (a[i - 1][m - 1] == 0 || prod == 0) {
        if (prod == 0) break;
        continue;
      }
      std::uint64_t coef = f.mul(prod, a[i - 1][m - 1]);
      const PolyP& pi = p[i - 1];
      if (t.size() < pi.size()) t.resize(pi.size(), 0);
      for (std::size_t j = 0; j < pi.size(); ++j) t[j] = f.sub(t[j], f.mul(coef, pi[j]));
    }
    p[m] = poly_trim(std::move(t));
  }
  return p[n];
}

}  // namespace gelpair
