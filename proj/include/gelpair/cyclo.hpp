#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gelpair/common.hpp"

namespace gelpair {

// Exact element of Q(zeta_n) with arbitrary-precision rational
// coefficients.
//
// Canonical form: the field is the tensor product over prime powers
// p^a || n of Q(zeta_{p^a}), and each factor carries its power basis
// {zeta_{p^a}^c : 0 <= c < phi(p^a)}.  A stored exponent j is reduced
// exactly when every CRT digit of j lies below phi(p^a); the relation
// sum_t zeta_{p^a}^{r + t p^{a-1}} = 0 rewrites offending digits.  The
// conductor is lowered to the minimal one after every operation, so
// equality is coefficient-wise and rationals always sit at conductor 1.
class Cyclotomic {
 public:
  Cyclotomic() = default;  // zero

  // GMP rationals arriving from callers may be non-canonical (mpq_class
  // two-argument constructor does not reduce)
  static mpq_class reduced(mpq_class q) {
    q.canonicalize();
    return q;
  }

  static Cyclotomic rational(const mpq_class& q) {
    Cyclotomic c;
    mpq_class r = reduced(q);
    if (r != 0) c.coef_[0] = r;
    return c;
  }

  static Cyclotomic integer(long v) { return rational(mpq_class(v)); }

  // zeta_n^k
  static Cyclotomic root(std::uint64_t n, std::uint64_t k) {
    if (n == 0) throw data_error("cyclotomic conductor 0");
    Cyclotomic c;
    c.n_ = n;
    c.add_term(k % n, mpq_class(1));
    c.canonicalize();
    return c;
  }

  static Cyclotomic zero() { return Cyclotomic(); }
  static Cyclotomic one() { return integer(1); }

  bool is_zero() const { return coef_.empty(); }

  std::uint64_t conductor() const { return n_; }

  const std::map<std::uint64_t, mpq_class>& terms() const { return coef_; }

  std::optional<mpq_class> as_rational() const {
    if (coef_.empty()) return mpq_class(0);
    if (n_ == 1 && coef_.size() == 1 && coef_.begin()->first == 0)
      return coef_.begin()->second;
    return std::nullopt;
  }

  std::optional<mpz_class> as_rational_integer() const {
    auto q = as_rational();
    if (!q) return std::nullopt;
    if (q->get_den() != 1) return std::nullopt;
    return q->get_num();
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    std::uint64_t n = std::lcm(a.n_, b.n_);
    Cyclotomic r;
    r.n_ = n;
    for (auto& [j, c] : a.coef_) r.add_term(j * (n / a.n_), c);
    for (auto& [j, c] : b.coef_) r.add_term(j * (n / b.n_), c);
    r.canonicalize();
    return r;
  }

  friend Cyclotomic operator-(const Cyclotomic& a) {
    Cyclotomic r = a;
    for (auto& [j, c] : r.coef_) c = -c;
    return r;
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    return a + (-b);
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    std::uint64_t n = std::lcm(a.n_, b.n_);
    Cyclotomic r;
    r.n_ = n;
    std::uint64_t fa = n / a.n_, fb = n / b.n_;
    for (auto& [ja, ca] : a.coef_)
      for (auto& [jb, cb] : b.coef_) r.add_term((ja * fa + jb * fb) % n, ca * cb);
    r.canonicalize();
    return r;
  }

  friend Cyclotomic operator*(const mpq_class& q, const Cyclotomic& a) {
    mpq_class s = reduced(q);
    if (s == 0) return Cyclotomic();
    Cyclotomic r = a;
    for (auto& [j, c] : r.coef_) c *= s;
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }

  // image under zeta_n -> zeta_n^k, gcd(k, n) = 1
  Cyclotomic galois(std::uint64_t k) const {
    if (n_ > 1 && std::gcd(k % n_, n_) != 1)
      throw data_error("galois exponent not coprime to conductor");
    Cyclotomic r;
    r.n_ = n_;
    for (auto& [j, c] : coef_) r.add_term((j * (k % n_)) % n_, c);
    r.canonicalize();
    return r;
  }

  friend Cyclotomic complex_conjugate(const Cyclotomic& a) {
    if (a.n_ == 1) return a;
    return a.galois(a.n_ - 1);
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.n_ == b.n_ && a.coef_ == b.coef_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // Total order used for deterministic row sorting; the specific order is
  // arbitrary but fixed.
  friend int compare(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
    auto ia = a.coef_.begin(), ib = b.coef_.begin();
    while (ia != a.coef_.end() && ib != b.coef_.end()) {
      if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
      int c = cmp(ia->second, ib->second);
      if (c != 0) return c < 0 ? -1 : 1;
      ++ia;
      ++ib;
    }
    if (ia != a.coef_.end()) return 1;
    if (ib != b.coef_.end()) return -1;
    return 0;
  }
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    return compare(a, b) < 0;
  }

  // Canonical textual form in the shared expression grammar.
  std::string to_string() const {
    if (coef_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [j, c] : coef_) {
      std::string cs = c.get_str();
      bool neg = cs[0] == '-';
      std::string mag = neg ? cs.substr(1) : cs;
      std::string term;
      if (j == 0) {
        term = mag;
      } else {
        std::string root = "E(" + std::to_string(n_) + ")";
        if (j != 1) root += "^" + std::to_string(j);
        term = (mag == "1") ? root : mag + "*" + root;
      }
      if (first) {
        if (neg) os << '-';
        os << term;
        first = false;
      } else {
        os << (neg ? '-' : '+') << term;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) {
    return os << c.to_string();
  }

 private:
  struct PrimePower {
    std::uint64_t p, pa;   // p^a
    std::uint64_t q;       // n / p^a
    std::uint64_t qinv;    // q^-1 mod p^a
    std::uint64_t phi;     // phi(p^a)
  };

  static std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(m),
                 nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::swap(t -= qq * nt, nt);
      std::swap(r -= qq * nr, nr);
    }
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
  }

  static std::vector<PrimePower> context(std::uint64_t n) {
    std::vector<PrimePower> ctx;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      std::uint64_t pa = 1;
      while (m % p == 0) {
        m /= p;
        pa *= p;
      }
      ctx.push_back({p, pa, 0, 0, pa / p * (p - 1)});
    }
    if (m > 1) ctx.push_back({m, m, 0, 0, m - 1});
    for (auto& pp : ctx) {
      pp.q = n / pp.pa;
      pp.qinv = pp.q == 1 ? 1 % pp.pa : mod_inverse(pp.q, pp.pa);
    }
    return ctx;
  }

  // Adds c * zeta_{n_}^j after rewriting j into the reduced basis.
  void add_term(std::uint64_t j, const mpq_class& c) {
    if (c == 0) return;
    if (n_ == 1) {
      accumulate(0, c);
      return;
    }
    auto ctx = context(n_);
    reduce_term(ctx, j % n_, c);
  }

  void reduce_term(const std::vector<PrimePower>& ctx, std::uint64_t j,
                   const mpq_class& c) {
    for (const auto& pp : ctx) {
      std::uint64_t d = (j % pp.pa) * pp.qinv % pp.pa;
      if (d >= pp.phi) {
        // zeta^{d} = -sum_{t<p-1} zeta^{rem + t p^{a-1}} in the p-part
        std::uint64_t step = pp.pa / pp.p;
        std::uint64_t rem = d - (pp.p - 1) * step;
        for (std::uint64_t t = 0; t + 1 < pp.p; ++t) {
          std::uint64_t dnew = rem + t * step;
          // adjust exponent: j + (dnew - d) * q  (mod n)
          std::uint64_t jnew =
              (j + n_ + (dnew % pp.pa) * pp.q % n_ - d * pp.q % n_) % n_;
          reduce_term(ctx, jnew, -c);
        }
        return;
      }
    }
    accumulate(j, c);
  }

  void accumulate(std::uint64_t j, const mpq_class& c) {
    auto it = coef_.find(j);
    if (it == coef_.end()) {
      coef_.emplace(j, c);
    } else {
      it->second += c;
      if (it->second == 0) coef_.erase(it);
    }
  }

  std::uint64_t digit(std::uint64_t j, const PrimePower& pp) const {
    return (j % pp.pa) * pp.qinv % pp.pa;
  }

  // Lowers the conductor to the minimal possible.  The element lies one
  // level down at p exactly when every digit at p is divisible by p (zero
  // for a = 1); the digit vector transfers with d_p replaced by d_p / p,
  // and an exponent is rebuilt from digits as sum d_i * (n / p_i^{a_i}).
  void canonicalize() {
    if (coef_.empty()) {
      n_ = 1;
      return;
    }
    bool changed = true;
    while (changed && n_ > 1) {
      changed = false;
      auto ctx = context(n_);
      for (const auto& pp : ctx) {
        bool all = true;
        for (auto& [j, c] : coef_) {
          std::uint64_t d = digit(j, pp);
          if (pp.pa > pp.p ? (d % pp.p != 0) : (d != 0)) {
            all = false;
            break;
          }
        }
        if (!all) continue;
        std::uint64_t nn = n_ / pp.p;
        auto nctx = context(nn);
        std::map<std::uint64_t, mpq_class> moved;
        for (auto& [j, c] : coef_) {
          unsigned __int128 x = 0;
          for (const auto& np : nctx) {
            std::uint64_t d;
            if (np.p == pp.p) {
              d = digit(j, pp) / pp.p;
            } else {
              auto it = std::find_if(ctx.begin(), ctx.end(),
                                     [&](const PrimePower& o) { return o.p == np.p; });
              d = digit(j, *it);
            }
            x += static_cast<unsigned __int128>(d) * np.q;
          }
          std::uint64_t rest = static_cast<std::uint64_t>(x % nn);
          auto it = moved.find(rest);
          if (it == moved.end())
            moved.emplace(rest, c);
          else
            it->second += c;
        }
        coef_ = std::move(moved);
        n_ = nn;
        changed = true;
        break;
      }
    }
    for (auto it = coef_.begin(); it != coef_.end();)
      it = (it->second == 0) ? coef_.erase(it) : std::next(it);
    if (coef_.empty()) n_ = 1;
    if (n_ == 1 && !coef_.empty() && coef_.begin()->first != 0)
      throw data_error("cyclotomic canonical form corrupted");
  }

  std::uint64_t n_ = 1;
  std::map<std::uint64_t, mpq_class> coef_;
};

inline Cyclotomic cyclo_from(std::uint64_t n, std::uint64_t k) {
  return Cyclotomic::root(n, k);
}

}  // namespace gelpair
