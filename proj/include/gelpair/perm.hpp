#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gelpair/common.hpp"

namespace gelpair {

// A permutation of {0,...,degree-1} stored as an image list.
// Composition convention is left-to-right throughout the project:
// (p * q) maps x to q(p(x)).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : img_(std::move(images)) {}

  static Permutation identity(std::size_t degree) {
    std::vector<Point> v(degree);
    std::iota(v.begin(), v.end(), Point{0});
    return Permutation(std::move(v));
  }

  std::size_t degree() const { return img_.size(); }

  Point operator[](Point x) const { return img_[x]; }

  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  bool valid() const {
    std::vector<bool> seen(img_.size(), false);
    for (Point x : img_) {
      if (x >= img_.size() || seen[x]) return false;
      seen[x] = true;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<Point>(i);
    return Permutation(std::move(inv));
  }

  friend Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw degree_mismatch();
    std::vector<Point> r(p.degree());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = q.img_[p.img_[i]];
    return Permutation(std::move(r));
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    return compose(p, q);
  }

  // b^-1 * a * b
  friend Permutation conjugate(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw degree_mismatch();
    std::vector<Point> r(a.degree());
    for (std::size_t i = 0; i < r.size(); ++i) r[b.img_[i]] = b.img_[a.img_[i]];
    return Permutation(std::move(r));
  }

  std::uint64_t order() const {
    std::vector<bool> seen(img_.size(), false);
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (Point x = static_cast<Point>(i); !seen[x]; x = img_[x]) {
        seen[x] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  Permutation power(std::uint64_t e) const {
    Permutation acc = identity(degree());
    Permutation base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  // Cycle lengths > 1, sorted descending.  Class invariant used as a
  // cheap conjugacy pre-filter.
  std::vector<Point> cycle_type() const {
    std::vector<Point> type;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      Point len = 0;
      for (Point x = static_cast<Point>(i); !seen[x]; x = img_[x]) {
        seen[x] = true;
        ++len;
      }
      if (len > 1) type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
  }

  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<Point> cyc;
      for (Point x = static_cast<Point>(i); !seen[x]; x = img_[x]) {
        seen[x] = true;
        cyc.push_back(x);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  // Disjoint-cycle text with 1-based points, e.g. "(1,2,3)(4,5)".
  std::string to_cycle_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::ostringstream os;
    for (const auto& c : cs) {
      os << '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i] + 1;
      }
      os << ')';
    }
    return os.str();
  }

  // Parses disjoint-cycle notation with 1-based points.  "()" is the
  // identity.  Degree 0 is rejected.
  static Permutation parse_cycles(const std::string& text, std::size_t degree) {
    if (degree == 0) throw parse_error("degree 0 permutation rejected");
    auto p = identity(degree);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') throw parse_error("expected '(' in cycle notation: " + text);
      ++i;
      std::vector<Point> cyc;
      skip_ws();
      while (i < text.size() && text[i] != ')') {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw parse_error("expected point number in cycle notation: " + text);
        unsigned long v = std::stoul(text.substr(i, j - i));
        if (v < 1 || v > degree) throw parse_error("point out of range in: " + text);
        cyc.push_back(static_cast<Point>(v - 1));
        i = j;
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          skip_ws();
        }
      }
      if (i >= text.size()) throw parse_error("unterminated cycle in: " + text);
      ++i;  // ')'
      for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
        if (p.img_[cyc[k]] != cyc[k]) throw parse_error("repeated point in: " + text);
        p.img_[cyc[k]] = cyc[k + 1];
      }
      if (cyc.size() >= 2) {
        if (p.img_[cyc.back()] != cyc.back()) throw parse_error("repeated point in: " + text);
        p.img_[cyc.back()] = cyc.front();
      }
      skip_ws();
    }
    if (!p.valid()) throw parse_error("not a permutation: " + text);
    return p;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.img_ == b.img_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) {
    return a.img_ != b.img_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.img_ < b.img_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Permutation& p) {
    return os << p.to_cycle_string();
  }

 private:
  std::vector<Point> img_;
};

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct PointVecHash {
  std::size_t operator()(const std::vector<Point>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Point x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace gelpair
