#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "gelpair/classes.hpp"

using namespace gelpair;

namespace {

PermGroup m11() {
  return build_group({Permutation::parse_cycles("(1,2,3,4,5,6,7,8,9,10,11)", 11),
                      Permutation::parse_cycles("(3,7,11,8)(4,10,5,6)", 11)});
}

PermGroup q8() {
  // Q8 acting on itself by right multiplication (points 1..8 are
  // 1,i,-1,-i,j,-j,k,-k; generators are right multiplication by i and j)
  return build_group({Permutation::parse_cycles("(1,2,3,4)(5,8,6,7)", 8),
                      Permutation::parse_cycles("(1,5,3,6)(2,7,4,8)", 8)});
}

std::vector<Permutation> enumerate_group(const PermGroup& g) {
  std::vector<Permutation> all{Permutation::identity(g.degree())};
  std::set<Permutation> seen{all[0]};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& x : g.generators()) {
      auto y = all[i] * x;
      if (seen.insert(y).second) all.push_back(y);
    }
  return all;
}

// Oracle: class partition by exhaustive pairwise conjugation.
std::vector<std::set<Permutation>> brute_classes(const PermGroup& g) {
  auto all = enumerate_group(g);
  std::vector<std::set<Permutation>> classes;
  std::set<Permutation> assigned;
  for (const auto& e : all) {
    if (assigned.count(e)) continue;
    std::set<Permutation> cls;
    for (const auto& t : all) cls.insert(conjugate(e, t));
    for (const auto& x : cls) assigned.insert(x);
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace

TEST_CASE("Q8 has 5 classes of sizes 1,1,2,2,2") {
  auto g = q8();
  REQUIRE(g.order() == 8);
  auto cd = conjugacy_classes(g);
  REQUIRE(cd.count() == 5);
  CHECK(cd.sizes == std::vector<std::uint64_t>{1, 1, 2, 2, 2});
  CHECK(cd.element_orders == std::vector<std::uint64_t>{1, 2, 4, 4, 4});
  CHECK(cd.reps[0].is_identity());
}

TEST_CASE("trivial group has one class") {
  auto cd = conjugacy_classes(build_group({Permutation::identity(3)}));
  CHECK(cd.count() == 1);
  CHECK(cd.sizes == std::vector<std::uint64_t>{1});
}

TEST_CASE("M11 has 10 conjugacy classes with consistent class equation") {
  auto g = m11();
  auto cd = conjugacy_classes(g);
  REQUIRE(cd.count() == 10);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < cd.count(); ++k) {
    total += cd.sizes[k];
    CHECK(cd.sizes[k] * cd.centralizer_orders[k] == g.order());
    CHECK(cd.element_orders[k] == cd.reps[k].order());
  }
  CHECK(total == g.order());
  CHECK(cd.element_orders ==
        std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 8, 8, 11, 11});

  SECTION("an element of order 11 has centralizer of order 11") {
    CHECK(cd.centralizer_orders[8] == 11);
    CHECK(centralizer_order(g, cd.reps[8]) == 11);
  }
  SECTION("canonical class order is deterministic across sampling seeds") {
    auto cd2 = conjugacy_classes(g, {}, 987654321);
    CHECK(cd2.sizes == cd.sizes);
    CHECK(cd2.element_orders == cd.element_orders);
    CHECK(cd2.centralizer_orders == cd.centralizer_orders);
    CHECK(cd2.power_maps == cd.power_maps);
    // tie-broken classes carry their canonical minimal representative
    CHECK(cd2.reps[6] == cd.reps[6]);
    CHECK(cd2.reps[8] == cd.reps[8]);
  }
}

TEST_CASE("class partition agrees with exhaustive conjugation on small groups") {
  std::vector<PermGroup> gs;
  gs.push_back(build_group({Permutation::parse_cycles("(1,2)", 3),
                            Permutation::parse_cycles("(1,2,3)", 3)}));  // S3
  gs.push_back(build_group({Permutation::parse_cycles("(1,2,3)", 4),
                            Permutation::parse_cycles("(2,3,4)", 4)}));  // A4
  gs.push_back(q8());
  gs.push_back(build_group({Permutation::parse_cycles("(1,2)", 5),
                            Permutation::parse_cycles("(1,2,3,4,5)", 5)}));  // S5
  gs.push_back(build_group({Permutation::parse_cycles("(1,2,3,4,5)", 5),
                            Permutation::parse_cycles("(2,3,5,4)", 5)}));  // F20
  for (const auto& g : gs) {
    auto cd = conjugacy_classes(g);
    auto brute = brute_classes(g);
    REQUIRE(cd.count() == brute.size());
    // match each computed rep to its brute class; sizes must agree
    for (std::size_t k = 0; k < cd.count(); ++k) {
      bool found = false;
      for (const auto& cls : brute)
        if (cls.count(cd.reps[k])) {
          CHECK(cls.size() == cd.sizes[k]);
          found = true;
          break;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("are_conjugate: fixed points of the spec") {
  auto g = build_group({Permutation::parse_cycles("(1,2)", 3),
                        Permutation::parse_cycles("(1,2,3)", 3)});
  auto a = Permutation::parse_cycles("(1,2)", 3);

  SECTION("self-conjugacy accepts the identity") {
    auto t = are_conjugate(g, a, a);
    REQUIRE(t);
    CHECK(compose(compose(t->inverse(), a), *t) == a);
  }
  SECTION("transpositions are conjugate by some 3-cycle") {
    auto b = Permutation::parse_cycles("(2,3)", 3);
    auto t = are_conjugate(g, a, b);
    REQUIRE(t);
    CHECK(compose(compose(t->inverse(), a), *t) == b);
    CHECK(t->order() == 3);
  }
  SECTION("different cycle types are never conjugate") {
    CHECK_FALSE(are_conjugate(g, a, Permutation::parse_cycles("(1,2,3)", 3)));
  }
  SECTION("conjugator is exact on random M11 class pairs") {
    auto m = m11();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
      auto x = m.random_element(rng);
      auto y = conjugate(x, m.random_element(rng));
      auto c = are_conjugate(m, x, y);
      REQUIRE(c);
      CHECK(compose(compose(c->inverse(), x), *c) == y);
    }
  }
}

TEST_CASE("centralizer orders: identity and central elements") {
  auto g = q8();
  CHECK(centralizer_order(g, Permutation::identity(8)) == 8);
  auto cd = conjugacy_classes(g);
  // class 1 is the central order-2 element (-1 in Q8)
  CHECK(cd.sizes[1] == 1);
  CHECK(centralizer_order(g, cd.reps[1]) == 8);
}

TEST_CASE("power maps are class functions of powers") {
  auto g = m11();
  auto cd = conjugacy_classes(g);
  for (auto& [p, pm] : cd.power_maps) {
    for (std::size_t k = 0; k < cd.count(); ++k) {
      // rep^p must be conjugate to the rep of the mapped class
      auto q = cd.reps[k].power(p);
      CHECK(are_conjugate(g, q, cd.reps[pm[k]]).has_value());
    }
  }
  SECTION("power_class handles composite exponents") {
    for (std::size_t k = 0; k < cd.count(); ++k) {
      auto q = cd.reps[k].power(6);
      CHECK(are_conjugate(g, q, cd.reps[cd.power_class(k, 6)]).has_value());
    }
  }
}

TEST_CASE("class lookup resolves ambiguous cycle-type buckets") {
  auto g = m11();
  auto cd = conjugacy_classes(g);
  Budgets budgets;
  ClassLookup lk(g, cd, budgets);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    auto x = g.random_element(rng);
    auto k = lk.class_of(x);
    CHECK(are_conjugate(g, x, cd.reps[k]).has_value());
  }
}

TEST_CASE("budget errors name the ingestion path") {
  auto g = m11();
  Budgets tight;
  tight.max_order = 100;
  try {
    conjugacy_classes(g, tight);
    FAIL("expected budget_error");
  } catch (const budget_error& e) {
    CHECK(std::string(e.what()).find("ingest") != std::string::npos);
  }
}
