#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "gelpair/label.hpp"
#include "gelpair/lattice.hpp"

using namespace gelpair;

namespace {

PermGroup s4() {
  return build_group({Permutation::parse_cycles("(1,2)", 4),
                      Permutation::parse_cycles("(1,2,3,4)", 4)});
}

PermGroup a5() {
  return build_group({Permutation::parse_cycles("(1,2,3,4,5)", 5),
                      Permutation::parse_cycles("(3,4,5)", 5)});
}

}  // namespace

TEST_CASE("small group element table") {
  auto g = s4();
  SmallGroup sg(g);
  CHECK(sg.size() == 24);
  for (std::uint32_t i = 0; i < 24; ++i) {
    CHECK(sg.mul(i, sg.inv(i)) == 0);
    CHECK(sg.element(sg.index_of(sg.element(i))) == sg.element(i));
  }
}

TEST_CASE("subgroup closure and canonical conjugates") {
  auto g = s4();
  SmallGroup sg(g);
  auto t = sg.index_of(Permutation::parse_cycles("(1,2)", 4));
  auto b = sg.closure({t});
  CHECK(SmallGroup::popcount(b) == 2);
  auto [canon, count] = sg.conjugacy_orbit(b);
  CHECK(count == 6);  // six transpositions
  // the canonical form is reproducible from any member of the class
  auto t2 = sg.index_of(Permutation::parse_cycles("(3,4)", 4));
  CHECK(sg.conjugacy_orbit(sg.closure({t2})).first == canon);
}

TEST_CASE("S4 has 10 proper subgroup classes via cyclic extension") {
  auto g = s4();
  SmallGroup sg(g);
  auto classes = subgroup_classes(sg);
  CHECK(classes.size() == 10);
  std::multiset<std::uint64_t> orders;
  for (const auto& c : classes) orders.insert(c.order);
  CHECK(orders == std::multiset<std::uint64_t>{1, 2, 2, 3, 4, 4, 4, 6, 8, 12});
  // class lengths: e.g. four S3s, three D8s, one A4
  for (const auto& c : classes) {
    if (c.order == 6) CHECK(c.conjugates == 4);
    if (c.order == 8) CHECK(c.conjugates == 3);
    if (c.order == 12) CHECK(c.conjugates == 1);
  }
}

TEST_CASE("A5: all proper subgroups are solvable and found without seeds") {
  auto g = a5();
  SmallGroup sg(g);
  auto classes = subgroup_classes(sg);
  CHECK(classes.size() == 8);
  std::multiset<std::uint64_t> orders;
  for (const auto& c : classes) orders.insert(c.order);
  CHECK(orders == std::multiset<std::uint64_t>{1, 2, 3, 4, 5, 6, 10, 12});
}

TEST_CASE("a perfect subgroup enters only through seeds") {
  // S5 contains A5, which cyclic extension alone cannot reach
  auto g = build_group({Permutation::parse_cycles("(1,2)", 5),
                        Permutation::parse_cycles("(1,2,3,4,5)", 5)});
  SmallGroup sg(g);
  auto without = subgroup_classes(sg);
  bool found = false;
  for (const auto& c : without)
    if (c.order == 60) found = true;
  CHECK_FALSE(found);

  std::vector<std::uint32_t> seed{
      sg.index_of(Permutation::parse_cycles("(1,2,3,4,5)", 5)),
      sg.index_of(Permutation::parse_cycles("(3,4,5)", 5))};
  auto with = subgroup_classes(sg, {seed});
  for (const auto& c : with)
    if (c.order == 60) found = true;
  CHECK(found);
  // and the seeded lattice is strictly larger
  CHECK(with.size() == without.size() + 1);
}

TEST_CASE("class_below sees containment up to conjugacy") {
  auto g = s4();
  SmallGroup sg(g);
  auto classes = subgroup_classes(sg);
  auto find = [&](std::uint64_t order) -> const SubgroupClass& {
    for (const auto& c : classes)
      if (c.order == order) return c;
    throw std::logic_error("class not found");
  };
  CHECK(class_below(sg, find(3), find(12)));   // C3 < A4
  CHECK_FALSE(class_below(sg, find(6), find(12)));  // A4 has no order-6 subgroup
  CHECK_FALSE(class_below(sg, find(8), find(12)));  // D8 is not inside A4
}

TEST_CASE("iso labels match the tables' naming") {
  CHECK(iso_label(build_group({Permutation::parse_cycles("(1,2,3,4)", 4)})) == "4");
  CHECK(iso_label(build_group({Permutation::identity(3)})) == "1");
  CHECK(iso_label(build_group({Permutation::parse_cycles("(1,2)", 4),
                               Permutation::parse_cycles("(3,4)", 4)})) == "2^2");
  CHECK(iso_label(s4()) == "S4");
  CHECK(iso_label(a5()) == "A5");
  CHECK(iso_label(build_group({Permutation::parse_cycles("(1,2,3)", 3)})) == "3");
  // Q8 by involution count
  CHECK(iso_label(build_group({Permutation::parse_cycles("(1,2,3,4)(5,8,6,7)", 8),
                               Permutation::parse_cycles("(1,5,3,6)(2,7,4,8)", 8)})) ==
        "Q8");
  // D10 = dihedral of order 10
  CHECK(iso_label(build_group({Permutation::parse_cycles("(1,2,3,4,5)", 5),
                               Permutation::parse_cycles("(2,5)(3,4)", 5)})) == "D10");
  // F5 = Frobenius group of order 20
  CHECK(iso_label(build_group({Permutation::parse_cycles("(1,2,3,4,5)", 5),
                               Permutation::parse_cycles("(2,3,5,4)", 5)})) == "F5");
  CHECK(iso_label(build_group({Permutation::parse_cycles("(1,2,3)", 4),
                               Permutation::parse_cycles("(1,2)(3,4)", 4)})) == "A4");
}

TEST_CASE("iso label of the M9 maximal shape 3^2:4") {
  // 3^2:4 in an affine action on 9 points: translations of F9 = F3[i]
  // with the multiplier i of order 4; points 1..9 are
  // 0,1,2,i,1+i,2+i,2i,1+2i,2+2i
  auto t1 = Permutation::parse_cycles("(1,2,3)(4,5,6)(7,8,9)", 9);  // +1
  auto t2 = Permutation::parse_cycles("(1,4,7)(2,5,8)(3,6,9)", 9);  // +i
  auto m = Permutation::parse_cycles("(2,4,3,7)(5,6,9,8)", 9);      // *i
  auto h = build_group({t1, t2, m});
  REQUIRE(h.order() == 36);
  CHECK(iso_label(h) == "3^2:4");
}
