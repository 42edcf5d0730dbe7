#include <catch2/catch_amalgamated.hpp>

#include "gelpair/gelfand.hpp"

using namespace gelpair;

namespace {

PermGroup m11() {
  return build_group({Permutation::parse_cycles("(1,2,3,4,5,6,7,8,9,10,11)", 11),
                      Permutation::parse_cycles("(3,7,11,8)(4,10,5,6)", 11)});
}

PermGroup q8() {
  return build_group({Permutation::parse_cycles("(1,2,3,4)(5,8,6,7)", 8),
                      Permutation::parse_cycles("(1,5,3,6)(2,7,4,8)", 8)});
}

PermGroup s4() {
  return build_group({Permutation::parse_cycles("(1,2)", 4),
                      Permutation::parse_cycles("(1,2,3,4)", 4)});
}

struct Pair {
  PermGroup g, h;
  CharacterTable tg, th;
  ClassFusion f;
  Pair(PermGroup gg, PermGroup hh) : g(std::move(gg)), h(std::move(hh)) {
    tg = compute_table(g, Budgets{});
    th = compute_table(h, Budgets{});
    f = compute_fusion(g, h, tg, th);
  }
};

}  // namespace

TEST_CASE("(G, G) is a Gelfand pair with rank-1 decomposition") {
  auto g = s4();
  Pair p(g, g);
  auto v = is_gelfand_pair(p.tg, p.th, p.f, "S4", "S4");
  CHECK(v.is_gelfand);
  auto ind = induce_character(trivial_character(p.th), p.f);
  CHECK(decompose(ind).size() == 1);
}

TEST_CASE("(M11, M10) is a Gelfand pair and a strong Gelfand pair") {
  auto g = m11();
  Pair p(g, point_stabilizer(g, 0));
  auto v = is_gelfand_pair(p.tg, p.th, p.f, "M11", "M10");
  CHECK(v.is_gelfand);
  auto s = is_strong_gelfand_pair(p.tg, p.th, p.f, "M11", "M10");
  CHECK(s.is_strong_gelfand);
  CHECK(s.is_gelfand);
  CHECK(s.strong_evaluated);
  CHECK_FALSE(s.witness.has_value());
}

TEST_CASE("(S4, normal V4) fails with a concrete witness") {
  auto g = s4();
  auto v4 = build_group({Permutation::parse_cycles("(1,2)(3,4)", 4),
                         Permutation::parse_cycles("(1,3)(2,4)", 4)});
  Pair p(g, v4);
  auto s = is_strong_gelfand_pair(p.tg, p.th, p.f, "S4", "V4");
  CHECK_FALSE(s.is_strong_gelfand);
  REQUIRE(s.witness.has_value());
  CHECK(s.witness->multiplicity == 2);
  // the 2-dimensional character of S4 restricts to 2 x trivial
  CHECK(p.tg.degrees[s.witness->chi_index] == 2);
  CHECK(s.witness->psi_index == 0);
  CHECK_FALSE(s.is_gelfand);
}

TEST_CASE("strong implies Gelfand on abelian pairs") {
  auto c6 = build_group({Permutation::parse_cycles("(1,2,3,4,5,6)", 6)});
  auto c3 = build_group({Permutation::parse_cycles("(1,3,5)(2,4,6)", 6)});
  Pair p(c6, c3);
  auto s = is_strong_gelfand_pair(p.tg, p.th, p.f);
  CHECK(s.is_strong_gelfand);
  CHECK(s.is_gelfand);
}

TEST_CASE("restriction and induction test directions agree") {
  auto g = m11();
  std::vector<PermGroup> subs{point_stabilizer(g, 0),
                              point_stabilizer(point_stabilizer(g, 0), 1)};
  for (const auto& h : subs) {
    Pair p(g, h);
    auto s = is_strong_gelfand_pair(p.tg, p.th, p.f);
    CHECK(s.is_strong_gelfand == strong_gelfand_by_induction(p.tg, p.th, p.f));
    auto v = is_gelfand_pair(p.tg, p.th, p.f);
    CHECK(v.is_gelfand == gelfand_by_induction(p.tg, p.th, p.f));
  }
}

TEST_CASE("verdicts are invariant under conjugating the subgroup") {
  auto g = m11();
  auto h = point_stabilizer(point_stabilizer(g, 0), 1);  // M9
  std::mt19937_64 rng(11);
  auto v0 = [&] {
    Pair p(g, h);
    return is_strong_gelfand_pair(p.tg, p.th, p.f).is_strong_gelfand;
  }();
  for (int t = 0; t < 3; ++t) {
    auto c = g.random_element(rng);
    std::vector<Permutation> conj_gens;
    for (const auto& x : h.generators()) conj_gens.push_back(conjugate(x, c));
    Pair p(g, build_group(conj_gens));
    CHECK(is_strong_gelfand_pair(p.tg, p.th, p.f).is_strong_gelfand == v0);
  }
}

TEST_CASE("quotient reduction preserves verdicts") {
  auto g = s4();
  auto d8 = build_group({Permutation::parse_cycles("(1,2,3,4)", 4),
                         Permutation::parse_cycles("(1,3)", 4)});
  auto v4 = build_group({Permutation::parse_cycles("(1,2)(3,4)", 4),
                         Permutation::parse_cycles("(1,3)(2,4)", 4)});
  auto [gq, hq] = quotient_reduce(g, d8, v4);
  CHECK(gq.order() == 6);
  CHECK(hq.order() == 2);
  Pair before(g, d8), after(gq, hq);
  auto vb = is_strong_gelfand_pair(before.tg, before.th, before.f);
  auto va = is_strong_gelfand_pair(after.tg, after.th, after.f);
  CHECK(vb.is_gelfand == va.is_gelfand);
  CHECK(vb.is_strong_gelfand == va.is_strong_gelfand);

  SECTION("trivial N reduces to an isomorphic pair") {
    auto e = build_group({Permutation::identity(4)});
    auto [g2, h2] = quotient_reduce(g, d8, e);
    CHECK(g2.order() == 24);
    CHECK(h2.order() == 8);
  }
  SECTION("N = H = G collapses to the trivial pair") {
    auto [g3, h3] = quotient_reduce(g, g, g);
    CHECK(g3.order() == 1);
    CHECK(h3.order() == 1);
  }
}

TEST_CASE("extension theorem: index-2 and coset-action instances") {
  auto g = s4();
  auto a4 = build_group({Permutation::parse_cycles("(1,2,3)", 4),
                         Permutation::parse_cycles("(1,2)(3,4)", 4)});
  Pair p(g, a4);
  auto v = verify_extension_theorem(g, a4, p.tg, p.th, p.f, "S4", "A4");
  CHECK(v.is_strong_gelfand);

  // S3 realized through a coset action, with its C3
  auto d8 = build_group({Permutation::parse_cycles("(1,2,3,4)", 4),
                         Permutation::parse_cycles("(1,3)", 4)});
  auto ca = coset_action(g, d8);
  auto s3 = ca.image;
  REQUIRE(s3.order() == 6);
  auto c3 = derived_subgroup(s3);
  REQUIRE(c3.order() == 3);
  Pair q(s3, c3);
  CHECK(verify_extension_theorem(s3, c3, q.tg, q.th, q.f).is_strong_gelfand);
}

TEST_CASE("classify M8 = Q8: the Table rows for the quaternion group") {
  auto g = q8();
  auto tg = compute_table(g, Budgets{}, "M8");
  ClassifyOptions opts;

  SECTION("gelfand mode: three maximal 4s and the center under a 4") {
    opts.mode = "gelfand";
    auto rep = classify(g, tg, opts, "M8");
    REQUIRE(rep.entries.size() == 2);
    CHECK(rep.entries[0].order == 4);
    CHECK(rep.entries[0].label == "4");
    CHECK(rep.entries[0].multiplicity == 3);
    CHECK(rep.entries[0].max_label == "-");
    CHECK(rep.entries[1].order == 2);
    CHECK(rep.entries[1].label == "2");
    CHECK(rep.entries[1].multiplicity == 1);
    CHECK(rep.entries[1].max_label == "4");
  }
  SECTION("strong mode: only the maximal subgroups") {
    opts.mode = "strong";
    auto rep = classify(g, tg, opts, "M8");
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].order == 4);
    CHECK(rep.entries[0].multiplicity == 3);
  }
}

TEST_CASE("classify the trivial group: empty report") {
  auto e = build_group({Permutation::identity(4)});
  auto te = compute_table(e, Budgets{}, "M7");
  ClassifyOptions opts;
  auto rep = classify(e, te, opts, "M7");
  CHECK(rep.entries.empty());
}

TEST_CASE("descent strategy agrees with the full lattice on S4") {
  auto g = s4();
  auto tg = compute_table(g, Budgets{}, "S4");
  ClassifyOptions lat;
  auto full = classify(g, tg, lat, "S4");

  ClassifyOptions desc;
  desc.strategy = "descent";
  desc.maximals.push_back({"A4", "A4", build_group({Permutation::parse_cycles("(1,2,3)", 4),
                                              Permutation::parse_cycles("(1,2)(3,4)", 4)})});
  desc.maximals.push_back({"D8", "D8", build_group({Permutation::parse_cycles("(1,2,3,4)", 4),
                                              Permutation::parse_cycles("(1,3)", 4)})});
  desc.maximals.push_back({"S3", "S3", build_group({Permutation::parse_cycles("(1,2)", 4),
                                              Permutation::parse_cycles("(1,2,3)", 4)})});
  auto via_descent = classify(g, tg, desc, "S4");
  CHECK(via_descent.conditional_on_data);

  // same (order, multiplicity) multiset of passing rows; labels for the
  // maximal rows come from the curated list rather than the labeler
  std::multiset<std::pair<std::uint64_t, std::size_t>> a, b;
  for (auto& e : full.entries) a.insert({e.order, e.multiplicity});
  for (auto& e : via_descent.entries) b.insert({e.order, e.multiplicity});
  CHECK(a == b);
}

TEST_CASE("machine report is stable and parseable") {
  auto g = q8();
  auto tg = compute_table(g, Budgets{}, "M8");
  ClassifyOptions opts;
  auto rep = classify(g, tg, opts, "M8");
  auto m1 = render_machine(rep);
  auto m2 = render_machine(classify(g, tg, opts, "M8"));
  CHECK(m1 == m2);
  CHECK(m1.find("gelpair-report v1\n") == 0);
  CHECK(m1.find("entry 4 3 4 -") != std::string::npos);
  CHECK(m1.find("end\n") != std::string::npos);
  auto text = render_text(rep, "8", "Q8");
  CHECK(text.find("Multiplicity") != std::string::npos);
}
