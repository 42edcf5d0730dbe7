#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gelpair/characters.hpp"
#include "gelpair/label.hpp"

namespace gelpair {

// Outcome of a (strong) Gelfand pair test.  A false verdict always
// carries a witness with multiplicity >= 2.
struct PairVerdict {
  std::string group, subgroup;
  bool is_gelfand = false;
  bool is_strong_gelfand = false;
  bool strong_evaluated = false;
  struct Witness {
    std::size_t chi_index = 0;  // irreducible of G
    std::size_t psi_index = 0;  // irreducible of H (0 = trivial)
    mpz_class multiplicity;
  };
  std::optional<Witness> witness;
};

// Gelfand test in the restriction direction: multiplicities of 1_H in
// chi|H over all irreducibles chi of G (Frobenius-equal to decomposing
// the permutation character 1_H ^ G).
inline PairVerdict is_gelfand_pair(const CharacterTable& tg, const CharacterTable& th,
                                   const ClassFusion& f, std::string gname = "",
                                   std::string hname = "") {
  PairVerdict v;
  v.group = std::move(gname);
  v.subgroup = std::move(hname);
  v.is_gelfand = true;
  auto one_h = trivial_character(th);
  for (std::size_t i = 0; i < tg.count(); ++i) {
    auto m = multiplicity(restrict_character(irreducible(tg, i), f), one_h);
    if (m > 1) {
      v.is_gelfand = false;
      v.witness = PairVerdict::Witness{i, 0, m};
      break;
    }
  }
  return v;
}

// Strong Gelfand test: every restriction chi|H must be multiplicity-free
// over Irr(H); aborts on the first multiplicity >= 2 and records it.
inline PairVerdict is_strong_gelfand_pair(const CharacterTable& tg,
                                          const CharacterTable& th, const ClassFusion& f,
                                          std::string gname = "", std::string hname = "") {
  PairVerdict v;
  v.group = std::move(gname);
  v.subgroup = std::move(hname);
  v.strong_evaluated = true;
  v.is_gelfand = true;
  v.is_strong_gelfand = true;
  for (std::size_t i = 0; i < tg.count(); ++i) {
    auto res = restrict_character(irreducible(tg, i), f);
    for (std::size_t j = 0; j < th.count(); ++j) {
      auto m = multiplicity(res, irreducible(th, j));
      if (m > 1) {
        v.is_strong_gelfand = false;
        if (j == 0) v.is_gelfand = false;
        if (!v.witness) v.witness = PairVerdict::Witness{i, j, m};
        break;
      }
    }
    if (!v.is_strong_gelfand) break;
  }
  if (!v.is_strong_gelfand && v.is_gelfand) {
    // strong failed on a nontrivial psi; settle the Gelfand flag properly
    auto g = is_gelfand_pair(tg, th, f);
    v.is_gelfand = g.is_gelfand;
  }
  return v;
}

// The appendix's induction direction: every irreducible of H induces
// multiplicity-freely.  Used to cross-check the restriction direction.
inline bool strong_gelfand_by_induction(const CharacterTable& tg, const CharacterTable& th,
                                        const ClassFusion& f) {
  for (std::size_t j = 0; j < th.count(); ++j) {
    auto ind = induce_character(irreducible(th, j), f);
    for (std::size_t i = 0; i < tg.count(); ++i)
      if (multiplicity(ind, irreducible(tg, i)) > 1) return false;
  }
  return true;
}

inline bool gelfand_by_induction(const CharacterTable& tg, const CharacterTable& th,
                                 const ClassFusion& f) {
  auto ind = induce_character(trivial_character(th), f);
  for (std::size_t i = 0; i < tg.count(); ++i)
    if (multiplicity(ind, irreducible(tg, i)) > 1) return false;
  return true;
}

// Images of (G, H) under the action on cosets of N, for Lemma-style
// quotient reduction.  N must be normal in G and contained in H.
inline std::pair<PermGroup, PermGroup> quotient_reduce(const PermGroup& g,
                                                       const PermGroup& h,
                                                       const PermGroup& n,
                                                       const Budgets& budgets = {}) {
  if (!is_subgroup(g, h) || !is_subgroup(h, n))
    throw data_error("quotient_reduce: need N <= H <= G");
  if (!is_normal_in(g, n)) throw data_error("quotient_reduce: N is not normal in G");
  auto ca = coset_action(g, n, budgets);
  std::vector<Permutation> himg;
  for (const auto& x : h.generators()) himg.push_back(ca.act(x));
  if (himg.empty()) himg.push_back(Permutation::identity(ca.image.degree()));
  return {ca.image, PermGroup(himg)};
}

// Theorem-level property: for G normal in E with abelian quotient,
// (E, G) is a strong Gelfand pair.  A false outcome is a hard failure.
inline PairVerdict verify_extension_theorem(const PermGroup& e, const PermGroup& g,
                                            const CharacterTable& te,
                                            const CharacterTable& tg_sub,
                                            const ClassFusion& f, std::string ename = "",
                                            std::string gname = "") {
  if (!is_subgroup(e, g)) throw data_error("extension theorem: G is not a subgroup of E");
  if (!is_normal_in(e, g)) throw data_error("extension theorem: G is not normal in E");
  for (const auto& a : e.generators())
    for (const auto& b : e.generators())
      if (!g.contains(a.inverse() * b.inverse() * a * b))
        throw data_error("extension theorem: E/G is not abelian");
  auto v = is_strong_gelfand_pair(te, tg_sub, f, std::move(ename), std::move(gname));
  if (!v.is_strong_gelfand)
    throw data_error("extension theorem failed on (" + v.group + ", " + v.subgroup +
                     "): build is broken");
  return v;
}

// ---- classification ----

struct ReportEntry {
  std::string label;
  std::uint64_t order = 1;
  std::size_t multiplicity = 1;     // conjugacy classes of subgroups
  std::string max_label = "-";      // enclosing maximal subgroup, "-" if maximal
};

struct ClassificationReport {
  std::string group;
  std::string mode;      // "gelfand" | "strong"
  std::string strategy;  // "full-lattice" | "descent"
  bool conditional_on_data = false;
  std::vector<ReportEntry> entries;
  std::size_t pruned_count = 0;
  std::vector<std::string> notes;
};

struct MaximalData {
  std::string name;   // catalog name, unique (keys nested descent data)
  std::string label;  // display iso-type label
  PermGroup group;
};

struct ClassifyOptions {
  std::string mode = "gelfand";
  std::string strategy = "full-lattice";
  Budgets budgets;
  std::uint64_t seed = 1;
  // perfect-subgroup seeds for the cyclic-extension enumeration
  std::vector<std::vector<Permutation>> lattice_seeds;
  // curated maximal subgroups of the group itself (descent strategy)
  std::vector<MaximalData> maximals;
  // curated maximal subgroups for deeper descent levels, by label
  std::function<std::optional<std::vector<MaximalData>>(const std::string&)>
      maximals_provider;
};

namespace classify_detail {

struct PairTester {
  const PermGroup& g;
  const CharacterTable& tg;
  const ClassifyOptions& opts;

  bool test(const PermGroup& k) const {
    auto tk = compute_table(k, opts.budgets, "", opts.seed);
    auto f = compute_fusion(g, k, tg, tk);
    if (opts.mode == "strong")
      return is_strong_gelfand_pair(tg, tk, f).is_strong_gelfand;
    return is_gelfand_pair(tg, tk, f).is_gelfand;
  }
};

// lazy element materialization of G for subgroup-conjugacy dedup
struct ConjDedup {
  const PermGroup& g;
  std::vector<Permutation> elems;

  bool conjugate_subgroups(const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return false;
    if (elems.empty()) {
      if (g.order() > 1000000)
        throw budget_error("group too large for subgroup conjugacy dedup");
      elems.push_back(Permutation::identity(g.degree()));
      std::unordered_map<Permutation, bool, PermHash> seen;
      seen.emplace(elems[0], true);
      for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& x : g.generators()) {
          auto y = elems[i] * x;
          if (seen.emplace(y, true).second) elems.push_back(std::move(y));
        }
    }
    for (const auto& t : elems) {
      bool ok = true;
      for (const auto& x : a.generators())
        if (!b.contains(conjugate(x, t))) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  }
};

struct RowCollector {
  struct Row {
    PermGroup rep;
    std::string label;
    std::uint64_t order = 1;
    std::string max_label;
  };
  std::vector<Row> rows;
  ConjDedup dedup;

  // returns false if the class was already recorded (conjugate rep seen)
  bool add(PermGroup rep, std::string label, std::string max_label) {
    for (auto& r : rows)
      if (r.order == rep.order() && dedup.conjugate_subgroups(rep, r.rep)) return false;
    Row row;
    row.order = rep.order();
    row.rep = std::move(rep);
    row.label = std::move(label);
    row.max_label = std::move(max_label);
    rows.push_back(std::move(row));
    return true;
  }
};

}  // namespace classify_detail

// Full classification of the proper subgroups passing the mode's
// predicate.  full-lattice enumerates subgroup classes by cyclic
// extension (with perfect seeds); descent starts from curated maximal
// data, recursing only into passing subgroups and pruning everything
// below a failing pair (valid in both modes by the stacking lemma).
inline ClassificationReport classify(const PermGroup& g, const CharacterTable& tg,
                                     const ClassifyOptions& opts,
                                     const std::string& gname = "") {
  ClassificationReport rep;
  rep.group = gname;
  rep.mode = opts.mode;
  rep.strategy = opts.strategy;
  rep.notes.push_back("multiplicity counts conjugacy classes of subgroups grouped by "
                      "(order, iso-type label)");
  classify_detail::PairTester tester{g, tg, opts};
  classify_detail::RowCollector collect{{}, {g, {}}};

  if (opts.strategy == "full-lattice") {
    if (g.order() > opts.budgets.lattice_budget)
      throw budget_error("full-lattice strategy needs order <= " +
                         std::to_string(opts.budgets.lattice_budget) +
                         "; use the descent strategy with curated maximal data");
    SmallGroup sg(g, opts.budgets.lattice_budget);
    std::vector<std::vector<std::uint32_t>> seeds;
    for (const auto& sv : opts.lattice_seeds) {
      std::vector<std::uint32_t> s;
      for (const auto& p : sv) s.push_back(sg.index_of(p));
      seeds.push_back(std::move(s));
    }
    if (!seeds.empty())
      rep.notes.push_back("lattice seeded with " + std::to_string(seeds.size()) +
                          " perfect subgroup(s); enumeration covers solvable "
                          "subgroups and seeded chains");
    else
      rep.notes.push_back("lattice enumeration covers solvable subgroups "
                          "(cyclic extension, no perfect seeds)");
    auto classes = subgroup_classes(sg, seeds, false);
    std::vector<std::size_t> order_idx(classes.size());
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
      if (classes[a].order != classes[b].order) return classes[a].order > classes[b].order;
      return classes[a].canon < classes[b].canon;
    });
    // below relation among classes (for pruning and the maximal column)
    auto below = [&](std::size_t a, std::size_t b) {
      return class_below(sg, classes[a], classes[b]);
    };
    std::vector<bool> failed(classes.size(), false), passed(classes.size(), false);
    for (std::size_t ia = 0; ia < order_idx.size(); ++ia) {
      std::size_t c = order_idx[ia];
      if (classes[c].order == g.order()) continue;  // proper subgroups only
      bool pruned = false;
      for (std::size_t ib = 0; ib < ia && !pruned; ++ib) {
        std::size_t k = order_idx[ib];
        if (failed[k] && classes[k].order % classes[c].order == 0 && below(c, k))
          pruned = true;
      }
      if (pruned) {
        failed[c] = true;
        ++rep.pruned_count;
        continue;
      }
      auto kgrp = sg.subgroup(classes[c].gens);
      if (tester.test(kgrp))
        passed[c] = true;
      else
        failed[c] = true;
    }
    // maximal classes among the enumerated ones
    std::vector<bool> is_max(classes.size(), true);
    for (std::size_t a = 0; a < classes.size(); ++a)
      for (std::size_t b = 0; b < classes.size() && is_max[a]; ++b)
        if (a != b && classes[b].order > classes[a].order &&
            classes[b].order % classes[a].order == 0 && below(a, b))
          is_max[a] = false;
    for (std::size_t ia = 0; ia < order_idx.size(); ++ia) {
      std::size_t c = order_idx[ia];
      if (!passed[c]) continue;
      auto kgrp = sg.subgroup(classes[c].gens);
      std::string lbl = iso_label(kgrp, opts.budgets.lattice_budget);
      std::string maxlbl = "-";
      if (!is_max[c]) {
        std::uint64_t best = 0;
        for (std::size_t b = 0; b < classes.size(); ++b)
          if (b != c && is_max[b] && classes[b].order > classes[c].order &&
              classes[b].order % classes[c].order == 0 && classes[b].order > best &&
              below(c, b)) {
            best = classes[b].order;
            maxlbl = iso_label(sg.subgroup(classes[b].gens), opts.budgets.lattice_budget);
          }
      }
      // every enumerated class is a distinct conjugacy class already
      collect.rows.push_back({std::move(kgrp), std::move(lbl), classes[c].order,
                              std::move(maxlbl)});
    }
  } else if (opts.strategy == "descent") {
    if (opts.maximals.empty())
      throw budget_error("descent strategy requires curated maximal-subgroup data for " +
                         (gname.empty() ? std::string("this group") : gname));
    rep.conditional_on_data = true;
    rep.notes.push_back("exhaustiveness is conditional on the curated maximal lists");
    struct Branch {
      MaximalData m;
      std::string top_label;
    };
    std::vector<Branch> frontier;
    for (const auto& m : opts.maximals) frontier.push_back({m, "-"});
    for (std::size_t fi = 0; fi < frontier.size(); ++fi) {
      auto& br = frontier[fi];
      bool pass = tester.test(br.m.group);
      if (!pass) {
        ++rep.pruned_count;
        continue;
      }
      collect.add(br.m.group, br.m.label, br.top_label);
      std::string enclosing = br.top_label == "-" ? br.m.label : br.top_label;
      if (br.m.group.order() <= opts.budgets.lattice_budget) {
        // switch to the lattice below this subgroup, testing against G
        SmallGroup sg(br.m.group, opts.budgets.lattice_budget);
        auto classes = subgroup_classes(sg, {}, false);
        std::vector<std::size_t> order_idx(classes.size());
        std::iota(order_idx.begin(), order_idx.end(), 0);
        std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
          if (classes[a].order != classes[b].order)
            return classes[a].order > classes[b].order;
          return classes[a].canon < classes[b].canon;
        });
        std::vector<bool> failed(classes.size(), false);
        for (std::size_t ia = 0; ia < order_idx.size(); ++ia) {
          std::size_t c = order_idx[ia];
          if (classes[c].order == br.m.group.order()) continue;  // the maximal itself
          bool pruned = false;
          for (std::size_t ib = 0; ib < ia && !pruned; ++ib) {
            std::size_t k = order_idx[ib];
            if (failed[k] && classes[k].order % classes[c].order == 0 &&
                class_below(sg, classes[c], classes[k]))
              pruned = true;
          }
          if (pruned) {
            failed[c] = true;
            ++rep.pruned_count;
            continue;
          }
          auto kgrp = sg.subgroup(classes[c].gens);
          if (!tester.test(kgrp)) {
            failed[c] = true;
            continue;
          }
          std::string lbl = iso_label(kgrp, opts.budgets.lattice_budget);
          collect.add(std::move(kgrp), std::move(lbl), enclosing);
        }
      } else {
        auto deeper = opts.maximals_provider
                          ? opts.maximals_provider(br.m.name)
                          : std::nullopt;
        if (!deeper)
          throw budget_error("descent below " + br.m.name +
                             " requires curated maximal-subgroup data");
        for (const auto& m : *deeper) frontier.push_back({m, enclosing});
      }
    }
  } else {
    throw data_error("unknown classification strategy: " + opts.strategy);
  }

  // group rows into entries by (order, label)
  std::map<std::pair<std::uint64_t, std::string>, std::pair<std::size_t, std::string>>
      grouped;
  for (auto& r : collect.rows) {
    auto key = std::make_pair(r.order, r.label);
    auto it = grouped.find(key);
    if (it == grouped.end())
      grouped.emplace(key, std::make_pair(std::size_t{1}, r.max_label));
    else
      ++it->second.first;
  }
  for (auto& [key, val] : grouped)
    rep.entries.push_back({key.second, key.first, val.first, val.second});
  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const ReportEntry& a, const ReportEntry& b) {
              if (a.order != b.order) return a.order > b.order;
              return a.label < b.label;
            });
  return rep;
}

// ---- report rendering ----

inline std::string render_text(const ClassificationReport& r, const std::string& order,
                               const std::string& iso) {
  std::ostringstream os;
  os << "Group  Order  Iso.type  Gel.subgroups  Max.subgroup  Multiplicity\n";
  bool first = true;
  for (const auto& e : r.entries) {
    os << (first ? r.group : std::string(r.group.size(), ' ')) << "  "
       << (first ? order : std::string(order.size(), ' ')) << "  "
       << (first ? iso : std::string(iso.size(), ' ')) << "  " << e.label << " ("
       << e.order << ")  " << e.max_label << "  " << e.multiplicity << "\n";
    first = false;
  }
  if (r.entries.empty()) os << r.group << "  " << order << "  " << iso << "  (none)\n";
  os << "# mode " << r.mode << ", strategy " << r.strategy << ", pruned "
     << r.pruned_count << (r.conditional_on_data ? ", conditional-on-data" : "") << "\n";
  return os.str();
}

inline std::string render_machine(const ClassificationReport& r) {
  std::ostringstream os;
  os << "gelpair-report v1\n";
  os << "group " << r.group << "\n";
  os << "mode " << r.mode << "\n";
  os << "strategy " << r.strategy << "\n";
  os << "conditional-on-data " << (r.conditional_on_data ? "true" : "false") << "\n";
  os << "pruned " << r.pruned_count << "\n";
  for (const auto& n : r.notes) os << "note " << n << "\n";
  for (const auto& e : r.entries)
    os << "entry " << e.order << " " << e.multiplicity << " " << e.label << " "
       << e.max_label << "\n";
  os << "end\n";
  return os.str();
}

}  // namespace gelpair
