#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dendro/error.hpp"
#include "dendro/filtration.hpp"
#include "dendro/operad.hpp"
#include "oracles.hpp"

using namespace dendro;

namespace {

const TreeVariant kOr = TreeVariant::kReducedOpen;

Tree c2_on_c3() { return graft(Tree::corolla(3), 1, Tree::corolla(2)); }

std::set<int> edge_set(const Subtree& s) { return {s.inclusion.begin(), s.inclusion.end()}; }

// Maximal admissible subtrees by exhaustive search.
std::set<std::set<int>> brute_max(const Tree& t, int n) {
  std::vector<std::set<int>> ok;
  for (const auto& s : subtrees(t))
    if (s.tree.max_arity() <= n) ok.push_back(edge_set(s));
  std::set<std::set<int>> out;
  for (const auto& a : ok) {
    bool maximal = true;
    for (const auto& b : ok)
      if (a != b && std::includes(b.begin(), b.end(), a.begin(), a.end())) maximal = false;
    if (maximal) out.insert(a);
  }
  return out;
}

std::set<std::set<int>> as_sets(const std::vector<Subtree>& pieces) {
  std::set<std::set<int>> out;
  for (const auto& p : pieces) out.insert(edge_set(p));
  return out;
}

}  // namespace

TEST(Filtration, AritySubcategories) {
  EXPECT_EQ(arity_window({1, false}, 9)->size(), 1);
  auto w1p = arity_window({1, true}, 9);
  EXPECT_EQ(w1p->size(), 2);
  EXPECT_GE(w1p->index_of(Tree::corolla(2)), 0);
  auto w2p = arity_window({2, true}, 5);
  EXPECT_GE(w2p->index_of(Tree::corolla(3)), 0);
  EXPECT_LT(w2p->index_of(Tree::corolla(4)), 0);
  EXPECT_FALSE(AritySubcat({2, false}).contains(Tree::corolla(3)));
  EXPECT_TRUE(AritySubcat({2, true}).contains(Tree::corolla(3)));
  EXPECT_FALSE(AritySubcat({2, true}).contains(c2_on_c3()));
}

TEST(Filtration, RestrictComposes) {
  auto w = Truncation::by_degree(kOr, DegreeKind::kWeight, 6);
  auto x = materialize(*representable_formula(Tree::corolla(3)), w);
  auto r2 = restrict(x, {2, false});
  EXPECT_EQ(r2.values[r2.trunc->index_of(Tree::eta())].sizes[0], 4);
  auto direct = restrict(x, {1, false});
  auto twice = restrict(restrict(x, {2, true}), {1, false});
  ASSERT_EQ(direct.trunc->size(), twice.trunc->size());
  EXPECT_EQ(direct.values, twice.values);
  EXPECT_THROW(restrict(r2, {3, true}), Error);
}

TEST(Filtration, MaxSubtreesAgreeWithExhaustiveSearch) {
  for (const auto& t : enumerate_representatives(kOr, DegreeKind::kWeight, 8))
    for (int n = 1; n <= 4; ++n) {
      auto d = max_subtrees(t, n);
      EXPECT_EQ(as_sets(d.pieces), brute_max(t, n)) << canonical_code(t).bytes << " n=" << n;
      // Pieces are edge-disjoint and cover t.
      std::vector<int> hits(t.num_edges(), 0);
      for (const auto& p : d.pieces)
        for (int e : p.inclusion) ++hits[e];
      EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
  EXPECT_EQ(max_subtrees(Tree::corolla(3), 2).pieces.size(), 4u);
  EXPECT_EQ(max_subtrees(Tree::corolla(3), 3).pieces.size(), 1u);
  auto d = max_subtrees(c2_on_c3(), 2);
  ASSERT_EQ(d.pieces.size(), 4u);
  EXPECT_EQ(std::count_if(d.pieces.begin(), d.pieces.end(), [](const Subtree& p) { return p.tree.num_vertices() == 1; }),
            1);
}

TEST(Filtration, CutDecomposition) {
  auto cut = cut_decomposition(c2_on_c3(), 3);
  ASSERT_EQ(cut.cut_edges, std::vector<int>({1}));
  ASSERT_EQ(cut.pieces.size(), 2u);
  EXPECT_TRUE(isomorphic(cut.pieces[0].tree, Tree::corolla(3)));
  EXPECT_TRUE(isomorphic(cut.pieces[1].tree, Tree::corolla(2)));
  EXPECT_EQ(cut_decomposition(Tree::corolla(3), 3).pieces.size(), 1u);
  EXPECT_EQ(cut_decomposition(c2_on_c3(), 4).pieces.size(), 1u);
  EXPECT_THROW(cut_decomposition(c2_on_c3(), 2), Error);

  // Maps from Ω_or^(2)+ factor through exactly one piece, except edges in E.
  for (const auto& t : enumerate_representatives(kOr, DegreeKind::kWeight, 7)) {
    if (t.max_arity() > 3) continue;
    auto cd = cut_decomposition(t, 3);
    auto win = slice_window({2, true}, static_cast<int>(t.leaves().size()));
    for (int i = 0; i < win->size(); ++i)
      for (const auto& f : hom_set(win->object(i), t, 20)) {
        std::set<int> img(f.edge_map.begin(), f.edge_map.end());
        int through = 0;
        for (const auto& p : cd.pieces) {
          auto es = edge_set(p);
          through += std::includes(es.begin(), es.end(), img.begin(), img.end());
        }
        bool cut_edge = img.size() == 1 && std::count(cd.cut_edges.begin(), cd.cut_edges.end(), *img.begin());
        EXPECT_EQ(through, cut_edge ? 2 : 1) << describe(f);
      }
  }
}

TEST(Filtration, RanWExample) {
  // X(η) has 2 points and X(C_2) has 5.
  auto p = binary_fixture_operad();
  auto x = materialize(*nerve_formula(p), slice_window({2, false}, 4));
  auto r = ran_w_compare(x, 2, c2_on_c3());
  EXPECT_EQ(r.closed_form.sizes[0], 40);
  EXPECT_EQ(r.brute.sizes[0], 40);
  EXPECT_TRUE(r.iso);
  EXPECT_EQ(ran_w(x, 2, Tree::corolla(2), KanMode::kBrute), x.values[x.trunc->index_of(Tree::corolla(2))]);
  auto one = materialize(*terminal_formula(), slice_window({2, false}, 4));
  EXPECT_EQ(ran_w(one, 2, c2_on_c3(), KanMode::kClosedForm).sizes[0], 1);
  EXPECT_THROW(ran_w(one, 3, c2_on_c3(), KanMode::kBrute), Error);
}

TEST(Filtration, RanWClosedFormMatchesBruteForce) {
  std::mt19937 rng(21);
  for (int n : {2, 3}) {
    auto win = slice_window({n, false}, 5);
    for (int trial = 0; trial < 2; ++trial) {
      auto f = random_formula(rng, 1);
      auto x = materialize(*f, win);
      for (const auto& t : enumerate_representatives(kOr, DegreeKind::kWeight, 6)) {
        auto r = ran_w_compare(x, n, t);
        EXPECT_TRUE(r.iso) << f->name() << " at " << canonical_code(t).bytes << " n=" << n;
      }
    }
  }
}

TEST(Filtration, RanVClosedFormMatchesBruteForce) {
  std::mt19937 rng(22);
  auto win = slice_window({2, true}, 5);
  for (int trial = 0; trial < 2; ++trial) {
    auto f = random_formula(rng, 1);
    auto x = materialize(*f, win);
    for (const auto& t : enumerate_representatives(kOr, DegreeKind::kWeight, 6)) {
      if (t.max_arity() > 3) continue;
      auto r = ran_v_compare(x, 3, t);
      EXPECT_TRUE(r.iso) << f->name() << " at " << canonical_code(t).bytes;
    }
    EXPECT_EQ(ran_v(x, 3, Tree::corolla(3), KanMode::kClosedForm), x.values[win->index_of(Tree::corolla(3))]);
  }
}

TEST(Filtration, CounitAndTowerConvergence) {
  std::mt19937 rng(23);
  auto big = Truncation::by_degree(kOr, DegreeKind::kWeight, 6);
  for (int trial = 0; trial < 3; ++trial) {
    auto x = materialize(*random_formula(rng, 1), big);
    for (int n : {2, 3}) {
      auto xn = restrict(x, {n, false});
      auto ext = kan_extend(xn, big);
      EXPECT_EQ(restrict(ext, {n, false}).values, xn.values);
      for (int i = 0; i < big->size(); ++i) {
        const Tree& t = big->object(i);
        // Weight <= 6 holds every slice only below five leaves.
        if (t.leaves().size() > 4) continue;
        EXPECT_EQ(ext.values[i].sizes, ran_w(xn, n, t, KanMode::kClosedForm).sizes);
        if (t.max_arity() <= n) EXPECT_EQ(ext.values[i], x.values[i]);
      }
    }
  }
}

TEST(Filtration, ExtendAtCorolla) {
  auto win = slice_window({2, false}, 3);
  auto one = materialize(*terminal_formula(), win);
  GSSet lat = corolla_latching(one, 3, 1);
  ASSERT_EQ(lat.x.sizes[0], 3);

  // z = latching object, attach = identity.
  auto e = extend_at_corolla(one, 3, lat, identity_sset(lat.x));
  EXPECT_TRUE(check_functoriality(e).ok);
  auto back = restrict(e, {2, false});
  for (int i = 0; i < back.trunc->size(); ++i) EXPECT_EQ(back.values[i].sizes, one.values[i].sizes);
  auto l2 = latching(e, Tree::corolla(3), ReedySystem::kOuter, 1);
  EXPECT_EQ(l2.colimit.value.sizes, lat.x.sizes);

  // z = point: the forced map.
  GSSet pt = trivial_action(discrete(1), Group::symmetric(3));
  EXPECT_NO_THROW(extend_at_corolla(one, 3, pt, to_point(lat.x)));

  // Trivial action on a copy of the latching object is not equivariant.
  GSSet flat = trivial_action(lat.x, Group::symmetric(3));
  EXPECT_THROW(extend_at_corolla(one, 3, flat, identity_sset(lat.x)), Error);

  // X(η) a point, z arbitrary with a compatible attach.
  auto d = materialize(*decorated_formula(1, {CommMonoid::Kind::kCyclic, 2}), win);
  GSSet ld = corolla_latching(d, 3, 1);
  GSSet z = trivial_action(discrete(2), Group::symmetric(3));
  SSetMap to0{{std::vector<int>(ld.x.sizes[0], 0), std::vector<int>(ld.x.sizes[1], 0)}};
  auto ed = extend_at_corolla(d, 3, z, to0);
  EXPECT_EQ(ed.values[ed.trunc->index_of(Tree::corolla(3))].sizes[0], 2);

  // X(η) not a point needs a matching map.
  auto two = materialize(*edge_power_formula(discrete(2)), win);
  GSSet l3 = corolla_latching(two, 3, 1);
  EXPECT_THROW(extend_at_corolla(two, 3, l3, identity_sset(l3.x)), Error);
}

TEST(Filtration, ExtendWithMatchingMap) {
  // Extending X(T) = 2^{E(T)} by its own value at C_3 recovers the presheaf.
  auto win = slice_window({2, false}, 3);
  auto full = materialize(*edge_power_formula(discrete(2)), slice_window({2, true}, 3));
  auto x = restrict(full, {2, false});
  const int c3 = full.trunc->index_of(Tree::corolla(3));
  const SSet& v = full.values[c3];
  GSSet lat = corolla_latching(x, 3, 1);
  // Permutations act on 2^{edges} through X(θ).
  const Group g = Group::symmetric(3);
  GSSet z{truncate(v, 1), g, {}};
  const Tree c = full.trunc->object(c3);
  const auto leaves = c.leaves();
  z.action.assign(2, std::vector<std::vector<int>>(g.order));
  for (int h = 0; h < g.order; ++h) {
    std::vector<int> em(c.num_edges());
    em[c.root()] = c.root();
    const auto& p = g.perms[g.inv[h]];
    for (int q = 0; q < 3; ++q) em[leaves[q]] = leaves[p[q]];
    const auto& act = full.action(c3, c3, full.trunc->arrow_index(c3, c3, em));
    for (int k = 0; k <= 1; ++k) z.action[k][h] = act.levels[k];
  }
  // Attach through the comparison L -> X(C_3); match as the tuple of edge values.
  auto lfull = latching(full, c, ReedySystem::kOuter, 1);
  ASSERT_TRUE(lfull.comparison.has_value());
  auto m = matching(full, c, ReedySystem::kOuter);
  ASSERT_TRUE(m.comparison.has_value());
  SSetMap attach = *lfull.comparison, match = *m.comparison;
  attach.levels.resize(2);
  match.levels.resize(2);
  auto e = extend_at_corolla(x, 3, z, attach, match);
  ASSERT_EQ(e.trunc->size(), full.trunc->size());
  for (int i = 0; i < e.trunc->size(); ++i) EXPECT_EQ(e.values[i].sizes[0], full.values[i].sizes[0]);
  (void)lat;
}

TEST(Filtration, DownwardsClosed) {
  std::mt19937 rng(24);
  auto w = Truncation::by_degree(kOr, DegreeKind::kWeight, 5);
  for (int trial = 0; trial < 4; ++trial) {
    auto x = materialize(*oracle::small_random_formula(rng, *w), w);
    for (AritySubcat sub : {AritySubcat{2, false}, AritySubcat{2, true}}) {
      auto r = downwards_closed_check(sub, x);
      EXPECT_TRUE(r.ok()) << sub.name() << ": " << r.detail;
      EXPECT_GT(r.objects_checked, 0);
    }
  }
  auto small = Truncation::from_trees(kOr, {Tree::eta(), Tree::corolla(2), graft(Tree::corolla(2), 1, Tree::corolla(2))});
  auto x = materialize(*edge_power_formula(discrete(2)), small);
  auto no_eta = Truncation::from_trees(kOr, {Tree::corolla(2), graft(Tree::corolla(2), 1, Tree::corolla(2))});
  auto r = downwards_closed_check(no_eta, x);
  EXPECT_FALSE(r.definitional);
  EXPECT_FALSE(r.matching_iso);
  EXPECT_TRUE(downwards_closed_check(AritySubcat{2, false}, materialize(*terminal_formula(), small)).ok());
}
