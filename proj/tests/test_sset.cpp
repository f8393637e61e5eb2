#include <gtest/gtest.h>

#include <random>

#include "dendro/error.hpp"
#include "dendro/sset.hpp"

using namespace dendro;

namespace {

// Oracle: all tuples of the product, filtered by every arrow constraint.
std::vector<std::vector<int>> brute_limit(const Diagram& d) {
  std::vector<std::vector<int>> out;
  const std::size_t n = d.sizes.size();
  std::vector<int> t(n, 0);
  for (int s : d.sizes)
    if (s == 0) return out;
  while (true) {
    bool ok = true;
    for (const auto& a : d.arrows) ok = ok && a.map[t[a.src]] == t[a.dst];
    if (ok) out.push_back(t);
    std::size_t i = n;
    while (i > 0 && ++t[i - 1] == d.sizes[i - 1]) t[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

Diagram random_diagram(std::mt19937& rng) {
  Diagram d;
  int objs = 1 + rng() % 4;
  for (int o = 0; o < objs; ++o) d.add_object(1 + rng() % 4);
  int arrows = rng() % 5;
  for (int a = 0; a < arrows; ++a) {
    int s = rng() % objs, t = rng() % objs;
    std::vector<int> m(d.sizes[s]);
    for (int& v : m) v = rng() % d.sizes[t];
    d.add_arrow(s, t, m);
  }
  return d;
}

// Vertex sequence of a simplex, via the vertex operators [0] -> [k].
std::vector<int> vertices(const SSet& x, int k, int e) {
  std::vector<int> out;
  for (int i = 0; i <= k; ++i) out.push_back(act(x, {i}, k, e));
  return out;
}

}  // namespace

TEST(FinSet, LimitExamples) {
  EXPECT_EQ(limit(Diagram{}).size(), 1);
  Diagram prod;
  prod.add_object(2);
  prod.add_object(3);
  EXPECT_EQ(limit(prod).size(), 6);
  Diagram cospan;
  cospan.add_object(2);
  cospan.add_object(2);
  cospan.add_object(1);
  cospan.add_arrow(0, 2, {0, 0});
  cospan.add_arrow(1, 2, {0, 0});
  EXPECT_EQ(limit(cospan).size(), 4);
}

TEST(FinSet, ColimitExamples) {
  Diagram disc;
  disc.add_object(2);
  disc.add_object(3);
  EXPECT_EQ(colimit(disc).size, 5);
  Diagram span;
  span.add_object(1);
  span.add_object(2);
  span.add_object(3);
  span.add_arrow(0, 1, {0});
  span.add_arrow(0, 2, {1});
  EXPECT_EQ(colimit(span).size, 4);
  Diagram coeq;
  coeq.add_object(2);
  coeq.add_object(2);
  coeq.add_arrow(0, 1, {0, 1});
  coeq.add_arrow(0, 1, {1, 0});
  EXPECT_EQ(colimit(coeq).size, 1);
}

TEST(FinSet, LimitMatchesBruteForce) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    Diagram d = random_diagram(rng);
    EXPECT_EQ(limit(d).tuples, brute_limit(d));
  }
}

TEST(FinSet, ColimitIsUniversal) {
  // Every cocone (maps from each object into a small set, compatible with
  // the arrows) factors uniquely through the colimit.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Diagram d = random_diagram(rng);
    Colimit c = colimit(d);
    for (int tries = 0; tries < 20; ++tries) {
      const int z = 1 + rng() % 3;
      std::vector<std::vector<int>> cocone(d.sizes.size());
      for (std::size_t o = 0; o < d.sizes.size(); ++o)
        for (int x = 0; x < d.sizes[o]; ++x) cocone[o].push_back(rng() % z);
      bool compatible = true;
      for (const auto& a : d.arrows)
        for (int x = 0; x < d.sizes[a.src]; ++x) compatible = compatible && cocone[a.src][x] == cocone[a.dst][a.map[x]];
      std::vector<int> induced(c.size, -1);
      bool factors = true;
      for (std::size_t o = 0; o < d.sizes.size(); ++o)
        for (int x = 0; x < d.sizes[o]; ++x) {
          int& slot = induced[c.injections[o][x]];
          if (slot >= 0 && slot != cocone[o][x]) factors = false;
          slot = cocone[o][x];
        }
      EXPECT_EQ(compatible, factors);
    }
  }
}

TEST(SSet, DeltaAndNerveCounts) {
  EXPECT_EQ(sset_eval(delta(1), 2), 4);
  EXPECT_EQ(sset_eval(delta(2), 3), 15);  // monotone [3] -> [2]
  EXPECT_EQ(sset_eval(point(), 5), 1);
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(sset_eval(nerve_groupoid(1), m), 1 << (m + 1));
  EXPECT_EQ(sset_eval(nerve_groupoid(2), 2), 27);
  EXPECT_EQ(sset_eval(nerve_groupoid(0), 3), 1);
  EXPECT_EQ(sset_eval(nerve_groupoid(1), 1), 4);
}

TEST(SSet, ExtensionsSatisfySimplicialIdentities) {
  for (const SSet& x : {delta(2), nerve_groupoid(1), eg(Group::symmetric(3)).x, power(delta(1), 2)}) {
    SSet y = extend(x, 4);
    EXPECT_TRUE(check_simplicial_identities(y));
  }
}

TEST(SSet, EvaluationAboveTruncationThrows) {
  SSet x = truncate(delta(1), 0);
  EXPECT_FALSE(x.coskeletal);
  EXPECT_THROW(sset_eval(x, 1), Error);
}

TEST(SSet, OperatorActionMatchesNerve) {
  // In the nerve of a poset a simplex is its vertex sequence and the
  // operator b acts by precomposition.
  SSet x = extend(delta(3), 4);
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (const auto& b : monotone_maps(n, m))
        for (int e = 0; e < x.sizes[m]; ++e) {
          auto v = vertices(x, m, e);
          std::vector<int> expect;
          for (int j : b) expect.push_back(v[j]);
          EXPECT_EQ(vertices(x, n, act(x, b, m, e)), expect);
        }
}

TEST(SSet, Coskeletality) {
  EXPECT_TRUE(is_n_coskeletal(nerve_groupoid(2), 2));
  // Chaotic groupoids are already 0-coskeletal.
  EXPECT_TRUE(is_n_coskeletal(nerve_groupoid(2), 0));
  EXPECT_TRUE(is_n_coskeletal(delta(2), 1));
  EXPECT_FALSE(is_n_coskeletal(delta(2), 0));
  EXPECT_TRUE(is_n_coskeletal(discrete(3), 1));
  EXPECT_FALSE(is_n_coskeletal(discrete(3), 0));
}

TEST(SSet, KanCheck) {
  for (int k = 0; k <= 2; ++k) EXPECT_TRUE(kan_check(nerve_groupoid(k), 4));
  EXPECT_FALSE(kan_check(delta(1), 2));
  EXPECT_TRUE(kan_check(point(), 3));
  EXPECT_TRUE(kan_check(eg(Group::symmetric(3)).x, 3));
}

TEST(SSet, Pi0) {
  EXPECT_EQ(pi0(point()).codomain, 1);
  EXPECT_EQ(pi0(discrete(2)).codomain, 2);
  EXPECT_EQ(pi0(eg(Group::symmetric(3)).x).codomain, 1);
  EXPECT_EQ(pi0(coproduct(delta(1), delta(2))).codomain, 2);
}

TEST(SSet, LiftingProperty) {
  SSet e = eg(Group::symmetric(2)).x;
  EXPECT_TRUE(rlp_check(to_point(e), e, point(), boundary_monos(3)));
  EXPECT_TRUE(rlp_check(identity_sset(delta(2)), delta(2), delta(2), boundary_monos(3)));
  EXPECT_FALSE(rlp_check(to_point(discrete(2)), discrete(2), point(), boundary_monos(1)));
  EXPECT_TRUE(rlp_check(to_point(delta(1)), delta(1), point(), boundary_monos(0)));
}

TEST(SSet, LimitOfSSetsIsSimplicial) {
  // Pullback Δ[1] x_{Δ[0]} Δ[1] = Δ[1] x Δ[1].
  std::vector<SSetArrow> arrows{{0, 2, to_point(delta(1))}, {1, 2, to_point(delta(1))}};
  auto lim = sset_limit({delta(1), delta(1), point()}, arrows);
  SSet y = extend(lim.value, 3);
  EXPECT_TRUE(check_simplicial_identities(y));
  SSet p = extend(product(delta(1), delta(1)), 3);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(y.sizes[k], p.sizes[k]);
  EXPECT_EQ(p.sizes[2], 16);
}

TEST(Group, EGProperties) {
  auto e2 = eg(Group::symmetric(2));
  EXPECT_EQ(e2.x.sizes[1], 4);
  EXPECT_TRUE(acts_freely(e2, 1));
  auto e3 = eg(Group::symmetric(3));
  EXPECT_EQ(e3.x.sizes[0], 6);
  EXPECT_TRUE(is_n_coskeletal(e3.x, 2));
  auto empty = empty_gsset(Group::symmetric(3));
  SSetMap from_empty{std::vector<std::vector<int>>(2)};
  EXPECT_TRUE(normal_mono_g(from_empty, empty, e3, 3));
  EXPECT_TRUE(normal_mono_g(identity_sset(e3.x), e3, e3, 3));
  auto pt = trivial_action(point(), Group::symmetric(2));
  EXPECT_FALSE(normal_mono_g(from_empty, empty_gsset(Group::symmetric(2)), pt, 1));
  EXPECT_EQ(eg(Group::trivial()).x.sizes[2], 1);
}

TEST(Group, NonEquivariantMapThrows) {
  auto e2 = eg(Group::symmetric(2));
  auto pt = trivial_action(discrete(2), Group::symmetric(2));
  // Send each vertex (g) to g; the action swaps vertices of EG but not of pt.
  SSetMap f{{{0, 1}}};
  EXPECT_THROW(normal_mono_g(f, e2, pt, 0), Error);
}
