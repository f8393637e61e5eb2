#include <gtest/gtest.h>

#include "dendro/error.hpp"
#include "dendro/protower.hpp"
#include "fixtures.hpp"

using namespace dendro;

namespace {

const TreeVariant kOr = TreeVariant::kReducedOpen;

TruncationPtr size5() { return Truncation::by_degree(kOr, DegreeKind::kSize, 5); }

// Swap 0 and 1 in every coordinate of 2^E.
DSpaceMap flip(const LeanDSpace& x) {
  DSpaceMap f;
  for (const auto& v : x.values) {
    SSetMap c;
    for (int l = 0; l <= v.trunc; ++l) {
      std::vector<int> lv(v.sizes[l]);
      for (int e = 0; e < v.sizes[l]; ++e) lv[e] = v.sizes[l] - 1 - e;
      c.levels.push_back(std::move(lv));
    }
    f.components.push_back(std::move(c));
  }
  return f;
}

}  // namespace

TEST(Protower, CompletionTowersStabilizeAtTheCoskeletalDegree) {
  for (const auto& fx : fixture::tower_fixtures()) {
    auto ct = completion_tower(fx.x, fx.depth);
    EXPECT_TRUE(check_tower(ct.tower)) << fx.name;
    EXPECT_EQ(stabilization_index(ct, fx.x), fx.degree) << fx.name;
    for (int k = fx.degree; k < fx.depth; ++k)
      EXPECT_TRUE(is_iso(ct.tower.bonds[k], ct.tower.stages[k + 1], ct.tower.stages[k], std::max(k + 1, 2))) << fx.name;
  }
}

TEST(Protower, CompletionNeedsKnownLevels) {
  auto w = size5();
  auto one = materialize(*terminal_formula(), w);
  auto cut = one;
  cut.values[0] = truncate(extend(cut.values[0], 2), 1);
  EXPECT_THROW(completion_tower(cut, 2), Error);
  auto ct = completion_tower(one, 2);
  for (const auto& s : ct.tower.stages) EXPECT_TRUE(is_iso(identity_dspace(s), s, one, 2));
}

TEST(Protower, NNormal) {
  auto w = size5();
  auto empty = empty_presheaf(w, 2);
  auto one = materialize(*terminal_formula(), w);
  auto rep = materialize(*representable_formula(Tree::corolla(2)), w);
  for (int n = 0; n <= 5; ++n) {
    EXPECT_TRUE(is_n_normal(identity_dspace(rep), rep, rep, n));
    EXPECT_TRUE(is_n_normal(from_empty(rep), empty, rep, n));
    EXPECT_EQ(is_n_normal(from_empty(one), empty, one, n), n < 3) << n;
  }
  EXPECT_THROW(is_n_normal(from_empty(one), empty, one, 6), Error);
  auto w4 = Truncation::by_degree(kOr, DegreeKind::kWeight, 4);
  auto one4 = materialize(*terminal_formula(), w4);
  EXPECT_TRUE(is_n_normal(identity_dspace(one4), one4, one4, 3));
  EXPECT_THROW(is_n_normal(identity_dspace(one4), one4, one4, 4), Error);
}

TEST(Protower, IncreasinglyNormal) {
  auto w = size5();
  auto empty = empty_presheaf(w, 2);
  auto rep = materialize(*representable_formula(Tree::corolla(2)), w);
  auto src = constant_tower(empty, 3), tgt = constant_tower(rep, 3);
  TowerMap f{std::vector<DSpaceMap>(4, from_empty(rep))};
  ASSERT_TRUE(is_tower_map(f, src, tgt));
  auto r = is_increasingly_normal(f, src, tgt, 5);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.witness, std::vector<int>(6, 0));

  auto one = materialize(*terminal_formula(), w);
  auto bad = is_increasingly_normal(TowerMap{std::vector<DSpaceMap>(4, from_empty(one))}, src, constant_tower(one, 3), 5);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.witness, std::vector<int>({0, 0, 0, -1, -1, -1}));

  auto s = fixture::staircase(6);
  ASSERT_TRUE(check_tower(s.target));
  ASSERT_TRUE(is_tower_map(s.map, s.source, s.target));
  for (int k = 2; k <= 4; ++k) {
    EXPECT_TRUE(is_n_normal(s.map.maps[k], s.source.stages[k], s.target.stages[k], k));
    EXPECT_FALSE(is_n_normal(s.map.maps[k], s.source.stages[k], s.target.stages[k], k + 1));
  }
  auto st = is_increasingly_normal(s.map, s.source, s.target, 5);
  EXPECT_TRUE(st.ok);
  EXPECT_EQ(st.witness, std::vector<int>({0, 0, 0, 3, 4, 5}));
}

TEST(Protower, Reindexing) {
  auto fx = fixture::tower_fixtures()[1];  // 2^E
  auto ct = completion_tower(fx.x, 3);
  const Tower& x = ct.tower;
  std::vector<DSpaceMap> ids;
  for (const auto& s : x.stages) ids.push_back(identity_dspace(s));
  auto same = reindex_level_represent(x, x, {0, 1, 2, 3}, {0, 1, 2, 3}, ids);
  EXPECT_TRUE(is_tower_map(same.map, same.source, same.target));
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(same.source.stages[k].values, x.stages[k].values);

  // Lag by one on the source: X_{k+1} -> X_k.
  std::vector<DSpaceMap> lag(x.bonds.begin(), x.bonds.end());
  auto r = reindex_level_represent(x, x, {1, 2, 3}, {0, 1, 2}, lag);
  EXPECT_TRUE(is_tower_map(r.map, r.source, r.target));
  EXPECT_TRUE(check_tower(r.source));
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(r.source.stages[k].values, x.stages[k + 1].values);
    EXPECT_EQ(r.target.stages[k].values, x.stages[k].values);
  }

  EXPECT_THROW(reindex_level_represent(x, x, {1, 1, 2}, {0, 1, 2}, lag), Error);
  auto c = constant_tower(fx.x, 2);
  DSpaceMap sw = flip(fx.x);
  ASSERT_TRUE(is_natural(sw, fx.x, fx.x));
  try {
    reindex_level_represent(c, c, {0, 1}, {0, 1}, {identity_dspace(fx.x), sw});
    ADD_FAILURE() << "incompatible family accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIncompatibleFamily);
  }
}
