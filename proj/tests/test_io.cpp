#include <gtest/gtest.h>

#include "dendro/error.hpp"
#include "dendro/io.hpp"

using namespace dendro;

namespace {

const TreeVariant kOr = TreeVariant::kReducedOpen;

bool same_presheaf(const LeanDSpace& a, const LeanDSpace& b) {
  if (a.trunc->size() != b.trunc->size()) return false;
  for (int i = 0; i < a.trunc->size(); ++i) {
    if (a.trunc->code(i).bytes != b.trunc->code(i).bytes) return false;
    if (to_json(a.values[i]) != to_json(b.values[i])) return false;
  }
  return a.actions == b.actions;
}

}  // namespace

TEST(Io, TreeRoundTrip) {
  Tree b = graft(Tree::corolla(2), 1, Tree::corolla(2));
  Tree back = tree_from_json(to_json(b));
  EXPECT_EQ(canonical_code(back), canonical_code(b));
  EXPECT_EQ(back.num_edges(), b.num_edges());
  EXPECT_THROW(tree_from_json(Json::parse(R"({"variant":"or","root":0})")), Error);
  EXPECT_THROW(tree_from_json(Json::parse(R"({"variant":"or","root":0,"edges":[1],"vertices":[]})")), Error);
}

TEST(Io, MapRoundTrip) {
  auto w = Truncation::by_degree(kOr, DegreeKind::kWeight, 4);
  for (int i = 0; i < w->size(); ++i)
    for (int j = 0; j < w->size(); ++j)
      for (const auto& f : w->hom(i, j)) {
        Json js = to_json(f);
        EXPECT_TRUE(js.at("vertex_map").is_object());
        TreeMap g = map_from_json(js);
        EXPECT_EQ(g.edge_map, f.edge_map);
      }
}

TEST(Io, PresheafAndTowerRoundTrip) {
  auto w = Truncation::by_degree(kOr, DegreeKind::kWeight, 4);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    auto x = materialize(*random_formula(rng, 1), w);
    auto y = presheaf_from_json(Json::parse(to_json(x).dump()));
    EXPECT_TRUE(same_presheaf(x, y));
    EXPECT_TRUE(check_functoriality(y).ok);
  }
  auto x = materialize(*representable_formula(Tree::corolla(2)), w);
  Tower t = constant_tower(x, 2);
  Tower back = tower_from_json(to_json(t));
  ASSERT_EQ(back.depth(), 2);
  EXPECT_TRUE(check_tower(back));
  EXPECT_TRUE(same_presheaf(back.stages[1], x));

  Json bad = to_json(x);
  bad["values"].erase(bad["values"].begin());
  EXPECT_THROW(presheaf_from_json(bad), Error);
}

TEST(Io, SSetRejectsBrokenInput) {
  Json js = to_json(delta(1));
  EXPECT_TRUE(check_simplicial_identities(sset_from_json(js)));
  Json out_of_range = js;
  out_of_range["d"]["1"][0][0] = 7;
  EXPECT_THROW(sset_from_json(out_of_range), Error);
  // d_0 s_0 must be the identity.
  Json broken = js;
  const int v = broken["s"]["0"][0][0].get<int>();
  broken["d"]["1"][0][v] = 1 - broken["d"]["1"][0][v].get<int>();
  EXPECT_THROW(sset_from_json(broken), Error);
}

TEST(Io, Dot) {
  std::string dot = to_dot(Tree::corolla(0, TreeVariant::kGeneral));
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("square"), std::string::npos);
}
