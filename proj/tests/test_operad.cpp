#include <gtest/gtest.h>

#include "dendro/error.hpp"
#include "dendro/operad.hpp"

using namespace dendro;

namespace {

const TreeVariant kOr = TreeVariant::kReducedOpen;

Tree binary_b() { return graft(Tree::corolla(2), 1, Tree::corolla(2)); }

std::vector<ColouredOperad> segal_fixtures() {
  return {comm_operad(), free_binary_operad(), diagonal_comm_operad(2), poset_operad(3), graded_comm_operad()};
}

// Double factorial (2n-3)!!, counted by brute force: attach leaf n to any of
// the 2n-3 edges of a tree on n-1 leaves.
int binary_tree_count(int n) { return n <= 2 ? 1 : (2 * n - 3) * binary_tree_count(n - 1); }

}  // namespace

TEST(Operad, FixturesSatisfyLaws) {
  for (const auto& p : segal_fixtures()) EXPECT_TRUE(check_operad_laws(p, 4)) << p.name;
  EXPECT_TRUE(check_operad_laws(chaotic_operad(2), 4));
}

TEST(Operad, FreeBinaryCounts) {
  auto p = free_binary_operad();
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(p.count(std::vector<int>(n, 0), 0), binary_tree_count(n)) << n;
  // Grafting two cherries at the two inputs gives distinct arity-4 trees.
  int a = p.compose({0, 0}, 0, 0, 1, {0, 0}, 0);
  int b = p.compose({0, 0, 0}, 0, a, 0, {0, 0}, 0);
  int c = p.compose({0, 0}, 0, 0, 0, {0, 0}, 0);
  EXPECT_NE(b, p.compose({0, 0, 0}, 0, c, 0, {0, 0}, 0));
}

TEST(Operad, NervesAreFunctorsAndSegal) {
  auto w = Truncation::by_degree(kOr, DegreeKind::kWeight, 6);
  for (const auto& p : segal_fixtures()) {
    auto x = materialize(*nerve_formula(p), w);
    auto f = check_functoriality(x);
    EXPECT_TRUE(f.ok) << p.name << ": " << f.failure;
    auto s = strict_segal_check(x, 6);
    EXPECT_TRUE(s.ok) << p.name << ": " << s.counterexample;
    EXPECT_GT(s.decompositions, 0);
  }
}

TEST(Operad, NerveValues) {
  auto w = Truncation::by_degree(kOr, DegreeKind::kWeight, 5);
  auto x = materialize(*nerve_formula(free_binary_operad()), w);
  EXPECT_EQ(x.values[w->index_of(Tree::corolla(3))].sizes[0], 3);
  EXPECT_EQ(x.values[w->index_of(binary_b())].sizes[0], 1);
  auto comm = materialize(*nerve_formula(comm_operad()), w);
  for (const auto& v : comm.values) EXPECT_EQ(v.sizes[0], 1);
  auto pos = materialize(*nerve_formula(poset_operad(3)), w);
  EXPECT_EQ(space_of_operations(pos, {1, 2}, 0).sizes[0], 1);
  EXPECT_EQ(space_of_operations(pos, {0, 1}, 2).sizes[0], 0);
  EXPECT_THROW(space_of_operations(pos, {0, 3}, 0), Error);
}

TEST(Operad, BinaryFixtureOnArityTwoTrees) {
  std::vector<Tree> trees{Tree::eta(), Tree::corolla(2), binary_b()};
  auto w = Truncation::from_trees(kOr, trees);
  auto x = materialize(*nerve_formula(binary_fixture_operad()), w);
  EXPECT_EQ(x.values[w->index_of(Tree::eta())].sizes[0], 2);
  EXPECT_EQ(x.values[w->index_of(Tree::corolla(2))].sizes[0], 5);
  EXPECT_TRUE(check_functoriality(x).ok);
}

TEST(Operad, DwyerKan) {
  auto comm = comm_operad();
  OperadMap id{&comm, &comm, {0}, [](const std::vector<int>&, int, int o) { return o; }};
  EXPECT_TRUE(dk_check(id, 4).equivalence());

  // Colour 1 of the chaotic operad is isomorphic to colour 0.
  auto chaos = chaotic_operad(2);
  auto one = chaotic_operad(1);
  OperadMap sub{&one, &chaos, {0}, [](const std::vector<int>&, int, int o) { return o; }};
  EXPECT_TRUE(dk_check(sub, 4).equivalence());

  auto diag = diagonal_comm_operad(2);
  OperadMap collapse{&diag, &comm, {0, 0}, [](const std::vector<int>&, int, int o) { return o; }};
  auto r = dk_check(collapse, 3);
  EXPECT_FALSE(r.equivalence());
  EXPECT_FALSE(r.fully_faithful);

  // Inclusion of one colour of the diagonal operad misses the other colour.
  OperadMap miss{&one, &diag, {0}, [](const std::vector<int>&, int, int o) { return o; }};
  auto m = dk_check(miss, 3);
  EXPECT_TRUE(m.fully_faithful);
  EXPECT_FALSE(m.essentially_surjective);
}
