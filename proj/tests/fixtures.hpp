#pragma once

// Presheaves and towers with hand-derived coskeletal degrees and normality
// defects, shared by the unit tests and the acceptance gate.

#include <string>
#include <vector>

#include "dendro/filtration.hpp"
#include "dendro/normalization.hpp"
#include "dendro/operad.hpp"
#include "dendro/protower.hpp"

namespace fixture {

using namespace dendro;

struct TowerFixture {
  std::string name;
  LeanDSpace x;
  int degree = 0;  // expected stabilization index of the completion tower
  int depth = 0;   // materialized prefix
};

inline std::vector<TowerFixture> tower_fixtures() {
  const TreeVariant v = TreeVariant::kReducedOpen;
  auto w3 = Truncation::by_degree(v, DegreeKind::kWeight, 3);  // η, C_2
  auto w4 = Truncation::by_degree(v, DegreeKind::kWeight, 4);  // η, C_2, B
  std::vector<TowerFixture> out;
  // Chaotic values are 0-coskeletal; discrete values need level 1 at η.
  out.push_back({"terminal", materialize(*terminal_formula(), w4), 0, 2});
  out.push_back({"2^E", materialize(*edge_power_formula(discrete(2)), w4), 1, 3});
  out.push_back({"3^E", materialize(*edge_power_formula(discrete(3)), w4), 1, 3});
  out.push_back({"Δ[1]^E", materialize(*edge_power_formula(delta(1)), w3), 1, 3});
  out.push_back({"EΣ_2^E", materialize(*edge_power_formula(eg(Group::symmetric(2)).x), w3), 0, 2});
  out.push_back({"G[1]^E", materialize(*edge_power_formula(nerve_groupoid(1)), w3), 0, 2});
  out.push_back({"N(Comm)", materialize(*nerve_formula(comm_operad()), w4), 0, 2});
  // Vertex decorations on C_2 are pinned down only by (C_2, level 1).
  auto dec = materialize(*decorated_formula(2, {CommMonoid::Kind::kCyclic, 2}),
                         Truncation::from_trees(v, {Tree::eta(), Tree::corolla(2)}));
  out.push_back({"Ran(C^E x D^V)", kan_extend(dec, w4), 4, 5});
  // Maps are determined by their edges, so (C_2, level 0) suffices.
  out.push_back({"Ω[C_2]", materialize(*representable_formula(Tree::corolla(2)), w4), 3, 4});
  out.push_back({"2^E x Δ[1]^E",
                 materialize(*product_formula({edge_power_formula(discrete(2)), edge_power_formula(delta(1))}), w3), 1,
                 3});
  return out;
}

/// Stage k: X(η) = *, X(C_j) = EΣ_j for j < k and * for j >= k, on the
/// corollas C_2..C_4 (all trees of size <= 5). The Σ_j fixed point at C_j
/// makes stage k k-normal but not (k+1)-normal for 2 <= k <= 4.
inline LeanDSpace staircase_stage(int k) {
  const int cap = 2;
  LeanDSpace x = at_level(materialize(*terminal_formula(), Truncation::from_trees(TreeVariant::kReducedOpen, {Tree::eta()})), cap);
  for (int j = 2; j <= 4; ++j) {
    const Group g = Group::symmetric(j);
    GSSet z = j < k ? eg(g) : trivial_action(extend(point(), cap), g);
    SSetMap attach{std::vector<std::vector<int>>(cap + 1)};
    x = extend_at_corolla(x, j, z, attach);
  }
  return x;
}

struct Staircase {
  Tower source;
  Tower target;
  TowerMap map;
};

/// ∅ -> staircase_stage(k), k = 0..depth.
inline Staircase staircase(int depth) {
  Staircase s;
  for (int k = 0; k <= depth; ++k) s.target.stages.push_back(staircase_stage(k));
  const auto& w = *s.target.stages[0].trunc;
  for (int k = 0; k < depth; ++k) {
    DSpaceMap b = identity_dspace(s.target.stages[k + 1]);
    if (k >= 2 && k <= 4) {
      const int c = w.index_of(Tree::corolla(k));
      b.components[c] = to_point(s.target.stages[k + 1].values[c]);
    }
    s.target.bonds.push_back(std::move(b));
  }
  LeanDSpace empty = empty_presheaf(s.target.stages[0].trunc, 2);
  s.source = constant_tower(empty, depth);
  for (const auto& y : s.target.stages) s.map.maps.push_back(from_empty(y));
  return s;
}

}  // namespace fixture
