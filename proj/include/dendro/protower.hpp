#pragma once

#include <string>
#include <vector>

#include "dendro/presheaf.hpp"

namespace dendro {

/// A finite prefix of an ℕ-indexed tower; bonds[k]: stages[k+1] -> stages[k].
/// All stages live on the same objects, in the same order.
struct Tower {
  std::vector<LeanDSpace> stages;
  std::vector<DSpaceMap> bonds;

  int depth() const { return static_cast<int>(stages.size()) - 1; }
};
/// Bonds are natural.
bool check_tower(const Tower& t);
/// The composite bond stages[j] -> stages[i] for j >= i.
DSpaceMap bond_between(const Tower& t, int j, int i);
/// The constant tower on x.
Tower constant_tower(const LeanDSpace& x, int depth);

/// Stages cosk_0 x, ..., cosk_depth x with the restriction bonds and the
/// units x -> cosk_k x. Throws kNotDegreewiseFinite when a value of x is
/// not coskeletal (its higher levels are unknown).
struct CompletionTower {
  Tower tower;
  std::vector<DSpaceMap> units;
};
CompletionTower completion_tower(const LeanDSpace& x, int depth);
/// Least d such that the unit x -> cosk_k x is an isomorphism for every
/// d <= k <= depth, or -1.
int stabilization_index(const CompletionTower& c, const LeanDSpace& x);

/// Levelwise maps f_k: X_k -> Y_k.
struct TowerMap {
  std::vector<DSpaceMap> maps;
};
/// Every f_k is natural and bond_Y o f_{k+1} = f_k o bond_X.
bool is_tower_map(const TowerMap& f, const Tower& x, const Tower& y);

/// Injective with free Aut(t)-action on the complement at every (t, m) with
/// |t| + m <= n. Throws kWindowTooSmall unless the truncation holds every
/// tree of size <= n.
bool is_n_normal(const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y, int n);

/// witness[n] is the least stage index from which every later stage of the
/// prefix is n-normal, or -1 when the last stage is not.
struct IncreasingNormality {
  bool ok = true;
  std::vector<int> witness;
};
IncreasingNormality is_increasingly_normal(const TowerMap& f, const Tower& x, const Tower& y, int max_n);

/// A family g_k: X_{θ(k)} -> Y_{ν(k)} with θ, ν strictly increasing,
/// strictified along ρ = max(θ, ν): the new source stage k is X_{ρ(k)}, the
/// new target stage k is Y_{ν(k)}, and f_k = g_k o (bond X_{ρ(k)} -> X_{θ(k)}).
struct Reindexed {
  Tower source;
  Tower target;
  TowerMap map;
};
/// Throws kNonMonotoneIndexing when θ or ν is not strictly increasing and
/// kIncompatibleFamily when a square of the family fails to commute.
Reindexed reindex_level_represent(const Tower& x, const Tower& y, const std::vector<int>& theta,
                                  const std::vector<int>& nu, const std::vector<DSpaceMap>& family);

}  // namespace dendro
