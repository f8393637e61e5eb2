#pragma once

#include <vector>

#include "dendro/presheaf.hpp"

namespace dendro {

/// One stage E_n of the cellular normalization of the terminal presheaf:
/// a cell Ω[T] x Δ[m] is attached along every element of the joint matching
/// object of E_{n-1} at (T, m), for every |T| + m = n.
struct NormalizationStage {
  int n = 0;
  int cells = 0;
  LeanDSpace value;
  /// E_{n-1} -> E_n (from the empty presheaf when n = 0).
  DSpaceMap inclusion;
};

/// Stages 0..stages on the truncation; values are stored on levels
/// 0..level_cap and carry no information above it.
std::vector<NormalizationStage> normalization(TruncationPtr w, int stages, int level_cap);

/// X(T)_m -> joint matching object is surjective for every |T| + m <= n, m <= level_cap.
bool joint_matching_surjective(const LeanDSpace& x, int n, int level_cap);

/// The presheaf with empty values at every level up to level_cap.
LeanDSpace empty_presheaf(TruncationPtr w, int level_cap);
/// The unique map out of the empty presheaf.
DSpaceMap from_empty(const LeanDSpace& y);

}  // namespace dendro
