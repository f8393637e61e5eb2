#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dendro/presheaf.hpp"

namespace dendro {

/// The full subcategory of reduced-open trees with every vertex of arity
/// <= n, together with C_{n+1} when `plus` is set.
struct AritySubcat {
  int n = 1;
  bool plus = false;

  bool contains(const Tree& t) const;
  std::string name() const;
};

/// Objects of `sub` with weight <= weight_bound (and at most max_leaves
/// leaves when max_leaves >= 0). C_{n+1} is included for the plus case
/// whatever its weight.
TruncationPtr arity_window(const AritySubcat& sub, int weight_bound, int max_leaves = -1);

/// Every object of `sub` that can map into a tree with `leaves` leaves.
TruncationPtr slice_window(const AritySubcat& sub, int leaves);

/// Restriction to the objects of x.trunc lying in sub. Throws
/// kWindowTooSmall when sub is a plus category and C_{n+1} is missing.
LeanDSpace restrict(const LeanDSpace& x, const AritySubcat& sub);

/// Max_(n)(t): the maximal subtrees of t whose vertices all have arity <= n.
struct MaxDecomposition {
  std::vector<Subtree> pieces;
};
MaxDecomposition max_subtrees(const Tree& t, int n);

/// t cut at every inner edge touching a vertex with exactly n inputs.
/// pieces[i] has root edge roots[i]; roots[0] is the root of t.
struct CutDecomposition {
  std::vector<int> cut_edges;
  std::vector<int> roots;
  std::vector<Subtree> pieces;
};
/// Throws kWrongSubcategory when t has a vertex of arity > n.
CutDecomposition cut_decomposition(const Tree& t, int n);

enum class KanMode { kClosedForm, kBrute, kBoth };
KanMode parse_kan_mode(std::string_view s);

/// Both computations and the comparison brute -> closed form, levelwise.
struct KanResult {
  SSet closed_form;
  SSet brute;
  SSetMap witness;
  bool iso = false;
};

/// (w_n* x)(t). Brute force is the limit over Ω_or^(n)/t; x.trunc must hold
/// every object of Ω_or^(n) with at most as many leaves as t.
SSet ran_w(const LeanDSpace& x, int n, const Tree& t, KanMode mode);
KanResult ran_w_compare(const LeanDSpace& x, int n, const Tree& t);

/// (v_n* x)(t) for t in Ω_or^(n); x lives on Ω_or^(n-1)+.
SSet ran_v(const LeanDSpace& x, int n, const Tree& t, KanMode mode);
KanResult ran_v_compare(const LeanDSpace& x, int n, const Tree& t);

/// The latching object of x at C_n (outer structure) with the induced right
/// Σ_n-action. A permutation g acts as X(θ) for the automorphism θ with
/// leaf permutation g^{-1}.
GSSet corolla_latching(const LeanDSpace& x, int n, int level_cap);

/// Extends x (on a window of Ω_or^(n-1)) by the value z at C_n. `attach`
/// is a map from corolla_latching(x, n, z.x.trunc) to z; `match` sends z to
/// the matching object X(η)^{n+1}, one factor per edge of C_n, and may be
/// omitted when X(η) is a point. Throws kIncompatibleAttach when the result
/// is not a functor.
LeanDSpace extend_at_corolla(const LeanDSpace& x, int n, const GSSet& z, const SSetMap& attach,
                             const std::optional<SSetMap>& match = std::nullopt);

struct DownwardsReport {
  bool definitional = true;
  bool latching_iso = true;
  bool matching_iso = true;
  int objects_checked = 0;
  std::string detail;
  bool ok() const { return definitional && latching_iso && matching_iso; }
};
/// Checks that positives into and negatives out of objects of `sub` stay in
/// sub, and that restriction to sub preserves latching and matching
/// objects (outer structure) on levels 0..level.
DownwardsReport downwards_closed_check(TruncationPtr sub, const LeanDSpace& x, int level = 1);
DownwardsReport downwards_closed_check(const AritySubcat& sub, const LeanDSpace& x, int level = 1);

}  // namespace dendro
