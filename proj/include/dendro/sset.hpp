#pragma once

#include <cstddef>
#include <vector>

#include "dendro/finset.hpp"

namespace dendro {

/// A finite simplicial set stored on levels 0..trunc. When `coskeletal` is
/// set, level m > trunc is the set of compatible boundary families in level
/// m-1 (the coskeletal extension); otherwise nothing is known above trunc.
struct SSet {
  int trunc = 0;
  bool coskeletal = true;
  std::vector<int> sizes;
  /// d[k][i][x] = d_i x for x in X_k, 1 <= k <= trunc (d[0] is empty).
  std::vector<std::vector<std::vector<int>>> d;
  /// s[k][i][x] = s_i x for x in X_k, 0 <= k < trunc.
  std::vector<std::vector<std::vector<int>>> s;

  int size(int k) const { return sizes[k]; }
  int face(int k, int i, int x) const { return d[k][i][x]; }
  int degen(int k, int i, int x) const { return s[k][i][x]; }
  bool operator==(const SSet&) const = default;
};

/// Levels 0..m stored; computes coskeletal levels as needed.
/// Throws kEvaluationAboveTruncation when m > trunc and x is not coskeletal.
SSet extend(const SSet& x, int m);
/// Cardinality of X_m.
int sset_eval(const SSet& x, int m);
/// Forget levels above m; the result is marked non-coskeletal unless m >= x.trunc.
SSet truncate(const SSet& x, int m);

bool check_simplicial_identities(const SSet& x);
/// X_l -> {compatible boundary families} bijective for n < l <= max(n, trunc)+1.
bool is_n_coskeletal(const SSet& x, int n);

/// Compatible families (y_i) of (m-1)-simplices indexed by i in [0, m], i != skip
/// (skip = -1 gives full boundaries), each listed in increasing i.
std::vector<std::vector<int>> boundary_families(const SSet& x, int m, int skip = -1);
/// Faces (d_i z) for i != skip, for every z in X_m.
std::vector<std::vector<int>> face_tuples(const SSet& x, int m, int skip = -1);

/// Simplicial operator X(b): X_m -> X_n for a monotone b: [n] -> [m].
int act(const SSet& x, const std::vector<int>& b, int m, int elem);
/// All monotone maps [n] -> [m], lexicographic.
std::vector<std::vector<int>> monotone_maps(int n, int m);

SSet point();
SSet empty_sset();
SSet discrete(int n);
/// Nerve of the poset [m].
SSet delta(int m);
/// Nerve of the chaotic groupoid on k+1 objects.
SSet nerve_groupoid(int k);
/// Level k = tuples in levels[k]; faces delete an entry, degeneracies repeat one.
/// Every tuple needed by a face or degeneracy must be present.
SSet from_tuples(const std::vector<std::vector<std::vector<int>>>& levels, bool coskeletal);

/// A simplicial map stored on levels 0..levels.size()-1.
struct SSetMap {
  std::vector<std::vector<int>> levels;

  int top() const { return static_cast<int>(levels.size()) - 1; }
  int operator()(int k, int x) const { return levels[k][x]; }
  bool operator==(const SSetMap&) const = default;
};

/// Extends f to levels 0..m by matching faces in the target. Both source
/// and target must already be stored up to m. Throws kInvalidMap when the
/// target has no (or several) simplices with the required boundary.
SSetMap extend_map(const SSetMap& f, const SSet& src, const SSet& tgt, int m);
SSetMap identity_sset(const SSet& x);
SSetMap compose(const SSetMap& g, const SSetMap& f);
bool is_simplicial(const SSetMap& f, const SSet& src, const SSet& tgt);
bool is_levelwise_injective(const SSetMap& f, const SSet& tgt);
/// Bijective on levels 0..top().
bool is_levelwise_bijective(const SSetMap& f, const SSet& src, const SSet& tgt);
/// Unique map to the point.
SSetMap to_point(const SSet& x);

struct SSetArrow {
  int src = 0;
  int dst = 0;
  SSetMap map;
};

struct SSetLimit {
  SSet value;
  std::vector<Limit> levels;  // tuples, one entry per diagram object
};
/// Levelwise limit. Coskeletal if all inputs are; computed up to the largest
/// stored level (coskeletal case) or the least truncation of a non-coskeletal
/// input. `min_levels` forces at least that many levels when possible.
SSetLimit sset_limit(const std::vector<SSet>& objects, const std::vector<SSetArrow>& arrows,
                     int min_level = 0, std::size_t budget = kDefaultLimitBudget);

struct SSetColimit {
  SSet value;
  std::vector<Colimit> levels;
};
/// Levelwise colimit on levels 0..level_cap; never coskeletal.
SSetColimit sset_colimit(const std::vector<SSet>& objects, const std::vector<SSetArrow>& arrows, int level_cap);

SSet product(const SSet& a, const SSet& b);
/// Product with tuples ordered lexicographically (first factor most
/// significant); the empty product is a point.
SSet product_all(const std::vector<SSet>& factors);
/// K^n; K^0 is a point.
SSet power(const SSet& k, int n);
SSet coproduct(const SSet& a, const SSet& b);
/// Summands are laid out consecutively at every level.
SSet coproduct_all(const std::vector<SSet>& summands);

/// prod f_i : prod src_i -> prod tgt_i.
SSetMap product_maps(const std::vector<SSetMap>& maps, const std::vector<SSet>& src, const std::vector<SSet>& tgt);
/// coprod f_i : coprod src_i -> coprod tgt_i.
SSetMap coproduct_maps(const std::vector<SSetMap>& maps, const std::vector<SSet>& src,
                       const std::vector<SSet>& tgt);
/// K^from -> K^pos.size(), (c_j) |-> (c_{pos[i]})_i.
SSetMap power_reindex(const SSet& k, int from, const std::vector<int>& pos);

/// Sub-simplicial set spanned by the marked simplices (must be closed under
/// faces and degeneracies), with its inclusion.
struct SubSSet {
  SSet value;
  SSetMap inclusion;
};
SubSSet sub_sset(const SSet& x, const std::vector<std::vector<char>>& marked);

/// The boundary of Δ[m]: non-surjective monotone sequences, m-coskeletal.
SSet boundary_delta(int m);

/// Every horn Λ^k[m] -> x with 1 <= m <= dim_bound has a filler.
bool kan_check(const SSet& x, int dim_bound);
/// Connected components, as a map X_0 -> pi0.
FinMap pi0(const SSet& x);

struct SimplicialMono {
  enum class Kind { kBoundary, kHorn } kind = Kind::kBoundary;
  int m = 0;
  int k = 0;  // horn index
};
std::vector<SimplicialMono> boundary_monos(int max_dim);
std::vector<SimplicialMono> horn_monos(int max_dim);
/// f: x -> y has the right lifting property against each mono.
bool rlp_check(const SSetMap& f, const SSet& x, const SSet& y, const std::vector<SimplicialMono>& against);

/// A finite group by multiplication table; element 0 is the identity.
struct Group {
  int order = 1;
  std::vector<std::vector<int>> mul;  // mul[a][b] = a*b
  std::vector<int> inv;
  std::vector<std::vector<int>> perms;  // elements as permutations, when known

  static Group trivial();
  static Group symmetric(int n);
  static Group cyclic(int n);
  /// Elements given as permutations of {0..k-1}; must be closed under
  /// composition. (p*q)(i) = q(p(i)): right actions compose left to right.
  static Group from_permutations(std::vector<std::vector<int>> perms);
};

/// SSet with a right group action on every stored level.
struct GSSet {
  SSet x;
  Group g;
  std::vector<std::vector<std::vector<int>>> action;  // action[k][g][x] = x.g
};

bool is_equivariant(const SSetMap& f, const GSSet& a, const GSSet& b);
/// Levelwise injective with free action on the complement of the image on
/// levels 0..max_level. Throws kNonEquivariant when f is not equivariant.
bool normal_mono_g(const SSetMap& f, const GSSet& a, const GSSet& b, int max_level);
/// Nerve of the translation groupoid of g: level m is g^{m+1}, diagonal right action.
GSSet eg(const Group& g);
GSSet trivial_action(const SSet& x, const Group& g);
GSSet empty_gsset(const Group& g);
/// All action orbits at level k have size |G|.
bool acts_freely(const GSSet& a, int k);

}  // namespace dendro
