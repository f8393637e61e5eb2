#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

/// A morphism of trees. A map in any of the tree categories is determined by
/// what it does on edges; the vertex assignment is derived: a vertex v with
/// output o and inputs i_1..i_k goes to the subtree of the target with root
/// edge_map[o] and leaves {edge_map[i_1], ..., edge_map[i_k]}.
struct TreeMap {
  Tree source;
  Tree target;
  std::vector<int> edge_map;

  bool operator==(const TreeMap& o) const {
    return source == o.source && target == o.target && edge_map == o.edge_map;
  }
};

/// Target vertices assigned to source vertex v, or nullopt when no subtree
/// of the target has the required root and leaves. An empty set means v
/// collapses onto a single edge (only legal for unary v).
std::optional<std::vector<int>> vertex_image(const TreeMap& f, int v);
/// vertex_image for every source vertex; throws kInvalidMap when invalid.
std::vector<std::vector<int>> vertex_map(const TreeMap& f);

bool validate(const TreeMap& f);
TreeMap make_map(const Tree& source, const Tree& target, std::vector<int> edge_map);
TreeMap identity_map(const Tree& t);
/// g o f. Throws kMismatch when target(f) != source(g).
TreeMap compose(const TreeMap& g, const TreeMap& f);

bool is_injective(const TreeMap& f);
bool is_surjective(const TreeMap& f);

inline constexpr int kDefaultHomBudget = 14;

/// Every map s -> t, sorted by edge map. Throws kBudgetExceeded when either
/// tree is larger than `budget` (measured by size).
std::vector<TreeMap> hom_set(const Tree& s, const Tree& t, int budget = kDefaultHomBudget);

enum class MorphismClass { kIso, kDegeneracy, kInnerFace, kOuterFace, kMixed };
std::string_view to_string(MorphismClass c);
MorphismClass classify(const TreeMap& f);

/// The subtree of the target spanned by the image of f.
Subtree image_subtree(const TreeMap& f);

struct Factorization {
  TreeMap first;    // source -> middle
  TreeMap second;   // middle -> target
  const Tree& middle() const { return first.target; }
};

/// f = outer o inner with inner an inner face (or iso) and outer a subtree
/// inclusion (or iso). Requires f injective on edges.
Factorization factor_inner_outer(const TreeMap& f);
/// f = face o degeneracy.
Factorization factor_standard(const TreeMap& f);

struct ReedyStructure {
  std::string name;
  std::function<bool(const TreeMap&)> positive;
  std::function<bool(const TreeMap&)> negative;
  DegreeKind degree = DegreeKind::kSize;
};

/// Positives are outer faces, negatives inner faces, degree is weight.
ReedyStructure outer_reedy();
/// Positives are faces (injective maps), negatives degeneracies, degree is size.
ReedyStructure standard_reedy();
/// Positive and negative classes exchanged.
ReedyStructure swapped(const ReedyStructure& r);

/// All (negative, positive) factorizations of f whose middle object is one
/// of `middles`.
std::vector<Factorization> all_factorizations(const TreeMap& f, const ReedyStructure& r,
                                              const std::vector<Tree>& middles);

struct ReedyReport {
  bool pass = true;
  std::string axiom;           // first failing axiom
  std::string counterexample;  // human readable
  std::size_t objects = 0;
  std::size_t morphisms = 0;
  std::size_t factorizations = 0;
};

ReedyReport verify_reedy(const ReedyStructure& r, TreeVariant variant, int bound);

/// Codimension-one inner faces out of a reduced-open tree, obtained by
/// splitting one vertex into two adjacent vertices of arity >= 2.
std::vector<TreeMap> expansions(const Tree& t);

std::string describe(const TreeMap& f);

}  // namespace dendro
