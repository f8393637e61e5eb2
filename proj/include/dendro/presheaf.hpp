#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dendro/category.hpp"
#include "dendro/sset.hpp"

namespace dendro {

/// A finite full subcategory of a tree category: one canonical representative
/// per isomorphism class, sorted by canonical code, with all hom sets.
class Truncation {
 public:
  /// All trees of the variant with degree <= bound.
  static std::shared_ptr<const Truncation> by_degree(TreeVariant variant, DegreeKind degree, int bound,
                                                     int hom_budget = kDefaultHomBudget);
  /// The full subcategory on the isomorphism classes of `trees`.
  static std::shared_ptr<const Truncation> from_trees(TreeVariant variant, const std::vector<Tree>& trees,
                                                      std::string label = "custom",
                                                      int hom_budget = kDefaultHomBudget);

  TreeVariant variant() const { return variant_; }
  const std::string& label() const { return label_; }
  /// Set for by_degree truncations.
  std::optional<DegreeKind> degree_kind() const { return degree_kind_; }
  int bound() const { return bound_; }

  int size() const { return static_cast<int>(objects_.size()); }
  const Tree& object(int i) const { return objects_[i]; }
  const CanonicalCode& code(int i) const { return codes_[i]; }
  /// Index of the class of t, or -1.
  int index_of(const Tree& t) const;
  int index_of(const CanonicalCode& c) const;
  /// Maps object(i) -> object(j), sorted by edge map.
  const std::vector<TreeMap>& hom(int i, int j) const { return homs_[i * size() + j]; }
  /// Position of the arrow with this edge map in hom(i, j), or -1.
  int arrow_index(int i, int j, const std::vector<int>& edge_map) const;
  /// Every tree of the variant of size <= n is present.
  bool contains_all_sizes_up_to(int n) const;
  /// Objects listed in the other truncation (same variant) are all present here.
  bool contains(const Truncation& other) const;

 private:
  Truncation() = default;
  void build(int hom_budget);

  TreeVariant variant_ = TreeVariant::kReducedOpen;
  std::string label_;
  std::optional<DegreeKind> degree_kind_;
  int bound_ = -1;
  std::vector<Tree> objects_;
  std::vector<CanonicalCode> codes_;
  std::vector<std::vector<TreeMap>> homs_;
};
using TruncationPtr = std::shared_ptr<const Truncation>;

/// Edge map of an isomorphism from t to the representative of its class in
/// the truncation, with the representative's index. Throws kWindowTooSmall
/// when the class is absent.
std::pair<int, std::vector<int>> to_representative(const Truncation& w, const Tree& t);

/// A presheaf of finite simplicial sets on a truncation (contravariant):
/// actions[i][j][a] is X(f): X(object j) -> X(object i) for f = hom(i, j)[a].
struct LeanDSpace {
  TruncationPtr trunc;
  std::vector<SSet> values;
  std::vector<std::vector<std::vector<SSetMap>>> actions;

  const SSetMap& action(int i, int j, int a) const { return actions[i][j][a]; }
  /// Least level stored on every value.
  int level() const;
};

/// Every value stored to at least level L (coskeletal values are extended;
/// non-coskeletal values must already reach L) and every action to the
/// level of its source.
LeanDSpace at_level(const LeanDSpace& x, int level);

struct FunctorialityReport {
  bool ok = true;
  std::string failure;
};
/// Identities act trivially, X(g o f) = X(f) o X(g), and actions are simplicial.
FunctorialityReport check_functoriality(const LeanDSpace& x);

/// A natural transformation; components[i]: X(object i) -> Y(object i).
struct DSpaceMap {
  std::vector<SSetMap> components;
};
bool is_natural(const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y);
DSpaceMap identity_dspace(const LeanDSpace& x);
DSpaceMap compose(const DSpaceMap& g, const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y,
                  const LeanDSpace& z);
/// Component-wise levelwise bijective on levels 0..level.
bool is_iso(const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y, int level);

/// A presheaf given by formulas, evaluated on arbitrary trees.
class PresheafFormula {
 public:
  virtual ~PresheafFormula() = default;
  virtual SSet value(const Tree& t) const = 0;
  /// X(f): X(f.target) -> X(f.source).
  virtual SSetMap act(const TreeMap& f) const = 0;
  virtual std::string name() const = 0;
};
using FormulaPtr = std::shared_ptr<const PresheafFormula>;

/// A finite commutative monoid on {0..order-1} with unit 0.
struct CommMonoid {
  enum class Kind { kCyclic, kMax } kind = Kind::kCyclic;
  int order = 1;
  int op(int a, int b) const { return kind == Kind::kCyclic ? (a + b) % order : std::max(a, b); }
};

FormulaPtr terminal_formula();
FormulaPtr constant_formula(const SSet& k, std::string label = "K");
/// T |-> K^{E(T)}.
FormulaPtr edge_power_formula(const SSet& k, std::string label = "K");
/// T |-> C^{E(T)} x D^{V(T)}; a vertex of S is decorated by the sum of the
/// decorations of its image vertices.
FormulaPtr decorated_formula(int colours, CommMonoid decorations);
/// T |-> hom(T, t0), discrete.
FormulaPtr representable_formula(const Tree& t0);
/// Non-surjective maps into t0.
FormulaPtr boundary_formula(const Tree& t0);
FormulaPtr product_formula(std::vector<FormulaPtr> factors);
FormulaPtr coproduct_formula(std::vector<FormulaPtr> summands);
/// A random formula built from the above with small values.
FormulaPtr random_formula(std::mt19937& rng, int depth = 2);

LeanDSpace materialize(const PresheafFormula& x, TruncationPtr trunc);

/// Limit of x over the maps o_i -> t (o_i in the truncation) accepted by
/// `keep`. Diagram object n is (objects[n].first, objects[n].second).
struct CommaLimit {
  SSet value;
  std::vector<std::pair<int, TreeMap>> objects;
  std::vector<Limit> levels;
};
CommaLimit comma_limit(const LeanDSpace& x, const Tree& t,
                       const std::function<bool(int, const TreeMap&)>& keep = {});

/// X(t) for any tree t: the stored value when t's class is in the
/// truncation, else the right Kan extension formula.
SSet eval(const LeanDSpace& x, const Tree& t);

/// Right Kan extension along the inclusion of x.trunc into `big`.
LeanDSpace kan_extend(const LeanDSpace& x, TruncationPtr big);
/// Restriction to a smaller truncation; throws kWindowTooSmall when `small`
/// has objects missing from x.trunc.
LeanDSpace restrict_to(const LeanDSpace& x, TruncationPtr small);

enum class ReedySystem { kStandard, kOuter };
ReedyStructure reedy_structure(ReedySystem s);
std::string_view to_string(ReedySystem s);
ReedySystem parse_system(std::string_view s);

/// Matching object at t: limit over non-iso positive maps into t. When t is
/// in the truncation, `comparison` is X(t) -> M_t X.
struct Matching {
  CommaLimit limit;
  std::optional<SSetMap> comparison;
};
Matching matching(const LeanDSpace& x, const Tree& t, ReedySystem system);

/// Latching object at t: colimit over non-iso negative maps t -> o_j.
/// `objects` lists (j, f); when t is in the truncation, `comparison` is
/// L_t X -> X(t).
struct Latching {
  SSetColimit colimit;
  std::vector<std::pair<int, TreeMap>> objects;
  std::optional<SSetMap> comparison;
};
Latching latching(const LeanDSpace& x, const Tree& t, ReedySystem system, int level_cap);

/// Presheaf whose values are lean and whose matching comparison maps are
/// isomorphisms above degree n, on levels 0..level.
bool is_lean_via_matching(const LeanDSpace& x, ReedySystem system, int n, int level);

/// A subpresheaf with its inclusion.
struct SubPresheaf {
  LeanDSpace value;
  DSpaceMap inclusion;
};
/// Simplices X(f, b)(y) with y in X(o_j)_k, size(o_j) + k <= n; levels 0..level_cap.
SubPresheaf skeleton(const LeanDSpace& x, int n, int level_cap);

/// Joint limit in Ω x Δ at (t, m): objects (i, f: o_i -> t, k, σ: [k] -> [m])
/// accepted by `keep`; generating arrows are (a, id) and (id, elementary
/// coface / codegeneracy) between accepted objects.
struct JointObject {
  int tree = 0;
  int map = 0;  // index in hom(tree, t)
  int k = 0;
  std::vector<int> sigma;
  auto operator<=>(const JointObject&) const = default;
};
struct JointLimit {
  std::vector<JointObject> objects;
  Limit limit;
};
/// Objects have k <= max_k; x must be stored to at least max_k.
JointLimit joint_limit(const LeanDSpace& x, int t, int m, int max_k,
                       const std::function<bool(int tree, const TreeMap& f, int k, const std::vector<int>& sigma)>& keep);
/// The joint matching object at (t, m): f injective, σ injective, not both iso.
JointLimit joint_matching(const LeanDSpace& x, int t, int m);
/// X(t)_m -> joint matching, as tuples.
std::vector<int> joint_matching_image(const LeanDSpace& x, const JointLimit& jm, int t, int m, int elem);

/// cosk_n relative to the truncation, with the unit x -> cosk_n x.
struct Coskeleton {
  int n = 0;
  LeanDSpace value;
  DSpaceMap unit;
  /// Index family at (object, level).
  std::vector<std::vector<JointLimit>> families;
};
Coskeleton coskeleton(const LeanDSpace& x, int n);
/// The restriction map cosk_big x -> cosk_small x.
DSpaceMap coskeleton_bond(const Coskeleton& big, const Coskeleton& small);

struct NormalReport {
  bool ok = true;
  int tree = -1;
  int level = -1;
  std::string reason;
};
/// Injective with Aut(t) acting freely on the complement of the image, for
/// every object accepted by `window` and levels 0..max_level.
NormalReport is_normal_mono(const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y, int max_level,
                            const std::function<bool(int tree, int level)>& window = {});

/// X(R) -> X(S) x_{X(η)} X(T) bijective for every grafting R = S o_e T with
/// degree(R) <= bound, on levels 0..level.
struct SegalReport {
  bool ok = true;
  std::string counterexample;
  int decompositions = 0;
};
SegalReport strict_segal_check(const LeanDSpace& x, int bound, int level = 1);

/// Fibre of X(C_n) -> X(η)^{n+1} over the colours (c_1..c_n; d), vertices of X(η).
SSet space_of_operations(const LeanDSpace& x, const std::vector<int>& inputs, int output, int level = 1);

}  // namespace dendro
