#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dendro {

// Which category of trees a tree lives in.
//   general      : any finite rooted tree (stumps allowed)
//   open         : no stumps
//   closed       : no leaves (every branch ends in a stump)
//   reduced-open : no stumps and no unary vertices
enum class TreeVariant { kGeneral, kOpen, kClosed, kReducedOpen };

enum class DegreeKind { kSize, kWeight };

std::string_view to_string(TreeVariant v);
std::string_view to_string(DegreeKind d);
TreeVariant parse_variant(std::string_view s);
DegreeKind parse_degree(std::string_view s);

struct Vertex {
  int out = 0;
  std::vector<int> ins;

  bool operator==(const Vertex&) const = default;
};

/// A finite rooted non-planar tree. Edges are the integers [0, num_edges());
/// the input order stored on each vertex is arbitrary. Instances are
/// immutable and always valid.
class Tree {
 public:
  static Tree make(TreeVariant variant, int num_edges, int root, std::vector<Vertex> vertices);
  static Tree eta(TreeVariant variant = TreeVariant::kReducedOpen);
  static Tree corolla(int arity, TreeVariant variant = TreeVariant::kReducedOpen);
  /// Linear tree [n]: n unary vertices stacked on top of each other.
  static Tree linear(int n, TreeVariant variant = TreeVariant::kOpen);

  TreeVariant variant() const { return variant_; }
  int num_edges() const { return num_edges_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int root() const { return root_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int v) const { return vertices_[v]; }

  /// Vertex whose output is e, or -1 when e is a leaf.
  int vertex_above(int e) const { return above_[e]; }
  /// Vertex having e among its inputs, or -1 for the root.
  int vertex_below(int e) const { return below_[e]; }

  bool is_leaf(int e) const { return above_[e] < 0; }
  bool is_inner(int e) const { return e != root_ && above_[e] >= 0; }
  std::vector<int> leaves() const;
  std::vector<int> inner_edges() const;
  bool has_stump() const;
  bool has_unary() const;
  int max_arity() const;

  /// Same shape, different variant tag. Throws if the shape violates it.
  Tree with_variant(TreeVariant variant) const;

  bool operator==(const Tree& other) const {
    return variant_ == other.variant_ && num_edges_ == other.num_edges_ && root_ == other.root_ &&
           vertices_ == other.vertices_;
  }

 private:
  Tree() = default;

  TreeVariant variant_ = TreeVariant::kReducedOpen;
  int num_edges_ = 1;
  int root_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<int> above_;
  std::vector<int> below_;
};

bool satisfies_variant(const Tree& t, TreeVariant variant);

/// AHU-style code: a leaf edge is "0", a vertex is "(" + sorted child codes + ")".
struct CanonicalCode {
  std::string bytes;

  auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const Tree& t);
/// Rebuilds the canonical representative: edges and vertices numbered in
/// depth-first order, inputs sorted by code.
Tree tree_from_code(const CanonicalCode& code, TreeVariant variant);
Tree canonical_representative(const Tree& t);

/// Number of non-root edges plus number of vertices.
int size(const Tree& t);
/// 2 * #leaves - #vertices; only defined on reduced-open shapes.
int weight(const Tree& t);
int degree(const Tree& t, DegreeKind kind);

/// All isomorphisms s -> t as edge maps (edges(s) -> edges(t)).
std::vector<std::vector<int>> isomorphisms(const Tree& s, const Tree& t);
std::vector<std::vector<int>> automorphisms(const Tree& t);
bool isomorphic(const Tree& s, const Tree& t);

/// S o_e T: t's root is identified with the leaf e of s. Edges of s keep
/// their ids; the non-root edges of t are appended in order.
Tree graft(const Tree& s, int leaf, const Tree& t);

struct Contraction {
  Tree tree;               // t / e
  std::vector<int> face;   // edges(t/e) -> edges(t), the inner face map
};
Contraction contract_inner_edge(const Tree& t, int e);

struct Reduction {
  Tree tree;                   // r(t)
  std::vector<int> quotient;   // edges(t) -> edges(r(t)), the maximal degeneracy
};
Reduction reduce(const Tree& t);

Tree closure(const Tree& t);

/// Isomorphism classes with degree <= bound, sorted by code.
std::vector<CanonicalCode> enumerate_trees(TreeVariant variant, DegreeKind degree, int bound);
/// Canonical representatives of enumerate_trees, same order.
std::vector<Tree> enumerate_representatives(TreeVariant variant, DegreeKind degree, int bound);

struct Subtree {
  Tree tree;
  std::vector<int> inclusion;   // edges(tree) -> edges(parent)
  std::vector<int> vertices;    // vertices of the parent, sorted
};

/// Subtree of t with root edge `root` spanned by the given parent vertices.
/// The vertex set must be upward-connected from `root`.
Subtree extract_subtree(const Tree& t, int root, const std::vector<int>& vertices);
/// All vertex sets spanning a subtree rooted at edge x (including the empty
/// set, i.e. the single edge x).
std::vector<std::vector<int>> rooted_vertex_sets(const Tree& t, int x);
/// All connected subtrees (single edges included), deterministic order.
std::vector<Subtree> subtrees(const Tree& t);

}  // namespace dendro
