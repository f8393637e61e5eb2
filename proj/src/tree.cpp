#include "dendro/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "dendro/error.hpp"

namespace dendro {

std::string_view to_string(TreeVariant v) {
  switch (v) {
    case TreeVariant::kGeneral: return "g";
    case TreeVariant::kOpen: return "o";
    case TreeVariant::kClosed: return "cl";
    case TreeVariant::kReducedOpen: return "or";
  }
  return "?";
}

std::string_view to_string(DegreeKind d) { return d == DegreeKind::kSize ? "size" : "weight"; }

TreeVariant parse_variant(std::string_view s) {
  if (s == "g" || s == "general") return TreeVariant::kGeneral;
  if (s == "o" || s == "open") return TreeVariant::kOpen;
  if (s == "cl" || s == "closed") return TreeVariant::kClosed;
  if (s == "or" || s == "reduced-open") return TreeVariant::kReducedOpen;
  throw Error(ErrorKind::kInvalidInput, "unknown variant '" + std::string(s) + "'");
}

DegreeKind parse_degree(std::string_view s) {
  if (s == "size") return DegreeKind::kSize;
  if (s == "weight") return DegreeKind::kWeight;
  throw Error(ErrorKind::kInvalidInput, "unknown degree '" + std::string(s) + "'");
}

bool satisfies_variant(const Tree& t, TreeVariant variant) {
  switch (variant) {
    case TreeVariant::kGeneral: return true;
    case TreeVariant::kOpen: return !t.has_stump();
    case TreeVariant::kClosed: return t.leaves().empty();
    case TreeVariant::kReducedOpen: return !t.has_stump() && !t.has_unary();
  }
  return false;
}

Tree Tree::make(TreeVariant variant, int num_edges, int root, std::vector<Vertex> vertices) {
  if (num_edges < 1) throw Error(ErrorKind::kInvalidInput, "a tree has at least one edge");
  if (root < 0 || root >= num_edges) throw Error(ErrorKind::kInvalidInput, "root out of range");
  Tree t;
  t.variant_ = variant;
  t.num_edges_ = num_edges;
  t.root_ = root;
  t.vertices_ = std::move(vertices);
  t.above_.assign(num_edges, -1);
  t.below_.assign(num_edges, -1);
  auto in_range = [&](int e) { return e >= 0 && e < num_edges; };
  for (int v = 0; v < t.num_vertices(); ++v) {
    const Vertex& vx = t.vertices_[v];
    if (!in_range(vx.out)) throw Error(ErrorKind::kInvalidInput, "vertex output out of range");
    if (t.above_[vx.out] >= 0) throw Error(ErrorKind::kInvalidInput, "edge is the output of two vertices");
    t.above_[vx.out] = v;
    for (int e : vx.ins) {
      if (!in_range(e)) throw Error(ErrorKind::kInvalidInput, "vertex input out of range");
      if (t.below_[e] >= 0) throw Error(ErrorKind::kInvalidInput, "edge is an input of two vertices");
      t.below_[e] = v;
    }
  }
  if (t.below_[root] >= 0) throw Error(ErrorKind::kInvalidInput, "root is an input of a vertex");
  for (int e = 0; e < num_edges; ++e) {
    if (e != root && t.below_[e] < 0) throw Error(ErrorKind::kInvalidInput, "non-root edge below no vertex");
  }
  // Connected and acyclic: walking up from the root reaches every edge once.
  std::vector<char> seen(num_edges, 0);
  std::vector<int> stack{root};
  int visited = 0;
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    if (seen[e]) throw Error(ErrorKind::kInvalidInput, "cycle in tree");
    seen[e] = 1;
    ++visited;
    if (int v = t.above_[e]; v >= 0) {
      for (int i : t.vertices_[v].ins) stack.push_back(i);
    }
  }
  if (visited != num_edges) throw Error(ErrorKind::kInvalidInput, "tree is not connected");
  if (!satisfies_variant(t, variant)) {
    throw Error(ErrorKind::kWrongVariant,
                "shape violates variant '" + std::string(to_string(variant)) + "'");
  }
  return t;
}

Tree Tree::eta(TreeVariant variant) { return make(variant, 1, 0, {}); }

Tree Tree::corolla(int arity, TreeVariant variant) {
  Vertex v{0, {}};
  for (int i = 1; i <= arity; ++i) v.ins.push_back(i);
  return make(variant, arity + 1, 0, {v});
}

Tree Tree::linear(int n, TreeVariant variant) {
  std::vector<Vertex> vs;
  for (int i = 0; i < n; ++i) vs.push_back(Vertex{i, {i + 1}});
  return make(variant, n + 1, 0, std::move(vs));
}

std::vector<int> Tree::leaves() const {
  std::vector<int> out;
  for (int e = 0; e < num_edges_; ++e)
    if (above_[e] < 0) out.push_back(e);
  return out;
}

std::vector<int> Tree::inner_edges() const {
  std::vector<int> out;
  for (int e = 0; e < num_edges_; ++e)
    if (is_inner(e)) out.push_back(e);
  return out;
}

bool Tree::has_stump() const {
  return std::any_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.ins.empty(); });
}

bool Tree::has_unary() const {
  return std::any_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.ins.size() == 1; });
}

int Tree::max_arity() const {
  int m = 0;
  for (const auto& v : vertices_) m = std::max(m, static_cast<int>(v.ins.size()));
  return m;
}

Tree Tree::with_variant(TreeVariant variant) const { return make(variant, num_edges_, root_, vertices_); }

int size(const Tree& t) { return (t.num_edges() - 1) + t.num_vertices(); }

int weight(const Tree& t) {
  if (t.has_stump() || t.has_unary())
    throw Error(ErrorKind::kWrongVariant, "weight is only defined for reduced-open trees");
  return 2 * static_cast<int>(t.leaves().size()) - t.num_vertices();
}

int degree(const Tree& t, DegreeKind kind) { return kind == DegreeKind::kSize ? size(t) : weight(t); }

namespace {

std::string code_above(const Tree& t, int e, std::vector<std::string>* memo) {
  std::string out;
  int v = t.vertex_above(e);
  if (v < 0) {
    out = "0";
  } else {
    std::vector<std::string> kids;
    for (int i : t.vertex(v).ins) kids.push_back(code_above(t, i, memo));
    std::sort(kids.begin(), kids.end());
    out = "(";
    for (auto& k : kids) out += k;
    out += ")";
  }
  if (memo) (*memo)[e] = out;
  return out;
}

std::vector<std::string> edge_codes(const Tree& t) {
  std::vector<std::string> memo(t.num_edges());
  code_above(t, t.root(), &memo);
  return memo;
}

// Splits a code "(...)" into its child codes.
std::vector<std::string> split_children(const std::string& code) {
  std::vector<std::string> kids;
  int depth = 0;
  std::size_t start = 1;
  for (std::size_t i = 1; i + 1 < code.size(); ++i) {
    char c = code[i];
    if (c == '(') {
      if (depth == 0) start = i;
      ++depth;
    } else if (c == ')') {
      --depth;
      if (depth == 0) kids.push_back(code.substr(start, i - start + 1));
    } else if (c == '0' && depth == 0) {
      kids.push_back("0");
    }
  }
  return kids;
}

}  // namespace

CanonicalCode canonical_code(const Tree& t) { return {code_above(t, t.root(), nullptr)}; }

Tree tree_from_code(const CanonicalCode& code, TreeVariant variant) {
  std::vector<Vertex> vertices;
  int next_edge = 0;
  std::function<void(const std::string&, int)> build = [&](const std::string& c, int edge) {
    if (c == "0") return;
    if (c.size() < 2 || c.front() != '(' || c.back() != ')')
      throw Error(ErrorKind::kInvalidInput, "malformed tree code '" + c + "'");
    auto kids = split_children(c);
    int v = static_cast<int>(vertices.size());
    vertices.push_back(Vertex{edge, {}});
    std::vector<int> ids;
    for (std::size_t i = 0; i < kids.size(); ++i) ids.push_back(next_edge++);
    vertices[v].ins = ids;
    for (std::size_t i = 0; i < kids.size(); ++i) build(kids[i], ids[i]);
  };
  int root = next_edge++;
  build(code.bytes, root);
  return Tree::make(variant, next_edge, root, std::move(vertices));
}

Tree canonical_representative(const Tree& t) { return tree_from_code(canonical_code(t), t.variant()); }

std::vector<std::vector<int>> isomorphisms(const Tree& s, const Tree& t) {
  std::vector<std::vector<int>> result;
  if (s.num_edges() != t.num_edges() || s.num_vertices() != t.num_vertices()) return result;
  auto cs = edge_codes(s);
  auto ct = edge_codes(t);
  if (cs[s.root()] != ct[t.root()]) return result;
  std::vector<int> map(s.num_edges(), -1);
  std::function<void(std::vector<std::pair<int, int>>)> rec = [&](std::vector<std::pair<int, int>> pending) {
    if (pending.empty()) {
      result.push_back(map);
      return;
    }
    auto [es, et] = pending.back();
    pending.pop_back();
    map[es] = et;
    int vs = s.vertex_above(es);
    if (vs < 0) {
      rec(std::move(pending));
      return;
    }
    const auto& ins_s = s.vertex(vs).ins;
    std::vector<int> ins_t = t.vertex(t.vertex_above(et)).ins;
    std::sort(ins_t.begin(), ins_t.end());
    do {
      bool ok = true;
      for (std::size_t i = 0; i < ins_s.size() && ok; ++i) ok = cs[ins_s[i]] == ct[ins_t[i]];
      if (!ok) continue;
      auto next = pending;
      for (std::size_t i = 0; i < ins_s.size(); ++i) next.emplace_back(ins_s[i], ins_t[i]);
      rec(std::move(next));
    } while (std::next_permutation(ins_t.begin(), ins_t.end()));
  };
  rec({{s.root(), t.root()}});
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::vector<int>> automorphisms(const Tree& t) { return isomorphisms(t, t); }

bool isomorphic(const Tree& s, const Tree& t) { return canonical_code(s) == canonical_code(t); }

Tree graft(const Tree& s, int leaf, const Tree& t) {
  if (leaf < 0 || leaf >= s.num_edges() || !s.is_leaf(leaf))
    throw Error(ErrorKind::kLeafNotFound, "edge " + std::to_string(leaf) + " is not a leaf");
  std::vector<int> rename(t.num_edges(), -1);
  int next = s.num_edges();
  for (int e = 0; e < t.num_edges(); ++e) rename[e] = (e == t.root()) ? leaf : next++;
  std::vector<Vertex> vs = s.vertices();
  for (const auto& v : t.vertices()) {
    Vertex nv{rename[v.out], {}};
    for (int i : v.ins) nv.ins.push_back(rename[i]);
    vs.push_back(std::move(nv));
  }
  return Tree::make(s.variant(), next, s.root(), std::move(vs));
}

Contraction contract_inner_edge(const Tree& t, int e) {
  if (e < 0 || e >= t.num_edges() || !t.is_inner(e))
    throw Error(ErrorKind::kNotInnerEdge, "edge " + std::to_string(e) + " is not inner");
  int u = t.vertex_above(e);
  if (t.vertex(u).ins.empty()) throw Error(ErrorKind::kNotInnerEdge, "edge is the output of a stump");
  int w = t.vertex_below(e);
  std::vector<int> renum(t.num_edges(), -1);
  std::vector<int> face;
  for (int x = 0; x < t.num_edges(); ++x) {
    if (x == e) continue;
    renum[x] = static_cast<int>(face.size());
    face.push_back(x);
  }
  std::vector<Vertex> vs;
  for (int v = 0; v < t.num_vertices(); ++v) {
    if (v == u) continue;
    Vertex nv{renum[t.vertex(v).out], {}};
    for (int i : t.vertex(v).ins) {
      if (v == w && i == e) {
        for (int j : t.vertex(u).ins) nv.ins.push_back(renum[j]);
      } else {
        nv.ins.push_back(renum[i]);
      }
    }
    vs.push_back(std::move(nv));
  }
  return {Tree::make(t.variant(), static_cast<int>(face.size()), renum[t.root()], std::move(vs)),
          std::move(face)};
}

Reduction reduce(const Tree& t) {
  if (t.has_stump()) throw Error(ErrorKind::kWrongVariant, "reduce requires a tree without stumps");
  std::vector<int> parent(t.num_edges());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& v : t.vertices()) {
    if (v.ins.size() == 1) {
      int a = find(v.out), b = find(v.ins[0]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> cls(t.num_edges(), -1);
  std::vector<int> quotient(t.num_edges());
  int next = 0;
  for (int e = 0; e < t.num_edges(); ++e) {
    int r = find(e);
    if (cls[r] < 0) cls[r] = next++;
    quotient[e] = cls[r];
  }
  std::vector<Vertex> vs;
  for (const auto& v : t.vertices()) {
    if (v.ins.size() == 1) continue;
    Vertex nv{quotient[v.out], {}};
    for (int i : v.ins) nv.ins.push_back(quotient[i]);
    vs.push_back(std::move(nv));
  }
  return {Tree::make(TreeVariant::kReducedOpen, next, quotient[t.root()], std::move(vs)), std::move(quotient)};
}

Tree closure(const Tree& t) {
  std::vector<Vertex> vs = t.vertices();
  for (int e : t.leaves()) vs.push_back(Vertex{e, {}});
  return Tree::make(TreeVariant::kClosed, t.num_edges(), t.root(), std::move(vs));
}

std::vector<CanonicalCode> enumerate_trees(TreeVariant variant, DegreeKind degree_kind, int bound) {
  if (degree_kind == DegreeKind::kWeight && variant != TreeVariant::kReducedOpen)
    throw Error(ErrorKind::kWrongVariant, "weight degree requires the reduced-open variant");
  const int min_arity = variant == TreeVariant::kReducedOpen ? 2 : variant == TreeVariant::kOpen ? 1 : 0;
  // Closed trees are filtered out of general trees at the end; the
  // intermediate shapes are general.
  const TreeVariant grow_variant = variant == TreeVariant::kClosed ? TreeVariant::kGeneral : variant;
  auto deg = [&](const Tree& t) { return degree(t, degree_kind); };

  std::set<CanonicalCode> seen;
  std::vector<Tree> frontier;
  Tree eta = Tree::eta(grow_variant);
  if (deg(eta) <= bound) {
    seen.insert(canonical_code(eta));
    frontier.push_back(eta);
  }
  while (!frontier.empty()) {
    std::vector<Tree> next;
    for (const Tree& t : frontier) {
      int d = deg(t);
      for (int leaf : t.leaves()) {
        for (int k = min_arity;; ++k) {
          // Grafting C_k raises size by k + 1 and weight by 2k - 3.
          int inc = degree_kind == DegreeKind::kSize ? k + 1 : 2 * k - 3;
          if (d + inc > bound) break;
          Tree g = graft(t, leaf, Tree::corolla(k, grow_variant));
          auto code = canonical_code(g);
          if (seen.insert(code).second) next.push_back(tree_from_code(code, grow_variant));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<CanonicalCode> out;
  for (const auto& c : seen) {
    if (variant == TreeVariant::kClosed && c.bytes.find('0') != std::string::npos) continue;
    out.push_back(c);
  }
  return out;
}

std::vector<Tree> enumerate_representatives(TreeVariant variant, DegreeKind degree_kind, int bound) {
  std::vector<Tree> out;
  for (const auto& c : enumerate_trees(variant, degree_kind, bound)) out.push_back(tree_from_code(c, variant));
  return out;
}

Subtree extract_subtree(const Tree& t, int root, const std::vector<int>& vertices) {
  std::set<int> vset(vertices.begin(), vertices.end());
  Subtree out{Tree::eta(), {}, std::vector<int>(vset.begin(), vset.end())};
  std::vector<Vertex> vs;
  std::function<int(int)> visit = [&](int e) {
    int id = static_cast<int>(out.inclusion.size());
    out.inclusion.push_back(e);
    int v = t.vertex_above(e);
    if (v >= 0 && vset.count(v)) {
      int idx = static_cast<int>(vs.size());
      vs.push_back(Vertex{id, {}});
      std::vector<int> ins;
      for (int i : t.vertex(v).ins) ins.push_back(visit(i));
      vs[idx].ins = std::move(ins);
    }
    return id;
  };
  visit(root);
  if (vs.size() != vset.size())
    throw Error(ErrorKind::kInvalidInput, "vertex set is not a subtree rooted at the given edge");
  int n = static_cast<int>(out.inclusion.size());
  TreeVariant variant = t.variant();
  Tree probe = Tree::make(TreeVariant::kGeneral, n, 0, vs);
  if (!satisfies_variant(probe, variant)) variant = TreeVariant::kGeneral;
  out.tree = Tree::make(variant, n, 0, std::move(vs));
  return out;
}

std::vector<std::vector<int>> rooted_vertex_sets(const Tree& t, int x) {
  std::vector<std::vector<int>> out{{}};
  int v = t.vertex_above(x);
  if (v < 0) return out;
  std::vector<std::vector<int>> acc{{v}};
  for (int i : t.vertex(v).ins) {
    auto options = rooted_vertex_sets(t, i);
    std::vector<std::vector<int>> next;
    for (const auto& a : acc) {
      for (const auto& o : options) {
        auto merged = a;
        merged.insert(merged.end(), o.begin(), o.end());
        next.push_back(std::move(merged));
      }
    }
    acc = std::move(next);
  }
  for (auto& a : acc) {
    std::sort(a.begin(), a.end());
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Subtree> subtrees(const Tree& t) {
  std::vector<Subtree> out;
  for (int x = 0; x < t.num_edges(); ++x) {
    for (const auto& vs : rooted_vertex_sets(t, x)) out.push_back(extract_subtree(t, x, vs));
  }
  return out;
}

}  // namespace dendro
