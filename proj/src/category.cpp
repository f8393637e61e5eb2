#include "dendro/category.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dendro/error.hpp"

namespace dendro {

std::optional<std::vector<int>> vertex_image(const TreeMap& f, int v) {
  const Vertex& vx = f.source.vertex(v);
  const Tree& t = f.target;
  int x = f.edge_map[vx.out];
  std::vector<int> want;
  for (int i : vx.ins) want.push_back(f.edge_map[i]);
  std::vector<int> sorted = want;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  if (std::binary_search(sorted.begin(), sorted.end(), x)) {
    if (vx.ins.size() == 1) return std::vector<int>{};
    return std::nullopt;
  }
  std::vector<int> verts;
  std::size_t hits = 0;
  std::vector<int> stack{x};
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    if (std::binary_search(sorted.begin(), sorted.end(), e)) {
      ++hits;
      continue;
    }
    int w = t.vertex_above(e);
    if (w < 0) return std::nullopt;  // ran into a target leaf that is not an image of an input
    verts.push_back(w);
    for (int i : t.vertex(w).ins) stack.push_back(i);
  }
  if (hits != sorted.size()) return std::nullopt;
  std::sort(verts.begin(), verts.end());
  return verts;
}

std::vector<std::vector<int>> vertex_map(const TreeMap& f) {
  std::vector<std::vector<int>> out;
  for (int v = 0; v < f.source.num_vertices(); ++v) {
    auto img = vertex_image(f, v);
    if (!img) throw Error(ErrorKind::kInvalidMap, "vertex " + std::to_string(v) + " has no image subtree");
    out.push_back(std::move(*img));
  }
  return out;
}

bool validate(const TreeMap& f) {
  if (static_cast<int>(f.edge_map.size()) != f.source.num_edges()) return false;
  for (int e : f.edge_map)
    if (e < 0 || e >= f.target.num_edges()) return false;
  for (int v = 0; v < f.source.num_vertices(); ++v)
    if (!vertex_image(f, v)) return false;
  return true;
}

TreeMap make_map(const Tree& source, const Tree& target, std::vector<int> edge_map) {
  TreeMap f{source, target, std::move(edge_map)};
  if (!validate(f)) throw Error(ErrorKind::kInvalidMap, "edge assignment is not a map of trees");
  return f;
}

TreeMap identity_map(const Tree& t) {
  std::vector<int> id(t.num_edges());
  std::iota(id.begin(), id.end(), 0);
  return TreeMap{t, t, std::move(id)};
}

TreeMap compose(const TreeMap& g, const TreeMap& f) {
  if (!(f.target == g.source)) throw Error(ErrorKind::kMismatch, "target(f) != source(g)");
  std::vector<int> em(f.edge_map.size());
  for (std::size_t e = 0; e < em.size(); ++e) em[e] = g.edge_map[f.edge_map[e]];
  return TreeMap{f.source, g.target, std::move(em)};
}

bool is_injective(const TreeMap& f) {
  std::vector<char> hit(f.target.num_edges(), 0);
  for (int e : f.edge_map) {
    if (hit[e]) return false;
    hit[e] = 1;
  }
  return true;
}

bool is_surjective(const TreeMap& f) {
  std::vector<char> hit(f.target.num_edges(), 0);
  for (int e : f.edge_map) hit[e] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

namespace {

struct RootedOption {
  std::vector<int> vertices;
  std::vector<int> leaves;
};

std::vector<std::vector<RootedOption>> rooted_options(const Tree& t) {
  std::vector<std::vector<RootedOption>> out(t.num_edges());
  for (int x = 0; x < t.num_edges(); ++x) {
    for (auto& vs : rooted_vertex_sets(t, x)) {
      if (vs.empty()) continue;
      std::set<int> outs;
      for (int v : vs) outs.insert(t.vertex(v).out);
      std::vector<int> leaves;
      for (int v : vs)
        for (int i : t.vertex(v).ins)
          if (!outs.count(i)) leaves.push_back(i);
      std::sort(leaves.begin(), leaves.end());
      out[x].push_back({std::move(vs), std::move(leaves)});
    }
  }
  return out;
}

// Source vertices ordered so that each vertex's output is assigned (as the
// root or as an input of an earlier vertex) before the vertex is processed.
std::vector<int> top_down_vertices(const Tree& s) {
  std::vector<int> order;
  std::vector<int> queue{s.root()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int v = s.vertex_above(queue[q]);
    if (v < 0) continue;
    order.push_back(v);
    for (int i : s.vertex(v).ins) queue.push_back(i);
  }
  return order;
}

}  // namespace

std::vector<TreeMap> hom_set(const Tree& s, const Tree& t, int budget) {
  // Only unary vertices can be collapsed, so otherwise maps are injective.
  if (!s.has_unary() && s.num_edges() > t.num_edges()) return {};
  if (size(s) > budget || size(t) > budget)
    throw Error(ErrorKind::kBudgetExceeded, "hom-set search exceeds size budget " + std::to_string(budget));
  auto options = rooted_options(t);
  auto order = top_down_vertices(s);
  std::vector<std::vector<int>> maps;
  std::vector<int> em(s.num_edges(), -1);

  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == order.size()) {
      maps.push_back(em);
      return;
    }
    const Vertex& v = s.vertex(order[idx]);
    int x = em[v.out];
    const std::size_t k = v.ins.size();
    if (k == 1) {
      em[v.ins[0]] = x;  // degeneracy
      rec(idx + 1);
    }
    // A leaf of the target can only receive a source leaf or a chain of
    // collapsed unary vertices; anything else has nowhere to go.
    for (const auto& opt : options[x]) {
      if (opt.leaves.size() != k) continue;
      std::vector<int> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
          int target_edge = opt.leaves[perm[i]];
          int above = s.vertex_above(v.ins[i]);
          if (above >= 0 && t.is_leaf(target_edge) && s.vertex(above).ins.size() != 1) ok = false;
        }
        if (!ok) continue;
        for (std::size_t i = 0; i < k; ++i) em[v.ins[i]] = opt.leaves[perm[i]];
        rec(idx + 1);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (int i : v.ins) em[i] = -1;
  };

  for (int x = 0; x < t.num_edges(); ++x) {
    em.assign(s.num_edges(), -1);
    em[s.root()] = x;
    rec(0);
  }
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  std::vector<TreeMap> out;
  out.reserve(maps.size());
  for (auto& m : maps) {
    TreeMap f{s, t, std::move(m)};
    if (validate(f)) out.push_back(std::move(f));
  }
  return out;
}

std::string_view to_string(MorphismClass c) {
  switch (c) {
    case MorphismClass::kIso: return "iso";
    case MorphismClass::kDegeneracy: return "degeneracy";
    case MorphismClass::kInnerFace: return "inner-face";
    case MorphismClass::kOuterFace: return "outer-face";
    case MorphismClass::kMixed: return "mixed";
  }
  return "?";
}

Subtree image_subtree(const TreeMap& f) {
  std::set<int> verts;
  for (const auto& img : vertex_map(f)) verts.insert(img.begin(), img.end());
  return extract_subtree(f.target, f.edge_map[f.source.root()], std::vector<int>(verts.begin(), verts.end()));
}

MorphismClass classify(const TreeMap& f) {
  bool inj = is_injective(f);
  bool surj = is_surjective(f);
  if (inj && surj) return MorphismClass::kIso;
  auto vm = vertex_map(f);
  if (surj) {
    bool small = std::all_of(vm.begin(), vm.end(), [](const auto& img) { return img.size() <= 1; });
    return small ? MorphismClass::kDegeneracy : MorphismClass::kMixed;
  }
  if (!inj) return MorphismClass::kMixed;
  if (std::all_of(vm.begin(), vm.end(), [](const auto& img) { return img.size() == 1; }))
    return MorphismClass::kOuterFace;
  std::set<int> covered;
  for (const auto& img : vm) covered.insert(img.begin(), img.end());
  if (static_cast<int>(covered.size()) == f.target.num_vertices() &&
      f.edge_map[f.source.root()] == f.target.root())
    return MorphismClass::kInnerFace;
  return MorphismClass::kMixed;
}

Factorization factor_inner_outer(const TreeMap& f) {
  if (!validate(f)) throw Error(ErrorKind::kInvalidMap, "not a map of trees");
  if (!is_injective(f)) throw Error(ErrorKind::kInvalidMap, "inner/outer factorization needs an injective map");
  Subtree sub = image_subtree(f);
  std::vector<int> back(f.target.num_edges(), -1);
  for (std::size_t i = 0; i < sub.inclusion.size(); ++i) back[sub.inclusion[i]] = static_cast<int>(i);
  std::vector<int> inner(f.edge_map.size());
  for (std::size_t e = 0; e < inner.size(); ++e) inner[e] = back[f.edge_map[e]];
  TreeMap first{f.source, sub.tree, std::move(inner)};
  TreeMap second{sub.tree, f.target, sub.inclusion};
  return {std::move(first), std::move(second)};
}

Factorization factor_standard(const TreeMap& f) {
  if (!validate(f)) throw Error(ErrorKind::kInvalidMap, "not a map of trees");
  std::vector<int> image(f.edge_map.begin(), f.edge_map.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  auto rank = [&](int e) {
    return static_cast<int>(std::lower_bound(image.begin(), image.end(), e) - image.begin());
  };
  auto vm = vertex_map(f);
  std::vector<Vertex> vs;
  for (int v = 0; v < f.source.num_vertices(); ++v) {
    if (vm[v].empty()) continue;  // collapsed unary vertex
    const Vertex& vx = f.source.vertex(v);
    Vertex nv{rank(f.edge_map[vx.out]), {}};
    for (int i : vx.ins) nv.ins.push_back(rank(f.edge_map[i]));
    vs.push_back(std::move(nv));
  }
  Tree middle = Tree::make(f.source.variant(), static_cast<int>(image.size()),
                           rank(f.edge_map[f.source.root()]), std::move(vs));
  std::vector<int> neg(f.edge_map.size());
  for (std::size_t e = 0; e < neg.size(); ++e) neg[e] = rank(f.edge_map[e]);
  TreeMap first{f.source, middle, std::move(neg)};
  TreeMap second{middle, f.target, image};
  if (!validate(first) || !validate(second) || !is_injective(second))
    throw Error(ErrorKind::kInvalidMap, "map does not factor as degeneracy followed by face");
  return {std::move(first), std::move(second)};
}

ReedyStructure outer_reedy() {
  return {"outer",
          [](const TreeMap& f) {
            auto c = classify(f);
            return c == MorphismClass::kIso || c == MorphismClass::kOuterFace;
          },
          [](const TreeMap& f) {
            auto c = classify(f);
            return c == MorphismClass::kIso || c == MorphismClass::kInnerFace;
          },
          DegreeKind::kWeight};
}

ReedyStructure standard_reedy() {
  return {"standard", [](const TreeMap& f) { return is_injective(f); },
          [](const TreeMap& f) {
            auto c = classify(f);
            return c == MorphismClass::kIso || c == MorphismClass::kDegeneracy;
          },
          DegreeKind::kSize};
}

ReedyStructure swapped(const ReedyStructure& r) { return {r.name + "-swapped", r.negative, r.positive, r.degree}; }

std::vector<Factorization> all_factorizations(const TreeMap& f, const ReedyStructure& r,
                                              const std::vector<Tree>& middles) {
  std::vector<Factorization> out;
  for (const Tree& m : middles) {
    auto firsts = hom_set(f.source, m);
    auto seconds = hom_set(m, f.target);
    for (const auto& a : firsts) {
      if (!r.negative(a)) continue;
      for (const auto& b : seconds) {
        if (!r.positive(b)) continue;
        bool equal = true;
        for (std::size_t e = 0; e < f.edge_map.size() && equal; ++e)
          equal = b.edge_map[a.edge_map[e]] == f.edge_map[e];
        if (equal) out.push_back({a, b});
      }
    }
  }
  return out;
}

std::string describe(const TreeMap& f) {
  std::ostringstream os;
  os << canonical_code(f.source).bytes << " -> " << canonical_code(f.target).bytes << " [";
  for (std::size_t e = 0; e < f.edge_map.size(); ++e) os << (e ? "," : "") << e << ":" << f.edge_map[e];
  os << "]";
  return os.str();
}

namespace {

bool is_identity_edges(const std::vector<int>& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> compose_edges(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

}  // namespace

ReedyReport verify_reedy(const ReedyStructure& r, TreeVariant variant, int bound) {
  ReedyReport rep;
  auto objects = enumerate_representatives(variant, r.degree, bound);
  rep.objects = objects.size();
  auto fail = [&](std::string axiom, std::string what) {
    rep.pass = false;
    rep.axiom = std::move(axiom);
    rep.counterexample = std::move(what);
    return rep;
  };
  for (const Tree& s : objects) {
    for (const Tree& t : objects) {
      for (const TreeMap& f : hom_set(s, t)) {
        ++rep.morphisms;
        bool pos = r.positive(f), neg = r.negative(f);
        int ds = degree(s, r.degree), dt = degree(t, r.degree);
        if (classify(f) == MorphismClass::kIso) {
          if (!pos || !neg) return fail("isomorphisms", "iso not in both classes: " + describe(f));
          continue;
        }
        if (pos && !(ds < dt)) return fail("degree", "positive map does not raise degree: " + describe(f));
        if (neg && !(ds > dt)) return fail("degree", "negative map does not lower degree: " + describe(f));
      }
    }
  }
  for (const Tree& s : objects) {
    auto aut_s = automorphisms(s);
    for (const Tree& t : objects) {
      auto aut_t = automorphisms(t);
      for (const TreeMap& f : hom_set(s, t)) {
        auto facts = all_factorizations(f, r, objects);
        rep.factorizations += facts.size();
        if (facts.empty()) return fail("factorization", "no factorization: " + describe(f));
        const auto& base = facts.front();
        for (const auto& other : facts) {
          if (!(other.middle() == base.middle()))
            return fail("factorization", "middle objects not isomorphic: " + describe(f));
          int connecting = 0;
          for (const auto& phi : automorphisms(base.middle())) {
            if (compose_edges(phi, base.first.edge_map) == other.first.edge_map &&
                compose_edges(other.second.edge_map, phi) == base.second.edge_map)
              ++connecting;
          }
          if (connecting != 1)
            return fail("factorization", "factorizations not related by a unique iso: " + describe(f));
        }
        // Automorphisms fixing a negative (resp. positive) map are identities.
        if (r.negative(f)) {
          for (const auto& theta : aut_t)
            if (!is_identity_edges(theta) && compose_edges(theta, f.edge_map) == f.edge_map)
              return fail("automorphisms", "nontrivial automorphism fixes negative map " + describe(f));
        }
        if (r.positive(f)) {
          for (const auto& theta : aut_s)
            if (!is_identity_edges(theta) && compose_edges(f.edge_map, theta) == f.edge_map)
              return fail("automorphisms", "nontrivial automorphism fixes positive map " + describe(f));
        }
      }
    }
  }
  return rep;
}

std::vector<TreeMap> expansions(const Tree& t) {
  if (t.has_stump() || t.has_unary())
    throw Error(ErrorKind::kWrongVariant, "expansions are defined for reduced-open trees");
  std::vector<TreeMap> out;
  std::vector<int> id(t.num_edges());
  std::iota(id.begin(), id.end(), 0);
  for (int v = 0; v < t.num_vertices(); ++v) {
    const auto& ins = t.vertex(v).ins;
    const int k = static_cast<int>(ins.size());
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      int upper = __builtin_popcount(mask);
      if (upper < 2 || upper > k - 1) continue;
      int fresh = t.num_edges();
      std::vector<Vertex> vs = t.vertices();
      Vertex lower{ins.empty() ? 0 : t.vertex(v).out, {}};
      Vertex top{fresh, {}};
      for (int i = 0; i < k; ++i) ((mask >> i) & 1u ? top.ins : lower.ins).push_back(ins[i]);
      lower.ins.push_back(fresh);
      vs[v] = lower;
      vs.push_back(top);
      Tree s = Tree::make(t.variant(), fresh + 1, t.root(), std::move(vs));
      out.push_back(TreeMap{t, s, id});
    }
  }
  return out;
}

}  // namespace dendro
