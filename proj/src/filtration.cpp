#include "dendro/filtration.hpp"

#include <algorithm>
#include <map>

#include "dendro/error.hpp"

namespace dendro {

namespace {

const TreeVariant kOr = TreeVariant::kReducedOpen;

int leaf_count(const Tree& t) { return static_cast<int>(t.leaves().size()); }

bool is_corolla(const Tree& t, int n) { return t.num_vertices() == 1 && t.max_arity() == n; }

std::vector<int> inverse(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

// Every object of sub with at most `leaves` leaves is stored in w.
void require_slice(const Truncation& w, const AritySubcat& sub, int leaves) {
  for (const auto& t : enumerate_representatives(kOr, DegreeKind::kWeight, 2 * leaves - 1))
    if (sub.contains(t) && leaf_count(t) <= leaves && w.index_of(t) < 0)
      throw Error(ErrorKind::kWindowTooSmall, sub.name() + " object " + canonical_code(t).bytes + " missing from " +
                                                  w.label());
}

// A subtree of t seen as a map from its representative in w.
struct Placed {
  int object = 0;
  std::vector<int> edge_map;  // rep edges -> edges of t
};

Placed place(const Truncation& w, const Subtree& s) {
  auto [idx, psi] = to_representative(w, s.tree);
  std::vector<int> back = inverse(psi);
  Placed p{idx, std::vector<int>(psi.size())};
  for (std::size_t r = 0; r < psi.size(); ++r) p.edge_map[r] = s.inclusion[back[r]];
  return p;
}

int find_object(const CommaLimit& c, const Placed& p) {
  for (int q = 0; q < static_cast<int>(c.objects.size()); ++q)
    if (c.objects[q].first == p.object && c.objects[q].second.edge_map == p.edge_map) return q;
  throw Error(ErrorKind::kInvalidMap, "slice object missing from the brute-force limit");
}

// The closed form as a limit over placed pieces, with the comparison from
// the brute-force limit obtained by projecting onto the same pieces.
struct ClosedDiagram {
  std::vector<Placed> objects;
  std::vector<SSetArrow> arrows;
};

KanResult compare(const LeanDSpace& x, const Tree& t, const ClosedDiagram& cd,
                  const std::function<bool(int, const TreeMap&)>& keep) {
  KanResult out;
  std::vector<SSet> objs;
  for (const auto& p : cd.objects) objs.push_back(x.values[p.object]);
  SSetLimit closed = sset_limit(objs, cd.arrows, x.level());
  CommaLimit brute = comma_limit(x, t, keep);
  std::vector<int> pos;
  for (const auto& p : cd.objects) pos.push_back(find_object(brute, p));
  const int top = std::min(closed.value.trunc, brute.value.trunc);
  bool found = true;
  std::vector<int> tup(pos.size());
  for (int l = 0; l <= top; ++l) {
    std::vector<int> lv;
    for (const auto& bt : brute.levels[l].tuples) {
      for (std::size_t q = 0; q < pos.size(); ++q) tup[q] = bt[pos[q]];
      lv.push_back(closed.levels[l].find(tup));
      found = found && lv.back() >= 0;
    }
    out.witness.levels.push_back(std::move(lv));
  }
  out.closed_form = std::move(closed.value);
  out.brute = std::move(brute.value);
  out.iso = found && is_levelwise_bijective(out.witness, out.brute, out.closed_form);
  return out;
}

ClosedDiagram w_diagram(const Truncation& w, const Tree& t, int n) {
  ClosedDiagram cd;
  for (const auto& p : max_subtrees(t, n).pieces) cd.objects.push_back(place(w, p));
  return cd;
}

ClosedDiagram v_diagram(const LeanDSpace& x, const Tree& t, int n) {
  const Truncation& w = *x.trunc;
  CutDecomposition cut = cut_decomposition(t, n);
  const int eta = w.index_of(Tree::eta());
  if (eta < 0) throw Error(ErrorKind::kWindowTooSmall, "η missing from " + w.label());
  ClosedDiagram cd;
  for (const auto& p : cut.pieces) cd.objects.push_back(place(w, p));
  const int np = static_cast<int>(cut.pieces.size());
  // X(R) -> X(η) along the inclusion of the edge e of t into piece k.
  auto edge_arrow = [&](int k, int e, int dst) {
    const Placed& p = cd.objects[k];
    int r = static_cast<int>(std::find(p.edge_map.begin(), p.edge_map.end(), e) - p.edge_map.begin());
    cd.arrows.push_back({k, dst, x.action(eta, p.object, w.arrow_index(eta, p.object, {r}))});
  };
  for (int c = 1; c < np; ++c) {
    const int e = cut.roots[c];
    const int dst = static_cast<int>(cd.objects.size());
    cd.objects.push_back({eta, {e}});
    edge_arrow(c, e, dst);
    for (int k = 0; k < np; ++k) {
      const auto& inc = cut.pieces[k].inclusion;
      if (k != c && std::find(inc.begin(), inc.end(), e) != inc.end()) edge_arrow(k, e, dst);
    }
  }
  return cd;
}

SSet closed_value(const LeanDSpace& x, const ClosedDiagram& cd) {
  std::vector<SSet> objs;
  for (const auto& p : cd.objects) objs.push_back(x.values[p.object]);
  return sset_limit(objs, cd.arrows, x.level()).value;
}

// Automorphism of the corolla c whose leaf permutation is p.
std::vector<int> corolla_automorphism(const Tree& c, const std::vector<int>& p) {
  std::vector<int> em(c.num_edges());
  em[c.root()] = c.root();
  const auto leaves = c.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) em[leaves[i]] = leaves[p[i]];
  return em;
}

int latching_object(const Latching& l, int j, const std::vector<int>& em) {
  for (int q = 0; q < static_cast<int>(l.objects.size()); ++q)
    if (l.objects[q].first == j && l.objects[q].second.edge_map == em) return q;
  return -1;
}

}  // namespace

bool AritySubcat::contains(const Tree& t) const {
  if (!satisfies_variant(t, kOr)) return false;
  return t.max_arity() <= n || (plus && is_corolla(t, n + 1));
}

std::string AritySubcat::name() const { return "Ω_or^(" + std::to_string(n) + ")" + (plus ? "+" : ""); }

TruncationPtr arity_window(const AritySubcat& sub, int weight_bound, int max_leaves) {
  std::vector<Tree> trees;
  for (auto& t : enumerate_representatives(kOr, DegreeKind::kWeight, weight_bound))
    if (t.max_arity() <= sub.n && (max_leaves < 0 || leaf_count(t) <= max_leaves)) trees.push_back(std::move(t));
  if (sub.plus && (max_leaves < 0 || sub.n + 1 <= max_leaves)) trees.push_back(Tree::corolla(sub.n + 1));
  return Truncation::from_trees(kOr, trees, sub.name() + " w<=" + std::to_string(weight_bound));
}

TruncationPtr slice_window(const AritySubcat& sub, int leaves) {
  return arity_window(sub, 2 * leaves - 1, leaves);
}

LeanDSpace restrict(const LeanDSpace& x, const AritySubcat& sub) {
  const Truncation& w = *x.trunc;
  std::vector<Tree> keep;
  for (int i = 0; i < w.size(); ++i)
    if (sub.contains(w.object(i))) keep.push_back(w.object(i));
  if (sub.plus && w.index_of(Tree::corolla(sub.n + 1)) < 0)
    throw Error(ErrorKind::kWindowTooSmall, "C_" + std::to_string(sub.n + 1) + " missing from " + w.label());
  return restrict_to(x, Truncation::from_trees(w.variant(), keep, sub.name()));
}

MaxDecomposition max_subtrees(const Tree& t, int n) {
  const int nv = t.num_vertices();
  std::vector<char> good(nv);
  for (int v = 0; v < nv; ++v) good[v] = static_cast<int>(t.vertex(v).ins.size()) <= n;
  UnionFind uf(std::max(nv, 1));
  for (int e : t.inner_edges()) {
    int a = t.vertex_above(e), b = t.vertex_below(e);
    if (good[a] && good[b]) uf.unite(a, b);
  }
  std::map<int, std::vector<int>> comps;
  for (int v = 0; v < nv; ++v)
    if (good[v]) comps[uf.find(v)].push_back(v);
  MaxDecomposition out;
  std::vector<char> covered(t.num_edges(), 0);
  for (auto& [rep, vs] : comps) {
    int root = -1;
    for (int v : vs) {
      int below = t.vertex_below(t.vertex(v).out);
      if (below < 0 || uf.find(below) != rep || !good[below]) root = t.vertex(v).out;
    }
    out.pieces.push_back(extract_subtree(t, root, vs));
    for (int e : out.pieces.back().inclusion) covered[e] = 1;
  }
  for (int e = 0; e < t.num_edges(); ++e)
    if (!covered[e]) out.pieces.push_back(extract_subtree(t, e, {}));
  auto root_of = [](const Subtree& s) { return s.inclusion[s.tree.root()]; };
  std::sort(out.pieces.begin(), out.pieces.end(),
            [&](const Subtree& a, const Subtree& b) { return root_of(a) < root_of(b); });
  return out;
}

CutDecomposition cut_decomposition(const Tree& t, int n) {
  if (t.max_arity() > n)
    throw Error(ErrorKind::kWrongSubcategory, "tree has a vertex of arity " + std::to_string(t.max_arity()));
  auto arity = [&](int v) { return v < 0 ? -1 : static_cast<int>(t.vertex(v).ins.size()); };
  CutDecomposition out;
  std::vector<char> cut(t.num_edges(), 0);
  for (int e : t.inner_edges())
    if (arity(t.vertex_above(e)) == n || arity(t.vertex_below(e)) == n) {
      cut[e] = 1;
      out.cut_edges.push_back(e);
    }
  out.roots.push_back(t.root());
  out.roots.insert(out.roots.end(), out.cut_edges.begin(), out.cut_edges.end());
  for (int r : out.roots) {
    std::vector<int> vs, stack;
    if (t.vertex_above(r) >= 0) stack.push_back(t.vertex_above(r));
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      vs.push_back(v);
      for (int e : t.vertex(v).ins)
        if (!cut[e] && t.vertex_above(e) >= 0) stack.push_back(t.vertex_above(e));
    }
    std::sort(vs.begin(), vs.end());
    out.pieces.push_back(extract_subtree(t, r, vs));
  }
  return out;
}

KanMode parse_kan_mode(std::string_view s) {
  if (s == "closed_form") return KanMode::kClosedForm;
  if (s == "brute") return KanMode::kBrute;
  if (s == "both") return KanMode::kBoth;
  throw Error(ErrorKind::kInvalidInput, "unknown mode " + std::string(s));
}

SSet ran_w(const LeanDSpace& x, int n, const Tree& t, KanMode mode) {
  const AritySubcat sub{n, false};
  require_slice(*x.trunc, sub, leaf_count(t));
  if (mode == KanMode::kClosedForm) return closed_value(x, w_diagram(*x.trunc, t, n));
  const Truncation& w = *x.trunc;
  return comma_limit(x, t, [&](int i, const TreeMap&) { return sub.contains(w.object(i)); }).value;
}

KanResult ran_w_compare(const LeanDSpace& x, int n, const Tree& t) {
  const AritySubcat sub{n, false};
  const Truncation& w = *x.trunc;
  require_slice(w, sub, leaf_count(t));
  return compare(x, t, w_diagram(w, t, n), [&](int i, const TreeMap&) { return sub.contains(w.object(i)); });
}

SSet ran_v(const LeanDSpace& x, int n, const Tree& t, KanMode mode) {
  const AritySubcat sub{n - 1, true};
  require_slice(*x.trunc, sub, leaf_count(t));
  if (mode == KanMode::kClosedForm) return closed_value(x, v_diagram(x, t, n));
  const Truncation& w = *x.trunc;
  if (t.max_arity() > n) throw Error(ErrorKind::kWrongSubcategory, "tree outside " + AritySubcat{n, false}.name());
  return comma_limit(x, t, [&](int i, const TreeMap&) { return sub.contains(w.object(i)); }).value;
}

KanResult ran_v_compare(const LeanDSpace& x, int n, const Tree& t) {
  const AritySubcat sub{n - 1, true};
  const Truncation& w = *x.trunc;
  require_slice(w, sub, leaf_count(t));
  return compare(x, t, v_diagram(x, t, n), [&](int i, const TreeMap&) { return sub.contains(w.object(i)); });
}

GSSet corolla_latching(const LeanDSpace& x, int n, int level_cap) {
  const Tree c = canonical_representative(Tree::corolla(n));
  Latching l = latching(x, c, ReedySystem::kOuter, level_cap);
  GSSet out{l.colimit.value, Group::symmetric(n), {}};
  const Group& g = out.g;
  out.action.resize(level_cap + 1);
  for (int k = 0; k <= level_cap; ++k) {
    const Colimit& col = l.colimit.levels[k];
    out.action[k].assign(g.order, std::vector<int>(col.size));
    for (int h = 0; h < g.order; ++h) {
      const auto theta = corolla_automorphism(c, g.perms[g.inv[h]]);
      for (int z = 0; z < col.size; ++z) {
        auto [o, y] = col.representatives[z];
        const auto& [j, f] = l.objects[o];
        std::vector<int> em(theta.size());
        for (std::size_t e = 0; e < em.size(); ++e) em[e] = f.edge_map[theta[e]];
        out.action[k][h][z] = col.injections[latching_object(l, j, em)][y];
      }
    }
  }
  return out;
}

LeanDSpace extend_at_corolla(const LeanDSpace& x0, int n, const GSSet& z, const SSetMap& attach,
                             const std::optional<SSetMap>& match) {
  const int cap = z.x.trunc;
  const Truncation& w = *x0.trunc;
  const Tree c = canonical_representative(Tree::corolla(n));
  if (w.index_of(c) >= 0) throw Error(ErrorKind::kInvalidInput, "C_" + std::to_string(n) + " already present");
  for (int i = 0; i < w.size(); ++i)
    if (w.object(i).max_arity() >= n)
      throw Error(ErrorKind::kWrongSubcategory, "object of arity >= " + std::to_string(n) + " in " + w.label());
  if (z.g.order < 1 || z.g.perms.empty() || static_cast<int>(z.g.perms[0].size()) != n ||
      z.g.order != Group::symmetric(n).order)
    throw Error(ErrorKind::kIncompatibleAttach, "z must carry an action of the full symmetric group");
  const int eta = w.index_of(Tree::eta());
  if (eta < 0) throw Error(ErrorKind::kWindowTooSmall, "η missing from " + w.label());

  LeanDSpace x = at_level(x0, cap);
  Latching lat = latching(x, c, ReedySystem::kOuter, cap);
  if (attach.top() < cap) throw Error(ErrorKind::kIncompatibleAttach, "attach map stops below level " + std::to_string(cap));
  std::optional<Matching> mat;
  if (match) {
    mat = matching(x, c, ReedySystem::kOuter);
  } else {
    for (int k = 0; k <= cap; ++k)
      if (sset_eval(x.values[eta], k) != 1)
        throw Error(ErrorKind::kIncompatibleAttach, "a matching map is required when X(η) is not a point");
  }

  std::vector<Tree> trees;
  for (int i = 0; i < w.size(); ++i) trees.push_back(w.object(i));
  trees.push_back(c);
  TruncationPtr big = Truncation::from_trees(w.variant(), trees, w.label() + " + C_" + std::to_string(n));
  const int nb = big->size();
  const int ci = big->index_of(c);
  std::vector<int> old(nb);
  for (int i = 0; i < nb; ++i) old[i] = w.index_of(big->code(i));

  LeanDSpace out;
  out.trunc = big;
  for (int i = 0; i < nb; ++i) out.values.push_back(i == ci ? z.x : truncate(x.values[old[i]], cap));
  auto trimmed = [&](SSetMap m) {
    m.levels.resize(cap + 1);
    return m;
  };
  const auto leaves = c.leaves();
  out.actions.assign(nb, std::vector<std::vector<SSetMap>>(nb));
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (const auto& f : big->hom(i, j)) {
        SSetMap m;
        if (i != ci && j != ci) {
          m = trimmed(x.action(old[i], old[j], w.arrow_index(old[i], old[j], f.edge_map)));
        } else if (i == ci && j == ci) {
          // X(θ) is the action of π(θ)^{-1}.
          std::vector<int> pi_inv(n);
          for (int q = 0; q < n; ++q)
            pi_inv[std::find(leaves.begin(), leaves.end(), f.edge_map[leaves[q]]) - leaves.begin()] = q;
          const int h = static_cast<int>(std::find(z.g.perms.begin(), z.g.perms.end(), pi_inv) - z.g.perms.begin());
          for (int k = 0; k <= cap; ++k) m.levels.push_back(z.action[k][h]);
        } else if (i == ci) {
          // f = outer o inner; X(f) = attach o (inner summand) o X(outer).
          Factorization fac = factor_inner_outer(f);
          auto [r, psi] = to_representative(w, fac.middle());
          std::vector<int> psi_inv = inverse(psi), em1(f.edge_map.size()), em2(psi.size());
          for (std::size_t e = 0; e < em1.size(); ++e) em1[e] = psi[fac.first.edge_map[e]];
          for (std::size_t q = 0; q < em2.size(); ++q) em2[q] = fac.second.edge_map[psi_inv[q]];
          const int p = latching_object(lat, r, em1);
          if (p < 0) throw Error(ErrorKind::kInvalidMap, "map out of C_n misses the latching diagram");
          const SSetMap& outer = x.action(r, old[j], w.arrow_index(r, old[j], em2));
          for (int k = 0; k <= cap; ++k) {
            std::vector<int> lv;
            for (int y = 0; y < out.values[j].sizes[k]; ++y)
              lv.push_back(attach.levels[k][lat.colimit.levels[k].injections[p][outer.levels[k][y]]]);
            m.levels.push_back(std::move(lv));
          }
        } else {
          // η -> C_n, read off the matching map.
          int p = 0;
          if (mat) {
            const auto& objs = mat->limit.objects;
            while (objs[p].second.edge_map != f.edge_map) ++p;
          }
          for (int k = 0; k <= cap; ++k) {
            std::vector<int> lv;
            for (int y = 0; y < z.x.sizes[k]; ++y) lv.push_back(mat ? mat->limit.levels[k].tuples[(*match)(k, y)][p] : 0);
            m.levels.push_back(std::move(lv));
          }
        }
        out.actions[i][j].push_back(std::move(m));
      }
  auto rep = check_functoriality(out);
  if (!rep.ok) throw Error(ErrorKind::kIncompatibleAttach, rep.failure);
  return out;
}

DownwardsReport downwards_closed_check(TruncationPtr sub, const LeanDSpace& x, int level) {
  const Truncation& w = *x.trunc;
  const ReedyStructure r = outer_reedy();
  DownwardsReport out;
  auto fail = [&](bool& flag, const std::string& why) {
    if (out.detail.empty()) out.detail = why;
    flag = false;
  };
  for (int c = 0; c < sub->size(); ++c)
    for (int i = 0; i < w.size(); ++i) {
      if (sub->index_of(w.code(i)) >= 0) continue;
      const int ci = w.index_of(sub->code(c));
      for (const auto& f : w.hom(i, ci))
        if (r.positive(f)) fail(out.definitional, "positive " + describe(f) + " leaves the subcategory");
      for (const auto& f : w.hom(ci, i))
        if (r.negative(f)) fail(out.definitional, "negative " + describe(f) + " leaves the subcategory");
    }
  LeanDSpace y = restrict_to(x, sub);
  for (int c = 0; c < sub->size(); ++c) {
    const Tree& t = sub->object(c);
    const std::string where = canonical_code(t).bytes;
    ++out.objects_checked;

    Latching lb = latching(x, t, ReedySystem::kOuter, level), ls = latching(y, t, ReedySystem::kOuter, level);
    SSetMap lmap;
    bool found = true;
    for (int k = 0; k <= level; ++k) {
      std::vector<int> lv;
      for (const auto& [o, e] : ls.colimit.levels[k].representatives) {
        const auto& [j, f] = ls.objects[o];
        int q = latching_object(lb, w.index_of(sub->code(j)), f.edge_map);
        found = found && q >= 0;
        lv.push_back(q >= 0 ? lb.colimit.levels[k].injections[q][e] : -1);
      }
      lmap.levels.push_back(std::move(lv));
    }
    if (!found || !is_levelwise_bijective(lmap, ls.colimit.value, lb.colimit.value))
      fail(out.latching_iso, "latching at " + where + " changes under restriction");

    Matching mb = matching(x, t, ReedySystem::kOuter), ms = matching(y, t, ReedySystem::kOuter);
    const int top = std::min({level, mb.limit.value.trunc, ms.limit.value.trunc});
    std::vector<int> pos;
    for (const auto& [i, f] : ms.limit.objects) {
      const int bi = w.index_of(sub->code(i));
      int q = 0;
      const auto& bo = mb.limit.objects;
      while (q < static_cast<int>(bo.size()) && !(bo[q].first == bi && bo[q].second.edge_map == f.edge_map)) ++q;
      pos.push_back(q);
    }
    SSetMap mmap;
    found = true;
    for (int k = 0; k <= top; ++k) {
      std::vector<int> lv, tup(pos.size());
      for (const auto& bt : mb.limit.levels[k].tuples) {
        for (std::size_t p = 0; p < pos.size(); ++p) tup[p] = bt[pos[p]];
        lv.push_back(ms.limit.levels[k].find(tup));
        found = found && lv.back() >= 0;
      }
      mmap.levels.push_back(std::move(lv));
    }
    if (!found || !is_levelwise_bijective(mmap, mb.limit.value, ms.limit.value))
      fail(out.matching_iso, "matching at " + where + " changes under restriction");
  }
  return out;
}

DownwardsReport downwards_closed_check(const AritySubcat& sub, const LeanDSpace& x, int level) {
  const Truncation& w = *x.trunc;
  std::vector<Tree> keep;
  for (int i = 0; i < w.size(); ++i)
    if (sub.contains(w.object(i))) keep.push_back(w.object(i));
  return downwards_closed_check(Truncation::from_trees(w.variant(), keep, sub.name()), x, level);
}

}  // namespace dendro
