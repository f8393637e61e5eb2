#include <algorithm>
#include <map>
#include <set>

#include "dendro/error.hpp"
#include "dendro/presheaf.hpp"

namespace dendro {

ReedyStructure reedy_structure(ReedySystem s) { return s == ReedySystem::kOuter ? outer_reedy() : standard_reedy(); }

std::string_view to_string(ReedySystem s) { return s == ReedySystem::kOuter ? "outer" : "standard"; }

ReedySystem parse_system(std::string_view s) {
  if (s == "outer") return ReedySystem::kOuter;
  if (s == "standard") return ReedySystem::kStandard;
  throw Error(ErrorKind::kInvalidInput, "unknown Reedy structure '" + std::string(s) + "'");
}

namespace {

// t itself when its class is in the truncation, so that hom sets line up
// with the stored arrows.
Tree canonical_in(const Truncation& w, const Tree& t, int* idx) {
  *idx = w.index_of(t);
  return *idx >= 0 ? w.object(*idx) : t;
}

}  // namespace

Matching matching(const LeanDSpace& x, const Tree& t0, ReedySystem system) {
  const ReedyStructure r = reedy_structure(system);
  int ti = -1;
  Tree t = canonical_in(*x.trunc, t0, &ti);
  Matching out;
  out.limit =
      comma_limit(x, t, [&](int, const TreeMap& f) { return classify(f) != MorphismClass::kIso && r.positive(f); });
  if (ti < 0) return out;
  const Truncation& w = *x.trunc;
  const SSet& lv = out.limit.value;
  SSet xt = extend(x.values[ti], lv.trunc);
  std::vector<SSetMap> acts;
  for (const auto& [i, f] : out.limit.objects) {
    SSet xi = extend(x.values[i], lv.trunc);
    acts.push_back(extend_map(x.action(i, ti, w.arrow_index(i, ti, f.edge_map)), xt, xi, lv.trunc));
  }
  SSetMap c;
  std::vector<int> tup(acts.size());
  for (int l = 0; l <= lv.trunc; ++l) {
    std::vector<int> level(xt.sizes[l]);
    for (int y = 0; y < xt.sizes[l]; ++y) {
      for (std::size_t q = 0; q < acts.size(); ++q) tup[q] = acts[q].levels[l][y];
      level[y] = out.limit.levels[l].find(tup);
    }
    c.levels.push_back(std::move(level));
  }
  out.comparison = std::move(c);
  return out;
}

Latching latching(const LeanDSpace& x, const Tree& t0, ReedySystem system, int level_cap) {
  const ReedyStructure r = reedy_structure(system);
  const Truncation& w = *x.trunc;
  int ti = -1;
  Tree t = canonical_in(w, t0, &ti);
  Latching out;
  for (int j = 0; j < w.size(); ++j)
    for (auto& f : hom_set(t, w.object(j), std::max({kDefaultHomBudget, size(t), size(w.object(j))})))
      if (classify(f) != MorphismClass::kIso && r.negative(f)) out.objects.emplace_back(j, std::move(f));
  std::vector<SSet> objs;
  for (const auto& [j, f] : out.objects) objs.push_back(x.values[j]);
  // a: o_j -> o_k with a o f = g sends the (k, g) summand to the (j, f) summand.
  std::vector<SSetArrow> arrows;
  for (int p = 0; p < static_cast<int>(out.objects.size()); ++p)
    for (int q = 0; q < static_cast<int>(out.objects.size()); ++q) {
      if (p == q) continue;
      const auto& [j, f] = out.objects[p];
      const auto& [k, g] = out.objects[q];
      for (int a = 0; a < static_cast<int>(w.hom(j, k).size()); ++a) {
        const auto& am = w.hom(j, k)[a].edge_map;
        bool ok = true;
        for (std::size_t e = 0; e < f.edge_map.size() && ok; ++e) ok = am[f.edge_map[e]] == g.edge_map[e];
        if (ok) arrows.push_back({q, p, x.action(j, k, a)});
      }
    }
  out.colimit = sset_colimit(objs, arrows, level_cap);
  if (ti < 0) return out;
  const SSet& cv = out.colimit.value;
  SSet xt = extend(x.values[ti], cv.trunc);
  std::vector<SSetMap> acts;
  for (const auto& [j, f] : out.objects) {
    SSet xj = extend(x.values[j], cv.trunc);
    acts.push_back(extend_map(x.action(ti, j, w.arrow_index(ti, j, f.edge_map)), xj, xt, cv.trunc));
  }
  SSetMap c;
  for (int l = 0; l <= cv.trunc; ++l) {
    std::vector<int> level(cv.sizes[l]);
    for (int z = 0; z < cv.sizes[l]; ++z) {
      auto [o, e] = out.colimit.levels[l].representatives[z];
      level[z] = acts[o].levels[l][e];
    }
    c.levels.push_back(std::move(level));
  }
  out.comparison = std::move(c);
  return out;
}

bool is_lean_via_matching(const LeanDSpace& x, ReedySystem system, int n, int level) {
  const ReedyStructure r = reedy_structure(system);
  const Truncation& w = *x.trunc;
  for (const auto& v : x.values)
    if (!v.coskeletal) return false;
  for (int i = 0; i < w.size(); ++i) {
    if (degree(w.object(i), r.degree) <= n) continue;
    Matching m = matching(x, w.object(i), system);
    const int top = std::min(level, m.limit.value.trunc);
    SSet xs = extend(x.values[i], top), ms = extend(m.limit.value, top);
    SSetMap c = *m.comparison;
    c.levels.resize(top + 1);
    if (!is_levelwise_bijective(c, xs, ms)) return false;
  }
  return true;
}

// ------------------------------------------------------------------ skeleta

SubPresheaf skeleton(const LeanDSpace& x0, int n, int level_cap) {
  LeanDSpace x = at_level(x0, level_cap);
  const Truncation& w = *x.trunc;
  const int nobj = w.size();
  // marks[i][l][e]
  std::vector<std::vector<std::vector<char>>> marks(nobj);
  for (int i = 0; i < nobj; ++i)
    for (int l = 0; l <= level_cap; ++l) marks[i].emplace_back(x.values[i].sizes[l], 0);
  for (int i = 0; i < nobj; ++i)
    for (int j = 0; j < nobj; ++j) {
      const int sj = size(w.object(j));
      for (int kp = 0; kp <= level_cap && sj + kp <= n; ++kp)
        for (int a = 0; a < static_cast<int>(w.hom(i, j).size()); ++a)
          for (int y = 0; y < x.values[j].sizes[kp]; ++y) {
            int z = x.action(i, j, a).levels[kp][y];
            for (int l = kp; l <= level_cap; ++l)
              for (const auto& b : monotone_maps(l, kp)) marks[i][l][act(x.values[i], b, kp, z)] = 1;
          }
    }
  SubPresheaf out;
  out.value.trunc = x.trunc;
  std::vector<std::vector<int>> pos(nobj);
  for (int i = 0; i < nobj; ++i) {
    SubSSet sub = sub_sset(truncate(x.values[i], level_cap), marks[i]);
    out.value.values.push_back(std::move(sub.value));
    out.inclusion.components.push_back(std::move(sub.inclusion));
  }
  out.value.actions.assign(nobj, std::vector<std::vector<SSetMap>>(nobj));
  for (int i = 0; i < nobj; ++i) {
    // Inverse of the inclusion at i, level by level.
    std::vector<std::vector<int>> back(level_cap + 1);
    for (int l = 0; l <= level_cap; ++l) {
      back[l].assign(x.values[i].sizes[l], -1);
      const auto& inc = out.inclusion.components[i].levels[l];
      for (int p = 0; p < static_cast<int>(inc.size()); ++p) back[l][inc[p]] = p;
    }
    for (int j = 0; j < nobj; ++j)
      for (int a = 0; a < static_cast<int>(w.hom(i, j).size()); ++a) {
        SSetMap m;
        for (int l = 0; l <= level_cap; ++l) {
          std::vector<int> lv;
          for (int z : out.inclusion.components[j].levels[l]) lv.push_back(back[l][x.action(i, j, a).levels[l][z]]);
          m.levels.push_back(std::move(lv));
        }
        out.value.actions[i][j].push_back(std::move(m));
      }
  }
  return out;
}

// ------------------------------------------------------- joint limits, cosk

JointLimit joint_limit(const LeanDSpace& x, int t, int m, int max_k,
                       const std::function<bool(int, const TreeMap&, int, const std::vector<int>&)>& keep) {
  const Truncation& w = *x.trunc;
  JointLimit out;
  std::map<JointObject, int> where;
  for (int i = 0; i < w.size(); ++i)
    for (int f = 0; f < static_cast<int>(w.hom(i, t).size()); ++f)
      for (int k = 0; k <= max_k; ++k)
        for (auto& sigma : monotone_maps(k, m))
          if (keep(i, w.hom(i, t)[f], k, sigma)) {
            where.emplace(JointObject{i, f, k, sigma}, static_cast<int>(out.objects.size()));
            out.objects.push_back({i, f, k, std::move(sigma)});
          }
  Diagram d;
  for (const auto& o : out.objects) d.add_object(x.values[o.tree].sizes[o.k]);
  std::vector<int> em;
  for (int p = 0; p < static_cast<int>(out.objects.size()); ++p) {
    const JointObject& o = out.objects[p];
    const SSet& xo = x.values[o.tree];
    // (a, id): (j, g) -> (i, g o a)
    const auto& g = w.hom(o.tree, t)[o.map].edge_map;
    for (int i = 0; i < w.size(); ++i)
      for (int a = 0; a < static_cast<int>(w.hom(i, o.tree).size()); ++a) {
        const auto& am = w.hom(i, o.tree)[a].edge_map;
        em.resize(am.size());
        for (std::size_t e = 0; e < am.size(); ++e) em[e] = g[am[e]];
        int fi = w.arrow_index(i, t, em);
        auto it = where.find(JointObject{i, fi, o.k, o.sigma});
        if (it == where.end() || it->second == p) continue;
        d.add_arrow(p, it->second, x.action(i, o.tree, a).levels[o.k]);
      }
    // (id, δ_r) and (id, σ_r)
    for (int r = 0; r <= o.k && o.k >= 1; ++r) {
      std::vector<int> s = o.sigma;
      s.erase(s.begin() + r);
      auto it = where.find(JointObject{o.tree, o.map, o.k - 1, s});
      if (it != where.end()) d.add_arrow(p, it->second, xo.d[o.k][r]);
    }
    for (int r = 0; r <= o.k; ++r) {
      std::vector<int> s = o.sigma;
      s.insert(s.begin() + r, o.sigma[r]);
      auto it = where.find(JointObject{o.tree, o.map, o.k + 1, s});
      if (it != where.end()) d.add_arrow(p, it->second, xo.s[o.k][r]);
    }
  }
  out.limit = limit(d);
  return out;
}

JointLimit joint_matching(const LeanDSpace& x0, int t, int m) {
  LeanDSpace x = at_level(x0, std::max(m, 1));
  return joint_limit(x, t, m, m, [&](int, const TreeMap& f, int k, const std::vector<int>& sigma) {
    if (!is_injective(f)) return false;
    for (int p = 1; p <= k; ++p)
      if (sigma[p] == sigma[p - 1]) return false;
    return !(k == m && classify(f) == MorphismClass::kIso);
  });
}

std::vector<int> joint_matching_image(const LeanDSpace& x0, const JointLimit& jm, int t, int m, int elem) {
  LeanDSpace x = at_level(x0, std::max(m, 1));
  std::vector<int> tup;
  for (const auto& o : jm.objects) {
    int y = act(x.values[t], o.sigma, m, elem);
    tup.push_back(x.action(o.tree, t, o.map).levels[o.k][y]);
  }
  return tup;
}

Coskeleton coskeleton(const LeanDSpace& x0, int n) {
  const int top = std::max(n, 1);
  LeanDSpace x = at_level(x0, top);
  const Truncation& w = *x.trunc;
  const int nobj = w.size();
  Coskeleton out;
  out.n = n;
  out.value.trunc = x.trunc;
  out.families.resize(nobj);
  auto keep = [&](int i, const TreeMap&, int k, const std::vector<int>&) { return size(w.object(i)) + k <= n; };
  for (int t = 0; t < nobj; ++t) {
    for (int m = 0; m <= top; ++m) out.families[t].push_back(joint_limit(x, t, m, std::max(n, 0), keep));
    // Positions of the objects at every level.
    std::vector<std::map<JointObject, int>> where(top + 1);
    for (int m = 0; m <= top; ++m)
      for (int p = 0; p < static_cast<int>(out.families[t][m].objects.size()); ++p)
        where[m].emplace(out.families[t][m].objects[p], p);
    SSet v;
    v.trunc = top;
    v.coskeletal = true;
    for (int m = 0; m <= top; ++m) v.sizes.push_back(out.families[t][m].limit.size());
    // Faces and degeneracies reindex along δ_r o σ and σ_r o σ.
    auto reindex = [&](int from, int to, const std::vector<int>& op) {
      const auto& src = out.families[t][from];
      const auto& dst = out.families[t][to];
      std::vector<int> pick;
      for (const auto& o : dst.objects) {
        JointObject q = o;
        for (auto& s : q.sigma) s = op[s];
        pick.push_back(where[from].at(q));
      }
      std::vector<int> res(src.limit.size());
      std::vector<int> tup(pick.size());
      for (int e = 0; e < src.limit.size(); ++e) {
        for (std::size_t p = 0; p < pick.size(); ++p) tup[p] = src.limit.tuples[e][pick[p]];
        res[e] = dst.limit.find(tup);
      }
      return res;
    };
    v.d.resize(top + 1);
    for (int m = 1; m <= top; ++m)
      for (int r = 0; r <= m; ++r) {
        std::vector<int> op;  // δ_r: [m-1] -> [m]
        for (int p = 0; p < m; ++p) op.push_back(p < r ? p : p + 1);
        v.d[m].push_back(reindex(m, m - 1, op));
      }
    v.s.resize(top);
    for (int m = 0; m < top; ++m)
      for (int r = 0; r <= m; ++r) {
        std::vector<int> op;  // σ_r: [m+1] -> [m]
        for (int p = 0; p <= m + 1; ++p) op.push_back(p <= r ? p : p - 1);
        v.s[m].push_back(reindex(m, m + 1, op));
      }
    out.value.values.push_back(std::move(v));
  }
  // Actions: a: o_i -> o_j sends the (i', g) entries to the (i', a o g) entries.
  out.value.actions.assign(nobj, std::vector<std::vector<SSetMap>>(nobj));
  std::vector<int> em;
  for (int i = 0; i < nobj; ++i)
    for (int j = 0; j < nobj; ++j)
      for (const auto& a : w.hom(i, j)) {
        SSetMap f;
        for (int m = 0; m <= top; ++m) {
          const auto& src = out.families[j][m];
          const auto& dst = out.families[i][m];
          std::map<JointObject, int> where;
          for (int p = 0; p < static_cast<int>(src.objects.size()); ++p) where.emplace(src.objects[p], p);
          std::vector<int> pick;
          for (const auto& o : dst.objects) {
            const auto& g = w.hom(o.tree, i)[o.map].edge_map;
            em.resize(g.size());
            for (std::size_t e = 0; e < g.size(); ++e) em[e] = a.edge_map[g[e]];
            pick.push_back(where.at(JointObject{o.tree, w.arrow_index(o.tree, j, em), o.k, o.sigma}));
          }
          std::vector<int> lv(src.limit.size());
          std::vector<int> tup(pick.size());
          for (int e = 0; e < src.limit.size(); ++e) {
            for (std::size_t p = 0; p < pick.size(); ++p) tup[p] = src.limit.tuples[e][pick[p]];
            lv[e] = dst.limit.find(tup);
          }
          f.levels.push_back(std::move(lv));
        }
        out.value.actions[i][j].push_back(std::move(f));
      }
  // Unit: y |-> (X(f)(σ^* y)).
  for (int t = 0; t < nobj; ++t) {
    SSetMap u;
    for (int m = 0; m <= top; ++m) {
      const auto& fam = out.families[t][m];
      std::vector<int> lv(x.values[t].sizes[m]);
      std::vector<int> tup(fam.objects.size());
      for (int y = 0; y < x.values[t].sizes[m]; ++y) {
        for (std::size_t p = 0; p < fam.objects.size(); ++p) {
          const auto& o = fam.objects[p];
          tup[p] = x.action(o.tree, t, o.map).levels[o.k][act(x.values[t], o.sigma, m, y)];
        }
        lv[y] = fam.limit.find(tup);
      }
      u.levels.push_back(std::move(lv));
    }
    out.unit.components.push_back(std::move(u));
  }
  return out;
}

DSpaceMap coskeleton_bond(const Coskeleton& big, const Coskeleton& small) {
  if (big.n < small.n) throw Error(ErrorKind::kInvalidInput, "bond goes from a higher coskeleton to a lower one");
  DSpaceMap out;
  for (std::size_t t = 0; t < small.families.size(); ++t) {
    SSetMap f;
    for (std::size_t m = 0; m < small.families[t].size(); ++m) {
      const auto& src = big.families[t][m];
      const auto& dst = small.families[t][m];
      std::map<JointObject, int> where;
      for (int p = 0; p < static_cast<int>(src.objects.size()); ++p) where.emplace(src.objects[p], p);
      std::vector<int> pick;
      for (const auto& o : dst.objects) pick.push_back(where.at(o));
      std::vector<int> lv(src.limit.size());
      std::vector<int> tup(pick.size());
      for (int e = 0; e < src.limit.size(); ++e) {
        for (std::size_t p = 0; p < pick.size(); ++p) tup[p] = src.limit.tuples[e][pick[p]];
        lv[e] = dst.limit.find(tup);
      }
      f.levels.push_back(std::move(lv));
    }
    out.components.push_back(std::move(f));
  }
  return out;
}

// ------------------------------------------------------------------ checks

NormalReport is_normal_mono(const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y, int max_level,
                            const std::function<bool(int, int)>& window) {
  const Truncation& w = *y.trunc;
  for (int i = 0; i < w.size(); ++i) {
    std::vector<int> autos;
    const int id = w.arrow_index(i, i, identity_map(w.object(i)).edge_map);
    for (int a = 0; a < static_cast<int>(w.hom(i, i).size()); ++a)
      if (a != id && classify(w.hom(i, i)[a]) == MorphismClass::kIso) autos.push_back(a);
    SSet xs = extend(x.values[i], max_level), ys = extend(y.values[i], max_level);
    SSetMap c = extend_map(f.components[i], xs, ys, max_level);
    for (int l = 0; l <= max_level; ++l) {
      if (window && !window(i, l)) continue;
      std::vector<char> hit(ys.sizes[l], 0);
      for (int e : c.levels[l]) {
        if (hit[e]) return {false, i, l, "not injective"};
        hit[e] = 1;
      }
      for (int a : autos) {
        SSetMap th = extend_map(y.action(i, i, a), ys, ys, l);
        for (int z = 0; z < ys.sizes[l]; ++z)
          if (!hit[z] && th.levels[l][z] == z) return {false, i, l, "automorphism fixes a simplex outside the image"};
      }
    }
  }
  return {};
}

SegalReport strict_segal_check(const LeanDSpace& x0, int bound, int level) {
  LeanDSpace x = at_level(x0, level);
  const Truncation& w = *x.trunc;
  const DegreeKind kind = w.degree_kind().value_or(DegreeKind::kSize);
  SegalReport rep;
  const int eta = w.index_of(Tree::eta(w.variant()));
  for (int ri = 0; ri < w.size(); ++ri) {
    const Tree& r = w.object(ri);
    if (degree(r, kind) > bound) continue;
    for (int e : r.inner_edges()) {
      // Vertices above e span the top piece.
      std::vector<int> above;
      std::vector<int> stack{r.vertex_above(e)};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        above.push_back(v);
        for (int in : r.vertex(v).ins)
          if (r.vertex_above(in) >= 0) stack.push_back(r.vertex_above(in));
      }
      std::sort(above.begin(), above.end());
      std::vector<int> below;
      for (int v = 0; v < r.num_vertices(); ++v)
        if (!std::binary_search(above.begin(), above.end(), v)) below.push_back(v);
      Subtree bot = extract_subtree(r, r.root(), below);
      Subtree top = extract_subtree(r, e, above);
      auto [bi, bphi] = to_representative(w, bot.tree);
      auto [ti, tphi] = to_representative(w, top.tree);
      if (eta < 0) throw Error(ErrorKind::kWindowTooSmall, "truncation lacks the edge tree");
      // rep -> r for a piece: rep edge q |-> inclusion[phi^{-1}(q)].
      auto into_r = [&](const Subtree& s, const std::vector<int>& phi) {
        std::vector<int> em(phi.size());
        for (std::size_t q = 0; q < phi.size(); ++q) em[phi[q]] = s.inclusion[q];
        return em;
      };
      auto edge_in = [&](const Subtree& s, const std::vector<int>& phi) {
        int q = static_cast<int>(std::find(s.inclusion.begin(), s.inclusion.end(), e) - s.inclusion.begin());
        return std::vector<int>{phi[q]};
      };
      const SSetMap& to_b = x.action(bi, ri, w.arrow_index(bi, ri, into_r(bot, bphi)));
      const SSetMap& to_t = x.action(ti, ri, w.arrow_index(ti, ri, into_r(top, tphi)));
      const SSetMap& b_eta = x.action(eta, bi, w.arrow_index(eta, bi, edge_in(bot, bphi)));
      const SSetMap& t_eta = x.action(eta, ti, w.arrow_index(eta, ti, edge_in(top, tphi)));
      SSetLimit pb = sset_limit({x.values[bi], x.values[ti], x.values[eta]}, {{0, 2, b_eta}, {1, 2, t_eta}}, level);
      ++rep.decompositions;
      for (int l = 0; l <= level; ++l) {
        const int n = x.values[ri].sizes[l];
        std::vector<char> hit(pb.value.sizes[l], 0);
        int count = 0;
        bool ok = true;
        for (int y = 0; y < n && ok; ++y) {
          int b = to_b.levels[l][y], t = to_t.levels[l][y];
          int p = pb.levels[l].find({b, t, b_eta.levels[l][b]});
          if (p < 0 || hit[p]) ok = false;
          else {
            hit[p] = 1;
            ++count;
          }
        }
        if (!ok || count != pb.value.sizes[l]) {
          rep.ok = false;
          rep.counterexample = "R=" + w.code(ri).bytes + " edge " + std::to_string(e) + " level " +
                               std::to_string(l) + ": |X(R)|=" + std::to_string(n) +
                               ", |pullback|=" + std::to_string(pb.value.sizes[l]);
          return rep;
        }
      }
    }
  }
  return rep;
}

SSet space_of_operations(const LeanDSpace& x0, const std::vector<int>& inputs, int output, int level) {
  LeanDSpace x = at_level(x0, level);
  const Truncation& w = *x.trunc;
  const int n = static_cast<int>(inputs.size());
  const int ci = w.index_of(Tree::corolla(n, w.variant()));
  const int eta = w.index_of(Tree::eta(w.variant()));
  if (ci < 0 || eta < 0) throw Error(ErrorKind::kWindowTooSmall, "corolla not in truncation");
  const Tree& c = w.object(ci);
  const SSet& xe = x.values[eta];
  for (int col : inputs)
    if (col < 0 || col >= xe.sizes[0]) throw Error(ErrorKind::kColourNotFound, "colour " + std::to_string(col));
  if (output < 0 || output >= xe.sizes[0]) throw Error(ErrorKind::kColourNotFound, "colour " + std::to_string(output));
  std::vector<int> edges = c.vertex(0).ins;
  edges.push_back(c.root());
  std::vector<int> colours = inputs;
  colours.push_back(output);
  std::vector<const SSetMap*> proj;
  for (int e : edges) proj.push_back(&x.action(eta, ci, w.arrow_index(eta, ci, {e})));
  std::vector<std::vector<char>> marks;
  for (int l = 0; l <= level; ++l) {
    std::vector<int> collapse(l + 1, 0);
    marks.emplace_back(x.values[ci].sizes[l], 0);
    for (int z = 0; z < x.values[ci].sizes[l]; ++z) {
      bool ok = true;
      for (std::size_t p = 0; p < edges.size() && ok; ++p)
        ok = proj[p]->levels[l][z] == act(xe, collapse, 0, colours[p]);
      marks[l][z] = ok;
    }
  }
  return sub_sset(truncate(x.values[ci], level), marks).value;
}

}  // namespace dendro
