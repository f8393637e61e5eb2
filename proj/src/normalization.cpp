#include "dendro/normalization.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "dendro/error.hpp"

namespace dendro {

LeanDSpace empty_presheaf(TruncationPtr w, int level_cap) {
  LeanDSpace x;
  x.trunc = w;
  SSet e;
  e.trunc = level_cap;
  // Nothing at level 0 means nothing anywhere.
  e.coskeletal = true;
  e.sizes.assign(level_cap + 1, 0);
  e.d.resize(level_cap + 1);
  for (int k = 1; k <= level_cap; ++k) e.d[k].assign(k + 1, {});
  e.s.resize(level_cap);
  for (int k = 0; k < level_cap; ++k) e.s[k].assign(k + 1, {});
  x.values.assign(w->size(), e);
  x.actions.assign(w->size(), std::vector<std::vector<SSetMap>>(w->size()));
  for (int i = 0; i < w->size(); ++i)
    for (int j = 0; j < w->size(); ++j)
      x.actions[i][j].assign(w->hom(i, j).size(), SSetMap{std::vector<std::vector<int>>(level_cap + 1)});
  return x;
}

DSpaceMap from_empty(const LeanDSpace& y) {
  DSpaceMap f;
  for (const auto& v : y.values) f.components.push_back(SSetMap{std::vector<std::vector<int>>(v.trunc + 1)});
  return f;
}

namespace {

bool is_surjection(const std::vector<int>& tau, int m) {
  return !tau.empty() && tau.front() == 0 && tau.back() == m &&
         std::adjacent_find(tau.begin(), tau.end(), [](int a, int b) { return b > a + 1; }) == tau.end();
}

std::vector<std::vector<int>> surjections(int k, int m) {
  std::vector<std::vector<int>> out;
  for (auto& t : monotone_maps(k, m))
    if (is_surjection(t, m)) out.push_back(std::move(t));
  return out;
}

struct Cell {
  int tree = 0;
  int m = 0;
  std::vector<int> phi;
  const std::map<JointObject, int>* where = nullptr;
};

class Stage {
 public:
  Stage(const LeanDSpace& prev, int level_cap) : prev_(prev), w_(*prev.trunc), cap_(level_cap) {}

  NormalizationStage run(int n) {
    // Cells: every family in every joint matching object at |T| + m = n.
    for (int t = 0; t < w_.size(); ++t) {
      const int m = n - size(w_.object(t));
      if (m < 0 || m > cap_) continue;
      JointLimit jm = joint_matching(prev_, t, m);
      auto& where = families_[{t, m}];
      for (int p = 0; p < static_cast<int>(jm.objects.size()); ++p) where.emplace(jm.objects[p], p);
      for (auto& phi : jm.limit.tuples) cells_.push_back({t, m, std::move(phi), &where});
    }
    // Interior simplices (cell, g surjective, τ surjective), appended after
    // the old ones at every (object, level).
    const int nobj = w_.size();
    sizes_.assign(nobj, std::vector<int>(cap_ + 1));
    interior_.assign(nobj, std::vector<std::vector<std::tuple<int, std::vector<int>, std::vector<int>>>>(cap_ + 1));
    for (int s = 0; s < nobj; ++s)
      for (int k = 0; k <= cap_; ++k) sizes_[s][k] = prev_.values[s].sizes[k];
    for (int c = 0; c < static_cast<int>(cells_.size()); ++c)
      for (int s = 0; s < nobj; ++s)
        for (const auto& g : w_.hom(s, cells_[c].tree)) {
          if (!is_surjective(g)) continue;
          for (int k = cells_[c].m; k <= cap_; ++k)
            for (auto& tau : surjections(k, cells_[c].m)) {
              index_.emplace(std::make_tuple(s, k, c, g.edge_map, tau), sizes_[s][k]++);
              interior_[s][k].emplace_back(c, g.edge_map, tau);
            }
        }

    NormalizationStage out;
    out.n = n;
    out.cells = static_cast<int>(cells_.size());
    out.value.trunc = prev_.trunc;
    for (int s = 0; s < nobj; ++s) out.value.values.push_back(build_value(s));
    out.value.actions.assign(nobj, std::vector<std::vector<SSetMap>>(nobj));
    for (int s = 0; s < nobj; ++s)
      for (int r = 0; r < nobj; ++r)
        for (int a = 0; a < static_cast<int>(w_.hom(s, r).size()); ++a) {
          // E(a): E(r) -> E(s).
          const TreeMap& am = w_.hom(s, r)[a];
          SSetMap f = prev_.action(s, r, a);
          f.levels.resize(cap_ + 1);
          for (int k = 0; k <= cap_; ++k)
            for (const auto& [c, g, tau] : interior_[r][k]) {
              std::vector<int> ga(am.edge_map.size());
              for (std::size_t e = 0; e < ga.size(); ++e) ga[e] = g[am.edge_map[e]];
              f.levels[k].push_back(resolve(c, s, ga, tau));
            }
          out.value.actions[s][r].push_back(std::move(f));
        }
    for (int s = 0; s < nobj; ++s) {
      SSetMap inc;
      for (int k = 0; k <= cap_; ++k) {
        std::vector<int> lv(prev_.values[s].sizes[k]);
        for (int e = 0; e < static_cast<int>(lv.size()); ++e) lv[e] = e;
        inc.levels.push_back(std::move(lv));
      }
      out.inclusion.components.push_back(std::move(inc));
    }
    return out;
  }

 private:
  // The simplex of E_n(s) that the cell's characteristic map assigns to
  // (h: s -> T, ρ: [k] -> [m]).
  int resolve(int c, int s, const std::vector<int>& h, const std::vector<int>& rho) {
    const Cell& cell = cells_[c];
    const int k = static_cast<int>(rho.size()) - 1;
    TreeMap hm{w_.object(s), w_.object(cell.tree), h};
    if (is_surjective(hm) && is_surjection(rho, cell.m)) return index_.at(std::make_tuple(s, k, c, h, rho));
    // (h, ρ) = (ι π, μ π') lies on the boundary; read it off φ and pull
    // back along the degeneracies.
    Factorization fac = factor_standard(hm);
    auto [u, psi] = to_representative(w_, fac.middle());
    std::vector<int> psi_inv(psi.size());
    for (std::size_t q = 0; q < psi.size(); ++q) psi_inv[psi[q]] = static_cast<int>(q);
    std::vector<int> iota(psi.size()), pi(h.size());
    for (std::size_t q = 0; q < psi.size(); ++q) iota[q] = fac.second.edge_map[psi_inv[q]];
    for (std::size_t e = 0; e < h.size(); ++e) pi[e] = psi[fac.first.edge_map[e]];
    std::vector<int> mu(rho);
    mu.erase(std::unique(mu.begin(), mu.end()), mu.end());
    std::vector<int> pi_d(rho.size());
    for (std::size_t p = 0; p < rho.size(); ++p)
      pi_d[p] = static_cast<int>(std::lower_bound(mu.begin(), mu.end(), rho[p]) - mu.begin());
    const int j = static_cast<int>(mu.size()) - 1;
    JointObject key{u, w_.arrow_index(u, cell.tree, iota), j, mu};
    const int z = cell.phi[cell.where->at(key)];
    const int zs = prev_.action(s, u, w_.arrow_index(s, u, pi)).levels[j][z];
    return act(prev_.values[s], pi_d, j, zs);
  }

  SSet build_value(int s) {
    const SSet& old = prev_.values[s];
    SSet v;
    v.trunc = cap_;
    v.coskeletal = false;
    v.sizes = sizes_[s];
    v.d.resize(cap_ + 1);
    for (int k = 1; k <= cap_; ++k) {
      v.d[k] = old.d[k];
      for (int i = 0; i <= k; ++i)
        for (const auto& [c, g, tau] : interior_[s][k]) {
          std::vector<int> face = tau;
          face.erase(face.begin() + i);
          v.d[k][i].push_back(resolve(c, s, g, face));
        }
    }
    v.s.resize(cap_);
    for (int k = 0; k < cap_; ++k) {
      v.s[k] = old.s[k];
      for (int i = 0; i <= k; ++i)
        for (const auto& [c, g, tau] : interior_[s][k]) {
          std::vector<int> deg = tau;
          deg.insert(deg.begin() + i, tau[i]);
          v.s[k][i].push_back(resolve(c, s, g, deg));
        }
    }
    return v;
  }

  const LeanDSpace& prev_;
  const Truncation& w_;
  int cap_;
  std::vector<Cell> cells_;
  std::map<std::pair<int, int>, std::map<JointObject, int>> families_;
  std::map<std::tuple<int, int, int, std::vector<int>, std::vector<int>>, int> index_;
  std::vector<std::vector<int>> sizes_;
  std::vector<std::vector<std::vector<std::tuple<int, std::vector<int>, std::vector<int>>>>> interior_;
};

}  // namespace

std::vector<NormalizationStage> normalization(TruncationPtr w, int stages, int level_cap) {
  if (level_cap < 1) throw Error(ErrorKind::kInvalidInput, "normalization needs level cap >= 1");
  std::vector<NormalizationStage> out;
  LeanDSpace prev = empty_presheaf(w, level_cap);
  for (int n = 0; n <= stages; ++n) {
    Stage st(prev, level_cap);
    out.push_back(st.run(n));
    prev = out.back().value;
  }
  return out;
}

bool joint_matching_surjective(const LeanDSpace& x, int n, int level_cap) {
  const Truncation& w = *x.trunc;
  for (int t = 0; t < w.size(); ++t)
    for (int m = 0; size(w.object(t)) + m <= n && m <= level_cap; ++m) {
      JointLimit jm = joint_matching(x, t, m);
      std::vector<char> hit(jm.limit.size(), 0);
      for (int e = 0; e < x.values[t].sizes[m]; ++e) {
        int p = jm.limit.find(joint_matching_image(x, jm, t, m, e));
        if (p >= 0) hit[p] = 1;
      }
      if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
    }
  return true;
}

}  // namespace dendro
