#include "dendro/protower.hpp"

#include <algorithm>

#include "dendro/error.hpp"

namespace dendro {

namespace {

// Equal on the levels both maps store.
bool same_map(const DSpaceMap& a, const DSpaceMap& b) {
  if (a.components.size() != b.components.size()) return false;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    const int top = std::min(a.components[i].top(), b.components[i].top());
    for (int l = 0; l <= top; ++l)
      if (a.components[i].levels[l] != b.components[i].levels[l]) return false;
  }
  return true;
}

void require_increasing(const std::vector<int>& s, const char* name) {
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] < 0 || (k > 0 && s[k] <= s[k - 1]))
      throw Error(ErrorKind::kNonMonotoneIndexing, std::string(name) + " is not strictly increasing");
}

}  // namespace

bool check_tower(const Tower& t) {
  if (t.bonds.size() + 1 != t.stages.size()) return false;
  for (std::size_t k = 0; k < t.bonds.size(); ++k)
    if (!is_natural(t.bonds[k], t.stages[k + 1], t.stages[k])) return false;
  return true;
}

DSpaceMap bond_between(const Tower& t, int j, int i) {
  if (j < i) throw Error(ErrorKind::kInvalidInput, "bonds only go down the tower");
  if (j == i) return identity_dspace(t.stages[i]);
  DSpaceMap acc = t.bonds[j - 1];
  for (int l = j - 1; l > i; --l) acc = compose(t.bonds[l - 1], acc, t.stages[j], t.stages[l], t.stages[l - 1]);
  return acc;
}

Tower constant_tower(const LeanDSpace& x, int depth) {
  Tower t;
  t.stages.assign(depth + 1, x);
  t.bonds.assign(depth, identity_dspace(x));
  return t;
}

CompletionTower completion_tower(const LeanDSpace& x, int depth) {
  for (const auto& v : x.values)
    if (!v.coskeletal) throw Error(ErrorKind::kNotDegreewiseFinite, "value known only up to level " + std::to_string(v.trunc));
  CompletionTower out;
  std::vector<Coskeleton> cs;
  for (int k = 0; k <= depth; ++k) {
    cs.push_back(coskeleton(x, k));
    out.tower.stages.push_back(cs.back().value);
    out.units.push_back(cs.back().unit);
  }
  for (int k = 0; k < depth; ++k) out.tower.bonds.push_back(coskeleton_bond(cs[k + 1], cs[k]));
  return out;
}

int stabilization_index(const CompletionTower& c, const LeanDSpace& x) {
  int top = 1;
  for (const auto& v : x.values) top = std::max(top, v.trunc);
  int d = -1;
  for (int k = c.tower.depth(); k >= 0; --k) {
    if (!is_iso(c.units[k], x, c.tower.stages[k], std::max(top, k))) break;
    d = k;
  }
  return d;
}

bool is_tower_map(const TowerMap& f, const Tower& x, const Tower& y) {
  if (f.maps.size() != x.stages.size() || x.stages.size() != y.stages.size()) return false;
  for (std::size_t k = 0; k < f.maps.size(); ++k)
    if (!is_natural(f.maps[k], x.stages[k], y.stages[k])) return false;
  for (std::size_t k = 0; k + 1 < f.maps.size(); ++k) {
    DSpaceMap lhs = compose(y.bonds[k], f.maps[k + 1], x.stages[k + 1], y.stages[k + 1], y.stages[k]);
    DSpaceMap rhs = compose(f.maps[k], x.bonds[k], x.stages[k + 1], x.stages[k], y.stages[k]);
    if (!same_map(lhs, rhs)) return false;
  }
  return true;
}

bool is_n_normal(const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y, int n) {
  const Truncation& w = *y.trunc;
  if (!w.contains_all_sizes_up_to(n))
    throw Error(ErrorKind::kWindowTooSmall, w.label() + " misses trees of size <= " + std::to_string(n));
  for (int i = 0; i < w.size(); ++i) {
    const int top = n - size(w.object(i));
    if (top < 0) continue;
    SSet xs = extend(x.values[i], top), ys = extend(y.values[i], top);
    SSetMap c = extend_map(f.components[i], xs, ys, top);
    const int id = w.arrow_index(i, i, identity_map(w.object(i)).edge_map);
    std::vector<SSetMap> autos;
    for (int a = 0; a < static_cast<int>(w.hom(i, i).size()); ++a)
      if (a != id && classify(w.hom(i, i)[a]) == MorphismClass::kIso)
        autos.push_back(extend_map(y.action(i, i, a), ys, ys, top));
    for (int l = 0; l <= top; ++l) {
      std::vector<char> hit(ys.sizes[l], 0);
      for (int e : c.levels[l]) {
        if (hit[e]) return false;
        hit[e] = 1;
      }
      for (const auto& th : autos)
        for (int z = 0; z < ys.sizes[l]; ++z)
          if (!hit[z] && th.levels[l][z] == z) return false;
    }
  }
  return true;
}

IncreasingNormality is_increasingly_normal(const TowerMap& f, const Tower& x, const Tower& y, int max_n) {
  IncreasingNormality out;
  const int depth = static_cast<int>(f.maps.size()) - 1;
  for (int n = 0; n <= max_n; ++n) {
    int w = -1;
    for (int k = depth; k >= 0 && is_n_normal(f.maps[k], x.stages[k], y.stages[k], n); --k) w = k;
    out.witness.push_back(w);
    out.ok = out.ok && w >= 0;
  }
  return out;
}

Reindexed reindex_level_represent(const Tower& x, const Tower& y, const std::vector<int>& theta,
                                  const std::vector<int>& nu, const std::vector<DSpaceMap>& family) {
  if (theta.size() != family.size() || nu.size() != family.size())
    throw Error(ErrorKind::kInvalidInput, "indexing and family lengths differ");
  require_increasing(theta, "θ");
  require_increasing(nu, "ν");
  const int len = static_cast<int>(family.size());
  std::vector<int> rho(len);
  for (int k = 0; k < len; ++k) {
    rho[k] = std::max(theta[k], nu[k]);
    if (rho[k] > x.depth() || nu[k] > y.depth())
      throw Error(ErrorKind::kWindowTooSmall, "indexing runs past the materialized prefix");
  }
  for (int k = 0; k < len; ++k)
    if (!is_natural(family[k], x.stages[theta[k]], y.stages[nu[k]]))
      throw Error(ErrorKind::kIncompatibleFamily, "map " + std::to_string(k) + " is not natural");
  for (int k = 0; k + 1 < len; ++k) {
    const LeanDSpace& src = x.stages[theta[k + 1]];
    DSpaceMap lhs = compose(bond_between(y, nu[k + 1], nu[k]), family[k + 1], src, y.stages[nu[k + 1]], y.stages[nu[k]]);
    DSpaceMap rhs = compose(family[k], bond_between(x, theta[k + 1], theta[k]), src, x.stages[theta[k]], y.stages[nu[k]]);
    if (!same_map(lhs, rhs))
      throw Error(ErrorKind::kIncompatibleFamily, "square " + std::to_string(k) + " does not commute");
  }
  Reindexed out;
  for (int k = 0; k < len; ++k) {
    out.source.stages.push_back(x.stages[rho[k]]);
    out.target.stages.push_back(y.stages[nu[k]]);
    out.map.maps.push_back(compose(family[k], bond_between(x, rho[k], theta[k]), x.stages[rho[k]],
                                   x.stages[theta[k]], y.stages[nu[k]]));
    if (k > 0) {
      out.source.bonds.push_back(bond_between(x, rho[k], rho[k - 1]));
      out.target.bonds.push_back(bond_between(y, nu[k], nu[k - 1]));
    }
  }
  return out;
}

}  // namespace dendro
