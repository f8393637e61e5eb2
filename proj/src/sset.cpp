#include "dendro/sset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "dendro/error.hpp"

namespace dendro {

namespace {

void require_level(const SSet& x, int m) {
  if (m > x.trunc)
    throw Error(ErrorKind::kEvaluationAboveTruncation,
                "level " + std::to_string(m) + " above stored truncation " + std::to_string(x.trunc));
}

std::map<std::vector<int>, int> index_tuples(const std::vector<std::vector<int>>& tuples) {
  std::map<std::vector<int>, int> idx;
  for (int i = 0; i < static_cast<int>(tuples.size()); ++i) idx.emplace(tuples[i], i);
  return idx;
}

// Adds level trunc+1 to a coskeletal x as the set of boundary families.
void push_coskeletal_level(SSet& x) {
  const int t = x.trunc;
  const int m = t + 1;
  auto fams = boundary_families(x, m);
  auto idx = index_tuples(fams);
  x.sizes.push_back(static_cast<int>(fams.size()));
  std::vector<std::vector<int>> faces(m + 1, std::vector<int>(fams.size()));
  for (std::size_t y = 0; y < fams.size(); ++y)
    for (int i = 0; i <= m; ++i) faces[i][y] = fams[y][i];
  x.d.push_back(std::move(faces));
  std::vector<std::vector<int>> degs(t + 1, std::vector<int>(x.sizes[t]));
  for (int i = 0; i <= t; ++i) {
    for (int e = 0; e < x.sizes[t]; ++e) {
      std::vector<int> fam(m + 1);
      for (int j = 0; j <= m; ++j) {
        if (j == i || j == i + 1)
          fam[j] = e;
        else if (j < i)
          fam[j] = x.s[t - 1][i - 1][x.d[t][j][e]];
        else
          fam[j] = x.s[t - 1][i][x.d[t][j - 1][e]];
      }
      auto it = idx.find(fam);
      if (it == idx.end()) throw Error(ErrorKind::kInvalidInput, "simplicial identities fail during extension");
      degs[i][e] = it->second;
    }
  }
  x.s.push_back(std::move(degs));
  x.trunc = m;
}

}  // namespace

SSet extend(const SSet& x, int m) {
  if (m <= x.trunc) return x;
  if (!x.coskeletal) require_level(x, m);
  SSet y = x;
  while (y.trunc < m) push_coskeletal_level(y);
  return y;
}

int sset_eval(const SSet& x, int m) {
  if (m <= x.trunc) return x.sizes[m];
  return extend(x, m).sizes[m];
}

SSet truncate(const SSet& x, int m) {
  if (m >= x.trunc) return x;
  SSet y;
  y.trunc = m;
  y.coskeletal = false;
  y.sizes.assign(x.sizes.begin(), x.sizes.begin() + m + 1);
  y.d.assign(x.d.begin(), x.d.begin() + m + 1);
  y.s.assign(x.s.begin(), x.s.begin() + m);
  return y;
}

bool check_simplicial_identities(const SSet& x) {
  for (int k = 2; k <= x.trunc; ++k)
    for (int j = 1; j <= k; ++j)
      for (int i = 0; i < j; ++i)
        for (int e = 0; e < x.sizes[k]; ++e)
          if (x.d[k - 1][i][x.d[k][j][e]] != x.d[k - 1][j - 1][x.d[k][i][e]]) return false;
  for (int k = 0; k < x.trunc; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= k + 1; ++i)
        for (int e = 0; e < x.sizes[k]; ++e) {
          int lhs = x.d[k + 1][i][x.s[k][j][e]];
          int rhs;
          if (i == j || i == j + 1)
            rhs = e;
          else if (i < j)
            rhs = x.s[k - 1][j - 1][x.d[k][i][e]];
          else
            rhs = x.s[k - 1][j][x.d[k][i - 1][e]];
          if (lhs != rhs) return false;
        }
  for (int k = 0; k + 2 <= x.trunc; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i)
        for (int e = 0; e < x.sizes[k]; ++e)
          if (x.s[k + 1][i][x.s[k][j][e]] != x.s[k + 1][j + 1][x.s[k][i][e]]) return false;
  return true;
}

bool is_n_coskeletal(const SSet& x, int n) {
  int top = x.coskeletal ? std::max(n, x.trunc) + 1 : x.trunc;
  SSet y = extend(x, top);
  for (int l = std::max(n + 1, 1); l <= top; ++l) {
    auto faces = face_tuples(y, l);
    std::sort(faces.begin(), faces.end());
    if (std::adjacent_find(faces.begin(), faces.end()) != faces.end()) return false;
    if (faces.size() != boundary_families(y, l).size()) return false;
  }
  return true;
}

std::vector<std::vector<int>> boundary_families(const SSet& x, int m, int skip) {
  if (m < 1) throw Error(ErrorKind::kInvalidInput, "boundary families need m >= 1");
  require_level(x, m - 1);
  std::vector<int> idx;
  for (int i = 0; i <= m; ++i)
    if (i != skip) idx.push_back(i);
  const int lvl = m - 1;
  const int n = x.sizes[lvl];
  // bucket[i][v] = simplices z of level m-1 with d_i z = v.
  std::vector<std::vector<std::vector<int>>> bucket;
  if (lvl >= 1) {
    bucket.resize(lvl + 1);
    for (int i = 0; i <= lvl; ++i) {
      bucket[i].assign(x.sizes[lvl - 1], {});
      for (int z = 0; z < n; ++z) bucket[i][x.d[lvl][i][z]].push_back(z);
    }
  }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<int>> out;
  std::vector<int> fam(idx.size());
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == idx.size()) {
      out.push_back(fam);
      return;
    }
    const int j = idx[p];
    const std::vector<int>* cand = &all;
    if (lvl >= 1 && p > 0) {
      int i0 = idx[0];  // i0 < j: d_{i0} y_j = d_{j-1} y_{i0}
      cand = &bucket[i0][x.d[lvl][j - 1][fam[0]]];
    }
    for (int z : *cand) {
      bool ok = true;
      for (std::size_t q = 0; q < p && ok && lvl >= 1; ++q) {
        int i = idx[q];
        ok = x.d[lvl][i][z] == x.d[lvl][j - 1][fam[q]];
      }
      if (!ok) continue;
      fam[p] = z;
      rec(p + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<int>> face_tuples(const SSet& x, int m, int skip) {
  require_level(x, m);
  std::vector<std::vector<int>> out(x.sizes[m]);
  for (int z = 0; z < x.sizes[m]; ++z)
    for (int i = 0; i <= m; ++i)
      if (i != skip) out[z].push_back(x.d[m][i][z]);
  return out;
}

int act(const SSet& x, const std::vector<int>& b, int m, int elem) {
  const int n = static_cast<int>(b.size()) - 1;
  require_level(x, std::max(m, n));
  std::vector<char> hit(m + 1, 0);
  for (int v : b) hit[v] = 1;
  int level = m;
  for (int j = m; j >= 0; --j) {
    if (hit[j]) continue;
    elem = x.d[level][j][elem];
    --level;
  }
  for (int i = 0; i < n; ++i) {
    if (b[i] != b[i + 1]) continue;
    elem = x.s[level][i][elem];
    ++level;
  }
  return elem;
}

std::vector<std::vector<int>> monotone_maps(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> b(n + 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos > n) {
      out.push_back(b);
      return;
    }
    for (int v = lo; v <= m; ++v) {
      b[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

SSet discrete(int n) {
  SSet x;
  x.trunc = 1;
  x.coskeletal = true;
  x.sizes = {n, n};
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  x.d = {{}, {id, id}};
  x.s = {{id}};
  return x;
}

SSet point() { return discrete(1); }
SSet empty_sset() { return discrete(0); }

SSet from_tuples(const std::vector<std::vector<std::vector<int>>>& levels, bool coskeletal) {
  SSet x;
  x.trunc = static_cast<int>(levels.size()) - 1;
  x.coskeletal = coskeletal;
  std::vector<std::map<std::vector<int>, int>> idx;
  for (const auto& lv : levels) {
    x.sizes.push_back(static_cast<int>(lv.size()));
    idx.push_back(index_tuples(lv));
  }
  auto lookup = [&](int k, const std::vector<int>& t) {
    auto it = idx[k].find(t);
    if (it == idx[k].end()) throw Error(ErrorKind::kInvalidInput, "tuple family not closed under faces/degeneracies");
    return it->second;
  };
  x.d.resize(x.trunc + 1);
  for (int k = 1; k <= x.trunc; ++k) {
    x.d[k].assign(k + 1, std::vector<int>(x.sizes[k]));
    for (int e = 0; e < x.sizes[k]; ++e)
      for (int i = 0; i <= k; ++i) {
        auto t = levels[k][e];
        t.erase(t.begin() + i);
        x.d[k][i][e] = lookup(k - 1, t);
      }
  }
  x.s.resize(x.trunc);
  for (int k = 0; k < x.trunc; ++k) {
    x.s[k].assign(k + 1, std::vector<int>(x.sizes[k]));
    for (int e = 0; e < x.sizes[k]; ++e)
      for (int i = 0; i <= k; ++i) {
        auto t = levels[k][e];
        t.insert(t.begin() + i, t[i]);
        x.s[k][i][e] = lookup(k + 1, t);
      }
  }
  return x;
}

namespace {

std::vector<std::vector<int>> all_tuples(int len, int base) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(len, 0);
  if (base == 0 && len > 0) return out;
  while (true) {
    out.push_back(t);
    int i = len - 1;
    while (i >= 0 && ++t[i] == base) t[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace

SSet delta(int m) {
  return from_tuples({monotone_maps(0, m), monotone_maps(1, m)}, true);
}

SSet nerve_groupoid(int k) {
  std::vector<std::vector<std::vector<int>>> levels;
  for (int l = 0; l <= 2; ++l) levels.push_back(all_tuples(l + 1, k + 1));
  return from_tuples(levels, true);
}

SSetMap extend_map(const SSetMap& f, const SSet& src, const SSet& tgt, int m) {
  if (f.levels.empty()) throw Error(ErrorKind::kInvalidMap, "map has no stored levels");
  if (f.top() >= m) return f;
  require_level(src, m);
  require_level(tgt, m);
  SSetMap g = f;
  for (int l = f.top() + 1; l <= m; ++l) {
    std::map<std::vector<int>, int> by_faces;
    auto tf = face_tuples(tgt, l);
    for (int z = 0; z < static_cast<int>(tf.size()); ++z) {
      auto [it, fresh] = by_faces.emplace(tf[z], z);
      if (!fresh) it->second = -1;  // ambiguous boundary
    }
    std::vector<int> lv(src.sizes[l]);
    std::vector<int> key(l + 1);
    for (int y = 0; y < src.sizes[l]; ++y) {
      for (int i = 0; i <= l; ++i) key[i] = g.levels[l - 1][src.d[l][i][y]];
      auto it = by_faces.find(key);
      if (it == by_faces.end() || it->second < 0)
        throw Error(ErrorKind::kInvalidMap, "cannot extend map: target simplex not determined by its boundary");
      lv[y] = it->second;
    }
    g.levels.push_back(std::move(lv));
  }
  return g;
}

SSetMap identity_sset(const SSet& x) {
  SSetMap f;
  for (int k = 0; k <= x.trunc; ++k) f.levels.push_back(identity_fin(x.sizes[k]).values);
  return f;
}

SSetMap compose(const SSetMap& g, const SSetMap& f) {
  SSetMap h;
  int top = std::min(f.top(), g.top());
  for (int k = 0; k <= top; ++k) {
    std::vector<int> lv(f.levels[k].size());
    for (std::size_t x = 0; x < lv.size(); ++x) lv[x] = g.levels[k][f.levels[k][x]];
    h.levels.push_back(std::move(lv));
  }
  return h;
}

bool is_simplicial(const SSetMap& f, const SSet& src, const SSet& tgt) {
  int top = std::min({f.top(), src.trunc, tgt.trunc});
  for (int k = 0; k <= top; ++k) {
    if (static_cast<int>(f.levels[k].size()) != src.sizes[k]) return false;
    for (int v : f.levels[k])
      if (v < 0 || v >= tgt.sizes[k]) return false;
  }
  for (int k = 1; k <= top; ++k)
    for (int i = 0; i <= k; ++i)
      for (int x = 0; x < src.sizes[k]; ++x)
        if (f.levels[k - 1][src.d[k][i][x]] != tgt.d[k][i][f.levels[k][x]]) return false;
  for (int k = 0; k < top; ++k)
    for (int i = 0; i <= k; ++i)
      for (int x = 0; x < src.sizes[k]; ++x)
        if (f.levels[k + 1][src.s[k][i][x]] != tgt.s[k][i][f.levels[k][x]]) return false;
  return true;
}

bool is_levelwise_injective(const SSetMap& f, const SSet& tgt) {
  for (int k = 0; k <= f.top(); ++k)
    if (!is_injective(FinMap{f.levels[k], tgt.sizes[k]})) return false;
  return true;
}

bool is_levelwise_bijective(const SSetMap& f, const SSet& src, const SSet& tgt) {
  for (int k = 0; k <= f.top(); ++k) {
    if (src.sizes[k] != tgt.sizes[k]) return false;
    if (!is_bijective(FinMap{f.levels[k], tgt.sizes[k]})) return false;
  }
  return true;
}

SSetMap to_point(const SSet& x) {
  SSetMap f;
  for (int k = 0; k <= x.trunc; ++k) f.levels.emplace_back(x.sizes[k], 0);
  return f;
}

namespace {

int common_level(const std::vector<SSet>& objects, int min_level, bool* all_cosk) {
  *all_cosk = true;
  int cap = -1, top = min_level;
  for (const auto& o : objects) {
    if (o.coskeletal)
      top = std::max(top, o.trunc);
    else {
      *all_cosk = false;
      cap = cap < 0 ? o.trunc : std::min(cap, o.trunc);
    }
  }
  return *all_cosk ? top : cap;
}

}  // namespace

SSetLimit sset_limit(const std::vector<SSet>& objects, const std::vector<SSetArrow>& arrows, int min_level,
                     std::size_t budget) {
  bool all_cosk = true;
  int lvl = objects.empty() ? std::max(min_level, 1) : common_level(objects, min_level, &all_cosk);
  std::vector<SSet> ext;
  ext.reserve(objects.size());
  for (const auto& o : objects) ext.push_back(extend(o, lvl));
  std::vector<SSetMap> maps;
  maps.reserve(arrows.size());
  for (const auto& a : arrows) maps.push_back(extend_map(a.map, ext[a.src], ext[a.dst], lvl));

  SSetLimit out;
  SSet& v = out.value;
  v.trunc = lvl;
  v.coskeletal = all_cosk;
  for (int k = 0; k <= lvl; ++k) {
    Diagram d;
    for (const auto& o : ext) d.add_object(o.sizes[k]);
    for (std::size_t a = 0; a < arrows.size(); ++a) d.add_arrow(arrows[a].src, arrows[a].dst, maps[a].levels[k]);
    out.levels.push_back(limit(d, budget));
    v.sizes.push_back(out.levels.back().size());
  }
  const std::size_t n = objects.size();
  v.d.resize(lvl + 1);
  for (int k = 1; k <= lvl; ++k) {
    v.d[k].assign(k + 1, std::vector<int>(v.sizes[k]));
    std::vector<int> t(n);
    for (int i = 0; i <= k; ++i)
      for (int e = 0; e < v.sizes[k]; ++e) {
        for (std::size_t o = 0; o < n; ++o) t[o] = ext[o].d[k][i][out.levels[k].tuples[e][o]];
        v.d[k][i][e] = out.levels[k - 1].find(t);
      }
  }
  v.s.resize(lvl);
  for (int k = 0; k < lvl; ++k) {
    v.s[k].assign(k + 1, std::vector<int>(v.sizes[k]));
    std::vector<int> t(n);
    for (int i = 0; i <= k; ++i)
      for (int e = 0; e < v.sizes[k]; ++e) {
        for (std::size_t o = 0; o < n; ++o) t[o] = ext[o].s[k][i][out.levels[k].tuples[e][o]];
        v.s[k][i][e] = out.levels[k + 1].find(t);
      }
  }
  return out;
}

SSetColimit sset_colimit(const std::vector<SSet>& objects, const std::vector<SSetArrow>& arrows, int level_cap) {
  int lvl = level_cap;
  for (const auto& o : objects)
    if (!o.coskeletal) lvl = std::min(lvl, o.trunc);
  std::vector<SSet> ext;
  for (const auto& o : objects) ext.push_back(extend(o, lvl));
  std::vector<SSetMap> maps;
  for (const auto& a : arrows) maps.push_back(extend_map(a.map, ext[a.src], ext[a.dst], lvl));

  SSetColimit out;
  SSet& v = out.value;
  v.trunc = lvl;
  v.coskeletal = false;
  for (int k = 0; k <= lvl; ++k) {
    Diagram d;
    for (const auto& o : ext) d.add_object(o.sizes[k]);
    for (std::size_t a = 0; a < arrows.size(); ++a) d.add_arrow(arrows[a].src, arrows[a].dst, maps[a].levels[k]);
    out.levels.push_back(colimit(d));
    v.sizes.push_back(out.levels.back().size);
  }
  v.d.resize(lvl + 1);
  for (int k = 1; k <= lvl; ++k) {
    v.d[k].assign(k + 1, std::vector<int>(v.sizes[k]));
    for (int i = 0; i <= k; ++i)
      for (int c = 0; c < v.sizes[k]; ++c) {
        auto [o, e] = out.levels[k].representatives[c];
        v.d[k][i][c] = out.levels[k - 1].injections[o][ext[o].d[k][i][e]];
      }
  }
  v.s.resize(lvl);
  for (int k = 0; k < lvl; ++k) {
    v.s[k].assign(k + 1, std::vector<int>(v.sizes[k]));
    for (int i = 0; i <= k; ++i)
      for (int c = 0; c < v.sizes[k]; ++c) {
        auto [o, e] = out.levels[k].representatives[c];
        v.s[k][i][c] = out.levels[k + 1].injections[o][ext[o].s[k][i][e]];
      }
  }
  return out;
}

namespace {

int product_level(const std::vector<SSet>& factors, bool* all_cosk) {
  int lvl = factors.empty() ? 1 : common_level(factors, 0, all_cosk);
  if (factors.empty()) *all_cosk = true;
  if (*all_cosk) lvl = std::max(lvl, 1);
  return lvl;
}

// Mixed-radix product, first factor most significant.
SSet product_of(const std::vector<SSet>& factors) {
  bool all_cosk = true;
  int lvl = product_level(factors, &all_cosk);
  std::vector<SSet> ext;
  for (const auto& f : factors) ext.push_back(extend(f, lvl));
  const std::size_t n = ext.size();
  SSet v;
  v.trunc = lvl;
  v.coskeletal = all_cosk;
  for (int k = 0; k <= lvl; ++k) {
    long long sz = 1;
    for (const auto& f : ext) sz *= f.sizes[k];
    if (sz > 50'000'000) throw Error(ErrorKind::kBudgetExceeded, "product too large");
    v.sizes.push_back(static_cast<int>(sz));
  }
  auto decode = [&](int k, int e, std::vector<int>& digits) {
    for (std::size_t o = n; o-- > 0;) {
      digits[o] = e % ext[o].sizes[k];
      e /= ext[o].sizes[k];
    }
  };
  auto encode = [&](int k, const std::vector<int>& digits) {
    int e = 0;
    for (std::size_t o = 0; o < n; ++o) e = e * ext[o].sizes[k] + digits[o];
    return e;
  };
  std::vector<int> dg(n);
  v.d.resize(lvl + 1);
  for (int k = 1; k <= lvl; ++k) {
    v.d[k].assign(k + 1, std::vector<int>(v.sizes[k]));
    for (int e = 0; e < v.sizes[k]; ++e) {
      decode(k, e, dg);
      for (int i = 0; i <= k; ++i) {
        std::vector<int> img(n);
        for (std::size_t o = 0; o < n; ++o) img[o] = ext[o].d[k][i][dg[o]];
        v.d[k][i][e] = encode(k - 1, img);
      }
    }
  }
  v.s.resize(lvl);
  for (int k = 0; k < lvl; ++k) {
    v.s[k].assign(k + 1, std::vector<int>(v.sizes[k]));
    for (int e = 0; e < v.sizes[k]; ++e) {
      decode(k, e, dg);
      for (int i = 0; i <= k; ++i) {
        std::vector<int> img(n);
        for (std::size_t o = 0; o < n; ++o) img[o] = ext[o].s[k][i][dg[o]];
        v.s[k][i][e] = encode(k + 1, img);
      }
    }
  }
  return v;
}

}  // namespace

SSet product(const SSet& a, const SSet& b) { return product_of({a, b}); }

SSet product_all(const std::vector<SSet>& factors) { return product_of(factors); }

SSet power(const SSet& k, int n) { return product_of(std::vector<SSet>(n, k)); }

SSetMap product_maps(const std::vector<SSetMap>& maps, const std::vector<SSet>& src, const std::vector<SSet>& tgt) {
  bool cs = true, ct = true;
  int ls = product_level(src, &cs), lt = product_level(tgt, &ct);
  int lvl = std::max(ls, lt);
  if (!cs) lvl = std::min(lvl, ls);
  const std::size_t n = maps.size();
  std::vector<SSet> es, et;
  std::vector<SSetMap> em;
  for (std::size_t o = 0; o < n; ++o) {
    es.push_back(extend(src[o], lvl));
    et.push_back(extend(tgt[o], lvl));
    em.push_back(extend_map(maps[o], es[o], et[o], lvl));
  }
  SSetMap f;
  std::vector<int> dg(n);
  for (int k = 0; k <= lvl; ++k) {
    int size = 1;
    for (const auto& x : es) size *= x.sizes[k];
    std::vector<int> lv(size);
    for (int e = 0; e < size; ++e) {
      int r = e;
      for (std::size_t o = n; o-- > 0;) {
        dg[o] = r % es[o].sizes[k];
        r /= es[o].sizes[k];
      }
      int out = 0;
      for (std::size_t o = 0; o < n; ++o) out = out * et[o].sizes[k] + em[o].levels[k][dg[o]];
      lv[e] = out;
    }
    f.levels.push_back(std::move(lv));
  }
  return f;
}

SSet coproduct_all(const std::vector<SSet>& summands) {
  SSet acc = empty_sset();
  for (const auto& s : summands) acc = coproduct(acc, s);
  return acc;
}

SSetMap coproduct_maps(const std::vector<SSetMap>& maps, const std::vector<SSet>& src,
                       const std::vector<SSet>& tgt) {
  SSet s = coproduct_all(src), t = coproduct_all(tgt);
  int lvl = std::min(s.trunc, t.trunc);
  if (s.coskeletal) lvl = s.trunc;
  SSetMap f;
  for (int k = 0; k <= lvl; ++k) {
    std::vector<int> lv;
    int offset = 0;
    for (std::size_t o = 0; o < maps.size(); ++o) {
      SSet es = extend(src[o], k), et = extend(tgt[o], k);
      SSetMap m = extend_map(maps[o], es, et, k);
      for (int v : m.levels[k]) lv.push_back(v + offset);
      offset += et.sizes[k];
    }
    f.levels.push_back(std::move(lv));
  }
  return f;
}

SSetMap power_reindex(const SSet& k, int from, const std::vector<int>& pos) {
  SSet src = power(k, from), tgt = power(k, static_cast<int>(pos.size()));
  SSetMap f;
  const int lvl = std::min(src.trunc, tgt.trunc);
  SSet ek = extend(k, lvl);
  for (int l = 0; l <= lvl; ++l) {
    const int base = ek.sizes[l];
    std::vector<int> lv(src.sizes[l]);
    std::vector<int> dg(from);
    for (int e = 0; e < src.sizes[l]; ++e) {
      int r = e;
      for (int o = from; o-- > 0;) {
        dg[o] = r % base;
        r /= base;
      }
      int out = 0;
      for (int p : pos) out = out * base + dg[p];
      lv[e] = out;
    }
    f.levels.push_back(std::move(lv));
  }
  return f;
}

SubSSet sub_sset(const SSet& x, const std::vector<std::vector<char>>& marked) {
  SubSSet out;
  SSet& v = out.value;
  v.trunc = static_cast<int>(marked.size()) - 1;
  v.coskeletal = false;
  std::vector<std::vector<int>> pos(marked.size());
  for (int k = 0; k <= v.trunc; ++k) {
    pos[k].assign(x.sizes[k], -1);
    std::vector<int> inc;
    for (int e = 0; e < x.sizes[k]; ++e)
      if (marked[k][e]) {
        pos[k][e] = static_cast<int>(inc.size());
        inc.push_back(e);
      }
    v.sizes.push_back(static_cast<int>(inc.size()));
    out.inclusion.levels.push_back(std::move(inc));
  }
  auto at = [&](int k, int e) {
    if (pos[k][e] < 0) throw Error(ErrorKind::kInvalidInput, "marked simplices not closed under structure maps");
    return pos[k][e];
  };
  v.d.resize(v.trunc + 1);
  for (int k = 1; k <= v.trunc; ++k) {
    v.d[k].assign(k + 1, std::vector<int>(v.sizes[k]));
    for (int i = 0; i <= k; ++i)
      for (int e = 0; e < v.sizes[k]; ++e) v.d[k][i][e] = at(k - 1, x.d[k][i][out.inclusion.levels[k][e]]);
  }
  v.s.resize(v.trunc);
  for (int k = 0; k < v.trunc; ++k) {
    v.s[k].assign(k + 1, std::vector<int>(v.sizes[k]));
    for (int i = 0; i <= k; ++i)
      for (int e = 0; e < v.sizes[k]; ++e) v.s[k][i][e] = at(k + 1, x.s[k][i][out.inclusion.levels[k][e]]);
  }
  return out;
}

SSet boundary_delta(int m) {
  if (m == 0) return empty_sset();
  std::vector<std::vector<std::vector<int>>> levels;
  for (int k = 0; k <= std::max(m, 1); ++k) {
    std::vector<std::vector<int>> keep;
    for (auto& b : monotone_maps(k, m)) {
      std::set<int> img(b.begin(), b.end());
      if (static_cast<int>(img.size()) <= m) keep.push_back(b);
    }
    levels.push_back(std::move(keep));
  }
  return from_tuples(levels, true);
}

SSet coproduct(const SSet& a, const SSet& b) {
  bool cosk = a.coskeletal && b.coskeletal;
  int lvl = cosk ? std::max({a.trunc, b.trunc, 1}) : std::min(a.trunc, b.trunc);
  SSet x = extend(a, lvl), y = extend(b, lvl);
  SSet v;
  v.trunc = lvl;
  v.coskeletal = cosk;
  for (int k = 0; k <= lvl; ++k) v.sizes.push_back(x.sizes[k] + y.sizes[k]);
  v.d.resize(lvl + 1);
  for (int k = 1; k <= lvl; ++k) {
    v.d[k].resize(k + 1);
    for (int i = 0; i <= k; ++i) {
      v.d[k][i] = x.d[k][i];
      for (int e : y.d[k][i]) v.d[k][i].push_back(e + x.sizes[k - 1]);
    }
  }
  v.s.resize(lvl);
  for (int k = 0; k < lvl; ++k) {
    v.s[k].resize(k + 1);
    for (int i = 0; i <= k; ++i) {
      v.s[k][i] = x.s[k][i];
      for (int e : y.s[k][i]) v.s[k][i].push_back(e + x.sizes[k + 1]);
    }
  }
  return v;
}

bool kan_check(const SSet& x, int dim_bound) {
  int top = x.coskeletal ? dim_bound : std::min(dim_bound, x.trunc);
  SSet y = extend(x, top);
  for (int m = 1; m <= top; ++m)
    for (int k = 0; k <= m; ++k) {
      auto fillers = face_tuples(y, m, k);
      std::set<std::vector<int>> have(fillers.begin(), fillers.end());
      for (const auto& h : boundary_families(y, m, k))
        if (!have.count(h)) return false;
    }
  return true;
}

FinMap pi0(const SSet& x) {
  SSet y = extend(x, 1);
  UnionFind uf(y.sizes[0]);
  for (int e = 0; e < y.sizes[1]; ++e) uf.unite(y.d[1][0][e], y.d[1][1][e]);
  FinMap out{std::vector<int>(y.sizes[0]), 0};
  std::vector<int> cls(y.sizes[0], -1);
  for (int v = 0; v < y.sizes[0]; ++v) {
    int r = uf.find(v);
    if (cls[r] < 0) cls[r] = out.codomain++;
    out.values[v] = cls[r];
  }
  return out;
}

std::vector<SimplicialMono> boundary_monos(int max_dim) {
  std::vector<SimplicialMono> out;
  for (int m = 0; m <= max_dim; ++m) out.push_back({SimplicialMono::Kind::kBoundary, m, 0});
  return out;
}

std::vector<SimplicialMono> horn_monos(int max_dim) {
  std::vector<SimplicialMono> out;
  for (int m = 1; m <= max_dim; ++m)
    for (int k = 0; k <= m; ++k) out.push_back({SimplicialMono::Kind::kHorn, m, k});
  return out;
}

bool rlp_check(const SSetMap& f, const SSet& x, const SSet& y, const std::vector<SimplicialMono>& against) {
  for (const auto& mono : against) {
    const int m = mono.m;
    SSet ex = extend(x, m), ey = extend(y, m);
    SSetMap g = extend_map(f, ex, ey, m);
    if (m == 0) {
      if (mono.kind == SimplicialMono::Kind::kHorn) continue;
      if (!is_surjective(FinMap{g.levels[0], ey.sizes[0]})) return false;
      continue;
    }
    int skip = mono.kind == SimplicialMono::Kind::kHorn ? mono.k : -1;
    std::map<std::vector<int>, std::vector<int>> y_by_faces;
    auto yf = face_tuples(ey, m, skip);
    for (int b = 0; b < static_cast<int>(yf.size()); ++b) y_by_faces[yf[b]].push_back(b);
    std::set<std::pair<std::vector<int>, int>> lifts;
    auto xf = face_tuples(ex, m, skip);
    for (int z = 0; z < static_cast<int>(xf.size()); ++z) lifts.emplace(xf[z], g.levels[m][z]);
    for (const auto& a : boundary_families(ex, m, skip)) {
      std::vector<int> fa(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) fa[i] = g.levels[m - 1][a[i]];
      auto it = y_by_faces.find(fa);
      if (it == y_by_faces.end()) continue;
      for (int b : it->second)
        if (!lifts.count({a, b})) return false;
    }
  }
  return true;
}

Group Group::from_permutations(std::vector<std::vector<int>> perms) {
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  Group g;
  g.order = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> idx = index_tuples(perms);
  const std::size_t k = perms.empty() ? 0 : perms[0].size();
  for (std::size_t i = 0; i < k; ++i)
    if (!perms.empty() && perms[0][i] != static_cast<int>(i))
      throw Error(ErrorKind::kInvalidInput, "permutation group lacks the identity");
  g.mul.assign(g.order, std::vector<int>(g.order));
  g.inv.assign(g.order, 0);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      std::vector<int> c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = perms[b][perms[a][i]];
      auto it = idx.find(c);
      if (it == idx.end()) throw Error(ErrorKind::kInvalidInput, "permutations not closed under composition");
      g.mul[a][b] = it->second;
      if (it->second == 0) g.inv[a] = b;
    }
  g.perms = std::move(perms);
  return g;
}

Group Group::trivial() { return from_permutations({{0}}); }

Group Group::symmetric(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return from_permutations(all);
}

Group Group::cyclic(int n) {
  std::vector<std::vector<int>> all;
  for (int j = 0; j < n; ++j) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = (i + j) % n;
    all.push_back(p);
  }
  return from_permutations(all);
}

namespace {

GSSet extend_gsset(const GSSet& a, int m) {
  if (m <= a.x.trunc) return a;
  GSSet b{extend(a.x, m), a.g, a.action};
  for (int h = 0; h < a.g.order; ++h) {
    SSetMap f;
    for (int k = 0; k <= a.x.trunc; ++k) f.levels.push_back(a.action[k][h]);
    f = extend_map(f, b.x, b.x, m);
    for (int k = a.x.trunc + 1; k <= m; ++k) {
      if (static_cast<int>(b.action.size()) <= k) b.action.resize(k + 1, std::vector<std::vector<int>>(a.g.order));
      b.action[k][h] = f.levels[k];
    }
  }
  return b;
}

}  // namespace

bool is_equivariant(const SSetMap& f, const GSSet& a, const GSSet& b) {
  int top = std::min({f.top(), a.x.trunc, b.x.trunc});
  for (int k = 0; k <= top; ++k)
    for (int h = 0; h < a.g.order; ++h)
      for (int x = 0; x < a.x.sizes[k]; ++x)
        if (f.levels[k][a.action[k][h][x]] != b.action[k][h][f.levels[k][x]]) return false;
  return true;
}

bool acts_freely(const GSSet& a0, int k) {
  const GSSet a = extend_gsset(a0, k);
  for (int x = 0; x < a.x.sizes[k]; ++x)
    for (int h = 1; h < a.g.order; ++h)
      if (a.action[k][h][x] == x) return false;
  return true;
}

bool normal_mono_g(const SSetMap& f, const GSSet& a, const GSSet& b, int max_level) {
  GSSet ea = extend_gsset(a, max_level), eb = extend_gsset(b, max_level);
  SSetMap ef = extend_map(f, ea.x, eb.x, max_level);
  if (!is_equivariant(ef, ea, eb)) throw Error(ErrorKind::kNonEquivariant, "map does not commute with the action");
  for (int k = 0; k <= max_level; ++k) {
    std::vector<char> hit(eb.x.sizes[k], 0);
    for (int v : ef.levels[k]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    for (int y = 0; y < eb.x.sizes[k]; ++y) {
      if (hit[y]) continue;
      for (int h = 1; h < eb.g.order; ++h)
        if (eb.action[k][h][y] == y) return false;
    }
  }
  return true;
}

GSSet eg(const Group& g) {
  std::vector<std::vector<std::vector<int>>> levels;
  for (int l = 0; l <= 2; ++l) levels.push_back(all_tuples(l + 1, g.order));
  GSSet out{from_tuples(levels, true), g, {}};
  out.action.resize(3);
  for (int l = 0; l <= 2; ++l) {
    out.action[l].assign(g.order, std::vector<int>(levels[l].size()));
    for (int h = 0; h < g.order; ++h)
      for (std::size_t e = 0; e < levels[l].size(); ++e) {
        int idx = 0;
        for (int v : levels[l][e]) idx = idx * g.order + g.mul[v][h];
        out.action[l][h][e] = idx;
      }
  }
  return out;
}

GSSet trivial_action(const SSet& x, const Group& g) {
  GSSet out{x, g, {}};
  for (int k = 0; k <= x.trunc; ++k)
    out.action.emplace_back(g.order, identity_fin(x.sizes[k]).values);
  return out;
}

GSSet empty_gsset(const Group& g) { return trivial_action(empty_sset(), g); }

}  // namespace dendro
