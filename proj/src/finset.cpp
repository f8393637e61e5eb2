#include "dendro/finset.hpp"

#include <algorithm>
#include <numeric>

#include "dendro/error.hpp"

namespace dendro {

FinMap identity_fin(int n) {
  FinMap f{std::vector<int>(n), n};
  std::iota(f.values.begin(), f.values.end(), 0);
  return f;
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.codomain != g.domain()) throw Error(ErrorKind::kMismatch, "finite maps not composable");
  FinMap out{std::vector<int>(f.values.size()), g.codomain};
  for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = g.values[f.values[i]];
  return out;
}

bool is_injective(const FinMap& f) {
  std::vector<char> hit(f.codomain, 0);
  for (int v : f.values) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool is_surjective(const FinMap& f) {
  std::vector<char> hit(f.codomain, 0);
  for (int v : f.values) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool check_functorial(const Diagram& d) {
  for (const auto& r : d.relations) {
    const auto& f = d.arrows[r.first];
    const auto& g = d.arrows[r.second];
    const auto& h = d.arrows[r.composite];
    if (f.dst != g.src || h.src != f.src || h.dst != g.dst) return false;
    for (int x = 0; x < d.sizes[f.src]; ++x)
      if (g.map[f.map[x]] != h.map[x]) return false;
  }
  return true;
}

FinMap Limit::projection(int object, int object_size) const {
  FinMap p{std::vector<int>(tuples.size()), object_size};
  for (std::size_t i = 0; i < tuples.size(); ++i) p.values[i] = tuples[i][object];
  return p;
}

int Limit::find(const std::vector<int>& tuple) const {
  auto it = std::lower_bound(tuples.begin(), tuples.end(), tuple);
  if (it == tuples.end() || *it != tuple) return -1;
  return static_cast<int>(it - tuples.begin());
}

Limit limit(const Diagram& d, std::size_t budget) {
  const int n = static_cast<int>(d.sizes.size());
  Limit out;
  if (n == 0) {
    out.tuples.push_back({});
    return out;
  }
  if (std::any_of(d.sizes.begin(), d.sizes.end(), [](int s) { return s == 0; })) return out;

  std::vector<std::vector<int>> in(n), outgoing(n);
  for (int a = 0; a < static_cast<int>(d.arrows.size()); ++a) {
    in[d.arrows[a].dst].push_back(a);
    outgoing[d.arrows[a].src].push_back(a);
  }

  // Static order: an object with an arrow from an already placed object is
  // forced; otherwise branch on the object with the most outgoing arrows.
  std::vector<int> order;
  std::vector<int> forced_by(n, -1);  // arrow that determines the object
  std::vector<char> placed(n, 0);
  while (static_cast<int>(order.size()) < n) {
    int pick = -1;
    for (int o = 0; o < n && pick < 0; ++o) {
      if (placed[o]) continue;
      for (int a : in[o])
        if (placed[d.arrows[a].src]) {
          pick = o;
          forced_by[o] = a;
          break;
        }
    }
    if (pick < 0) {
      std::size_t best = 0;
      for (int o = 0; o < n; ++o) {
        if (placed[o]) continue;
        if (pick < 0 || outgoing[o].size() > best) {
          pick = o;
          best = outgoing[o].size();
        }
      }
    }
    placed[pick] = 1;
    order.push_back(pick);
  }
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  // Arrows checked once both endpoints are placed, at the later position.
  std::vector<std::vector<int>> checks(n);
  for (int a = 0; a < static_cast<int>(d.arrows.size()); ++a) {
    int p = std::max(position[d.arrows[a].src], position[d.arrows[a].dst]);
    if (a != forced_by[order[p]]) checks[p].push_back(a);
  }

  std::vector<int> val(n, -1);
  std::size_t visited = 0;
  auto consistent = [&](int p) {
    for (int a : checks[p]) {
      const auto& ar = d.arrows[a];
      if (ar.map[val[ar.src]] != val[ar.dst]) return false;
    }
    return true;
  };
  // Iterative depth-first search over positions.
  std::vector<int> cursor(n, -1);
  int p = 0;
  while (p >= 0) {
    int o = order[p];
    bool advanced = false;
    if (forced_by[o] >= 0) {
      if (cursor[p] < 0) {
        cursor[p] = 0;
        const auto& ar = d.arrows[forced_by[o]];
        val[o] = ar.map[val[ar.src]];
        advanced = consistent(p);
      }
    } else {
      while (++cursor[p] < d.sizes[o]) {
        val[o] = cursor[p];
        if (consistent(p)) {
          advanced = true;
          break;
        }
      }
    }
    if (++visited > budget) throw Error(ErrorKind::kBudgetExceeded, "limit search exceeded its budget");
    if (advanced) {
      if (p == n - 1) {
        out.tuples.push_back(val);
        continue;  // try the next value at the same position
      }
      ++p;
      cursor[p] = -1;
    } else {
      cursor[p] = -1;
      --p;
    }
  }
  std::sort(out.tuples.begin(), out.tuples.end());
  return out;
}

UnionFind::UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

int UnionFind::find(int x) {
  int r = x;
  while (parent_[r] != r) r = parent_[r];
  while (parent_[x] != r) {
    int next = parent_[x];
    parent_[x] = r;
    x = next;
  }
  return r;
}

void UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (a < b)
    parent_[b] = a;
  else
    parent_[a] = b;
}

Colimit colimit(const Diagram& d) {
  const int n = static_cast<int>(d.sizes.size());
  std::vector<int> offset(n + 1, 0);
  for (int o = 0; o < n; ++o) offset[o + 1] = offset[o] + d.sizes[o];
  UnionFind uf(offset[n]);
  for (const auto& a : d.arrows)
    for (int x = 0; x < d.sizes[a.src]; ++x) uf.unite(offset[a.src] + x, offset[a.dst] + a.map[x]);
  Colimit out;
  std::vector<int> cls(offset[n], -1);
  out.injections.resize(n);
  for (int o = 0; o < n; ++o) {
    out.injections[o].resize(d.sizes[o]);
    for (int x = 0; x < d.sizes[o]; ++x) {
      int r = uf.find(offset[o] + x);
      if (cls[r] < 0) {
        cls[r] = out.size++;
        out.representatives.emplace_back(o, x);
      }
      out.injections[o][x] = cls[r];
    }
  }
  return out;
}

}  // namespace dendro
