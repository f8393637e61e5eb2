#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance gate. Nothing here calls the code path it checks.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "dendro/presheaf.hpp"

namespace oracle {

using namespace dendro;

/// Inclusion of the boundary of Δ[m] into Δ[m] on levels 0..1 (both are
/// stored in lexicographic order of monotone sequences there).
inline SSetMap boundary_delta_inclusion(int m) {
  SSetMap f;
  for (int l = 0; l <= 1; ++l) {
    auto all = monotone_maps(l, m);
    std::vector<int> lv;
    for (int p = 0; p < static_cast<int>(all.size()); ++p) {
      std::set<int> img(all[p].begin(), all[p].end());
      if (static_cast<int>(img.size()) <= m) lv.push_back(p);
    }
    f.levels.push_back(lv);
  }
  return f;
}

struct PushoutCheck {
  bool injective = true;
  bool image_matches = true;
};

/// Builds the pushout of ∂Ω[T] x Δ[m] <- ∂Ω[T] x ∂Δ[m] -> Ω[T] x ∂Δ[m]
/// object by object, maps it to Ω[T] x Δ[m], and compares the image with
/// the (|T| + m - 1)-skeleton.
inline PushoutCheck boundary_pushout_vs_skeleton(const Tree& t, int m, TruncationPtr w, int cap) {
  auto x = materialize(*product_formula({representable_formula(t), constant_formula(delta(m))}), w);
  auto sk = skeleton(x, size(t) + m - 1, cap);
  PushoutCheck out;
  const SSet dm = delta(m), dd = boundary_delta(m);
  for (int i = 0; i < w->size(); ++i) {
    auto homs = hom_set(w->object(i), t);
    std::vector<int> bd;
    for (int g = 0; g < static_cast<int>(homs.size()); ++g)
      if (!is_surjective(homs[g])) bd.push_back(g);
    const int nh = static_cast<int>(homs.size()), nb = static_cast<int>(bd.size());
    SSetMap incl_b{{bd, bd}};
    SSetMap incl_d = boundary_delta_inclusion(m);
    SSet db = discrete(nb), dh = discrete(nh);
    SSet a = product(db, dm), b = product(dh, dd), c = product(db, dd);
    SSetMap ca = product_maps({identity_sset(db), incl_d}, {db, dd}, {db, dm});
    SSetMap cb = product_maps({incl_b, identity_sset(dd)}, {db, dd}, {dh, dd});
    SSetMap ax = product_maps({incl_b, identity_sset(dm)}, {db, dm}, {dh, dm});
    SSetMap bx = product_maps({identity_sset(dh), incl_d}, {dh, dd}, {dh, dm});
    auto po = sset_colimit({a, b, c}, {{2, 0, ca}, {2, 1, cb}}, cap);
    SSet xv = extend(x.values[i], cap);
    SSet ae = extend(a, cap), be = extend(b, cap), ce = extend(c, cap);
    ax = extend_map(ax, ae, xv, cap);
    bx = extend_map(bx, be, xv, cap);
    ca = extend_map(ca, ce, ae, cap);
    for (int l = 0; l <= cap; ++l) {
      std::set<int> image;
      for (int z = 0; z < po.value.sizes[l]; ++z) {
        auto [o, e] = po.levels[l].representatives[z];
        int v = o == 0 ? ax.levels[l][e] : o == 1 ? bx.levels[l][e] : ax.levels[l][ca.levels[l][e]];
        if (!image.insert(v).second) out.injective = false;
      }
      const auto& inc = sk.inclusion.components[i].levels[l];
      if (std::set<int>(inc.begin(), inc.end()) != image) out.image_matches = false;
    }
  }
  return out;
}

/// A random formula whose values on w stay below `max_cells` simplices on
/// levels 0 and 1, so that exact limits over slices stay cheap.
inline FormulaPtr small_random_formula(std::mt19937& rng, const Truncation& w, int max_cells = 2000) {
  for (;;) {
    FormulaPtr f = random_formula(rng, 1);
    bool small = true;
    for (int i = 0; i < w.size() && small; ++i) {
      SSet v = f->value(w.object(i));
      small = sset_eval(v, 0) + sset_eval(v, 1) <= max_cells;
    }
    if (small) return f;
  }
}

}  // namespace oracle
