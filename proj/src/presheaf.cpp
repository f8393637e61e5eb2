#include "dendro/presheaf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "dendro/error.hpp"

namespace dendro {

// ---------------------------------------------------------------- truncations

std::shared_ptr<const Truncation> Truncation::by_degree(TreeVariant variant, DegreeKind degree, int bound,
                                                        int hom_budget) {
  std::shared_ptr<Truncation> w(new Truncation);
  w->variant_ = variant;
  w->degree_kind_ = degree;
  w->bound_ = bound;
  w->label_ = std::string(to_string(variant)) + "/" + std::string(to_string(degree)) + "<=" + std::to_string(bound);
  w->objects_ = enumerate_representatives(variant, degree, bound);
  w->build(hom_budget);
  return w;
}

std::shared_ptr<const Truncation> Truncation::from_trees(TreeVariant variant, const std::vector<Tree>& trees,
                                                         std::string label, int hom_budget) {
  std::shared_ptr<Truncation> w(new Truncation);
  w->variant_ = variant;
  w->label_ = std::move(label);
  std::map<CanonicalCode, Tree> reps;
  for (const auto& t : trees) {
    if (!satisfies_variant(t, variant)) throw Error(ErrorKind::kWrongVariant, "tree outside the truncation's variant");
    Tree r = canonical_representative(t.with_variant(variant));
    reps.emplace(canonical_code(r), r);
  }
  for (auto& [c, t] : reps) w->objects_.push_back(t);
  w->build(hom_budget);
  return w;
}

void Truncation::build(int hom_budget) {
  codes_.clear();
  for (const auto& t : objects_) codes_.push_back(canonical_code(t));
  const int n = size();
  // The caller chose the window, so its largest tree sets the search budget.
  for (const auto& t : objects_) hom_budget = std::max(hom_budget, dendro::size(t));
  homs_.assign(static_cast<std::size_t>(n) * n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) homs_[i * n + j] = hom_set(objects_[i], objects_[j], hom_budget);
}

int Truncation::index_of(const CanonicalCode& c) const {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
  if (it == codes_.end() || *it != c) return -1;
  return static_cast<int>(it - codes_.begin());
}

int Truncation::index_of(const Tree& t) const { return index_of(canonical_code(t)); }

int Truncation::arrow_index(int i, int j, const std::vector<int>& edge_map) const {
  const auto& h = hom(i, j);
  auto it = std::lower_bound(h.begin(), h.end(), edge_map,
                             [](const TreeMap& f, const std::vector<int>& e) { return f.edge_map < e; });
  if (it == h.end() || it->edge_map != edge_map) return -1;
  return static_cast<int>(it - h.begin());
}

bool Truncation::contains_all_sizes_up_to(int n) const {
  for (const auto& c : enumerate_trees(variant_, DegreeKind::kSize, n))
    if (index_of(c) < 0) return false;
  return true;
}

bool Truncation::contains(const Truncation& other) const {
  for (int i = 0; i < other.size(); ++i)
    if (index_of(other.code(i)) < 0) return false;
  return true;
}

std::pair<int, std::vector<int>> to_representative(const Truncation& w, const Tree& t) {
  int idx = w.index_of(t);
  if (idx < 0) throw Error(ErrorKind::kWindowTooSmall, "tree not in truncation " + w.label());
  return {idx, isomorphisms(t, w.object(idx)).front()};
}

// ------------------------------------------------------------------ presheaves

int LeanDSpace::level() const {
  int l = values.empty() ? 0 : values.front().trunc;
  for (const auto& v : values) l = std::min(l, v.trunc);
  return l;
}

LeanDSpace at_level(const LeanDSpace& x, int level) {
  LeanDSpace y;
  y.trunc = x.trunc;
  for (const auto& v : x.values) y.values.push_back(extend(v, std::max(level, v.trunc)));
  const int n = x.trunc->size();
  y.actions.assign(n, std::vector<std::vector<SSetMap>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int top = std::min(y.values[i].trunc, y.values[j].trunc);
      for (const auto& a : x.actions[i][j]) y.actions[i][j].push_back(extend_map(a, y.values[j], y.values[i], top));
    }
  return y;
}

FunctorialityReport check_functoriality(const LeanDSpace& x0) {
  LeanDSpace x = at_level(x0, x0.level());
  const Truncation& w = *x.trunc;
  const int n = w.size();
  auto fail = [](std::string s) { return FunctorialityReport{false, std::move(s)}; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < static_cast<int>(w.hom(i, j).size()); ++a)
        if (!is_simplicial(x.action(i, j, a), x.values[j], x.values[i]))
          return fail("action of " + describe(w.hom(i, j)[a]) + " is not simplicial");
  for (int i = 0; i < n; ++i) {
    int id = w.arrow_index(i, i, identity_map(w.object(i)).edge_map);
    const SSetMap& f = x.action(i, i, id);
    for (int k = 0; k <= f.top(); ++k)
      for (int e = 0; e < static_cast<int>(f.levels[k].size()); ++e)
        if (f.levels[k][e] != e) return fail("identity of object " + std::to_string(i) + " acts nontrivially");
  }
  // X(g o f) = X(f) o X(g) for f: i -> j, g: j -> k.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < static_cast<int>(w.hom(i, j).size()); ++a)
          for (int b = 0; b < static_cast<int>(w.hom(j, k).size()); ++b) {
            TreeMap gf = compose(w.hom(j, k)[b], w.hom(i, j)[a]);
            int c = w.arrow_index(i, k, gf.edge_map);
            SSetMap lhs = compose(x.action(i, j, a), x.action(j, k, b));
            const SSetMap& rhs = x.action(i, k, c);
            const int top = std::min(lhs.top(), rhs.top());
            for (int l = 0; l <= top; ++l)
              if (lhs.levels[l] != rhs.levels[l]) return fail("X(g o f) != X(f) o X(g) for " + describe(gf));
          }
  return {};
}

bool is_natural(const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y) {
  const Truncation& w = *x.trunc;
  const int n = w.size();
  for (int i = 0; i < n; ++i)
    if (!is_simplicial(f.components[i], x.values[i], y.values[i])) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < static_cast<int>(w.hom(i, j).size()); ++a) {
        SSetMap lhs = compose(f.components[i], x.action(i, j, a));
        SSetMap rhs = compose(y.action(i, j, a), f.components[j]);
        const int top = std::min(lhs.top(), rhs.top());
        for (int l = 0; l <= top; ++l)
          if (lhs.levels[l] != rhs.levels[l]) return false;
      }
  return true;
}

DSpaceMap identity_dspace(const LeanDSpace& x) {
  DSpaceMap f;
  for (const auto& v : x.values) f.components.push_back(identity_sset(v));
  return f;
}

DSpaceMap compose(const DSpaceMap& g, const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y,
                  const LeanDSpace& z) {
  DSpaceMap h;
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    const int top = std::max(f.components[i].top(), g.components[i].top());
    SSet xs = extend(x.values[i], top), ys = extend(y.values[i], top), zs = extend(z.values[i], top);
    h.components.push_back(compose(extend_map(g.components[i], ys, zs, top), extend_map(f.components[i], xs, ys, top)));
  }
  return h;
}

bool is_iso(const DSpaceMap& f, const LeanDSpace& x, const LeanDSpace& y, int level) {
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    SSet xs = extend(x.values[i], level), ys = extend(y.values[i], level);
    SSetMap c = extend_map(f.components[i], xs, ys, level);
    c.levels.resize(level + 1);
    if (!is_levelwise_bijective(c, xs, ys)) return false;
  }
  return true;
}

// -------------------------------------------------------------------- formulas

namespace {

SSetMap discrete_map(std::vector<int> values) {
  SSetMap f;
  f.levels = {values, values};
  return f;
}

std::string fingerprint(const Tree& t) {
  std::ostringstream os;
  os << static_cast<int>(t.variant()) << ':' << t.num_edges() << ':' << t.root();
  for (const auto& v : t.vertices()) {
    os << '|' << v.out;
    for (int i : v.ins) os << ',' << i;
  }
  return os.str();
}

constexpr long long kMaxDiscrete = 4'000'000;

class Terminal final : public PresheafFormula {
 public:
  SSet value(const Tree&) const override { return point(); }
  SSetMap act(const TreeMap&) const override { return identity_sset(point()); }
  std::string name() const override { return "1"; }
};

class Constant final : public PresheafFormula {
 public:
  Constant(SSet k, std::string label) : k_(std::move(k)), label_(std::move(label)) {}
  SSet value(const Tree&) const override { return k_; }
  SSetMap act(const TreeMap&) const override { return identity_sset(k_); }
  std::string name() const override { return label_; }

 private:
  SSet k_;
  std::string label_;
};

class EdgePower final : public PresheafFormula {
 public:
  EdgePower(SSet k, std::string label) : k_(std::move(k)), label_(std::move(label)) {}
  SSet value(const Tree& t) const override { return power(k_, t.num_edges()); }
  SSetMap act(const TreeMap& f) const override { return power_reindex(k_, f.target.num_edges(), f.edge_map); }
  std::string name() const override { return label_ + "^E"; }

 private:
  SSet k_;
  std::string label_;
};

class Decorated final : public PresheafFormula {
 public:
  Decorated(int colours, CommMonoid m) : c_(colours), m_(m) {}

  SSet value(const Tree& t) const override { return discrete(count(t)); }

  SSetMap act(const TreeMap& f) const override {
    const Tree& s = f.source;
    const Tree& t = f.target;
    auto vm = vertex_map(f);
    const int n = count(t);
    std::vector<int> out(n);
    std::vector<int> digits(t.num_edges() + t.num_vertices());
    for (int z = 0; z < n; ++z) {
      int r = z;
      for (int p = static_cast<int>(digits.size()); p-- > 0;) {
        int base = p < t.num_edges() ? c_ : m_.order;
        digits[p] = r % base;
        r /= base;
      }
      int code = 0;
      for (int e = 0; e < s.num_edges(); ++e) code = code * c_ + digits[f.edge_map[e]];
      for (int v = 0; v < s.num_vertices(); ++v) {
        int sum = 0;
        for (int u : vm[v]) sum = m_.op(sum, digits[t.num_edges() + u]);
        code = code * m_.order + sum;
      }
      out[z] = code;
    }
    return discrete_map(std::move(out));
  }

  std::string name() const override {
    return "C" + std::to_string(c_) + "^E x " + (m_.kind == CommMonoid::Kind::kCyclic ? "Z" : "M") +
           std::to_string(m_.order) + "^V";
  }

 private:
  int count(const Tree& t) const {
    long long n = 1;
    for (int e = 0; e < t.num_edges(); ++e) n *= c_;
    for (int v = 0; v < t.num_vertices(); ++v) n *= m_.order;
    if (n > kMaxDiscrete) throw Error(ErrorKind::kBudgetExceeded, "decorated presheaf value too large");
    return static_cast<int>(n);
  }

  int c_;
  CommMonoid m_;
};

class Representable : public PresheafFormula {
 public:
  explicit Representable(Tree t0) : t0_(std::move(t0)) {}

  SSet value(const Tree& t) const override { return discrete(static_cast<int>(maps(t).size())); }

  SSetMap act(const TreeMap& f) const override {
    const auto& src = maps(f.source);
    const auto& tgt = maps(f.target);
    std::vector<int> out(tgt.size());
    std::vector<int> em(f.source.num_edges());
    for (std::size_t g = 0; g < tgt.size(); ++g) {
      for (int e = 0; e < f.source.num_edges(); ++e) em[e] = tgt[g][f.edge_map[e]];
      auto it = std::lower_bound(src.begin(), src.end(), em);
      out[g] = static_cast<int>(it - src.begin());
    }
    return discrete_map(std::move(out));
  }

  std::string name() const override { return "Omega[" + canonical_code(t0_).bytes + "]"; }

 protected:
  virtual bool accept(const TreeMap&) const { return true; }

  /// Sorted edge maps of the accepted maps t -> t0.
  const std::vector<std::vector<int>>& maps(const Tree& t) const {
    auto key = fingerprint(t);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<int>> ms;
    for (const auto& g : hom_set(t, t0_, std::max({kDefaultHomBudget, size(t), size(t0_)})))
      if (accept(g)) ms.push_back(g.edge_map);
    return cache_.emplace(key, std::move(ms)).first->second;
  }

  Tree t0_;
  mutable std::map<std::string, std::vector<std::vector<int>>> cache_;
};

class Boundary final : public Representable {
 public:
  using Representable::Representable;
  std::string name() const override { return "dOmega[" + canonical_code(t0_).bytes + "]"; }

 protected:
  bool accept(const TreeMap& g) const override { return !is_surjective(g); }
};

class Product final : public PresheafFormula {
 public:
  explicit Product(std::vector<FormulaPtr> f) : f_(std::move(f)) {}
  SSet value(const Tree& t) const override { return product_all(values(t)); }
  SSetMap act(const TreeMap& g) const override {
    std::vector<SSetMap> maps;
    for (const auto& f : f_) maps.push_back(f->act(g));
    return product_maps(maps, values(g.target), values(g.source));
  }
  std::string name() const override { return join(" x "); }

 private:
  std::vector<SSet> values(const Tree& t) const {
    std::vector<SSet> v;
    for (const auto& f : f_) v.push_back(f->value(t));
    return v;
  }
  std::string join(const std::string& sep) const {
    std::string s = "(";
    for (std::size_t i = 0; i < f_.size(); ++i) s += (i ? sep : "") + f_[i]->name();
    return s + ")";
  }
  std::vector<FormulaPtr> f_;
};

class Coproduct final : public PresheafFormula {
 public:
  explicit Coproduct(std::vector<FormulaPtr> f) : f_(std::move(f)) {}
  SSet value(const Tree& t) const override { return coproduct_all(values(t)); }
  SSetMap act(const TreeMap& g) const override {
    std::vector<SSetMap> maps;
    for (const auto& f : f_) maps.push_back(f->act(g));
    return coproduct_maps(maps, values(g.target), values(g.source));
  }
  std::string name() const override {
    std::string s = "(";
    for (std::size_t i = 0; i < f_.size(); ++i) s += (i ? " + " : "") + f_[i]->name();
    return s + ")";
  }

 private:
  std::vector<SSet> values(const Tree& t) const {
    std::vector<SSet> v;
    for (const auto& f : f_) v.push_back(f->value(t));
    return v;
  }
  std::vector<FormulaPtr> f_;
};

}  // namespace

FormulaPtr terminal_formula() { return std::make_shared<Terminal>(); }
FormulaPtr constant_formula(const SSet& k, std::string label) { return std::make_shared<Constant>(k, std::move(label)); }
FormulaPtr edge_power_formula(const SSet& k, std::string label) {
  return std::make_shared<EdgePower>(k, std::move(label));
}
FormulaPtr decorated_formula(int colours, CommMonoid decorations) {
  if (colours < 1 || decorations.order < 1) throw Error(ErrorKind::kInvalidInput, "empty colour or decoration set");
  return std::make_shared<Decorated>(colours, decorations);
}
FormulaPtr representable_formula(const Tree& t0) { return std::make_shared<Representable>(t0); }
FormulaPtr boundary_formula(const Tree& t0) { return std::make_shared<Boundary>(t0); }
FormulaPtr product_formula(std::vector<FormulaPtr> factors) { return std::make_shared<Product>(std::move(factors)); }
FormulaPtr coproduct_formula(std::vector<FormulaPtr> summands) {
  return std::make_shared<Coproduct>(std::move(summands));
}

FormulaPtr random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 3);
  switch (pick(rng)) {
    case 0:
      return terminal_formula();
    case 1: {
      std::uniform_int_distribution<int> c(1, 2), d(1, 2), kind(0, 1);
      CommMonoid m{kind(rng) ? CommMonoid::Kind::kMax : CommMonoid::Kind::kCyclic, d(rng)};
      return decorated_formula(c(rng), m);
    }
    case 2:
      return edge_power_formula(discrete(2), "2");
    case 3:
      return edge_power_formula(delta(1), "D1");
    case 4:
      return product_formula({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    default:
      return coproduct_formula({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
  }
}

LeanDSpace materialize(const PresheafFormula& x, TruncationPtr trunc) {
  LeanDSpace out;
  out.trunc = trunc;
  const int n = trunc->size();
  for (int i = 0; i < n; ++i) out.values.push_back(x.value(trunc->object(i)));
  out.actions.assign(n, std::vector<std::vector<SSetMap>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& f : trunc->hom(i, j)) out.actions[i][j].push_back(x.act(f));
  return out;
}

// ------------------------------------------------------- limits over slices

CommaLimit comma_limit(const LeanDSpace& x, const Tree& t, const std::function<bool(int, const TreeMap&)>& keep) {
  const Truncation& w = *x.trunc;
  CommaLimit out;
  for (int i = 0; i < w.size(); ++i)
    for (auto& f : hom_set(w.object(i), t, std::max({kDefaultHomBudget, size(w.object(i)), size(t)})))
      if (!keep || keep(i, f)) out.objects.emplace_back(i, std::move(f));
  std::vector<SSet> objs;
  for (const auto& [i, f] : out.objects) objs.push_back(x.values[i]);
  // For every a: o_i -> o_j and g: o_j -> t, X(a) sends the (j, g) entry to
  // the (i, g o a) entry.
  std::map<std::pair<int, std::vector<int>>, int> where;
  for (int n = 0; n < static_cast<int>(out.objects.size()); ++n)
    where.emplace(std::make_pair(out.objects[n].first, out.objects[n].second.edge_map), n);
  std::vector<SSetArrow> arrows;
  std::vector<int> em;
  for (int n = 0; n < static_cast<int>(out.objects.size()); ++n) {
    const auto& [j, g] = out.objects[n];
    for (int i = 0; i < w.size(); ++i)
      for (int a = 0; a < static_cast<int>(w.hom(i, j).size()); ++a) {
        const auto& am = w.hom(i, j)[a].edge_map;
        em.resize(am.size());
        for (std::size_t e = 0; e < am.size(); ++e) em[e] = g.edge_map[am[e]];
        auto it = where.find({i, em});
        if (it == where.end() || it->second == n) continue;
        arrows.push_back({n, it->second, x.action(i, j, a)});
      }
  }
  SSetLimit lim = sset_limit(objs, arrows, x.level());
  out.value = std::move(lim.value);
  out.levels = std::move(lim.levels);
  return out;
}

SSet eval(const LeanDSpace& x, const Tree& t) {
  int idx = x.trunc->index_of(t);
  if (idx >= 0) return x.values[idx];
  return comma_limit(x, t).value;
}

LeanDSpace kan_extend(const LeanDSpace& x0, TruncationPtr big) {
  if (!big->contains(*x0.trunc)) throw Error(ErrorKind::kInvalidInput, "target truncation does not contain the source");
  const Truncation& w = *x0.trunc;
  int lvl = std::max(1, x0.level());
  for (const auto& v : x0.values) lvl = std::max(lvl, v.coskeletal ? v.trunc : lvl);
  LeanDSpace x = at_level(x0, lvl);
  const int n = big->size();
  std::vector<int> old(n);
  std::vector<std::optional<CommaLimit>> fresh(n);
  LeanDSpace out;
  out.trunc = big;
  for (int I = 0; I < n; ++I) {
    old[I] = w.index_of(big->code(I));
    if (old[I] >= 0) {
      out.values.push_back(x.values[old[I]]);
    } else {
      fresh[I] = comma_limit(x, big->object(I));
      out.values.push_back(fresh[I]->value);
    }
  }
  // Position of (i, f) among the objects of a fresh limit.
  auto entry = [&](int I, int i, const std::vector<int>& em) {
    const auto& objs = fresh[I]->objects;
    for (int p = 0; p < static_cast<int>(objs.size()); ++p)
      if (objs[p].first == i && objs[p].second.edge_map == em) return p;
    throw Error(ErrorKind::kInvalidMap, "missing slice object");
  };
  out.actions.assign(n, std::vector<std::vector<SSetMap>>(n));
  for (int I = 0; I < n; ++I)
    for (int J = 0; J < n; ++J)
      for (const auto& a : big->hom(I, J)) {
        // X'(a): X'(J) -> X'(I).
        SSetMap m;
        if (old[I] >= 0 && old[J] >= 0) {
          m = x.action(old[I], old[J], w.arrow_index(old[I], old[J], a.edge_map));
        } else if (old[I] >= 0) {
          int p = entry(J, old[I], a.edge_map);
          for (int l = 0; l <= out.values[J].trunc && l <= out.values[I].trunc; ++l) {
            std::vector<int> lv;
            for (const auto& tup : fresh[J]->levels[l].tuples) lv.push_back(tup[p]);
            m.levels.push_back(std::move(lv));
          }
        } else {
          // Entry (i, f) of the image is X'(a o f) applied to the source.
          const auto& objs = fresh[I]->objects;
          std::vector<std::function<int(int, int)>> comp;
          for (const auto& [i, f] : objs) {
            std::vector<int> af(f.edge_map.size());
            for (std::size_t e = 0; e < af.size(); ++e) af[e] = a.edge_map[f.edge_map[e]];
            if (old[J] >= 0) {
              int c = w.arrow_index(i, old[J], af);
              const SSetMap* act = &x.action(i, old[J], c);
              comp.push_back([act](int l, int y) { return act->levels[l][y]; });
            } else {
              int p = entry(J, i, af);
              const CommaLimit* src = &*fresh[J];
              comp.push_back([src, p](int l, int y) { return src->levels[l].tuples[y][p]; });
            }
          }
          const int top = std::min(out.values[J].trunc, out.values[I].trunc);
          std::vector<int> tup(objs.size());
          for (int l = 0; l <= top; ++l) {
            std::vector<int> lv(out.values[J].sizes[l]);
            for (int y = 0; y < out.values[J].sizes[l]; ++y) {
              for (std::size_t q = 0; q < objs.size(); ++q) tup[q] = comp[q](l, y);
              lv[y] = fresh[I]->levels[l].find(tup);
            }
            m.levels.push_back(std::move(lv));
          }
        }
        out.actions[I][J].push_back(std::move(m));
      }
  return out;
}

LeanDSpace restrict_to(const LeanDSpace& x, TruncationPtr small) {
  const int n = small->size();
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) {
    idx[i] = x.trunc->index_of(small->code(i));
    if (idx[i] < 0) throw Error(ErrorKind::kWindowTooSmall, "restriction target not contained in " + x.trunc->label());
  }
  LeanDSpace out;
  out.trunc = small;
  for (int i = 0; i < n; ++i) out.values.push_back(x.values[idx[i]]);
  out.actions.assign(n, std::vector<std::vector<SSetMap>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& f : small->hom(i, j))
        out.actions[i][j].push_back(x.action(idx[i], idx[j], x.trunc->arrow_index(idx[i], idx[j], f.edge_map)));
  return out;
}

}  // namespace dendro
