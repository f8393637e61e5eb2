#include "dendro/operad.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "dendro/error.hpp"

namespace dendro {

namespace {

bool all_equal(const std::vector<int>& ins, int out) {
  return std::all_of(ins.begin(), ins.end(), [&](int c) { return c == out; });
}

// ------------------------------------------------ leaf-labelled binary trees

// "(a b)" with the child holding the smaller leaf first; leaves are numbers.
struct BNode {
  int leaf = -1;
  int left = -1;
  int right = -1;
};

struct BTree {
  std::vector<BNode> nodes;
  int root = -1;
};

int parse_node(const std::string& s, std::size_t& pos, BTree& t) {
  if (s[pos] == '(') {
    ++pos;
    int l = parse_node(s, pos, t);
    ++pos;  // space
    int r = parse_node(s, pos, t);
    ++pos;  // ')'
    t.nodes.push_back({-1, l, r});
  } else {
    std::size_t end = pos;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    t.nodes.push_back({std::stoi(s.substr(pos, end - pos)), -1, -1});
    pos = end;
  }
  return static_cast<int>(t.nodes.size()) - 1;
}

BTree parse(const std::string& s) {
  BTree t;
  std::size_t pos = 0;
  t.root = parse_node(s, pos, t);
  return t;
}

// Canonical string after relabeling leaves; the second entry is the least leaf.
std::pair<std::string, int> render(const BTree& t, int n, const std::function<int(int)>& relabel) {
  const BNode& b = t.nodes[n];
  if (b.leaf >= 0) {
    int v = relabel(b.leaf);
    return {std::to_string(v), v};
  }
  auto l = render(t, b.left, relabel);
  auto r = render(t, b.right, relabel);
  if (r.second < l.second) std::swap(l, r);
  return {"(" + l.first + " " + r.first + ")", l.second};
}

std::string substitute(const std::string& p, int i, const std::string& q, int k) {
  BTree pt = parse(p);
  BTree qt = parse(q);
  std::function<std::pair<std::string, int>(int)> go = [&](int n) -> std::pair<std::string, int> {
    const BNode& b = pt.nodes[n];
    if (b.leaf >= 0) {
      if (b.leaf == i) return render(qt, qt.root, [&](int a) { return a + i; });
      int v = b.leaf < i ? b.leaf : b.leaf + k - 1;
      return {std::to_string(v), v};
    }
    auto l = go(b.left);
    auto r = go(b.right);
    if (r.second < l.second) std::swap(l, r);
    return {"(" + l.first + " " + r.first + ")", l.second};
  };
  return go(pt.root).first;
}

void trees_on(const std::vector<int>& labels, std::vector<std::string>& out) {
  if (labels.size() == 1) {
    out.push_back(std::to_string(labels[0]));
    return;
  }
  const int rest = static_cast<int>(labels.size()) - 1;
  for (int mask = 0; mask < (1 << rest) - 1; ++mask) {
    std::vector<int> a{labels[0]}, b;
    for (int p = 0; p < rest; ++p) (mask >> p & 1 ? a : b).push_back(labels[p + 1]);
    std::vector<std::string> ta, tb;
    trees_on(a, ta);
    trees_on(b, tb);
    for (const auto& x : ta)
      for (const auto& y : tb) out.push_back("(" + x + " " + y + ")");
  }
}

class BinaryOps {
 public:
  static constexpr int kMaxArity = 7;
  const std::vector<std::string>& of(int n) {
    if (n < 1 || n > kMaxArity) throw Error(ErrorKind::kBudgetExceeded, "free operad arity out of range");
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    std::vector<std::string> ts;
    trees_on(labels, ts);
    std::sort(ts.begin(), ts.end());
    return cache_.emplace(n, std::move(ts)).first->second;
  }
  int index(int n, const std::string& s) {
    const auto& v = of(n);
    auto it = std::lower_bound(v.begin(), v.end(), s);
    if (it == v.end() || *it != s) throw Error(ErrorKind::kInvalidInput, "not a canonical binary tree: " + s);
    return static_cast<int>(it - v.begin());
  }

 private:
  std::map<int, std::vector<std::string>> cache_;
};

}  // namespace

ColouredOperad comm_operad() {
  ColouredOperad p;
  p.name = "Comm";
  p.count = [](const std::vector<int>& ins, int) { return ins.empty() ? 0 : 1; };
  p.compose = [](const std::vector<int>&, int, int, int, const std::vector<int>&, int) { return 0; };
  p.permute = [](const std::vector<int>&, int, int, const std::vector<int>&) { return 0; };
  p.unit = [](int) { return 0; };
  return p;
}

ColouredOperad free_binary_operad() {
  auto ops = std::make_shared<BinaryOps>();
  ColouredOperad p;
  p.name = "FreeBin";
  p.count = [ops](const std::vector<int>& ins, int) {
    if (ins.empty()) return 0;
    int n = 1;
    for (int k = 3; k <= 2 * static_cast<int>(ins.size()) - 3; k += 2) n *= k;
    return n;
  };
  p.compose = [ops](const std::vector<int>& ins, int, int a, int i, const std::vector<int>& qins, int b) {
    const int n = static_cast<int>(ins.size()), k = static_cast<int>(qins.size());
    std::string s = substitute(ops->of(n)[a], i, ops->of(k)[b], k);
    return ops->index(n + k - 1, s);
  };
  p.permute = [ops](const std::vector<int>& ins, int, int a, const std::vector<int>& s) {
    const int n = static_cast<int>(ins.size());
    std::vector<int> inv(n);
    for (int j = 0; j < n; ++j) inv[s[j]] = j;
    BTree t = parse(ops->of(n)[a]);
    return ops->index(n, render(t, t.root, [&](int l) { return inv[l]; }).first);
  };
  p.unit = [](int) { return 0; };
  return p;
}

ColouredOperad diagonal_comm_operad(int colours) {
  ColouredOperad p = comm_operad();
  p.name = "DiagComm" + std::to_string(colours);
  p.colours = colours;
  p.count = [](const std::vector<int>& ins, int out) { return !ins.empty() && all_equal(ins, out) ? 1 : 0; };
  return p;
}

ColouredOperad poset_operad(int colours) {
  ColouredOperad p = comm_operad();
  p.name = "Poset" + std::to_string(colours);
  p.colours = colours;
  p.count = [](const std::vector<int>& ins, int out) {
    return !ins.empty() && std::all_of(ins.begin(), ins.end(), [&](int c) { return out <= c; }) ? 1 : 0;
  };
  return p;
}

ColouredOperad graded_comm_operad() {
  ColouredOperad p;
  p.name = "GradedComm";
  p.count = [](const std::vector<int>& ins, int) { return ins.size() >= 2 ? 2 : static_cast<int>(ins.size()); };
  p.compose = [](const std::vector<int>&, int, int a, int, const std::vector<int>&, int b) { return (a + b) % 2; };
  p.permute = [](const std::vector<int>&, int, int a, const std::vector<int>&) { return a; };
  p.unit = [](int) { return 0; };
  return p;
}

ColouredOperad chaotic_operad(int colours) {
  ColouredOperad p = comm_operad();
  p.name = "Chaotic" + std::to_string(colours);
  p.colours = colours;
  return p;
}

ColouredOperad binary_fixture_operad() {
  ColouredOperad p;
  p.name = "BinFixture";
  p.colours = 2;
  p.count = [](const std::vector<int>& ins, int out) {
    if (ins.size() == 1) return ins[0] == out ? 1 : 0;
    if (ins.size() != 2) return 0;
    if (out == 0) return ins[0] == 0 || ins[1] == 0 ? 1 : 0;
    return ins[0] == 1 && ins[1] == 1 ? 2 : 0;
  };
  p.compose = [](const std::vector<int>& ins, int, int a, int, const std::vector<int>& qins, int b) {
    if (ins.size() == 1) return b;
    if (qins.size() == 1) return a;
    throw Error(ErrorKind::kInvalidInput, "BinFixture has no operations of arity 3");
  };
  p.permute = [](const std::vector<int>&, int, int a, const std::vector<int>&) { return a; };
  p.unit = [](int) { return 0; };
  return p;
}

// ---------------------------------------------------------------------- nerve

namespace {

constexpr std::size_t kMaxLabelings = 2'000'000;

class Nerve final : public PresheafFormula {
 public:
  explicit Nerve(ColouredOperad p) : p_(std::move(p)) {}

  SSet value(const Tree& t) const override { return discrete(static_cast<int>(labelings(t).size())); }

  SSetMap act(const TreeMap& f) const override {
    const Tree& s = f.source;
    const Tree& t = f.target;
    const auto& src = labelings(s);
    const auto& tgt = labelings(t);
    auto vm = vertex_map(f);
    std::vector<int> out(tgt.size());
    std::vector<int> lab(s.num_edges() + s.num_vertices());
    for (std::size_t z = 0; z < tgt.size(); ++z) {
      const auto& l = tgt[z];
      for (int e = 0; e < s.num_edges(); ++e) lab[e] = l[f.edge_map[e]];
      for (int v = 0; v < s.num_vertices(); ++v) {
        const Vertex& sv = s.vertex(v);
        const int out_c = l[f.edge_map[sv.out]];
        if (vm[v].empty()) {
          lab[s.num_edges() + v] = p_.unit(out_c);
          continue;
        }
        std::vector<int> leaves;
        for (int in : sv.ins) leaves.push_back(f.edge_map[in]);
        auto [op, order] = composite(t, l, f.edge_map[sv.out], leaves);
        std::vector<int> perm;
        for (int e : leaves) perm.push_back(static_cast<int>(std::find(order.begin(), order.end(), e) - order.begin()));
        std::vector<int> cols;
        for (int e : order) cols.push_back(l[e]);
        lab[s.num_edges() + v] = p_.permute(cols, out_c, op, perm);
      }
      auto it = std::lower_bound(src.begin(), src.end(), lab);
      if (it == src.end() || *it != lab) throw Error(ErrorKind::kInvalidMap, "nerve action left the labelings");
      out[z] = static_cast<int>(it - src.begin());
    }
    SSetMap m;
    m.levels = {out, out};
    return m;
  }

  std::string name() const override { return "N(" + p_.name + ")"; }

 private:
  // Composite of the vertex labels of t above edge x, stopping at `leaves`;
  // returns the operation and the order of its inputs.
  std::pair<int, std::vector<int>> composite(const Tree& t, const std::vector<int>& l, int x,
                                             const std::vector<int>& leaves) const {
    const int u = t.vertex_above(x);
    int op = l[t.num_edges() + u];
    std::vector<int> inp = t.vertex(u).ins;
    for (int i = static_cast<int>(inp.size()) - 1; i >= 0; --i) {
      if (std::find(leaves.begin(), leaves.end(), inp[i]) != leaves.end()) continue;
      auto [q, qinp] = composite(t, l, inp[i], leaves);
      std::vector<int> cols, qcols;
      for (int e : inp) cols.push_back(l[e]);
      for (int e : qinp) qcols.push_back(l[e]);
      op = p_.compose(cols, l[x], op, i, qcols, q);
      inp.erase(inp.begin() + i);
      inp.insert(inp.begin() + i, qinp.begin(), qinp.end());
    }
    return {op, inp};
  }

  const std::vector<std::vector<int>>& labelings(const Tree& t) const {
    std::ostringstream key;
    key << t.num_edges() << ':' << t.root();
    for (const auto& v : t.vertices()) {
      key << '|' << v.out;
      for (int i : v.ins) key << ',' << i;
    }
    auto it = cache_.find(key.str());
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> lab(t.num_edges() + t.num_vertices());
    std::function<void(int)> rec = [&](int pos) {
      if (pos == static_cast<int>(lab.size())) {
        out.push_back(lab);
        if (out.size() > kMaxLabelings) throw Error(ErrorKind::kBudgetExceeded, "nerve value too large");
        return;
      }
      if (pos < t.num_edges()) {
        for (int c = 0; c < p_.colours; ++c) {
          lab[pos] = c;
          rec(pos + 1);
        }
        return;
      }
      const Vertex& v = t.vertex(pos - t.num_edges());
      std::vector<int> cols;
      for (int e : v.ins) cols.push_back(lab[e]);
      const int n = p_.count(cols, lab[v.out]);
      for (int o = 0; o < n; ++o) {
        lab[pos] = o;
        rec(pos + 1);
      }
    };
    rec(0);
    return cache_.emplace(key.str(), std::move(out)).first->second;
  }

  ColouredOperad p_;
  mutable std::map<std::string, std::vector<std::vector<int>>> cache_;
};

// All colour profiles of the given arity.
std::vector<std::vector<int>> profiles(int colours, int arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(arity, 0);
  while (true) {
    out.push_back(cur);
    int p = arity - 1;
    while (p >= 0 && ++cur[p] == colours) cur[p--] = 0;
    if (p < 0) break;
  }
  return out;
}

}  // namespace

FormulaPtr nerve_formula(const ColouredOperad& p) { return std::make_shared<Nerve>(p); }

DkReport dk_check(const OperadMap& f, int max_arity) {
  const ColouredOperad& p = *f.source;
  const ColouredOperad& q = *f.target;
  DkReport rep;
  for (int n = 1; n <= max_arity && rep.fully_faithful; ++n)
    for (const auto& ins : profiles(p.colours, n)) {
      for (int out = 0; out < p.colours; ++out) {
        std::vector<int> fins;
        for (int c : ins) fins.push_back(f.colour_map[c]);
        const int np = p.count(ins, out), nq = q.count(fins, f.colour_map[out]);
        std::vector<char> hit(nq, 0);
        bool ok = np == nq;
        for (int o = 0; o < np && ok; ++o) {
          int img = f.on_ops(ins, out, o);
          ok = img >= 0 && img < nq && !hit[img];
          if (ok) hit[img] = 1;
        }
        if (!ok) {
          rep.fully_faithful = false;
          std::ostringstream os;
          os << "operations of arity " << n << " with output " << out << ": " << np << " vs " << nq;
          rep.detail = os.str();
          break;
        }
      }
      if (!rep.fully_faithful) break;
    }
  // Colours of q isomorphic to an image colour, via invertible unary operations.
  auto isomorphic = [&](int a, int b) {
    if (a == b) return true;
    for (int u = 0; u < q.count({a}, b); ++u)
      for (int v = 0; v < q.count({b}, a); ++v)
        if (q.compose({a}, b, u, 0, {b}, v) == q.unit(b) && q.compose({b}, a, v, 0, {a}, u) == q.unit(a))
          return true;
    return false;
  };
  for (int d = 0; d < q.colours; ++d) {
    bool hit = false;
    for (int c = 0; c < p.colours && !hit; ++c) hit = isomorphic(f.colour_map[c], d);
    if (!hit) {
      rep.essentially_surjective = false;
      if (rep.detail.empty()) rep.detail = "colour " + std::to_string(d) + " is not in the essential image";
    }
  }
  return rep;
}

bool check_operad_laws(const ColouredOperad& p, int max_arity) {
  for (int n = 1; n <= max_arity; ++n)
    for (const auto& ins : profiles(p.colours, n))
      for (int out = 0; out < p.colours; ++out)
        for (int a = 0; a < p.count(ins, out); ++a) {
          // Units on both sides.
          if (p.compose({out}, out, p.unit(out), 0, ins, a) != a) return false;
          for (int i = 0; i < n; ++i)
            if (p.compose(ins, out, a, i, {ins[i]}, p.unit(ins[i])) != a) return false;
          // (a.s).t = a.(s o t) for transpositions.
          std::vector<int> id(n);
          std::iota(id.begin(), id.end(), 0);
          if (p.permute(ins, out, a, id) != a) return false;
          for (int i = 0; i + 1 < n; ++i) {
            std::vector<int> s = id;
            std::swap(s[i], s[i + 1]);
            std::vector<int> ins_s;
            for (int j : s) ins_s.push_back(ins[j]);
            if (p.permute(ins_s, out, p.permute(ins, out, a, s), s) != a) return false;
          }
          // Sequential associativity with binary operations.
          for (int i = 0; i < n && n + 1 <= max_arity; ++i)
            for (const auto& qins : profiles(p.colours, 2))
              for (int b = 0; b < p.count(qins, ins[i]); ++b) {
                std::vector<int> mid = ins;
                mid.erase(mid.begin() + i);
                mid.insert(mid.begin() + i, qins.begin(), qins.end());
                const int ab = p.compose(ins, out, a, i, qins, b);
                for (int j = 0; j < 2 && n + 2 <= max_arity; ++j)
                  for (const auto& rins : profiles(p.colours, 2))
                    for (int c = 0; c < p.count(rins, qins[j]); ++c) {
                      std::vector<int> bins = qins;
                      int bc = p.compose(qins, ins[i], b, j, rins, c);
                      bins.erase(bins.begin() + j);
                      bins.insert(bins.begin() + j, rins.begin(), rins.end());
                      if (p.compose(mid, out, ab, i + j, rins, c) != p.compose(ins, out, a, i, bins, bc)) return false;
                    }
              }
        }
  return true;
}

}  // namespace dendro
