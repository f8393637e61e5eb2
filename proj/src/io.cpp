#include "dendro/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dendro/error.hpp"

namespace dendro {

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string arrow_id(const Truncation& w, int i, int j, const TreeMap& f) {
  return w.code(i).bytes + "->" + w.code(j).bytes + ":" + join(f.edge_map);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::kInvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

// Wraps nlohmann's type errors as invalid input.
template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kInvalidInput, std::string("field '") + key + "': " + e.what());
  }
}

Json nested_ops(const std::vector<std::vector<std::vector<int>>>& ops, int first) {
  Json out = Json::object();
  for (std::size_t k = first; k < ops.size(); ++k) out[std::to_string(k)] = ops[k];
  return out;
}

TruncationPtr trunc_from_json(const Json& j) {
  const TreeVariant v = parse_variant(get<std::string>(j, "variant"));
  std::vector<Tree> trees;
  for (const auto& c : field(j, "objects")) trees.push_back(tree_from_code({c.get<std::string>()}, v));
  return Truncation::from_trees(v, trees, j.value("label", std::string("custom")));
}

}  // namespace

Json to_json(const Tree& t) {
  Json vs = Json::array();
  for (const auto& v : t.vertices()) vs.push_back({{"out", v.out}, {"in", v.ins}});
  std::vector<int> edges(t.num_edges());
  for (int e = 0; e < t.num_edges(); ++e) edges[e] = e;
  return {{"variant", std::string(to_string(t.variant()))}, {"root", t.root()}, {"edges", edges}, {"vertices", vs}};
}

Tree tree_from_json(const Json& j) {
  const auto edges = get<std::vector<int>>(j, "edges");
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e] != static_cast<int>(e)) throw Error(ErrorKind::kInvalidInput, "edges must be listed as 0..n-1");
  std::vector<Vertex> vs;
  for (const auto& v : field(j, "vertices")) vs.push_back({get<int>(v, "out"), get<std::vector<int>>(v, "in")});
  return Tree::make(parse_variant(get<std::string>(j, "variant")), static_cast<int>(edges.size()), get<int>(j, "root"),
                    std::move(vs));
}

Json to_json(const TreeMap& f) {
  Json em = Json::object(), vm = Json::object();
  for (std::size_t e = 0; e < f.edge_map.size(); ++e) em[std::to_string(e)] = f.edge_map[e];
  const auto vmap = vertex_map(f);
  for (std::size_t v = 0; v < vmap.size(); ++v) {
    std::vector<int> edges;
    for (int u : vmap[v]) {
      edges.push_back(f.target.vertex(u).out);
      for (int e : f.target.vertex(u).ins) edges.push_back(e);
    }
    if (vmap[v].empty()) edges.push_back(f.edge_map[f.source.vertex(static_cast<int>(v)).out]);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    vm[std::to_string(v)] = {{"vertices", vmap[v]}, {"edges", edges}};
  }
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"edge_map", em}, {"vertex_map", vm}};
}

TreeMap map_from_json(const Json& j) {
  Tree s = tree_from_json(field(j, "source")), t = tree_from_json(field(j, "target"));
  std::vector<int> em(s.num_edges(), -1);
  for (const auto& [k, v] : field(j, "edge_map").items()) {
    int e = std::stoi(k);
    if (e < 0 || e >= s.num_edges()) throw Error(ErrorKind::kInvalidInput, "edge_map key out of range");
    em[e] = v.get<int>();
  }
  if (std::count(em.begin(), em.end(), -1)) throw Error(ErrorKind::kInvalidInput, "edge_map is not total");
  return make_map(s, t, std::move(em));
}

Json to_json(const SSet& x) {
  Json levels = Json::array();
  for (int n : x.sizes) {
    std::vector<int> ids(n);
    for (int e = 0; e < n; ++e) ids[e] = e;
    levels.push_back(ids);
  }
  return {{"trunc", x.trunc}, {"coskeletal", x.coskeletal}, {"levels", levels}, {"d", nested_ops(x.d, 1)},
          {"s", nested_ops(x.s, 0)}};
}

SSet sset_from_json(const Json& j) {
  SSet x;
  x.trunc = get<int>(j, "trunc");
  x.coskeletal = get<bool>(j, "coskeletal");
  for (const auto& l : field(j, "levels")) x.sizes.push_back(static_cast<int>(l.size()));
  if (static_cast<int>(x.sizes.size()) != x.trunc + 1) throw Error(ErrorKind::kInvalidInput, "levels do not match trunc");
  x.d.resize(x.trunc + 1);
  x.s.resize(x.trunc);
  for (int k = 1; k <= x.trunc; ++k) x.d[k] = field(j, "d").at(std::to_string(k)).get<std::vector<std::vector<int>>>();
  for (int k = 0; k < x.trunc; ++k) x.s[k] = field(j, "s").at(std::to_string(k)).get<std::vector<std::vector<int>>>();
  auto check_ops = [&](const std::vector<std::vector<int>>& ops, int count, int from, int to) {
    if (static_cast<int>(ops.size()) != count) throw Error(ErrorKind::kInvalidInput, "wrong number of operators");
    for (const auto& op : ops) {
      if (static_cast<int>(op.size()) != x.sizes[from]) throw Error(ErrorKind::kInvalidInput, "operator is not total");
      for (int e : op)
        if (e < 0 || e >= x.sizes[to]) throw Error(ErrorKind::kInvalidInput, "operator value out of range");
    }
  };
  for (int k = 1; k <= x.trunc; ++k) check_ops(x.d[k], k + 1, k, k - 1);
  for (int k = 0; k < x.trunc; ++k) check_ops(x.s[k], k + 1, k, k + 1);
  if (!check_simplicial_identities(x)) throw Error(ErrorKind::kInvalidInput, "simplicial identities fail");
  return x;
}

Json to_json(const SSetMap& f) { return {{"levels", f.levels}}; }

SSetMap sset_map_from_json(const Json& j) { return {get<std::vector<std::vector<int>>>(j, "levels")}; }

Json to_json(const Group& g) { return {{"order", g.order}, {"permutations", g.perms}}; }

Json to_json(const LeanDSpace& x) {
  const Truncation& w = *x.trunc;
  Json objs = Json::array(), values = Json::object(), action = Json::object();
  for (int i = 0; i < w.size(); ++i) {
    objs.push_back(w.code(i).bytes);
    values[w.code(i).bytes] = to_json(x.values[i]);
  }
  for (int i = 0; i < w.size(); ++i)
    for (int j = 0; j < w.size(); ++j)
      for (int a = 0; a < static_cast<int>(w.hom(i, j).size()); ++a)
        action[arrow_id(w, i, j, w.hom(i, j)[a])] = to_json(x.action(i, j, a));
  Json trunc = {{"variant", std::string(to_string(w.variant()))}, {"label", w.label()}, {"objects", objs}};
  return {{"trunc", trunc}, {"values", values}, {"action", action}};
}

LeanDSpace presheaf_from_json(const Json& j) {
  LeanDSpace x;
  x.trunc = trunc_from_json(field(j, "trunc"));
  const Truncation& w = *x.trunc;
  const Json& values = field(j, "values");
  const Json& action = field(j, "action");
  for (int i = 0; i < w.size(); ++i) {
    if (!values.contains(w.code(i).bytes)) throw Error(ErrorKind::kInvalidInput, "no value at " + w.code(i).bytes);
    x.values.push_back(sset_from_json(values.at(w.code(i).bytes)));
  }
  x.actions.assign(w.size(), std::vector<std::vector<SSetMap>>(w.size()));
  for (int i = 0; i < w.size(); ++i)
    for (int k = 0; k < w.size(); ++k)
      for (const auto& f : w.hom(i, k)) {
        const std::string id = arrow_id(w, i, k, f);
        if (!action.contains(id)) throw Error(ErrorKind::kInvalidInput, "no action for " + id);
        x.actions[i][k].push_back(sset_map_from_json(action.at(id)));
      }
  return x;
}

Json to_json(const DSpaceMap& f, const Truncation& w) {
  Json c = Json::object();
  for (int i = 0; i < w.size(); ++i) c[w.code(i).bytes] = to_json(f.components[i]);
  return {{"components", c}};
}

DSpaceMap dspace_map_from_json(const Json& j, const Truncation& w) {
  DSpaceMap f;
  const Json& c = field(j, "components");
  for (int i = 0; i < w.size(); ++i) {
    if (!c.contains(w.code(i).bytes)) throw Error(ErrorKind::kInvalidInput, "no component at " + w.code(i).bytes);
    f.components.push_back(sset_map_from_json(c.at(w.code(i).bytes)));
  }
  return f;
}

Json to_json(const Tower& t) {
  Json stages = Json::array(), bonds = Json::array();
  for (const auto& s : t.stages) stages.push_back(to_json(s));
  for (std::size_t k = 0; k < t.bonds.size(); ++k) bonds.push_back(to_json(t.bonds[k], *t.stages[k].trunc));
  return {{"stages", stages}, {"bonds", bonds}};
}

Tower tower_from_json(const Json& j) {
  Tower t;
  for (const auto& s : field(j, "stages")) t.stages.push_back(presheaf_from_json(s));
  const Json& bonds = field(j, "bonds");
  if (bonds.size() + 1 != t.stages.size()) throw Error(ErrorKind::kInvalidInput, "need one bond per consecutive pair");
  for (std::size_t k = 0; k < bonds.size(); ++k) t.bonds.push_back(dspace_map_from_json(bonds[k], *t.stages[k].trunc));
  return t;
}

Json to_json(const Subtree& s) {
  return {{"code", canonical_code(s.tree).bytes}, {"tree", to_json(s.tree)}, {"inclusion", s.inclusion},
          {"vertices", s.vertices}};
}

Json to_json(const KanResult& r) {
  return {{"closed_form", to_json(r.closed_form)}, {"brute", to_json(r.brute)}, {"witness", to_json(r.witness)},
          {"iso", r.iso}};
}

std::string to_dot(const Tree& t) {
  std::ostringstream os;
  os << "digraph tree {\n  rankdir=BT;\n  node [shape=circle, label=\"\"];\n";
  for (int v = 0; v < t.num_vertices(); ++v)
    os << "  v" << v << " [shape=" << (t.vertex(v).ins.empty() ? "square" : "circle") << "];\n";
  for (int e : t.leaves()) os << "  l" << e << " [shape=point];\n";
  os << "  r [shape=point];\n";
  for (int e = 0; e < t.num_edges(); ++e) {
    const int up = t.vertex_above(e), down = t.vertex_below(e);
    os << "  " << (down < 0 ? std::string("r") : "v" + std::to_string(down)) << " -> "
       << (up < 0 ? "l" + std::to_string(e) : "v" + std::to_string(up)) << " [label=\"" << e << "\", dir=back];\n";
  }
  os << "}\n";
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kInvalidInput, path + ": " + e.what());
  }
}

}  // namespace dendro
