// dendro: batch front-end. Every verb prints one JSON document (DOT for
// `dot`) on stdout or to --out.
//
// Exit codes: 0 ok, 1 property violated, 2 usage or input error, 3 budget.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dendro/error.hpp"
#include "dendro/io.hpp"
#include "dendro/normalization.hpp"
#include "dendro/operad.hpp"

using namespace dendro;

namespace {

struct Opts {
  std::string variant = "or";
  std::string degree = "weight";
  int bound = 4;
  std::string system = "outer";
  std::string mode = "both";
  int budget = kDefaultHomBudget;
  unsigned seed = 0;
  std::string out;
  std::string in, formula = "terminal";
  std::string tree, src, dst, map;
  int n = 2, level = 1, stages = 2, depth = 3;
  std::string op = "completion", functor = "w", z = "point";
};

// Set by a checker verb; 1 on exit.
bool g_violated = false;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

int to_int(const std::string& s) {
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    throw Error(ErrorKind::kInvalidInput, "not a number: " + s);
  }
}

TreeVariant variant(const Opts& o) { return parse_variant(o.variant); }

// A file holding tree JSON, or a canonical code.
Tree load_tree(const Opts& o, const std::string& arg) {
  if (arg.empty()) throw Error(ErrorKind::kInvalidInput, "a tree is required");
  if (arg == "0" || arg.front() == '(') return tree_from_code({arg}, variant(o));
  return tree_from_json(read_json_file(arg));
}

TruncationPtr window(const Opts& o) {
  return Truncation::by_degree(variant(o), parse_degree(o.degree), o.bound, o.budget);
}

ColouredOperad named_operad(const std::vector<std::string>& p) {
  const std::string& name = p.size() > 1 ? p[1] : "";
  const int k = p.size() > 2 ? to_int(p[2]) : 2;
  if (name == "comm") return comm_operad();
  if (name == "free-binary") return free_binary_operad();
  if (name == "binary-fixture") return binary_fixture_operad();
  if (name == "graded") return graded_comm_operad();
  if (name == "poset") return poset_operad(k);
  if (name == "chaotic") return chaotic_operad(k);
  if (name == "diagonal") return diagonal_comm_operad(k);
  throw Error(ErrorKind::kInvalidInput, "unknown operad: " + name);
}

SSet named_sset(const std::string& s) {
  if (s == "delta1") return delta(1);
  if (s == "eg2") return nerve_groupoid(2);
  return discrete(to_int(s));
}

// terminal | edge-power:K | constant:K | representable:CODE | boundary:CODE
// | decorated:C:D | nerve:NAME[:K] | random   (K is a count, delta1 or eg2)
FormulaPtr parse_formula(const Opts& o) {
  const auto p = split(o.formula, ':');
  const std::string head = p.empty() ? "" : p[0];
  auto arg = [&](std::size_t i) {
    if (p.size() <= i) throw Error(ErrorKind::kInvalidInput, "formula " + o.formula + " needs more arguments");
    return p[i];
  };
  if (head == "terminal") return terminal_formula();
  if (head == "edge-power") return edge_power_formula(named_sset(arg(1)), arg(1));
  if (head == "constant") return constant_formula(named_sset(arg(1)), arg(1));
  if (head == "representable") return representable_formula(tree_from_code({arg(1)}, variant(o)));
  if (head == "boundary") return boundary_formula(tree_from_code({arg(1)}, variant(o)));
  if (head == "decorated") return decorated_formula(to_int(arg(1)), {CommMonoid::Kind::kCyclic, to_int(arg(2))});
  if (head == "nerve") return nerve_formula(named_operad(p));
  if (head == "random") {
    std::mt19937 rng(o.seed);
    return random_formula(rng, 1);
  }
  throw Error(ErrorKind::kInvalidInput, "unknown formula: " + o.formula);
}

LeanDSpace load_presheaf(const Opts& o, TruncationPtr w) {
  if (!o.in.empty()) return presheaf_from_json(read_json_file(o.in));
  return materialize(*parse_formula(o), w);
}

LeanDSpace load_presheaf(const Opts& o) { return load_presheaf(o, o.in.empty() ? window(o) : nullptr); }

Json code_list(const std::vector<CanonicalCode>& codes) {
  Json out = Json::array();
  for (const auto& c : codes) out.push_back(c.bytes);
  return out;
}

Json run_trees(const Opts& o) { return code_list(enumerate_trees(variant(o), parse_degree(o.degree), o.bound)); }

Json run_hom(const Opts& o) {
  auto maps = hom_set(load_tree(o, o.src), load_tree(o, o.dst), o.budget);
  Json ms = Json::array();
  for (const auto& f : maps) ms.push_back(to_json(f));
  return {{"count", maps.size()}, {"maps", ms}};
}

Json run_factor(const Opts& o) {
  TreeMap f = map_from_json(read_json_file(o.map));
  const ReedySystem s = parse_system(o.system);
  Factorization fa = s == ReedySystem::kOuter ? factor_inner_outer(f) : factor_standard(f);
  return {{"class", std::string(to_string(classify(f)))},
          {"middle", canonical_code(fa.middle()).bytes},
          {"first", to_json(fa.first)},
          {"second", to_json(fa.second)}};
}

Json run_reedy_verify(const Opts& o, bool system_given) {
  const DegreeKind d = parse_degree(o.degree);
  ReedySystem s = d == DegreeKind::kWeight ? ReedySystem::kOuter : ReedySystem::kStandard;
  if (system_given) s = parse_system(o.system);
  ReedyStructure r = s == ReedySystem::kOuter ? outer_reedy() : standard_reedy();
  r.degree = d;
  ReedyReport rep = verify_reedy(r, variant(o), o.bound);
  g_violated = !rep.pass;
  return {{"structure", r.name},
          {"pass", rep.pass},
          {"axiom", rep.axiom},
          {"counterexample", rep.counterexample},
          {"objects", rep.objects},
          {"morphisms", rep.morphisms},
          {"factorizations", rep.factorizations}};
}

Json run_eval(const Opts& o) { return to_json(eval(load_presheaf(o), load_tree(o, o.tree))); }

Json run_latching(const Opts& o) {
  Latching l = latching(load_presheaf(o), load_tree(o, o.tree), parse_system(o.system), o.level);
  Json objs = Json::array();
  for (const auto& [j, f] : l.objects) objs.push_back({{"object", canonical_code(f.target).bytes}, {"map", to_json(f)}});
  return {{"value", to_json(l.colimit.value)},
          {"objects", objs},
          {"comparison", l.comparison ? to_json(*l.comparison) : Json(nullptr)}};
}

Json run_matching(const Opts& o) {
  Matching m = matching(load_presheaf(o), load_tree(o, o.tree), parse_system(o.system));
  Json objs = Json::array();
  for (const auto& [j, f] : m.limit.objects) objs.push_back({{"object", canonical_code(f.source).bytes}, {"map", to_json(f)}});
  return {{"value", to_json(m.limit.value)},
          {"objects", objs},
          {"comparison", m.comparison ? to_json(*m.comparison) : Json(nullptr)}};
}

Json run_sk(const Opts& o) {
  SubPresheaf s = skeleton(load_presheaf(o), o.n, o.level);
  return {{"value", to_json(s.value)}, {"inclusion", to_json(s.inclusion, *s.value.trunc)}};
}

Json run_cosk(const Opts& o) {
  LeanDSpace x = load_presheaf(o);
  Coskeleton c = coskeleton(x, o.n);
  return {{"value", to_json(c.value)}, {"unit", to_json(c.unit, *x.trunc)}};
}

Json run_lean_check(const Opts& o) {
  const bool lean = is_lean_via_matching(load_presheaf(o), parse_system(o.system), o.n, o.level);
  g_violated = !lean;
  return {{"lean", lean}};
}

// Without --map the map checked is the one out of the empty presheaf.
Json run_normal_check(const Opts& o) {
  LeanDSpace y = load_presheaf(o);
  LeanDSpace x = empty_presheaf(y.trunc, o.level);
  DSpaceMap f = from_empty(y);
  if (!o.src.empty()) {
    x = presheaf_from_json(read_json_file(o.src));
    if (o.map.empty()) throw Error(ErrorKind::kInvalidInput, "--src needs --map");
    f = dspace_map_from_json(read_json_file(o.map), *x.trunc);
  }
  if (!is_natural(f, x, y)) throw Error(ErrorKind::kInvalidMap, "map is not natural");
  NormalReport r = is_normal_mono(f, x, y, o.level);
  g_violated = !r.ok;
  return {{"normal", r.ok},
          {"tree", r.tree >= 0 ? Json(y.trunc->code(r.tree).bytes) : Json(nullptr)},
          {"level", r.level},
          {"reason", r.reason}};
}

Json run_segal_check(const Opts& o) {
  SegalReport r = strict_segal_check(load_presheaf(o), o.bound, o.level);
  g_violated = !r.ok;
  return {{"segal", r.ok}, {"decompositions", r.decompositions}, {"counterexample", r.counterexample}};
}

Json run_max_subtrees(const Opts& o) {
  Json out = Json::array();
  for (const auto& s : max_subtrees(load_tree(o, o.tree), o.n).pieces) out.push_back(to_json(s));
  return out;
}

Json run_kan_extend(const Opts& o) {
  const Tree t = load_tree(o, o.tree);
  const bool w = o.functor == "w";
  if (!w && o.functor != "v") throw Error(ErrorKind::kInvalidInput, "--functor is w or v");
  const int leaves = static_cast<int>(t.leaves().size());
  LeanDSpace x = load_presheaf(o, o.in.empty() ? slice_window({w ? o.n : o.n - 1, !w}, leaves) : nullptr);
  const KanMode mode = parse_kan_mode(o.mode);
  if (mode == KanMode::kBoth) {
    KanResult r = w ? ran_w_compare(x, o.n, t) : ran_v_compare(x, o.n, t);
    g_violated = !r.iso;
    return to_json(r);
  }
  return to_json(w ? ran_w(x, o.n, t, mode) : ran_v(x, o.n, t, mode));
}

// --z point: z is a point with trivial action.
// --z latching: z is the latching object itself.
// --z free: z is EΣ_n; only possible when the latching object is empty.
Json run_extend_corolla(const Opts& o) {
  LeanDSpace x = load_presheaf(o, o.in.empty() ? slice_window({o.n - 1, false}, o.n) : nullptr);
  const int cap = o.level;
  GSSet lat = corolla_latching(x, o.n, cap);
  const Group g = Group::symmetric(o.n);
  if (o.z == "latching") return to_json(extend_at_corolla(x, o.n, lat, identity_sset(lat.x)));
  if (o.z == "point") return to_json(extend_at_corolla(x, o.n, trivial_action(extend(point(), cap), g), to_point(lat.x)));
  if (o.z == "free") {
    for (int s : lat.x.sizes)
      if (s) throw Error(ErrorKind::kIncompatibleAttach, "latching object is not empty");
    GSSet z = eg(g);
    if (z.x.trunc > cap) z.x = truncate(z.x, cap);
    return to_json(extend_at_corolla(x, o.n, z, SSetMap{std::vector<std::vector<int>>(lat.x.trunc + 1)}));
  }
  throw Error(ErrorKind::kInvalidInput, "--z is point, latching or free");
}

Json run_normalize(const Opts& o) {
  Json out = Json::array();
  for (const auto& st : normalization(window(o), o.stages, o.level)) {
    Json sizes = Json::object();
    for (int i = 0; i < st.value.trunc->size(); ++i) sizes[st.value.trunc->code(i).bytes] = st.value.values[i].sizes;
    out.push_back({{"n", st.n}, {"cells", st.cells}, {"sizes", sizes}, {"value", to_json(st.value)}});
  }
  return out;
}

Json run_tower(const Opts& o) {
  if (o.op != "completion") throw Error(ErrorKind::kInvalidInput, "unknown tower op: " + o.op);
  LeanDSpace x = load_presheaf(o);
  CompletionTower c = completion_tower(x, o.depth);
  const int d = stabilization_index(c, x);
  return {{"tower", to_json(c.tower)}, {"stabilization", d >= 0 ? Json(d) : Json(nullptr)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trees, dendroidal presheaves and their towers."};
  app.require_subcommand(1);
  Opts o;

  auto common = [&](CLI::App* s) {
    s->add_option("--variant", o.variant, "g, o, cl or or")->capture_default_str();
    s->add_option("--degree", o.degree, "size or weight")->capture_default_str();
    s->add_option("--bound", o.bound, "degree bound")->capture_default_str();
    s->add_option("--budget", o.budget, "hom-set budget (edges)")->capture_default_str();
    s->add_option("--seed", o.seed, "seed for random formulas")->capture_default_str();
    s->add_option("--out", o.out, "write to a file instead of stdout");
  };
  auto presheaf = [&](CLI::App* s) {
    s->add_option("--in", o.in, "presheaf JSON");
    s->add_option("--formula", o.formula, "presheaf formula when --in is absent")->capture_default_str();
  };
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    return s;
  };

  sub("trees", "enumerate trees up to the degree bound");
  auto* hom = sub("hom", "all maps src -> dst");
  hom->add_option("--src", o.src)->required();
  hom->add_option("--dst", o.dst)->required();
  auto* factor = sub("factor", "factor a map");
  factor->add_option("--map", o.map)->required();
  factor->add_option("--system", o.system)->capture_default_str();
  auto* reedy = sub("reedy-verify", "check the Reedy axioms");
  auto* reedy_system = reedy->add_option("--system", o.system);
  for (const char* name : {"eval", "latching", "matching", "sk", "cosk", "lean-check", "normal-check", "segal-check",
                           "kan-extend", "extend-corolla", "tower"})
    presheaf(sub(name, ""));
  app.get_subcommand("eval")->description("X(t)");
  app.get_subcommand("eval")->add_option("--tree", o.tree)->required();
  for (const char* name : {"latching", "matching"}) {
    auto* s = app.get_subcommand(name);
    s->description(std::string(name) + " object at t");
    s->add_option("--tree", o.tree)->required();
    s->add_option("--system", o.system)->capture_default_str();
    s->add_option("--level", o.level)->capture_default_str();
  }
  for (const char* name : {"sk", "cosk"}) {
    app.get_subcommand(name)->description(std::string(name) + "_n of a presheaf");
    app.get_subcommand(name)->add_option("--n", o.n)->capture_default_str();
    app.get_subcommand(name)->add_option("--level", o.level)->capture_default_str();
  }
  auto* lean = app.get_subcommand("lean-check");
  lean->description("matching maps are isos above n");
  lean->add_option("--n", o.n)->capture_default_str();
  lean->add_option("--system", o.system)->capture_default_str();
  lean->add_option("--level", o.level)->capture_default_str();
  auto* normal = app.get_subcommand("normal-check");
  normal->description("is a map (default: out of the empty presheaf) a normal mono");
  normal->add_option("--src", o.src, "source presheaf JSON");
  normal->add_option("--map", o.map, "map JSON");
  normal->add_option("--level", o.level)->capture_default_str();
  auto* segal = app.get_subcommand("segal-check");
  segal->description("strict Segal condition");
  segal->add_option("--level", o.level)->capture_default_str();
  auto* maxs = sub("max-subtrees", "maximal subtrees of arity <= n");
  maxs->add_option("--tree", o.tree)->required();
  maxs->add_option("--n", o.n)->capture_default_str();
  auto* kan = app.get_subcommand("kan-extend");
  kan->description("right Kan extension along w_n or v_n at t");
  kan->add_option("--functor", o.functor, "w or v")->capture_default_str();
  kan->add_option("--n", o.n)->capture_default_str();
  kan->add_option("--tree", o.tree)->required();
  kan->add_option("--mode", o.mode, "closed_form, brute or both")->capture_default_str();
  auto* ext = app.get_subcommand("extend-corolla");
  ext->description("extend a presheaf on arity < n to C_n");
  ext->add_option("--n", o.n)->capture_default_str();
  ext->add_option("--z", o.z, "point, latching or free")->capture_default_str();
  ext->add_option("--level", o.level)->capture_default_str();
  auto* norm = sub("normalize-E", "stages of the normalization of the terminal presheaf");
  norm->add_option("--stages", o.stages)->capture_default_str();
  norm->add_option("--level", o.level)->capture_default_str();
  auto* tower = app.get_subcommand("tower");
  tower->description("tower constructions");
  tower->add_option("--op", o.op)->capture_default_str();
  tower->add_option("--depth", o.depth)->capture_default_str();
  auto* dot = sub("dot", "Graphviz drawing of a tree");
  dot->add_option("--tree", o.tree)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    std::string text;
    if (verb == "dot") {
      text = to_dot(load_tree(o, o.tree));
    } else {
      Json j;
      if (verb == "trees") j = run_trees(o);
      else if (verb == "hom") j = run_hom(o);
      else if (verb == "factor") j = run_factor(o);
      else if (verb == "reedy-verify") j = run_reedy_verify(o, reedy_system->count() > 0);
      else if (verb == "eval") j = run_eval(o);
      else if (verb == "latching") j = run_latching(o);
      else if (verb == "matching") j = run_matching(o);
      else if (verb == "sk") j = run_sk(o);
      else if (verb == "cosk") j = run_cosk(o);
      else if (verb == "lean-check") j = run_lean_check(o);
      else if (verb == "normal-check") j = run_normal_check(o);
      else if (verb == "segal-check") j = run_segal_check(o);
      else if (verb == "max-subtrees") j = run_max_subtrees(o);
      else if (verb == "kan-extend") j = run_kan_extend(o);
      else if (verb == "extend-corolla") j = run_extend_corolla(o);
      else if (verb == "normalize-E") j = run_normalize(o);
      else if (verb == "tower") j = run_tower(o);
      text = j.dump(2) + "\n";
    }
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o.out);
      if (!f) throw Error(ErrorKind::kInvalidInput, "cannot write " + o.out);
      f << text;
    }
  } catch (const Error& e) {
    std::cerr << "dendro " << verb << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::kBudgetExceeded ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "dendro " << verb << ": " << e.what() << "\n";
    return 2;
  }
  return g_violated ? 1 : 0;
}
