#pragma once

#include <string>

#include "json.hpp"

#include "dendro/filtration.hpp"
#include "dendro/protower.hpp"

namespace dendro {

using Json = nlohmann::json;

Json to_json(const Tree& t);
Tree tree_from_json(const Json& j);

/// {"source", "target", "edge_map": {src: dst}, "vertex_map": {vid: {"edges": [...]}}}
Json to_json(const TreeMap& f);
/// Needs "source", "target" and "edge_map"; "vertex_map" is recomputed.
TreeMap map_from_json(const Json& j);

Json to_json(const SSet& x);
SSet sset_from_json(const Json& j);
Json to_json(const SSetMap& f);
SSetMap sset_map_from_json(const Json& j);
Json to_json(const Group& g);

/// {"trunc": {...}, "values": {code: sset}, "action": {arrow-id: map}} where
/// arrow-id is "<src code>-><dst code>:<edge map>".
Json to_json(const LeanDSpace& x);
LeanDSpace presheaf_from_json(const Json& j);
/// Components keyed by object code.
Json to_json(const DSpaceMap& f, const Truncation& w);
DSpaceMap dspace_map_from_json(const Json& j, const Truncation& w);

Json to_json(const Tower& t);
Tower tower_from_json(const Json& j);

Json to_json(const Subtree& s);
Json to_json(const KanResult& r);

/// Graphviz: one node per vertex (square for stumps), leaves and root as
/// points, edges labelled by id, root at the bottom.
std::string to_dot(const Tree& t);

Json read_json_file(const std::string& path);

}  // namespace dendro
