#pragma once

#include "sparsedecomp/graph.hpp"
#include "sparsedecomp/trees.hpp"

#include <json.hpp>

#include <string>

namespace sparsedecomp {

// All files use ordered_json so that identical runs serialize byte-identically.
using Json = nlohmann::ordered_json;

// {"n": <int>, "edges": [[u,v], ...]}, 0-based, u < v, lexicographic.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// {"k": <int>, "parent": [...], "root": r}
Json tree_to_json(const RootedTree& t);
RootedTree tree_from_json(const Json& j);

Json vertex_set_to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const Json& j);

// Rationals travel as "p/q" strings (or JSON integers). Floats are rejected:
// these values feed exact verifiers.
Json rational_to_json(const Rat& x);
Rat rational_from_json(const Json& j);

std::string dump_json(const Json& j); // 2-space indent, trailing newline
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace sparsedecomp
