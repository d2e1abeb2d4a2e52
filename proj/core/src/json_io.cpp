#include "sparsedecomp/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace sparsedecomp {

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.n();
  Json es = Json::array();
  for (const auto& [u, v] : g.edges()) es.push_back(Json::array({u, v}));
  j["edges"] = std::move(es);
  return j;
}

Graph graph_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("edges"))
    throw std::invalid_argument("graph json needs 'n' and 'edges'");
  int n = j.at("n").get<int>();
  std::vector<Edge> es;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json edge must be a pair");
    es.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  return Graph::from_edges(n, std::move(es));
}

Json tree_to_json(const RootedTree& t) {
  Json j;
  j["k"] = t.order();
  j["parent"] = t.parent;
  j["root"] = t.root;
  return j;
}

RootedTree tree_from_json(const Json& j) {
  std::vector<int> parent = j.at("parent").get<std::vector<int>>();
  int root = j.at("root").get<int>();
  if (j.contains("k") && j.at("k").get<int>() != static_cast<int>(parent.size()))
    throw std::invalid_argument("tree json: k does not match parent length");
  return RootedTree::from_parent(std::move(parent), root);
}

Json vertex_set_to_json(const VertexSet& s) {
  Json j = Json::array();
  for (Vertex v : s) j.push_back(v);
  return j;
}

VertexSet vertex_set_from_json(const Json& j) {
  VertexSet s;
  for (const auto& v : j) s.push_back(v.get<int>());
  if (!is_sorted_unique(s)) s = make_vertex_set(std::move(s));
  return s;
}

Json rational_to_json(const Rat& x) {
  if (denominator(x) == 1 && numerator(x) >= INT64_MIN && numerator(x) <= INT64_MAX)
    return Json(to_ll(numerator(x)));
  return Json(rational_to_string(x));
}

Rat rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float())
    throw std::invalid_argument("floating point rejected; use exact rationals like \"1/4\"");
  throw std::invalid_argument("expected an exact rational");
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_json(j);
}

} // namespace sparsedecomp
