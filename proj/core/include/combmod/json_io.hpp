#pragma once

#include <string>

#include <json.hpp>

#include "combmod/graph.hpp"

namespace combmod {

/// Graph interchange format:
/// {"vertices":[...], "edges":[["u","v"],...], "rotation":{"u":[...]},
///  "labels":{"u":"..."}, "multiplicity":[["u","v",k],...]}
/// Keys sorted, edges with u < v; optional members omitted when empty.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

std::string dump_graph(const Graph& g);
Graph load_graph_file(const std::string& path);

}  // namespace combmod
