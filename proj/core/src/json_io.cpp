#include "combmod/json_io.hpp"

#include <fstream>
#include <sstream>

#include "combmod/errors.hpp"

namespace combmod {

using nlohmann::json;

json graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = g.ids();
    json edges = json::array();
    json mult = json::array();
    for (auto [u, v] : g.edges()) {
        edges.push_back({g.id(u), g.id(v)});
        if (int m = g.multiplicity(u, v); m > 1) mult.push_back({g.id(u), g.id(v), m});
    }
    j["edges"] = std::move(edges);
    if (!mult.empty()) j["multiplicity"] = std::move(mult);
    if (g.has_rotation()) {
        json rot = json::object();
        for (Index v = 0; v < static_cast<Index>(g.size()); ++v) {
            json ccw = json::array();
            for (Index w : g.rotation(v)) ccw.push_back(g.id(w));
            rot[g.id(v)] = std::move(ccw);
        }
        j["rotation"] = std::move(rot);
    }
    json labels = json::object();
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v)
        if (!g.label(v).empty()) labels[g.id(v)] = g.label(v);
    if (!labels.empty()) j["labels"] = std::move(labels);
    return j;
}

Graph graph_from_json(const json& j) {
    try {
        if (!j.is_object()) throw InputError("graph JSON must be an object");
        for (const auto& [key, _] : j.items())
            if (key != "vertices" && key != "edges" && key != "rotation" && key != "labels" && key != "multiplicity")
                throw InputError("unknown graph key '" + key + "'");
        GraphBuilder b;
        for (const auto& v : j.at("vertices")) b.add_vertex(v.get<std::string>());
        std::map<std::pair<std::string, std::string>, int> mult;
        if (j.contains("multiplicity"))
            for (const auto& m : j["multiplicity"]) {
                auto u = m.at(0).get<std::string>(), v = m.at(1).get<std::string>();
                if (v < u) std::swap(u, v);
                mult[{u, v}] = m.at(2).get<int>();
            }
        for (const auto& e : j.at("edges")) {
            auto u = e.at(0).get<std::string>(), v = e.at(1).get<std::string>();
            if (!b.contains(u) || !b.contains(v)) throw InputError("edge references unknown vertex");
            if (u == v) throw InputError("self-loop on '" + u + "'");
            auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
            auto it = mult.find(key);
            b.add_edge(u, v, it == mult.end() ? 1 : it->second);
        }
        if (j.contains("rotation"))
            for (const auto& [v, ccw] : j["rotation"].items()) b.set_rotation(v, ccw.get<std::vector<std::string>>());
        if (j.contains("labels"))
            for (const auto& [v, l] : j["labels"].items()) {
                if (!b.contains(v)) throw InputError("label for unknown vertex '" + v + "'");
                b.set_label(v, l.get<std::string>());
            }
        return b.build();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed graph JSON: ") + e.what());
    }
}

std::string dump_graph(const Graph& g) { return graph_to_json(g).dump() + "\n"; }

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("cannot parse '" + path + "': " + e.what());
    }
    return graph_from_json(j);
}

}  // namespace combmod
