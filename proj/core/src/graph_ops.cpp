#include "combmod/graph_ops.hpp"

#include <algorithm>
#include <deque>

#include "combmod/errors.hpp"

namespace combmod {

std::vector<int> distance_vector(const Graph& g, const std::set<Index>& sources) {
    std::vector<int> dist(g.size(), -1);
    std::deque<Index> queue;
    for (Index s : sources) {
        if (s < 0 || s >= static_cast<Index>(g.size())) throw InputError("source vertex out of range");
        dist[static_cast<std::size_t>(s)] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        Index u = queue.front();
        queue.pop_front();
        for (Index v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::map<Index, int> distances_from(const Graph& g, const std::set<Index>& sources) {
    if (sources.empty()) throw InputError("distances_from needs at least one source");
    auto dist = distance_vector(g, sources);
    std::map<Index, int> out;
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v)
        if (dist[static_cast<std::size_t>(v)] >= 0) out.emplace(v, dist[static_cast<std::size_t>(v)]);
    return out;
}

std::set<Index> boundary(const Graph& g, const std::set<Index>& d) {
    std::set<Index> out;
    for (Index u : d)
        for (Index v : g.neighbors(u))
            if (!d.count(v)) out.insert(v);
    return out;
}

std::vector<DomainSet> components(const Graph& g, const std::set<Index>& within) {
    std::vector<char> seen(g.size(), 0);
    std::vector<DomainSet> out;
    for (Index s : within) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        DomainSet comp;
        std::vector<Index> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            Index u = stack.back();
            stack.pop_back();
            comp.members.push_back(u);
            for (Index v : g.neighbors(u)) {
                if (!seen[static_cast<std::size_t>(v)] && within.count(v)) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    stack.push_back(v);
                }
            }
        }
        std::sort(comp.members.begin(), comp.members.end());
        out.push_back(std::move(comp));
    }
    return out;  // already ordered by smallest member: seeds visited in order
}

std::set<Index> complement(const Graph& g, const std::set<Index>& s) {
    std::set<Index> out;
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v)
        if (!s.count(v)) out.insert(v);
    return out;
}

AnnulusCheck is_annulus(const Graph& g, const std::set<Index>& a) {
    AnnulusCheck result;
    auto comps = components(g, complement(g, a));
    if (comps.size() != 2) return result;
    result.is_annulus = true;
    result.first = std::move(comps[0]);
    result.second = std::move(comps[1]);
    result.annulus_connected = !a.empty() && components(g, a).size() == 1;
    return result;
}

Graph short_vertices(const Graph& g, const std::set<Index>& s, std::optional<std::string> merged_id) {
    if (s.empty()) throw InputError("short_vertices needs a nonempty set");
    const std::string merged = merged_id ? *merged_id : g.id(*s.begin());
    auto name = [&](Index v) { return s.count(v) ? merged : g.id(v); };
    GraphBuilder b;
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v) {
        b.add_vertex(name(v));
        if (!s.count(v) && !g.label(v).empty()) b.set_label(name(v), g.label(v));
    }
    std::map<std::pair<std::string, std::string>, int> mult;
    for (auto [u, v] : g.edges()) {
        auto x = name(u), y = name(v);
        if (x == y) continue;
        if (y < x) std::swap(x, y);
        mult[{x, y}] += g.multiplicity(u, v);
    }
    for (const auto& [e, m] : mult) b.add_edge(e.first, e.second, m);
    // A merged frontier stays frontier.
    for (Index v : s)
        if (g.has_tag(v, "frontier")) {
            b.add_tag(merged, "frontier");
            break;
        }
    return b.build();
}

Graph cut_edges(const Graph& g, const std::vector<std::pair<Index, Index>>& removed) {
    std::set<std::pair<Index, Index>> drop;
    for (auto [u, v] : removed) {
        if (u < 0 || v < 0 || u >= static_cast<Index>(g.size()) || v >= static_cast<Index>(g.size()) ||
            !g.adjacent(u, v))
            throw InputError("cut_edges: unknown edge");
        drop.insert({std::min(u, v), std::max(u, v)});
    }
    GraphBuilder b;
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v) {
        b.add_vertex(g.id(v));
        if (!g.label(v).empty()) b.set_label(g.id(v), g.label(v));
    }
    for (auto [u, v] : g.edges())
        if (!drop.count({u, v})) b.add_edge(g.id(u), g.id(v), g.multiplicity(u, v));
    return b.build();
}

Graph induced_subgraph(const Graph& g, const std::set<Index>& keep) {
    GraphBuilder b;
    for (Index v : keep) {
        b.add_vertex(g.id(v));
        if (!g.label(v).empty()) b.set_label(g.id(v), g.label(v));
    }
    for (Index u : keep)
        for (Index v : g.neighbors(u))
            if (u < v && keep.count(v)) b.add_edge(g.id(u), g.id(v), g.multiplicity(u, v));
    return b.build();
}

Graph ball(const Graph& g, Index v0, int r) {
    auto dist = distance_vector(g, {v0});
    std::set<Index> keep;
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v)
        if (dist[static_cast<std::size_t>(v)] >= 0 && dist[static_cast<std::size_t>(v)] <= r) keep.insert(v);
    GraphBuilder b;
    for (Index v : keep) {
        b.add_vertex(g.id(v));
        if (!g.label(v).empty()) b.set_label(g.id(v), g.label(v));
        if (dist[static_cast<std::size_t>(v)] == r && !g.has_tag(v, "frontier")) b.add_tag(g.id(v), "frontier");
    }
    for (Index u : keep)
        for (Index v : g.neighbors(u))
            if (u < v && keep.count(v)) b.add_edge(g.id(u), g.id(v), g.multiplicity(u, v));
    return b.build();
}

}  // namespace combmod
