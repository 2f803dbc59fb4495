#include "combmod/graph.hpp"

#include <algorithm>

#include "combmod/errors.hpp"

namespace combmod {

namespace {
const std::vector<Index> kEmpty;
}

std::optional<Index> Graph::find(std::string_view id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                               [](const VertexId& a, std::string_view b) { return a < b; });
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<Index>(it - ids_.begin());
}

Index Graph::index(std::string_view id) const {
    auto v = find(id);
    if (!v) throw InputError("unknown vertex '" + std::string(id) + "'");
    return *v;
}

bool Graph::adjacent(Index u, Index v) const {
    const auto& n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
}

int Graph::multiplicity(Index u, Index v) const {
    if (!adjacent(u, v)) return 0;
    auto it = multi_.find({std::min(u, v), std::max(u, v)});
    return it == multi_.end() ? 1 : it->second;
}

const std::vector<Index>& Graph::rotation(Index v) const {
    if (rotation_.empty()) return kEmpty;
    return rotation_[static_cast<std::size_t>(v)];
}

bool Graph::has_tag(Index v, std::string_view tag) const {
    std::string_view s = label(v);
    while (!s.empty()) {
        auto pos = s.find(';');
        if (s.substr(0, pos) == tag) return true;
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return false;
}

std::vector<Index> Graph::tagged(std::string_view tag) const {
    std::vector<Index> out;
    for (Index v = 0; v < static_cast<Index>(size()); ++v)
        if (has_tag(v, tag)) out.push_back(v);
    return out;
}

std::vector<std::pair<Index, Index>> Graph::edges() const {
    std::vector<std::pair<Index, Index>> out;
    out.reserve(edge_count_);
    for (Index u = 0; u < static_cast<Index>(size()); ++u)
        for (Index v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::set<Index> Graph::indices_of(const std::vector<VertexId>& ids) const {
    std::set<Index> out;
    for (const auto& id : ids) out.insert(index(id));
    return out;
}

GraphBuilder& GraphBuilder::add_vertex(const VertexId& v) {
    vertices_.insert(v);
    return *this;
}

GraphBuilder& GraphBuilder::add_edge(const VertexId& u, const VertexId& v, int multiplicity) {
    add_vertex(u);
    add_vertex(v);
    if (u == v) return *this;
    auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    edges_[key] += multiplicity;
    return *this;
}

GraphBuilder& GraphBuilder::set_rotation(const VertexId& v, std::vector<VertexId> ccw) {
    rotation_[v] = std::move(ccw);
    return *this;
}

GraphBuilder& GraphBuilder::add_tag(const VertexId& v, std::string_view tag) {
    add_vertex(v);
    auto& l = labels_[v];
    if (!l.empty()) l += ';';
    l += tag;
    return *this;
}

GraphBuilder& GraphBuilder::set_label(const VertexId& v, std::string label) {
    add_vertex(v);
    labels_[v] = std::move(label);
    return *this;
}

Graph GraphBuilder::build() const {
    Graph g;
    g.ids_.assign(vertices_.begin(), vertices_.end());
    const auto n = g.ids_.size();
    g.adj_.assign(n, {});
    g.labels_.assign(n, {});
    for (const auto& [key, mult] : edges_) {
        Index a = g.index(key.first), b = g.index(key.second);
        g.adj_[static_cast<std::size_t>(a)].push_back(b);
        g.adj_[static_cast<std::size_t>(b)].push_back(a);
        if (mult > 1) g.multi_[{std::min(a, b), std::max(a, b)}] = mult;
        ++g.edge_count_;
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    for (const auto& [v, l] : labels_) g.labels_[static_cast<std::size_t>(g.index(v))] = l;

    if (!rotation_.empty()) {
        g.rotation_.assign(n, {});
        for (Index v = 0; v < static_cast<Index>(n); ++v) {
            auto it = rotation_.find(g.ids_[static_cast<std::size_t>(v)]);
            if (it == rotation_.end()) {
                if (!g.adj_[static_cast<std::size_t>(v)].empty())
                    throw InputError("rotation missing for vertex '" + g.ids_[static_cast<std::size_t>(v)] + "'");
                continue;
            }
            std::vector<Index> rot;
            for (const auto& w : it->second) rot.push_back(g.index(w));
            auto sorted = rot;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != g.adj_[static_cast<std::size_t>(v)])
                throw InputError("rotation at '" + it->first + "' is not a permutation of its neighbours");
            g.rotation_[static_cast<std::size_t>(v)] = std::move(rot);
        }
    }
    return g;
}

bool is_chain(const Graph& g, const Chain& c) {
    for (std::size_t i = 1; i < c.vertices.size(); ++i)
        if (!g.adjacent(c.vertices[i - 1], c.vertices[i])) return false;
    return !c.vertices.empty();
}

bool DomainSet::contains(Index v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

std::string join_tags(const std::vector<std::string>& tags) {
    std::string out;
    for (const auto& t : tags) {
        if (!out.empty()) out += ';';
        out += t;
    }
    return out;
}

}  // namespace combmod
