#include "combmod/t3.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>
#include <functional>

#include "combmod/errors.hpp"
#include "combmod/graph_ops.hpp"

namespace combmod {

std::string T3Address::id() const { return "t:" + std::to_string(spine) + ":" + word; }

T3Address T3Address::mirrored() const {
    T3Address m{-spine, word};
    for (std::size_t i = 1; i < m.word.size(); ++i) m.word[i] = m.word[i] == '0' ? '1' : '0';
    return m;
}

std::optional<T3Address> parse_t3_id(const std::string& id) {
    if (id.size() < 4 || id.compare(0, 2, "t:") != 0) return std::nullopt;
    auto colon = id.find(':', 2);
    if (colon == std::string::npos) return std::nullopt;
    T3Address a;
    auto [ptr, ec] = std::from_chars(id.data() + 2, id.data() + colon, a.spine);
    if (ec != std::errc() || ptr != id.data() + colon) return std::nullopt;
    a.word = id.substr(colon + 1);
    for (char c : a.word)
        if (c != '0' && c != '1') return std::nullopt;
    if (!a.word.empty() && a.word[0] != '0') return std::nullopt;
    return a;
}

Index EmbeddedTree::spine_vertex(int j) const {
    if (j < spine_min || j > spine_max) throw InputError("spine index out of range");
    return spine[static_cast<std::size_t>(j - spine_min)];
}

namespace {

// Builds the tree induced on a set of T3 addresses (closed under parents and
// containing a contiguous spine through 0). Rotation: (v_{j-1}, child,
// v_{j+1}) on the spine, (parent, w0, w1) below it; hanging trees lie on the
// right of the eastward spine, i.e. in the lower face.
EmbeddedTree tree_from_addresses(const std::vector<T3Address>& addrs,
                                 const std::function<std::vector<std::string>(const T3Address&)>& tags) {
    std::set<T3Address> present(addrs.begin(), addrs.end());
    GraphBuilder b;
    int jmin = 0, jmax = 0;
    for (const auto& a : present) {
        b.add_vertex(a.id());
        for (const auto& t : tags(a)) b.add_tag(a.id(), t);
        if (a.word.empty()) {
            jmin = std::min(jmin, a.spine);
            jmax = std::max(jmax, a.spine);
        }
    }
    auto has = [&](const T3Address& a) { return present.count(a) != 0; };
    for (const auto& a : present) {
        std::vector<T3Address> ccw;
        if (a.word.empty()) {
            ccw = {{a.spine - 1, ""}, {a.spine, "0"}, {a.spine + 1, ""}};
        } else {
            ccw = {{a.spine, a.word.substr(0, a.word.size() - 1)}, {a.spine, a.word + "0"}, {a.spine, a.word + "1"}};
        }
        std::vector<std::string> rot;
        for (const auto& n : ccw)
            if (has(n)) {
                rot.push_back(n.id());
                b.add_edge(a.id(), n.id());
            }
        b.set_rotation(a.id(), std::move(rot));
    }
    EmbeddedTree t;
    t.graph = b.build();
    t.base = t.graph.index(T3Address{0, ""}.id());
    t.spine_min = jmin;
    t.spine_max = jmax;
    for (int j = jmin; j <= jmax; ++j) t.spine.push_back(t.graph.index(T3Address{j, ""}.id()));
    return t;
}

void grow(std::vector<T3Address>& out, int j, const std::string& w, int max_depth) {
    out.push_back({j, w});
    if (static_cast<int>(w.size()) >= max_depth) return;
    if (w.empty()) {
        grow(out, j, "0", max_depth);
    } else {
        grow(out, j, w + "0", max_depth);
        grow(out, j, w + "1", max_depth);
    }
}

}  // namespace

EmbeddedTree build_t3_ball(int radius) {
    if (radius < 0) throw InputError("radius must be non-negative");
    std::vector<T3Address> addrs;
    for (int j = -radius; j <= radius; ++j) grow(addrs, j, "", radius - std::abs(j));
    return tree_from_addresses(addrs, [radius](const T3Address& a) {
        std::vector<std::string> tags;
        if (a.word.empty()) tags.push_back("spine:" + std::to_string(a.spine));
        if (a.distance_to_base() == radius) tags.push_back("frontier");
        return tags;
    });
}

EmbeddedTree build_keyl_tree(const std::vector<int>& floors) {
    if (floors.empty()) throw InputError("KeyL tree needs at least B_0");
    if (floors[0] < 1) throw InputError("L(eps_0) >= 1 violated: floor L(eps_1) must be at least 1");
    for (std::size_t k = 1; k < floors.size(); ++k)
        if (floors[k] < floors[k - 1])
            throw InputError("L must be decreasing in eps: floor L(eps_k) must be non-decreasing in k");
    const int kmax = static_cast<int>(floors.size()) - 1;
    std::vector<T3Address> addrs;
    for (int k = 0; k <= kmax; ++k) {
        grow(addrs, k, "", floors[static_cast<std::size_t>(k)]);
        if (k > 0) grow(addrs, -k, "", floors[static_cast<std::size_t>(k)]);
    }
    auto t = tree_from_addresses(addrs, [kmax](const T3Address& a) {
        std::vector<std::string> tags;
        if (a.word.empty()) tags.push_back("spine:" + std::to_string(a.spine));
        tags.push_back("bk:" + std::to_string(std::abs(a.spine)));
        if (a.word.empty() && std::abs(a.spine) == kmax && kmax > 0) tags.push_back("frontier");
        return tags;
    });
    t.open_spine = true;
    t.depth_floors = floors;
    for (Index v = 0; v < static_cast<Index>(t.graph.size()); ++v) {
        auto a = parse_t3_id(t.graph.id(v));
        t.bsets[std::abs(a->spine)].push_back(v);
    }
    return t;
}

std::map<Index, int> bprime_by_bfs(const EmbeddedTree& t) {
    auto from_base = distance_vector(t.graph, {t.base});
    std::set<Index> spine(t.spine.begin(), t.spine.end());
    auto from_spine = distance_vector(t.graph, spine);
    std::map<Index, int> out;
    for (Index v = 0; v < static_cast<Index>(t.graph.size()); ++v)
        out[v] = from_base[static_cast<std::size_t>(v)] - from_spine[static_cast<std::size_t>(v)];
    return out;
}

std::vector<int> alternating_labels(const EmbeddedTree& t) {
    auto d = distance_vector(t.graph, {t.base});
    std::vector<int> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] % 2;
    return out;
}

EmbeddedTree embedded_tree_from_graph(const Graph& g, Index base) {
    if (!g.has_rotation() && g.size() > 1) throw EmbeddingError("tree needs a rotation system");
    if (g.edge_count() + 1 != g.size() || components(g, complement(g, {})).size() != 1)
        throw InputError("graph is not a tree");
    EmbeddedTree t;
    t.graph = g;
    t.base = base;
    t.spine = {base};
    return t;
}

}  // namespace combmod
