#include "combmod/sigma.hpp"

#include <algorithm>
#include <string>

#include "combmod/embedding.hpp"
#include "combmod/errors.hpp"

namespace combmod {

Index SigmaGraph::grid(int face, int corner, int d) const {
    const auto& f = faces[static_cast<std::size_t>(face)];
    const int n = static_cast<int>(f.corner_vertex.size());
    if (f.cyclic) corner = ((corner % n) + n) % n;
    if (corner < 0 || corner >= n || d < 1 || d > depth) return -1;
    return grid_index_[static_cast<std::size_t>(face)][static_cast<std::size_t>(corner * depth + d - 1)];
}

Index SigmaGraph::at_column(int face, int m, int n) const {
    const auto& f = faces[static_cast<std::size_t>(face)];
    if (f.axis_corner < 0) return -1;
    return grid(face, f.axis_corner + f.axis_sign * m, n);
}

namespace {

std::string grid_id(int f, int i, int d) {
    return "g:" + std::to_string(f) + ":" + std::to_string(i) + ":" + std::to_string(d);
}

// Dart of v pointing at w, or -1.
int dart_to(const Embedding& e, Index v, Index w) {
    for (int d : e.darts_around(v))
        if (e.head(d) == w) return d;
    return -1;
}

}  // namespace

SigmaGraph build_sigma(const EmbeddedTree& t, int depth) {
    if (depth < 1) throw InputError("sigma depth must be at least 1");
    if (t.graph.size() < 2) throw InputError("sigma needs a tree with at least one edge");
    if (!t.graph.has_rotation()) throw EmbeddingError("tree has no rotation system");

    auto emb = Embedding::from_graph(t.graph);
    const Index tree_n = static_cast<Index>(t.graph.size());
    SigmaGraph s;
    s.depth = depth;

    if (!t.open_spine) {
        auto faces = face_walks(emb);
        for (const auto& walk : faces.walks) {
            SigmaFace f;
            for (int d : walk) f.corner_vertex.push_back(emb.origin(d));
            f.cyclic = true;
            s.faces.push_back(std::move(f));
        }
    } else {
        // Extend the spine by one virtual vertex at each end, then cut the
        // single contour walk at the virtual leaves.
        const Index lo = t.spine.front(), hi = t.spine.back();
        const Index vlo = emb.add_vertex("virtual-lo"), vhi = emb.add_vertex("virtual-hi");
        const int ehi = emb.add_edge(hi, vhi);
        const int elo = emb.add_edge(lo, vlo);
        emb.set_rotation({2 * ehi + 1});
        emb.set_rotation({2 * elo + 1});
        // Rotation on the spine is (v_{j-1}, child, v_{j+1}).
        auto child_of = [&](Index v) -> Index {
            for (Index w : t.graph.neighbors(v)) {
                const auto& id = t.graph.id(w);
                auto a = parse_t3_id(id);
                if (a && !a->word.empty()) return w;
            }
            return -1;
        };
        {
            Index child = child_of(hi);
            Index prev = t.spine.size() > 1 ? t.spine[t.spine.size() - 2] : -1;
            int after = child >= 0 ? dart_to(emb, hi, child) : dart_to(emb, hi, prev);
            if (after < 0) throw InvariantError("spine end has no neighbours");
            emb.insert_after(after, 2 * ehi);
        }
        {
            Index child = child_of(lo);
            Index next = t.spine.size() > 1 ? t.spine[1] : -1;
            // (prev, child, next): prev follows next cyclically.
            int after = next >= 0 ? dart_to(emb, lo, next) : 2 * ehi;
            if (next < 0 && child < 0) throw InvariantError("spine end has no neighbours");
            emb.insert_after(after, 2 * elo);
        }
        auto faces = face_walks(emb);
        if (faces.walks.size() != 1) throw InvariantError("augmented tree must have a single face");
        auto walk = faces.walks[0];
        // Rotate to start right after the corner at the virtual high end.
        auto pos = std::find_if(walk.begin(), walk.end(), [&](int d) { return emb.origin(d) == vhi; });
        std::rotate(walk.begin(), pos + 1, walk.end());
        SigmaFace upper, lower;
        upper.cyclic = lower.cyclic = false;
        bool in_upper = true;
        for (int d : walk) {
            Index v = emb.origin(d);
            if (v == vlo) {
                in_upper = false;
                continue;
            }
            if (v == vhi) continue;
            (in_upper ? upper : lower).corner_vertex.push_back(v);
        }
        for (int i = 0; i < static_cast<int>(upper.corner_vertex.size()); ++i)
            if (upper.corner_vertex[static_cast<std::size_t>(i)] == t.base) upper.axis_corner = i;
        upper.axis_sign = -1;  // the upper walk runs westward
        if (lower.corner_vertex.size() % 2 == 1)
            lower.axis_corner = static_cast<int>(lower.corner_vertex.size() / 2);
        lower.axis_sign = 1;
        s.faces = {std::move(upper), std::move(lower)};
        s.vplus_face = 0;
        s.vminus_face = 1;
    }

    GraphBuilder b;
    for (Index v = 0; v < tree_n; ++v) {
        b.add_vertex(t.graph.id(v));
        b.add_tag(t.graph.id(v), "tree");
        if (!t.graph.label(v).empty()) b.add_tag(t.graph.id(v), t.graph.label(v));
    }
    for (auto [u, v] : t.graph.edges()) b.add_edge(t.graph.id(u), t.graph.id(v));
    for (int f = 0; f < static_cast<int>(s.faces.size()); ++f) {
        const auto& face = s.faces[static_cast<std::size_t>(f)];
        const int n = static_cast<int>(face.corner_vertex.size());
        for (int i = 0; i < n; ++i) {
            for (int d = 1; d <= depth; ++d) {
                auto id = grid_id(f, i, d);
                b.add_tag(id, "grid:" + std::to_string(f) + ":" + std::to_string(i) + ":" + std::to_string(d));
                if (d == depth || (!face.cyclic && (i == 0 || i == n - 1))) b.add_tag(id, "frontier");
                if (d == 1) b.add_edge(id, t.graph.id(face.corner_vertex[static_cast<std::size_t>(i)]));
                if (d < depth) b.add_edge(id, grid_id(f, i, d + 1));
                if (i + 1 < n) b.add_edge(id, grid_id(f, i + 1, d));
                else if (face.cyclic) b.add_edge(id, grid_id(f, 0, d));
            }
        }
    }
    s.graph = b.build();

    s.info.assign(s.graph.size(), {});
    s.tree_to_sigma.assign(static_cast<std::size_t>(tree_n), -1);
    for (Index v = 0; v < tree_n; ++v) {
        Index sv = s.graph.index(t.graph.id(v));
        s.tree_to_sigma[static_cast<std::size_t>(v)] = sv;
        s.info[static_cast<std::size_t>(sv)] = {true, v, -1, -1, 0};
    }
    s.grid_index_.resize(s.faces.size());
    for (int f = 0; f < static_cast<int>(s.faces.size()); ++f) {
        const int n = static_cast<int>(s.faces[static_cast<std::size_t>(f)].corner_vertex.size());
        auto& gi = s.grid_index_[static_cast<std::size_t>(f)];
        gi.resize(static_cast<std::size_t>(n * depth));
        for (int i = 0; i < n; ++i)
            for (int d = 1; d <= depth; ++d) {
                Index sv = s.graph.index(grid_id(f, i, d));
                gi[static_cast<std::size_t>(i * depth + d - 1)] = sv;
                s.info[static_cast<std::size_t>(sv)] = {false, -1, f, i, d};
            }
    }
    return s;
}

}  // namespace combmod
