#include "combmod/speiser.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>

#include "combmod/errors.hpp"

namespace combmod {

namespace {

std::string padded(const char* prefix, int i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%05d", prefix, i);
    return buf;
}

}  // namespace

SpeiserGraph build_speiser_from_tree(const EmbeddedTree& t, const std::vector<int>& labels) {
    const auto& g = t.graph;
    if (labels.size() != g.size()) throw InputError("one 0/1 label per tree vertex required");
    for (auto [u, v] : g.edges())
        if (labels[static_cast<std::size_t>(u)] == labels[static_cast<std::size_t>(v)] ||
            labels[static_cast<std::size_t>(u)] < 0 || labels[static_cast<std::size_t>(u)] > 1 ||
            labels[static_cast<std::size_t>(v)] < 0 || labels[static_cast<std::size_t>(v)] > 1)
            throw InputError("tree labels must alternate 0/1 along edges");
    if (g.edge_count() == 0) throw InputError("Speiser construction needs at least one tree edge");

    auto tree = Embedding::from_graph(g);
    auto faces = face_walks(tree);
    const auto& walk = faces.walks.at(0);
    const int len = static_cast<int>(walk.size());

    // Triangle i <-> tree dart walk[i]; position of each tree dart in the walk.
    std::vector<int> pos(tree.dart_count());
    for (int i = 0; i < len; ++i) pos[static_cast<std::size_t>(walk[static_cast<std::size_t>(i)])] = i;

    SpeiserGraph s;
    for (int i = 0; i < len; ++i) s.emb.add_vertex(padded("s:", i));
    std::vector<int> next_dart(static_cast<std::size_t>(len)), prev_dart(static_cast<std::size_t>(len)),
        twin_dart(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        int e = s.emb.add_edge(i, (i + 1) % len);
        next_dart[static_cast<std::size_t>(i)] = 2 * e;
        prev_dart[static_cast<std::size_t>((i + 1) % len)] = 2 * e + 1;
    }
    for (int i = 0; i < len; ++i) {
        int j = pos[static_cast<std::size_t>(Embedding::twin(walk[static_cast<std::size_t>(i)]))];
        if (i < j) {
            int e = s.emb.add_edge(i, j);
            twin_dart[static_cast<std::size_t>(i)] = 2 * e;
            twin_dart[static_cast<std::size_t>(j)] = 2 * e + 1;
        }
    }
    s.dart_label.assign(s.emb.dart_count(), "");
    s.cls.assign(static_cast<std::size_t>(len), 'o');
    std::vector<std::string> vlabels(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        const int d = walk[static_cast<std::size_t>(i)];
        const int tail = labels[static_cast<std::size_t>(tree.origin(d))];
        const int head = labels[static_cast<std::size_t>(tree.head(d))];
        const auto iu = static_cast<std::size_t>(i);
        s.emb.set_rotation({twin_dart[iu], prev_dart[iu], next_dart[iu]});
        s.dart_label[static_cast<std::size_t>(twin_dart[iu])] = std::to_string(head);
        s.dart_label[static_cast<std::size_t>(prev_dart[iu])] = std::to_string(tail);
        s.dart_label[static_cast<std::size_t>(next_dart[iu])] = "inf";
        s.cls[iu] = tail == 1 ? 'x' : 'o';
        vlabels[iu] = s.cls[iu] == 'x' ? "x" : "o";
    }
    // Validates planarity of the construction.
    face_walks(s.emb);
    s.graph = s.emb.to_graph(vlabels);
    return s;
}

bool check_label_compatibility(const SpeiserGraph& gamma) {
    const int q = static_cast<int>(gamma.label_order.size());
    auto idx = [&](const std::string& l) {
        auto it = std::find(gamma.label_order.begin(), gamma.label_order.end(), l);
        if (l.empty() || it == gamma.label_order.end()) throw InputError("missing or unknown face label '" + l + "'");
        return static_cast<int>(it - gamma.label_order.begin());
    };
    if (gamma.dart_label.size() != gamma.emb.dart_count()) throw InputError("face labels missing");
    for (Index v = 0; v < static_cast<Index>(gamma.emb.vertex_count()); ++v) {
        auto darts = gamma.emb.darts_around(v);
        const int step = gamma.cls[static_cast<std::size_t>(v)] == 'x' ? 1 : q - 1;
        for (std::size_t j = 0; j < darts.size(); ++j) {
            int a = idx(gamma.dart_label[static_cast<std::size_t>(darts[j])]);
            int b = idx(gamma.dart_label[static_cast<std::size_t>(darts[(j + 1) % darts.size()])]);
            if ((a + step) % q != b) return false;
        }
    }
    return true;
}

ExtendedSpeiser build_extended_speiser(const SpeiserGraph& gamma, int n, int depth) {
    if (n < 1) throw InputError("n must be at least 1");
    if (depth < 1) throw InputError("lattice depth must be at least 1");
    ExtendedSpeiser x;
    x.emb = gamma.emb;
    const auto base_faces = face_walks(gamma.emb);
    std::vector<std::string> vlabels(gamma.emb.vertex_count());
    for (std::size_t v = 0; v < vlabels.size(); ++v) vlabels[v] = gamma.cls[v] == 'x' ? "x" : "o";
    std::vector<int> cap_darts;

    for (int f = 0; f < static_cast<int>(base_faces.walks.size()); ++f) {
        const auto& walk = base_faces.walks[static_cast<std::size_t>(f)];
        const int len = static_cast<int>(walk.size());
        const bool infinite = gamma.dart_label[static_cast<std::size_t>(walk[0])] == "inf";
        if (len % 2 != 0 && !infinite)
            throw InvariantError("face of odd size " + std::to_string(len) + ": Speiser graph is not bipartite");
        if (!infinite && len / 2 < n) continue;

        std::vector<std::vector<Index>> node(static_cast<std::size_t>(len), std::vector<Index>(static_cast<std::size_t>(depth)));
        for (int i = 0; i < len; ++i)
            for (int y = 1; y <= depth; ++y) {
                auto id = "l:" + padded("", f) + ":" + padded("", i) + ":" + std::to_string(y);
                Index v = x.emb.add_vertex(id);
                node[static_cast<std::size_t>(i)][static_cast<std::size_t>(y - 1)] = v;
                std::string lab = "lattice:" + std::to_string(f) + ":" + std::to_string(i) + ":" + std::to_string(y);
                if (y == depth) lab += ";frontier";
                vlabels.push_back(lab);
            }
        auto at = [&](int i, int y) { return node[static_cast<std::size_t>(i)][static_cast<std::size_t>(y - 1)]; };
        // Per lattice vertex: right, down, left, up darts.
        std::vector<std::vector<std::array<int, 4>>> darts(static_cast<std::size_t>(len),
                                                           std::vector<std::array<int, 4>>(static_cast<std::size_t>(depth), {-1, -1, -1, -1}));
        auto slot = [&](int i, int y) -> std::array<int, 4>& {
            return darts[static_cast<std::size_t>(i)][static_cast<std::size_t>(y - 1)];
        };
        for (int i = 0; i < len; ++i) {
            const int in = walk[static_cast<std::size_t>((i + len - 1) % len)];
            const Index corner = x.emb.origin(walk[static_cast<std::size_t>(i)]);
            int e = x.emb.add_edge(corner, at(i, 1));
            x.emb.insert_after(Embedding::twin(in), 2 * e);
            slot(i, 1)[1] = 2 * e + 1;
            for (int y = 1; y <= depth; ++y) {
                int h = x.emb.add_edge(at(i, y), at((i + 1) % len, y));
                slot(i, y)[0] = 2 * h;
                slot((i + 1) % len, y)[2] = 2 * h + 1;
                if (y < depth) {
                    int v = x.emb.add_edge(at(i, y), at(i, y + 1));
                    slot(i, y)[3] = 2 * v;
                    slot(i, y + 1)[1] = 2 * v + 1;
                }
            }
        }
        for (int i = 0; i < len; ++i)
            for (int y = 1; y <= depth; ++y) {
                std::vector<int> ccw;
                for (int d : slot(i, y))
                    if (d >= 0) ccw.push_back(d);
                x.emb.set_rotation(ccw);
            }
        cap_darts.push_back(slot(0, depth)[0]);
    }

    x.faces = face_walks(x.emb);
    for (int d : cap_darts) x.cap_faces.push_back(x.faces.face_of_dart[static_cast<std::size_t>(d)]);
    x.graph = x.emb.to_graph(vlabels);

    std::vector<char> is_cap(x.faces.walks.size(), 0);
    for (int f : x.cap_faces) is_cap[static_cast<std::size_t>(f)] = 1;
    for (std::size_t f = 0; f < x.faces.walks.size(); ++f) {
        if (is_cap[f]) continue;
        bool touches_frontier = false;
        for (int d : x.faces.walks[f]) {
            const auto& l = vlabels[static_cast<std::size_t>(x.emb.origin(d))];
            if (l.find("frontier") != std::string::npos) touches_frontier = true;
        }
        if (!touches_frontier) x.max_inner_face = std::max(x.max_inner_face, static_cast<int>(x.faces.walks[f].size()));
    }
    if (x.max_inner_face > std::max(2 * (n - 1), 4))
        throw InvariantError("extended Speiser graph has a face with " + std::to_string(x.max_inner_face) + " sides");
    return x;
}

Graph extended_dual(const ExtendedSpeiser& ext) {
    return dual_embedding(ext.emb, ext.faces, ext.cap_faces).to_graph();
}

}  // namespace combmod
