#include "combmod/embedding.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "combmod/errors.hpp"

namespace combmod {

Index Embedding::add_vertex(VertexId id) {
    ids_.push_back(std::move(id));
    first_.push_back(-1);
    return static_cast<Index>(ids_.size() - 1);
}

int Embedding::add_edge(Index u, Index v) {
    int e = static_cast<int>(edge_count());
    origin_.push_back(u);
    origin_.push_back(v);
    next_.push_back(2 * e);
    next_.push_back(2 * e + 1);
    return e;
}

void Embedding::set_rotation(const std::vector<int>& ccw) {
    if (ccw.empty()) return;
    for (std::size_t i = 0; i < ccw.size(); ++i)
        next_[static_cast<std::size_t>(ccw[i])] = ccw[(i + 1) % ccw.size()];
    first_[static_cast<std::size_t>(origin(ccw.front()))] = ccw.front();
}

void Embedding::insert_after(int after, int d) {
    next_[static_cast<std::size_t>(d)] = next_[static_cast<std::size_t>(after)];
    next_[static_cast<std::size_t>(after)] = d;
}

std::vector<int> Embedding::darts_around(Index v) const {
    std::vector<int> out;
    int start = first_dart(v);
    if (start < 0) {
        // Vertex whose darts were only ever inserted: locate one.
        for (int d = 0; d < static_cast<int>(dart_count()); ++d)
            if (origin(d) == v) {
                start = d;
                break;
            }
        if (start < 0) return out;
    }
    int d = start;
    do {
        out.push_back(d);
        d = next_ccw(d);
    } while (d != start && out.size() <= dart_count());
    return out;
}

Embedding Embedding::from_graph(const Graph& g) {
    if (!g.has_rotation() && g.edge_count() > 0) throw EmbeddingError("graph has no rotation system");
    Embedding e;
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v) e.add_vertex(g.id(v));
    std::map<std::pair<Index, Index>, int> dart;
    for (auto [u, v] : g.edges()) {
        int id = e.add_edge(u, v);
        dart[{u, v}] = 2 * id;
        dart[{v, u}] = 2 * id + 1;
    }
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v) {
        std::vector<int> ccw;
        for (Index w : g.rotation(v)) ccw.push_back(dart.at({v, w}));
        e.set_rotation(ccw);
    }
    return e;
}

Graph Embedding::to_graph(const std::vector<std::string>& labels) const {
    GraphBuilder b;
    for (Index v = 0; v < static_cast<Index>(vertex_count()); ++v) {
        b.add_vertex(id(v));
        if (static_cast<std::size_t>(v) < labels.size() && !labels[static_cast<std::size_t>(v)].empty())
            b.set_label(id(v), labels[static_cast<std::size_t>(v)]);
    }
    bool simple = true;
    std::map<std::pair<Index, Index>, int> seen;
    for (int e = 0; e < static_cast<int>(edge_count()); ++e) {
        Index u = origin(2 * e), v = origin(2 * e + 1);
        if (u == v) {
            simple = false;
            continue;
        }
        if (++seen[{std::min(u, v), std::max(u, v)}] > 1) simple = false;
        b.add_edge(id(u), id(v));
    }
    if (simple) {
        for (Index v = 0; v < static_cast<Index>(vertex_count()); ++v) {
            std::vector<VertexId> ccw;
            for (int d : darts_around(v)) ccw.push_back(id(head(d)));
            b.set_rotation(id(v), std::move(ccw));
        }
    }
    return b.build();
}

Faces face_walks(const Embedding& e, bool check_euler) {
    Faces faces;
    faces.face_of_dart.assign(e.dart_count(), -1);
    for (int start = 0; start < static_cast<int>(e.dart_count()); ++start) {
        if (faces.face_of_dart[static_cast<std::size_t>(start)] >= 0) continue;
        const int f = static_cast<int>(faces.walks.size());
        std::vector<int> walk;
        int d = start;
        do {
            if (faces.face_of_dart[static_cast<std::size_t>(d)] >= 0)
                throw EmbeddingError("inconsistent rotation: dart revisited by another face");
            faces.face_of_dart[static_cast<std::size_t>(d)] = f;
            walk.push_back(d);
            d = e.face_next(d);
        } while (d != start);
        faces.walks.push_back(std::move(walk));
    }
    if (e.dart_count() == 0 && e.vertex_count() == 1) faces.walks.emplace_back();
    if (check_euler) {
        const long v = static_cast<long>(e.vertex_count());
        const long ed = static_cast<long>(e.edge_count());
        const long f = static_cast<long>(faces.walks.size());
        if (v - ed + f != 2)
            throw EmbeddingError("Euler check failed: V - E + F = " + std::to_string(v - ed + f) +
                                 " (rotation is not planar or graph is disconnected)");
    }
    return faces;
}

std::vector<std::vector<Index>> face_walks(const Graph& g) {
    auto e = Embedding::from_graph(g);
    auto faces = face_walks(e);
    std::vector<std::vector<Index>> out;
    for (const auto& w : faces.walks) {
        std::vector<Index> cyc;
        for (int d : w) cyc.push_back(e.origin(d));
        out.push_back(std::move(cyc));
    }
    return out;
}

Embedding dual_embedding(const Embedding& e, const Faces& faces, const std::vector<int>& drop_faces) {
    std::vector<char> drop(faces.walks.size(), 0);
    for (int f : drop_faces) drop[static_cast<std::size_t>(f)] = 1;
    Embedding dual;
    std::vector<Index> vertex_of(faces.walks.size(), -1);
    for (std::size_t f = 0; f < faces.walks.size(); ++f) {
        if (drop[f]) continue;
        char buf[32];
        std::snprintf(buf, sizeof buf, "f%06zu", f);
        vertex_of[f] = dual.add_vertex(buf);
    }
    std::vector<int> dual_dart(e.dart_count(), -1);
    for (int ed = 0; ed < static_cast<int>(e.edge_count()); ++ed) {
        int fa = faces.face_of_dart[static_cast<std::size_t>(2 * ed)];
        int fb = faces.face_of_dart[static_cast<std::size_t>(2 * ed + 1)];
        if (drop[static_cast<std::size_t>(fa)] || drop[static_cast<std::size_t>(fb)]) continue;
        int id = dual.add_edge(vertex_of[static_cast<std::size_t>(fa)], vertex_of[static_cast<std::size_t>(fb)]);
        dual_dart[static_cast<std::size_t>(2 * ed)] = 2 * id;
        dual_dart[static_cast<std::size_t>(2 * ed + 1)] = 2 * id + 1;
    }
    for (std::size_t f = 0; f < faces.walks.size(); ++f) {
        if (drop[f]) continue;
        std::vector<int> ccw;
        const auto& walk = faces.walks[f];
        for (auto it = walk.rbegin(); it != walk.rend(); ++it)
            if (dual_dart[static_cast<std::size_t>(*it)] >= 0) ccw.push_back(dual_dart[static_cast<std::size_t>(*it)]);
        dual.set_rotation(ccw);
    }
    return dual;
}

Graph dual_graph(const Graph& g) {
    auto e = Embedding::from_graph(g);
    auto faces = face_walks(e);
    return dual_embedding(e, faces).to_graph();
}

}  // namespace combmod
