#pragma once

#include <string>
#include <vector>

#include "combmod/graph.hpp"

namespace combmod {

/// Half-edge (dart) representation of a plane multigraph.
///
/// Edge e owns darts 2e and 2e+1, twin(d) = d ^ 1. `next_ccw(d)` is the next
/// dart counterclockwise around origin(d). A face walk follows
/// face_next(d) = next_ccw(twin(d)): after arriving at v along an edge, leave
/// along the neighbour that follows the arrival edge counterclockwise. Each
/// face then lies to the right of its walk.
class Embedding {
public:
    Index add_vertex(VertexId id);
    /// Adds an edge u-v; its darts are not yet linked into rotations.
    int add_edge(Index u, Index v);
    /// Sets the counterclockwise dart order around the origin of the darts.
    void set_rotation(const std::vector<int>& ccw_darts);
    /// Inserts dart d right after `after` in the rotation at origin(after).
    void insert_after(int after, int d);

    std::size_t vertex_count() const { return ids_.size(); }
    std::size_t edge_count() const { return origin_.size() / 2; }
    std::size_t dart_count() const { return origin_.size(); }

    const VertexId& id(Index v) const { return ids_[static_cast<std::size_t>(v)]; }
    Index origin(int d) const { return origin_[static_cast<std::size_t>(d)]; }
    Index head(int d) const { return origin_[static_cast<std::size_t>(d ^ 1)]; }
    static int twin(int d) { return d ^ 1; }
    int next_ccw(int d) const { return next_[static_cast<std::size_t>(d)]; }
    int face_next(int d) const { return next_ccw(twin(d)); }
    /// Some dart leaving v, or -1 for an isolated vertex.
    int first_dart(Index v) const { return first_[static_cast<std::size_t>(v)]; }
    /// Darts leaving v in counterclockwise order starting at first_dart(v).
    std::vector<int> darts_around(Index v) const;

    /// Builds from a graph's rotation system. Throws EmbeddingError when absent.
    static Embedding from_graph(const Graph& g);

    /// Collapses parallel edges (recording multiplicity) and drops loops.
    /// Keeps the rotation when the embedding is simple.
    Graph to_graph(const std::vector<std::string>& labels = {}) const;

private:
    std::vector<VertexId> ids_;
    std::vector<Index> origin_;
    std::vector<int> next_;
    std::vector<int> first_;
};

struct Faces {
    std::vector<std::vector<int>> walks;    // dart sequences
    std::vector<int> face_of_dart;          // dart -> walk index
};

/// All face walks; each dart appears in exactly one. Verifies V - E + F = 2
/// (connected input assumed) and throws EmbeddingError otherwise.
Faces face_walks(const Embedding& e, bool check_euler = true);

/// Face walks of a graph with rotation, as vertex index cycles. A single
/// vertex yields one empty walk.
std::vector<std::vector<Index>> face_walks(const Graph& g);

/// Planar dual: one vertex per face, one edge per primal edge. Faces listed in
/// `drop_faces` are removed together with their incident dual edges.
Embedding dual_embedding(const Embedding& e, const Faces& faces, const std::vector<int>& drop_faces = {});

/// Simple dual graph of a graph with rotation; parallel dual edges collapse
/// with multiplicity kept, loops (bridges) are dropped.
Graph dual_graph(const Graph& g);

}  // namespace combmod
