#pragma once

#include <map>
#include <vector>

#include "combmod/graph.hpp"
#include "combmod/t3.hpp"

namespace combmod {

/// One face of a plane tree as seen by the square subdivision: corner i of
/// the face walk sits at tree vertex corner_vertex[i] and spawns the ray of
/// grid vertices (face, i, 1..depth).
struct SigmaFace {
    std::vector<Index> corner_vertex;  // tree-graph indices w_i
    bool cyclic = true;                // wraps (finite tree) or open (open spine)
    int axis_corner = -1;              // corner on the symmetry axis, -1 if none
    /// Signed column of corner i measured from the axis (open faces only).
    int column(int corner) const { return axis_sign * (corner - axis_corner); }
    int axis_sign = 1;
};

struct SigmaVertex {
    bool is_tree = false;
    Index tree_vertex = -1;  // tree-graph index for Tree vertices
    int face = -1;
    int corner = -1;
    int depth = 0;           // 0 for tree vertices
};

/// 1-skeleton of the square subdivision of the glued half-strip surface.
struct SigmaGraph {
    Graph graph;
    std::vector<SigmaVertex> info;          // per graph index
    std::vector<SigmaFace> faces;
    std::vector<Index> tree_to_sigma;       // tree-graph index -> sigma index
    int depth = 0;
    int vplus_face = -1;                    // open-spine trees only
    int vminus_face = -1;

    Index grid(int face, int corner, int d) const;
    Index tree(Index tree_vertex) const { return tree_to_sigma[static_cast<std::size_t>(tree_vertex)]; }
    /// Open faces: grid vertex at axis column m, row n >= 1; -1 if outside.
    Index at_column(int face, int m, int n) const;

private:
    friend SigmaGraph build_sigma(const EmbeddedTree&, int);
    std::vector<std::vector<Index>> grid_index_;
};

/// Attaches a grid of the given depth to every corner of every face of t.
/// Finite trees give one cyclic face of 2E corners. Trees with an open spine
/// give an upper face (spine corners only, V+) and a lower face (walking
/// around the hanging trees, V-), both open at the truncated spine ends.
/// Throws EmbeddingError if t has no rotation.
SigmaGraph build_sigma(const EmbeddedTree& t, int depth);

}  // namespace combmod
