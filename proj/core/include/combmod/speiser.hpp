#pragma once

#include <string>
#include <vector>

#include "combmod/embedding.hpp"
#include "combmod/graph.hpp"
#include "combmod/t3.hpp"

namespace combmod {

/// Plane bipartite graph with face labels a_1..a_q.
///
/// `dart_label[d]` is the label of the face to the right of dart d, which is
/// the face at the corner following d counterclockwise around origin(d)'s
/// predecessor; reading dart_label over darts_around(v) lists the face
/// labels around v counterclockwise.
struct SpeiserGraph {
    Embedding emb;
    Graph graph;                          // collapsed, vertices tagged x / o
    std::vector<char> cls;                // per emb vertex: 'x' or 'o'
    std::vector<std::string> dart_label;  // per dart
    std::vector<std::string> label_order{"0", "1", "inf"};
};

/// Dual of the triangulation T' obtained by sending one arc to infinity from
/// every corner of the plane tree t. One vertex per side of a tree edge; the
/// result has valence 3 and faces labelled 0, 1 (tree vertices) and inf.
/// `labels` gives 0/1 per tree vertex; InputError unless adjacent labels differ.
SpeiserGraph build_speiser_from_tree(const EmbeddedTree& t, const std::vector<int>& labels);

/// True iff around every x vertex the face labels run through label_order
/// counterclockwise and around every o vertex in reverse order.
/// InputError when a label is missing or unknown.
bool check_label_compatibility(const SpeiserGraph& gamma);

struct ExtendedSpeiser {
    Embedding emb;
    Graph graph;
    Faces faces;
    std::vector<int> cap_faces;   // innermost faces of the truncated lattices
    int max_inner_face = 0;       // largest face not touching the frontier
};

/// Replaces every face with 2k >= 2n sides, and every face labelled inf,
/// by a half-cylinder lattice of the given depth glued along its boundary
/// walk. Odd faces (other than inf) raise InvariantError; the face size
/// bound max{2(n-1), 4} away from the frontier is checked on the result.
ExtendedSpeiser build_extended_speiser(const SpeiserGraph& gamma, int n, int depth);

/// Dual of the extended graph with the lattice caps removed, collapsed to a
/// simple graph.
Graph extended_dual(const ExtendedSpeiser& ext);

}  // namespace combmod
