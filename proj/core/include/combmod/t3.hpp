#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "combmod/graph.hpp"

namespace combmod {

/// Coordinates on the valence-3 tree: spine index j of v_j on the chain c and
/// a binary word descending into the tree hanging below v_j. The first symbol
/// is always '0' (the unique child of a spine vertex).
///
/// dist(v, c) = |word|, dist(v, v_0) = |j| + |word|.
struct T3Address {
    int spine = 0;
    std::string word;

    int depth() const { return static_cast<int>(word.size()); }
    int distance_to_base() const { return (spine < 0 ? -spine : spine) + depth(); }
    std::string id() const;
    /// Mirror image across the axis through v_0: j -> -j, word bits after
    /// the first one flipped.
    T3Address mirrored() const;
    auto operator<=>(const T3Address&) const = default;
};

std::optional<T3Address> parse_t3_id(const std::string& id);

/// A plane tree, usually a subtree of T3 with canonical addresses.
struct EmbeddedTree {
    Graph graph;                           // carries the rotation system
    Index base = 0;                        // v_0
    std::vector<Index> spine;              // spine vertices by increasing j
    int spine_min = 0;
    int spine_max = 0;
    /// The spine continues past both ends in the untruncated tree, so the
    /// plane complement has an upper (spine-only) and a lower face.
    bool open_spine = false;
    std::map<int, std::vector<Index>> bsets;  // KeyL: k -> B_k (sorted)
    std::vector<int> depth_floors;            // KeyL: k -> floor L(eps_{k+1})
    std::vector<int> value_labels;            // optional 0/1 per vertex

    Index spine_vertex(int j) const;
};

/// Ball of the given radius around v_0 in T3. Sphere vertices are tagged
/// `frontier`; spine vertices carry `spine:j`.
EmbeddedTree build_t3_ball(int radius);

/// Subtree of T3 with vertex set B_0 u ... u B_kmax where B_k keeps the
/// hanging trees over v_{+-k} (over v_0 for k = 0) down to depth
/// depth_floors[k]. kmax = depth_floors.size() - 1.
///
/// Throws InputError unless depth_floors is non-decreasing with
/// depth_floors[0] >= 1 (a positive decreasing L with L(eps_0) >= 1).
EmbeddedTree build_keyl_tree(const std::vector<int>& depth_floors);

/// Membership in B'_k computed from distances: dist(v, v0) = dist(v, c) + k.
/// Returns k, computed by BFS on the given tree (which must contain the spine).
std::map<Index, int> bprime_by_bfs(const EmbeddedTree& t);

/// Proper 0/1 colouring by parity of the distance to the base vertex.
std::vector<int> alternating_labels(const EmbeddedTree& t);

/// Wraps an arbitrary plane tree (graph with rotation, acyclic, connected).
EmbeddedTree embedded_tree_from_graph(const Graph& g, Index base = 0);

}  // namespace combmod
