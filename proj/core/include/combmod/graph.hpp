#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace combmod {

using VertexId = std::string;
using Index = int;

/// Finite simple undirected graph over string vertex identifiers.
///
/// Vertices are stored in lexicographic order of their identifiers and every
/// neighbour list is sorted, so iteration order is reproducible. A graph may
/// carry a rotation system (counterclockwise neighbour order per vertex), a
/// free-form label per vertex and a multiplicity per edge; multiplicities
/// record parallel edges that were collapsed on construction.
///
/// Labels are `;`-separated tags. The tag `frontier` marks truncation
/// vertices of an exhausted infinite graph.
class Graph {
public:
    Graph() = default;

    std::size_t size() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<VertexId>& ids() const { return ids_; }
    const VertexId& id(Index v) const { return ids_[static_cast<std::size_t>(v)]; }
    std::optional<Index> find(std::string_view id) const;
    /// Throws InputError for unknown identifiers.
    Index index(std::string_view id) const;

    const std::vector<Index>& neighbors(Index v) const { return adj_[static_cast<std::size_t>(v)]; }
    std::size_t degree(Index v) const { return adj_[static_cast<std::size_t>(v)].size(); }
    bool adjacent(Index u, Index v) const;
    /// 1 for ordinary edges, k for k collapsed parallel edges, 0 if absent.
    int multiplicity(Index u, Index v) const;

    bool has_rotation() const { return !rotation_.empty(); }
    /// Counterclockwise neighbour order around v. Empty when no rotation.
    const std::vector<Index>& rotation(Index v) const;

    const std::string& label(Index v) const { return labels_[static_cast<std::size_t>(v)]; }
    bool has_tag(Index v, std::string_view tag) const;
    std::vector<Index> tagged(std::string_view tag) const;
    std::vector<Index> frontier() const { return tagged("frontier"); }

    /// All edges (u < v by index, which is also lexicographic by id).
    std::vector<std::pair<Index, Index>> edges() const;

    std::set<Index> indices_of(const std::vector<VertexId>& ids) const;

    friend class GraphBuilder;

private:
    std::vector<VertexId> ids_;
    std::vector<std::vector<Index>> adj_;
    std::vector<std::vector<Index>> rotation_;
    std::vector<std::string> labels_;
    std::map<std::pair<Index, Index>, int> multi_;  // only entries with multiplicity > 1
    std::size_t edge_count_ = 0;
};

/// Accumulates vertices and edges by identifier and produces a Graph.
///
/// Self-loops are dropped. Repeated edges are collapsed and counted as
/// multiplicity. Rotations are given as neighbour identifier lists and must
/// be permutations of the final neighbour list.
class GraphBuilder {
public:
    GraphBuilder& add_vertex(const VertexId& v);
    GraphBuilder& add_edge(const VertexId& u, const VertexId& v, int multiplicity = 1);
    GraphBuilder& set_rotation(const VertexId& v, std::vector<VertexId> ccw);
    GraphBuilder& add_tag(const VertexId& v, std::string_view tag);
    GraphBuilder& set_label(const VertexId& v, std::string label);
    bool contains(const VertexId& v) const { return vertices_.count(v) != 0; }

    Graph build() const;

private:
    std::set<VertexId> vertices_;
    std::map<std::pair<VertexId, VertexId>, int> edges_;
    std::map<VertexId, std::vector<VertexId>> rotation_;
    std::map<VertexId, std::string> labels_;
};

/// Sequence of vertices, consecutive ones adjacent in the host graph.
struct Chain {
    std::vector<Index> vertices;
    bool operator==(const Chain&) const = default;
};

bool is_chain(const Graph& g, const Chain& c);

/// Connected vertex set of a host graph.
struct DomainSet {
    std::vector<Index> members;  // sorted
    bool contains(Index v) const;
    bool operator==(const DomainSet&) const = default;
};

std::string join_tags(const std::vector<std::string>& tags);

}  // namespace combmod
