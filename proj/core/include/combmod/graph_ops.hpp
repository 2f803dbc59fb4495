#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combmod/graph.hpp"

namespace combmod {

/// Word-metric distance to the nearest source. Unreachable vertices are absent.
std::map<Index, int> distances_from(const Graph& g, const std::set<Index>& sources);

/// Same as distances_from but dense: -1 marks unreachable vertices.
std::vector<int> distance_vector(const Graph& g, const std::set<Index>& sources);

/// Vertices outside d adjacent to some vertex of d.
std::set<Index> boundary(const Graph& g, const std::set<Index>& d);

/// Maximal connected subsets of `within`, ordered by smallest member.
std::vector<DomainSet> components(const Graph& g, const std::set<Index>& within);

struct AnnulusCheck {
    bool is_annulus = false;
    // Set only on success; `inner` is the component holding the smallest
    // vertex unless the caller reorders it.
    DomainSet first;
    DomainSet second;
    bool annulus_connected = false;
};

/// True iff the complement of `a` has exactly two components.
AnnulusCheck is_annulus(const Graph& g, const std::set<Index>& a);

/// Identify all of `s` into one vertex named `merged_id` (default: the
/// smallest identifier in s). Rotation is dropped; parallel edges collapse.
Graph short_vertices(const Graph& g, const std::set<Index>& s, std::optional<std::string> merged_id = {});

/// Delete the given edges; vertices stay. Throws InputError on unknown edges.
Graph cut_edges(const Graph& g, const std::vector<std::pair<Index, Index>>& removed);

/// Subgraph determined by a vertex set; keeps labels and multiplicities, drops rotation.
Graph induced_subgraph(const Graph& g, const std::set<Index>& keep);

/// Ball of radius r around v0 with the sphere (distance r) tagged `frontier`,
/// in addition to whatever frontier tags g already had.
Graph ball(const Graph& g, Index v0, int r);

/// Complement of a vertex set.
std::set<Index> complement(const Graph& g, const std::set<Index>& s);

/// Graph isomorphism by colour refinement plus backtracking on individualised
/// vertices. Labels and multiplicities are ignored.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace combmod
