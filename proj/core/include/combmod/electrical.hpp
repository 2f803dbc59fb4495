#pragma once

#include <set>

#include "combmod/graph.hpp"

namespace combmod {

/// Conductance between A (shorted, potential 1) and B (shorted, potential 0)
/// with unit resistors; an edge of multiplicity k conducts k. Returns 0 when
/// no edge path joins A and B.
double effective_conductance(const Graph& g, const std::set<Index>& a, const std::set<Index>& b);

}  // namespace combmod
