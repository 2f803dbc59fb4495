#pragma once

#include <map>
#include <vector>

#include "combmod/graph.hpp"

namespace combmod {

/// 1-skeleton of the doubled half-strip book X.
///
/// The half strip is two unit-square columns x in [0,2], y >= 0. The double
/// identifies the boundary lines x = 0, x = 2 and y = 0 of the two copies, so
/// every row y >= 1 is a 4-cycle (0,y) (1,y)_0 (2,y) (1,y)_1. Along
/// e_k = {x=1, 2k <= y <= 2k+1} each copy carries N(k) pages, each a square
/// (1,2k) p q (1,2k+1) with two new vertices.
///
/// Ids: "b:s:<x>:<y>" for shared points, "b:<c>:1:<y>" for copy c, and
/// "b:<c>:p<k>.<j>:a|b" for page vertices.
struct BookComplex {
    Graph graph;
    std::vector<int> shelves;                     // N(k), k = 0..
    int height = 0;
    VertexId base;                                // (1, 0)
    std::map<int, std::vector<VertexId>> annuli;  // odd n -> rows n, n+1
};

/// N is read as N(k) for k < N.size() and 0 beyond. Row `height` is frontier.
BookComplex build_book_complex(const std::vector<int>& shelves, int height);

/// Number of vertices with y-coordinate y (page vertices counted at the
/// lower row of their edge), y = 0..height.
std::vector<int> book_level_counts(const BookComplex& b);

}  // namespace combmod
