#pragma once

#include "combmod/graph.hpp"

namespace combmod {

struct LatticeKind {
    enum Shape { HalfPlane, HalfCylinder } shape = HalfPlane;
    int n = 0;  // ring size for HalfCylinder

    static LatticeKind half_plane() { return {HalfPlane, 0}; }
    static LatticeKind half_cylinder(int n) { return {HalfCylinder, n}; }
};

/// Truncated Λ (a width-column window of Z x Z+) or Λ_n = Λ/nZ, rows 0..depth.
/// Ids "z:<x>:<y>". Row 0 is tagged `boundary`, row `depth` (and for the
/// half plane the two end columns) `frontier`. For n = 2 the two parallel
/// ring edges collapse to one edge of multiplicity 2; for n = 1 they are loops
/// and vanish.
Graph build_lattice(LatticeKind kind, int depth, int width);

/// Square box [-r, r]^2 of Z^2, outer ring tagged frontier, "z:<x>:<y>".
Graph build_grid_box(int radius);

/// Path v_0 .. v_len ("p:<i>"), last vertex tagged frontier.
Graph build_path(int length);

}  // namespace combmod
