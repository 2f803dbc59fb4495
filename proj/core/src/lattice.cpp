#include "combmod/lattice.hpp"

#include <cstdlib>

#include "combmod/errors.hpp"

namespace combmod {

namespace {

std::string zid(int x, int y) { return "z:" + std::to_string(x) + ":" + std::to_string(y); }

}  // namespace

Graph build_lattice(LatticeKind kind, int depth, int width) {
    if (depth < 1) throw InputError("lattice depth must be at least 1");
    const bool cyl = kind.shape == LatticeKind::HalfCylinder;
    if (cyl && kind.n < 1) throw InputError("half-cylinder ring size must be at least 1");
    if (!cyl && width < 1) throw InputError("lattice width must be at least 1");
    const int cols = cyl ? kind.n : width;

    GraphBuilder b;
    for (int y = 0; y <= depth; ++y)
        for (int x = 0; x < cols; ++x) {
            b.add_vertex(zid(x, y));
            if (y == 0) b.add_tag(zid(x, y), "boundary");
            if (y == depth || (!cyl && (x == 0 || x == cols - 1))) b.add_tag(zid(x, y), "frontier");
            if (y < depth) b.add_edge(zid(x, y), zid(x, y + 1));
            if (cyl)
                b.add_edge(zid(x, y), zid((x + 1) % cols, y));
            else if (x + 1 < cols)
                b.add_edge(zid(x, y), zid(x + 1, y));
        }
    return b.build();
}

Graph build_grid_box(int radius) {
    if (radius < 0) throw InputError("radius must be non-negative");
    GraphBuilder b;
    for (int x = -radius; x <= radius; ++x)
        for (int y = -radius; y <= radius; ++y) {
            b.add_vertex(zid(x, y));
            if (std::abs(x) == radius || std::abs(y) == radius) b.add_tag(zid(x, y), "frontier");
            if (x < radius) b.add_edge(zid(x, y), zid(x + 1, y));
            if (y < radius) b.add_edge(zid(x, y), zid(x, y + 1));
        }
    return b.build();
}

Graph build_path(int length) {
    if (length < 0) throw InputError("length must be non-negative");
    GraphBuilder b;
    auto pid = [](int i) { return "p:" + std::to_string(i); };
    for (int i = 0; i <= length; ++i) {
        b.add_vertex(pid(i));
        if (i > 0) b.add_edge(pid(i - 1), pid(i));
    }
    b.add_tag(pid(length), "frontier");
    return b.build();
}

}  // namespace combmod
