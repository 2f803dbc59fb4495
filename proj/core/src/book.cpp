#include "combmod/book.hpp"

#include <string>

#include "combmod/errors.hpp"

namespace combmod {

namespace {

std::string pt(int copy, int x, int y) {
    const bool shared = x != 1 || y == 0;
    return "b:" + (shared ? std::string("s") : std::to_string(copy)) + ":" + std::to_string(x) + ":" + std::to_string(y);
}

}  // namespace

BookComplex build_book_complex(const std::vector<int>& shelves, int height) {
    if (height < 1) throw InputError("book height must be at least 1");
    for (int n : shelves)
        if (n < 0) throw InputError("shelf counts must be non-negative");

    BookComplex bc;
    bc.shelves = shelves;
    bc.height = height;
    GraphBuilder g;
    for (int c = 0; c < 2; ++c)
        for (int y = 0; y <= height; ++y)
            for (int x = 0; x <= 2; ++x) {
                g.add_vertex(pt(c, x, y));
                if (y == height) g.add_tag(pt(c, x, y), "frontier");
                if (x < 2) g.add_edge(pt(c, x, y), pt(c, x + 1, y));
                if (y < height) g.add_edge(pt(c, x, y), pt(c, x, y + 1));
            }
    for (int k = 0; k < static_cast<int>(shelves.size()) && 2 * k + 1 <= height; ++k)
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < shelves[static_cast<std::size_t>(k)]; ++j) {
                const std::string stem = "b:" + std::to_string(c) + ":p" + std::to_string(k) + "." + std::to_string(j);
                g.add_edge(pt(c, 1, 2 * k), stem + ":a");
                g.add_edge(stem + ":a", stem + ":b");
                g.add_edge(stem + ":b", pt(c, 1, 2 * k + 1));
                g.add_tag(stem + ":a", "page");
                g.add_tag(stem + ":b", "page");
            }
    for (int n = 1; n + 2 <= height; n += 2) {
        auto& a = bc.annuli[n];
        for (int y = n; y <= n + 1; ++y)
            for (const auto& v : {pt(0, 0, y), pt(0, 1, y), pt(1, 1, y), pt(0, 2, y)}) a.push_back(v);
    }
    bc.graph = g.build();
    bc.base = pt(0, 1, 0);
    return bc;
}

std::vector<int> book_level_counts(const BookComplex& b) {
    std::vector<int> counts(static_cast<std::size_t>(b.height) + 1, 0);
    for (const auto& id : b.graph.ids()) {
        auto p1 = id.find(':', 2);
        auto p2 = id.find(':', p1 + 1);
        const std::string xs = id.substr(p1 + 1, p2 - p1 - 1);
        int y;
        if (xs[0] == 'p') {
            const auto k = std::stoi(xs.substr(1, xs.find('.') - 1));
            y = 2 * k;
        } else {
            y = std::stoi(id.substr(p2 + 1));
        }
        ++counts[static_cast<std::size_t>(y)];
    }
    return counts;
}

}  // namespace combmod
