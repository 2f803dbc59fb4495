#include <doctest.h>

#include <deque>

#include "combmod/book.hpp"
#include "combmod/embedding.hpp"
#include "combmod/errors.hpp"
#include "combmod/graph_ops.hpp"
#include "combmod/lattice.hpp"
#include "combmod/sigma.hpp"
#include "combmod/speiser.hpp"
#include "combmod/t3.hpp"

using namespace combmod;

namespace {

// Plain BFS, kept separate from the library's distance helpers.
std::vector<int> bfs(const Graph& g, Index s) {
    std::vector<int> d(g.size(), -1);
    std::deque<Index> q{s};
    d[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
        Index u = q.front();
        q.pop_front();
        for (Index v : g.neighbors(u))
            if (d[static_cast<std::size_t>(v)] < 0) {
                d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
                q.push_back(v);
            }
    }
    return d;
}

bool connected(const Graph& g) {
    for (int x : bfs(g, 0))
        if (x < 0) return false;
    return true;
}

}  // namespace

TEST_CASE("T3 balls have 3*2^r - 2 vertices and valence 3 inside") {
    for (int r = 0; r <= 6; ++r) {
        auto t = build_t3_ball(r);
        CHECK(t.graph.size() == static_cast<std::size_t>(3 * (1 << r) - 2));
        for (Index v = 0; v < static_cast<Index>(t.graph.size()); ++v)
            if (!t.graph.has_tag(v, "frontier")) CHECK(t.graph.degree(v) == 3);
    }
}

TEST_CASE("T3 addresses give the word-metric distance to v0") {
    auto t = build_t3_ball(5);
    auto d = bfs(t.graph, t.base);
    for (Index v = 0; v < static_cast<Index>(t.graph.size()); ++v) {
        auto a = parse_t3_id(t.graph.id(v));
        REQUIRE(a.has_value());
        CHECK(a->distance_to_base() == d[static_cast<std::size_t>(v)]);
        CHECK(a->id() == t.graph.id(v));
        CHECK(a->mirrored().mirrored() == *a);
    }
    CHECK_FALSE(parse_t3_id("t:x:").has_value());
}

TEST_CASE("KeyL tree: |B_k| per side is 2^f and matches the distance characterisation") {
    const std::vector<int> floors{1, 1, 2, 2, 3};
    auto t = build_keyl_tree(floors);
    CHECK(t.spine_min == -4);
    CHECK(t.spine_max == 4);
    auto by_bfs = bprime_by_bfs(t);
    for (int k = 1; k <= 4; ++k) {
        const auto& bk = t.bsets.at(k);
        // Two sides, each v_k plus a binary tree of depth f below it.
        CHECK(bk.size() == 2 * (std::size_t{1} << floors[static_cast<std::size_t>(k)]));
        for (Index v : bk) CHECK(by_bfs.at(v) == k);
    }
    CHECK_THROWS_AS(build_keyl_tree({2, 1}), InputError);
    CHECK_THROWS_AS(build_keyl_tree({0, 1}), InputError);
}

TEST_CASE("Speiser graph of a tree: two vertices per edge, valence 3, bipartite, compatible labels") {
    for (int r = 1; r <= 3; ++r) {
        auto t = build_t3_ball(r);
        auto s = build_speiser_from_tree(t, alternating_labels(t));
        CHECK(s.emb.vertex_count() == 2 * t.graph.edge_count());
        for (Index v = 0; v < static_cast<Index>(s.emb.vertex_count()); ++v) {
            CHECK(s.emb.darts_around(v).size() == 3);
            for (int d : s.emb.darts_around(v)) CHECK(s.cls[static_cast<std::size_t>(v)] != s.cls[static_cast<std::size_t>(s.emb.head(d))]);
        }
        CHECK(check_label_compatibility(s));
    }
    auto t = build_t3_ball(1);
    std::vector<int> bad(t.graph.size(), 0);
    CHECK_THROWS_AS(build_speiser_from_tree(t, bad), InputError);
}

TEST_CASE("sigma of a tree: connected, contains the tree, one ray per corner") {
    for (int r = 1; r <= 3; ++r) {
        auto t = build_t3_ball(r);
        auto s = build_sigma(t, 3);
        CHECK(connected(s.graph));
        for (auto [u, v] : t.graph.edges()) CHECK(s.graph.adjacent(s.tree(u), s.tree(v)));
        // A tree vertex of valence d has d corners, hence d rays; grid vertices have valence <= 4.
        for (Index v = 0; v < static_cast<Index>(s.graph.size()); ++v) {
            const auto& info = s.info[static_cast<std::size_t>(v)];
            if (info.is_tree)
                CHECK(s.graph.degree(v) == 2 * t.graph.degree(info.tree_vertex));
            else
                CHECK(s.graph.degree(v) <= 4);
        }
    }
}

TEST_CASE("extended Speiser graph with n = 4 is dual to sigma") {
    auto t = build_t3_ball(2);
    auto s = build_speiser_from_tree(t, alternating_labels(t));
    auto ext = build_extended_speiser(s, 4, 3);
    CHECK(ext.max_inner_face <= 6);
    CHECK(isomorphic(extended_dual(ext), build_sigma(t, 3).graph));
}

TEST_CASE("lattices, grid boxes and paths") {
    Graph cyl = build_lattice(LatticeKind::half_cylinder(5), 4, 0);
    CHECK(cyl.size() == 25);
    CHECK(cyl.tagged("boundary").size() == 5);
    CHECK(cyl.frontier().size() == 5);
    Graph hp = build_lattice(LatticeKind::half_plane(), 3, 5);
    CHECK(hp.size() == 20);
    CHECK(hp.tagged("boundary").size() == 5);
    Graph box = build_grid_box(3);
    CHECK(box.size() == 49);
    CHECK(box.frontier().size() == 24);
    Graph p = build_path(7);
    CHECK(p.size() == 8);
    CHECK(p.frontier() == std::vector<Index>{p.index("p:7")});
}

TEST_CASE("book complex: 4-cycle rows, pages add 4 vertices, odd annuli present") {
    auto plain = build_book_complex({}, 8);
    auto counts = book_level_counts(plain);
    REQUIRE(counts.size() == 9);
    for (int y = 1; y <= 8; ++y) CHECK(counts[static_cast<std::size_t>(y)] == 4);
    auto shelved = build_book_complex({1, 2, 4}, 8);
    CHECK(shelved.graph.size() == plain.graph.size() + 4 * (1 + 2 + 4));
    CHECK(shelved.annuli.count(1) == 1);
    CHECK(shelved.annuli.count(5) == 1);
    CHECK(shelved.annuli.count(7) == 0);
    CHECK(connected(shelved.graph));
}
