#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "combmod/electrical.hpp"
#include "combmod/errors.hpp"
#include "combmod/graph_ops.hpp"
#include "combmod/lattice.hpp"
#include "combmod/modulus.hpp"
#include "combmod/t3.hpp"
#include "modulus_oracle.hpp"
#include "small_graphs.hpp"

using namespace combmod;

namespace {

Graph to_graph(const testsupport::SmallGraph& s) {
    GraphBuilder b;
    for (int i = 0; i < s.n; ++i) b.add_vertex("v" + std::to_string(i));
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j)
            if (s.edge(i, j)) b.add_edge("v" + std::to_string(i), "v" + std::to_string(j));
    return b.build();
}

std::vector<std::vector<int>> adjacency(const testsupport::SmallGraph& s) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(s.n));
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            if (s.edge(i, j)) adj[static_cast<std::size_t>(i)].push_back(j);
    return adj;
}

Graph star(int leaves) {
    GraphBuilder b;
    for (int i = 0; i < leaves; ++i) b.add_edge("c", "l" + std::to_string(i));
    return b.build();
}

}  // namespace

TEST_CASE("solver and brute force match the exact oracle on all connected graphs up to 5 vertices") {
    int checked = 0;
    double worst_solver = 0.0, worst_brute = 0.0;
    for (int n = 2; n <= 5; ++n)
        for (const auto& s : testsupport::connected_graphs(n)) {
            Graph g = to_graph(s);  // v<i> sorts as i for i < 10
            auto adj = adjacency(s);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    auto chains = testsupport::minimal_chains(adj, {a}, {b});
                    auto exact = testsupport::exact_modulus(static_cast<std::size_t>(n), chains);
                    if (!exact) continue;
                    auto spec = ChainFamilySpec::connect({a}, {b});
                    auto r = modulus(g, spec, 1e-10);
                    worst_solver = std::max(worst_solver, std::abs(r.value - *exact));
                    worst_brute = std::max(worst_brute, std::abs(brute_force_modulus(g, spec) - *exact));
                    CHECK(verify_admissible(g, r.masses, spec) >= 1.0 - 1e-9);
                    ++checked;
                }
        }
    CHECK(checked > 200);
    CHECK(worst_solver <= 1e-8);
    CHECK(worst_brute <= 1e-9);
}

TEST_CASE("path and star closed forms") {
    for (int n = 1; n <= 20; ++n) {
        Graph p = build_path(n);
        auto r = modulus(p, ChainFamilySpec::connect({p.index("p:0")}, {p.index("p:" + std::to_string(n))}), 1e-12);
        CHECK(r.value == doctest::Approx(testsupport::single_chain_modulus(n + 1)).epsilon(1e-9));
        auto f = modulus(p, ChainFamilySpec::to_frontier({p.index("p:0")}), 1e-12);
        CHECK(f.value == doctest::Approx(r.value).epsilon(1e-9));
    }
    for (int leaves = 1; leaves <= 6; ++leaves) {
        Graph s = star(leaves);
        std::set<Index> ls;
        for (int i = 0; i < leaves; ++i) ls.insert(s.index("l" + std::to_string(i)));
        auto r = modulus(s, ChainFamilySpec::connect({s.index("c")}, ls), 1e-12);
        CHECK(std::abs(r.value - testsupport::star_center_to_leaves(leaves)) <= 1e-9);
        CHECK(r.gap <= 1e-12);
    }
}

TEST_CASE("result certificate: admissible masses with energy = value and lower <= value") {
    auto t = build_t3_ball(4);
    auto spec = ChainFamilySpec::to_frontier({t.base});
    auto r = modulus(t.graph, spec, 1e-9);
    CHECK(r.masses.energy() == doctest::Approx(r.value).epsilon(1e-12));
    CHECK(verify_admissible(t.graph, r.masses, spec) >= 1.0 - 1e-9);
    CHECK(r.lower <= r.value);
    CHECK(r.value - r.lower <= 1e-9);
    for (double m : r.masses.m) CHECK(m >= 0.0);
}

TEST_CASE("single-vertex chains and empty families") {
    Graph p = build_path(3);
    auto same = modulus(p, ChainFamilySpec::connect({p.index("p:1")}, {p.index("p:1")}));
    CHECK(same.value == doctest::Approx(1.0));
    GraphBuilder b;
    b.add_vertex("a").add_vertex("b");
    Graph g = b.build();
    auto none = modulus(g, ChainFamilySpec::connect({0}, {1}));
    CHECK(none.exact);
    CHECK(none.value == 0.0);
    CHECK(brute_force_modulus(g, ChainFamilySpec::connect({0}, {1})) == 0.0);
}

TEST_CASE("escape through gates equals Connect to the far frontier") {
    Graph p = build_path(8);
    auto gate = p.index("p:4");
    auto esc = modulus(p, ChainFamilySpec::escape_through({p.index("p:0")}, {gate}), 1e-12);
    auto con = modulus(p, ChainFamilySpec::connect({p.index("p:0")}, {p.index("p:8")}), 1e-12);
    CHECK(esc.value == doctest::Approx(con.value).epsilon(1e-9));
    // Escaping through v_2 is a proper subfamily of escaping at all.
    auto t = build_t3_ball(3);
    auto through = modulus(t.graph, ChainFamilySpec::escape_through({t.base}, {t.spine_vertex(2)}), 1e-9);
    CHECK(through.value > 0.0);
    CHECK(through.value < modulus(t.graph, ChainFamilySpec::to_frontier({t.base}), 1e-9).value);
}

TEST_CASE("monotonicity: subgraphs and deeper truncations have smaller modulus") {
    double prev = 1e9;
    for (int r = 1; r <= 6; ++r) {
        auto t = build_t3_ball(r);
        double v = modulus(t.graph, ChainFamilySpec::to_frontier({t.base}), 1e-10).value;
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
    Graph box = build_grid_box(3);
    auto a = box.index("z:0:0");
    std::set<Index> targets;
    for (Index v : box.frontier()) targets.insert(v);
    double full = modulus(box, ChainFamilySpec::connect({a}, targets), 1e-10).value;
    std::set<Index> keep;
    for (Index v = 0; v < static_cast<Index>(box.size()); ++v)
        if (box.id(v).rfind("z:0:", 0) == 0 || box.id(v).rfind("z:1:", 0) == 0) keep.insert(v);
    Graph sub = induced_subgraph(box, keep);
    std::set<Index> sub_targets;
    for (Index v : sub.frontier()) sub_targets.insert(v);
    double part = modulus(sub, ChainFamilySpec::connect({sub.index("z:0:0")}, sub_targets), 1e-10).value;
    CHECK(part <= full + 1e-9);
}

TEST_CASE("serial bound") {
    CHECK(serial_annuli_bound({2.0, 2.0}) == doctest::Approx(1.0));
    CHECK(serial_annuli_bound({1.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(serial_annuli_bound({}), InputError);
    CHECK_THROWS_AS(serial_annuli_bound({-1.0}), InputError);
}

TEST_CASE("annulus modulus on a grid ring is supported on the ring and bounds the crossing family") {
    Graph box = build_grid_box(4);
    std::set<Index> ring;
    for (Index v = 0; v < static_cast<Index>(box.size()); ++v) {
        int x = 0, y = 0;
        std::sscanf(box.id(v).c_str(), "z:%d:%d", &x, &y);
        if (std::max(std::abs(x), std::abs(y)) == 2) ring.insert(v);
    }
    auto a = make_annulus(box, ring, box.index("z:0:0"));
    CHECK(a.inner.contains(box.index("z:0:0")));
    auto r = annulus_modulus(box, a);
    for (Index v = 0; v < static_cast<Index>(box.size()); ++v)
        if (!ring.count(v)) CHECK(r.masses[v] == 0.0);
    CHECK(r.value > 0.0);
    std::set<Index> targets;
    for (Index v : box.frontier()) targets.insert(v);
    double whole = modulus(box, ChainFamilySpec::connect({box.index("z:0:0")}, targets), 1e-9).value;
    CHECK(whole <= serial_annuli_bound({r.lower}) + 1e-9);
    CHECK_THROWS_AS(make_annulus(box, {box.index("z:0:0")}), InputError);
}

TEST_CASE("iteration cap raises a resource error with the bracket") {
    auto t = build_t3_ball(5);
    ModulusOptions o;
    o.max_iterations = 1;
    o.tol = 1e-12;
    try {
        modulus(t.graph, ChainFamilySpec::to_frontier({t.base}), o);
        FAIL("expected ResourceError");
    } catch (const ResourceError& e) {
        CHECK(e.lower() <= e.upper());
    }
    CHECK_THROWS_AS(modulus(t.graph, ChainFamilySpec::to_frontier({t.base}), -1.0), InputError);
    CHECK_THROWS_AS(brute_force_modulus(t.graph, ChainFamilySpec::to_frontier({t.base})), InputError);
}

TEST_CASE("effective conductance: series, parallel, multiplicity") {
    Graph p = build_path(5);
    CHECK(effective_conductance(p, {p.index("p:0")}, {p.index("p:5")}) == doctest::Approx(0.2));
    CHECK(effective_conductance(star(3), {0}, {1, 2, 3}) == doctest::Approx(3.0));
    GraphBuilder b;
    b.add_edge("a", "b", 2).add_edge("b", "c");
    Graph g = b.build();
    // 1/(1/2 + 1/1)
    CHECK(effective_conductance(g, {g.index("a")}, {g.index("c")}) == doctest::Approx(2.0 / 3.0));
    GraphBuilder d;
    d.add_vertex("x").add_vertex("y");
    CHECK(effective_conductance(d.build(), {0}, {1}) == 0.0);
}
