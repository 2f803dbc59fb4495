// One line per criterion: "criterion N: PASS|FAIL  <what was measured>".
// Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "combmod/book.hpp"
#include "combmod/graph_ops.hpp"
#include "combmod/lattice.hpp"
#include "combmod/modulus.hpp"
#include "combmod/pipeline.hpp"
#include "combmod/sigma.hpp"
#include "combmod/speiser.hpp"
#include "combmod/t3.hpp"
#include "combmod/type_problem.hpp"
#include "modulus_oracle.hpp"
#include "plane_trees.hpp"
#include "small_graphs.hpp"

using namespace combmod;
namespace fs = std::filesystem;

namespace {

using clk = std::chrono::steady_clock;
double seconds_since(clk::time_point t) { return std::chrono::duration<double>(clk::now() - t).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... xs) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

Graph small_to_graph(const testsupport::SmallGraph& s) {
    GraphBuilder b;
    for (int i = 0; i < s.n; ++i) b.add_vertex("v" + std::to_string(i));
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j)
            if (s.edge(i, j)) b.add_edge("v" + std::to_string(i), "v" + std::to_string(j));
    return b.build();
}

std::set<Index> frontier_set(const Graph& g) {
    auto f = g.frontier();
    return {f.begin(), f.end()};
}

// ---------------------------------------------------------------------------

Outcome solver_vs_brute_force() {
    const auto t0 = clk::now();
    double worst = 0.0, worst_gap = 0.0;
    std::size_t graphs = 0, pairs = 0;
    for (int n = 2; n <= 8; ++n)
        for (const auto& s : testsupport::connected_graphs(n)) {
            ++graphs;
            Graph g = small_to_graph(s);
            for (Index a = 0; a < n; ++a)
                for (Index b = a + 1; b < n; ++b) {
                    auto spec = ChainFamilySpec::connect({a}, {b});
                    auto r = modulus(g, spec, 1e-9);
                    worst = std::max(worst, std::abs(r.value - brute_force_modulus(g, spec)));
                    worst_gap = std::max(worst_gap, r.gap);
                    ++pairs;
                }
        }
    const double secs = seconds_since(t0);
    return {worst <= 1e-6 && worst_gap <= 1e-6 && secs < 300.0,
            fmt("%zu connected graphs (2..8 vertices), %zu Connect pairs, max |diff| %.2e, max gap %.2e, %.1fs",
                graphs, pairs, worst, worst_gap, secs)};
}

Outcome closed_forms() {
    double worst_path = 0.0, worst_bf = 0.0;
    for (int n = 1; n <= 20; ++n) {
        Graph p = build_path(n);
        auto spec = ChainFamilySpec::connect({p.index("p:0")}, {p.index("p:" + std::to_string(n))});
        const double oracle = testsupport::single_chain_modulus(n + 1);
        worst_path = std::max(worst_path, std::abs(modulus(p, spec, 1e-12).value - oracle));
        if (n + 1 <= 12) worst_bf = std::max(worst_bf, std::abs(brute_force_modulus(p, spec) - oracle));
    }
    GraphBuilder b;
    for (int i = 0; i < 3; ++i) b.add_edge("c", "l" + std::to_string(i));
    Graph k13 = b.build();
    auto spec = ChainFamilySpec::connect({k13.index("c")}, {k13.index("l0"), k13.index("l1"), k13.index("l2")});
    const double star = modulus(k13, spec, 1e-12).value;
    const double star_oracle = testsupport::star_center_to_leaves(3);
    const double star_bf = brute_force_modulus(k13, spec);
    const double star_err = std::max(std::abs(star - star_oracle), std::abs(star_bf - star_oracle));
    return {worst_path <= 1e-9 && worst_bf <= 1e-9 && star_err <= 1e-9,
            fmt("paths n<=20: max err %.2e (brute force %.2e); K13: %.12f vs %.12f", worst_path, worst_bf, star,
                star_oracle)};
}

struct Host {
    std::string name;
    Graph graph;
    Index v0;
};

std::vector<Host> builder_hosts() {
    std::vector<Host> h;
    {
        Graph g = build_path(12);
        h.push_back({"path", g, g.index("p:0")});
    }
    {
        Graph g = build_grid_box(7);
        h.push_back({"grid", g, g.index("z:0:0")});
    }
    {
        auto t = build_t3_ball(7);
        h.push_back({"t3", t.graph, t.base});
    }
    {
        Graph g = build_lattice(LatticeKind::half_plane(), 8, 17);
        h.push_back({"half-plane", g, g.index("z:8:0")});
    }
    {
        Graph g = build_lattice(LatticeKind::half_cylinder(5), 8, 0);
        h.push_back({"half-cylinder", g, g.index("z:0:0")});
    }
    {
        auto b = build_book_complex({1, 2, 4, 8}, 9);
        h.push_back({"book", b.graph, b.graph.index(b.base)});
    }
    {
        auto t = build_keyl_tree({1, 1, 2, 2});
        h.push_back({"keyl-tree", t.graph, t.base});
        auto s = build_sigma(t, 6);
        h.push_back({"sigma", s.graph, s.tree(t.base)});
    }
    {
        auto t = build_t3_ball(2);
        auto sp = build_speiser_from_tree(t, alternating_labels(t));
        h.push_back({"speiser", sp.graph, 0});
        auto ext = build_extended_speiser(sp, 4, 4);
        h.push_back({"extended-speiser", ext.graph, 0});
    }
    return h;
}

Outcome monotonicity_laws() {
    int checks = 0, violations = 0;
    std::string where;
    std::mt19937_64 rng(2024);
    const auto hosts = builder_hosts();
    for (const auto& host : hosts) {
        // Truncation nesting: balls of growing radius, chains to their spheres.
        double prev = std::numeric_limits<double>::infinity();
        for (int r = 1; r <= 5; ++r) {
            Graph b = ball(host.graph, host.v0, r);
            auto f = frontier_set(b);
            if (f.empty()) break;
            const double v = modulus(b, ChainFamilySpec::connect({b.index(host.graph.id(host.v0))}, f), 1e-9).value;
            ++checks;
            if (v > prev + 1e-8) {
                ++violations;
                where += " " + host.name + "/nesting";
            }
            prev = v;
        }
        // Subgraph restriction: delete random vertices other than v0.
        Graph b = ball(host.graph, host.v0, 4);
        const Index v0 = b.index(host.graph.id(host.v0));
        const double full = modulus(b, ChainFamilySpec::connect({v0}, frontier_set(b)), 1e-9).value;
        for (int trial = 0; trial < 4; ++trial) {
            std::set<Index> keep;
            for (Index v = 0; v < static_cast<Index>(b.size()); ++v)
                if (v == v0 || rng() % 5 != 0) keep.insert(v);
            Graph sub = induced_subgraph(b, keep);
            const auto targets = frontier_set(sub);  // may be cut off entirely: empty family, modulus 0
            const double part =
                targets.empty() ? 0.0
                                : modulus(sub, ChainFamilySpec::connect({sub.index(b.id(v0))}, targets), 1e-9).value;
            ++checks;
            if (part > full + 1e-8) {
                ++violations;
                where += " " + host.name + "/subgraph";
            }
        }
    }
    // Serial rule on the pipeline's annuli.
    PipelineConfig cfg;
    auto rep = run_pipeline(cfg);
    const double slack = rep.keyl.serial_bound - rep.keyl.sigma_mod_upper;
    const bool serial_ok = rep.keyl.kmax == 6 && rep.keyl.records.size() == 6 && slack >= 0.0;
    return {violations == 0 && serial_ok,
            fmt("%d monotonicity checks over %zu builder families, %d violations%s; serial rule on A_1..A_%d: "
                "mod %.6f <= bound %.6f (slack %.6f)",
                checks, hosts.size(), violations, where.c_str(), rep.keyl.kmax, rep.keyl.sigma_mod_upper, rep.keyl.serial_bound,
                slack)};
}

struct KeyLRun {
    std::vector<int> floors;
    KeyLReport rep;
};

std::vector<KeyLRun>& keyl_runs() {
    static std::vector<KeyLRun> runs = [] {
        std::vector<KeyLRun> out;
        auto eps = estimate_epsilon(8, {4, 6, 8, 10}, 1e-3);
        for (const auto& f : std::vector<std::vector<int>>{
                 {1, 1, 1, 1, 1, 1, 1, 1, 1}, {1, 1, 2, 2, 3, 3, 3, 3, 3}, {1, 2, 2, 2, 2, 3, 3, 3, 3}}) {
            auto in = prepare_keyl(l_from_floors(f), eps, 6);
            VerifyOptions vo;
            vo.samples = 200;
            vo.exhaustive_max = 12;
            vo.with_moduli = false;  // the serial rule is criterion 3, on the pipeline
            out.push_back({f, verify_keyl(in, vo)});
        }
        return out;
    }();
    return runs;
}

Outcome keyl_counting() {
    int bad = 0, checked = 0;
    for (const auto& run : keyl_runs())
        for (const auto& r : run.rep.records) {
            const int f = run.floors[static_cast<std::size_t>(r.k) + 1];
            ++checked;
            if (r.floor_next != f) ++bad;
            if (r.bk_side != (std::size_t{1} << f)) ++bad;
            if (!r.akbk.equal()) ++bad;
            if (r.adjacency != (1 << (f + 1)) - 1) ++bad;
        }
    return {bad == 0 && checked == 18,
            fmt("3 L tables x k=1..6: |B_k| = 2^f, a_k/b_k closed = contour, adjacency = 2^(f+1)-1; %d mismatches",
                bad)};
}

Outcome keyl_masses() {
    double worst_margin = std::numeric_limits<double>::infinity(), worst_ratio = 0.0, worst_fit = 0.0;
    for (const auto& run : keyl_runs()) {
        for (const auto& r : run.rep.records) {
            const double bound = 4.0 * (1.0 - std::ldexp(1.0, -r.floor_next));
            worst_margin = std::min(worst_margin, r.vminus_length - bound);
        }
        worst_ratio = std::max(worst_ratio, run.rep.rescale_ratio);
        worst_fit = std::max(worst_fit, run.rep.fit_max_residual);
    }
    return {worst_margin >= -1e-9 && worst_ratio <= 1.1 && worst_fit < 0.25,
            fmt("V- crossing - 4(1-2^-f) >= %.4f; rescale max/min %.4f (<= 1.10); linear energy fit residual %.3f "
                "(< 0.25)",
                worst_margin, worst_ratio, worst_fit)};
}

Outcome emes() {
    bool ok = true;
    std::string d;
    for (const auto& run : keyl_runs()) {
        ok = ok && run.rep.violations.empty() && run.rep.sampled_domains >= 200 && run.rep.exhaustive_domains > 0;
        d += fmt(" [%zu exhaustive, %zu sampled, %zu violations]", run.rep.exhaustive_domains,
                 run.rep.sampled_domains, run.rep.violations.size());
    }
    return {ok, "3 KeyL trees, every tabulated eps_k:" + d};
}

Outcome type_evidence() {
    const auto t0 = clk::now();
    std::vector<int> even{2, 4, 6, 8, 10, 12, 14, 16};
    auto path = classify_type(exhaustion_profile([](int R) { return build_path(R); }, "p:0", even));
    auto grid = classify_type(exhaustion_profile([](int R) { return build_grid_box(R); }, "z:0:0", even));
    auto tree = classify_type(
        exhaustion_profile([](int R) { return build_t3_ball(R).graph; }, T3Address{}.id(), {2, 3, 4, 5, 6, 7, 8, 9}));
    std::vector<int> floors;
    for (int j = 0; j < 14; ++j) floors.push_back(j / 2 + 1);
    const auto epa = check_epa(l_from_floors(floors), 12);
    auto sp = sigma_type_profile(build_keyl_tree(floors), {2, 3, 4, 5, 6, 8, 10, 12});
    auto sv = classify_type(sp);
    bool increasing = true;
    for (std::size_t i = sp.resistance.size() - 4; i < sp.resistance.size(); ++i)
        increasing = increasing && sp.resistance[i] > sp.resistance[i - 1];
    const double secs = seconds_since(t0);
    const bool ok = path.kind == TypeVerdict::Parabolic && grid.kind == TypeVerdict::Parabolic &&
                    tree.kind == TypeVerdict::Hyperbolic && epa.value() <= 4.0 && sv.kind == TypeVerdict::Parabolic &&
                    increasing && secs < 1800.0;
    return {ok, fmt("path %s, Z^2 %s, T3 %s; sigma(KeyL, EPA %.3f) %s, last-4 resistance increasing: %s; %.1fs",
                    path.name(), grid.name(), tree.name(), epa.value(), sv.name(), increasing ? "yes" : "no", secs)};
}

Outcome book() {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    bool dominates = true, strict = true;
    std::vector<int> radii{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    for (const auto& shelves : std::vector<std::vector<int>>{{1, 2, 4, 8, 16, 32}, {1, 1, 1, 1, 1, 1}, {3, 0, 2}}) {
        auto rep = book_checks(shelves, 12, radii);
        for (auto m : {rep.odd_moduli, rep.odd_moduli_plain})
            for (auto [n, v] : m) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        if (shelves.front() == 1 && shelves[1] == 2) {
            dominates = rep.dominates;
            strict = rep.strict_where_shelved;
        }
    }
    return {hi - lo <= 1e-6 && dominates && strict,
            fmt("odd annuli n=1..9 over 4 schedules: spread %.2e (moduli %.9f..%.9f); N(k)=2^k ball counts dominate "
                "N=0: %s, strict where shelved: %s",
                hi - lo, lo, hi, dominates ? "yes" : "no", strict ? "yes" : "no")};
}

Outcome duality() {
    int total = 0, iso3 = 0, iso4 = 0;
    for (const auto& pt : testsupport::plane_trees(10, 3)) {
        GraphBuilder b;
        for (std::size_t v = 0; v < pt.rot.size(); ++v) {
            std::vector<std::string> rot;
            for (int u : pt.rot[v]) {
                rot.push_back("v" + std::to_string(u));
                if (static_cast<int>(v) < u) b.add_edge("v" + std::to_string(v), "v" + std::to_string(u));
            }
            b.set_rotation("v" + std::to_string(v), rot);
        }
        auto t = embedded_tree_from_graph(b.build());
        auto sigma = build_sigma(t, 3).graph;
        auto sp = build_speiser_from_tree(t, alternating_labels(t));
        ++total;
        iso3 += isomorphic(extended_dual(build_extended_speiser(sp, 3, 3)), sigma);
        iso4 += isomorphic(extended_dual(build_extended_speiser(sp, 4, 3)), sigma);
    }
    std::printf("info: dual(Gamma_4) isomorphic to sigma(T) for %d of %d trees\n", iso4, total);
    return {iso3 == total, fmt("%d plane trees with <= 10 edges and valence <= 3: dual(Gamma_3) isomorphic to sigma(T) "
                               "for %d",
                               total, iso3)};
}

Outcome determinism() {
    fs::path dir = fs::temp_directory_path() / "combmod_acceptance_replay";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto p = [&](const std::string& name) { return (dir / name).string(); };
    std::vector<std::vector<std::string>> commands{
        {"build", "t3", "--radius", "3", "--out", p("t3.json")},
        {"build", "keyl", "--floors", "1,1,2", "--out", p("keyl.json")},
        {"build", "sigma", "--graph", p("keyl.json"), "--depth", "3", "--out", p("sigma.json")},
        {"build", "extended", "--radius", "2", "--n", "4", "--depth", "3", "--out", p("ext.json")},
        {"build", "lattice", "--lattice", "half-cylinder", "--n", "4", "--depth", "4", "--out", p("lat.json")},
        {"build", "book", "--shelves", "1,2,4", "--height", "8", "--out", p("book.json")},
        {"modulus", "--graph", p("t3.json"), "--from", "t:0:", "--frontier", "--out", p("mod.json"), "--csv",
         p("mod.csv")},
        {"type-profile", "--family", "grid", "--radii", "2,3,4,5", "--trials", "200", "--steps", "300", "--out",
         p("type.json"), "--csv", p("type.csv")},
        {"epsilon-table", "--kmax", "3", "--radii", "4,6", "--out", p("eps.json")},
        {"verify-keyl", "--floors", "1,1,2,2,2", "--kmax", "2", "--radii", "4,6", "--samples", "30", "--out",
         p("keyl-report.json"), "--csv", p("keyl.csv")},
        {"book-check", "--shelves", "1,2,4", "--height", "8", "--radii", "2,4,6,8", "--out", p("bookrep.json")},
        {"pipeline", "--samples", "40", "--out", p("pipe.json"), "--csv", p("pipe.csv")},
    };
    int ran = 0, identical = 0, failed = 0;
    for (auto cmd : commands) {
        cmd.push_back("--jobs");
        cmd.push_back("2");
        std::ostringstream out, err;
        if (combmod::cli::dispatch(cmd, out, err) != 0) {
            ++failed;
            std::printf("info: '%s' failed: %s\n", cmd[0].c_str(), err.str().c_str());
            continue;
        }
        std::string out_path;
        for (std::size_t i = 0; i + 1 < cmd.size(); ++i)
            if (cmd[i] == "--out") out_path = cmd[i + 1];
        for (const char* jobs : {"1", "4"}) {
            std::ostringstream rout, rerr;
            const int rc = combmod::cli::dispatch(
                {"replay", "--manifest", out_path + ".manifest.json", "--jobs", jobs, "--out-dir", p(std::string("replay") + jobs)},
                rout, rerr);
            ++ran;
            if (rc == 0 && nlohmann::json::parse(rout.str()).at("identical").get<bool>()) ++identical;
        }
    }
    return {failed == 0 && identical == ran,
            fmt("%zu commands replayed from their manifests with --jobs 1 and 4: %d/%d byte-identical", commands.size(),
                identical, ran)};
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, solver_vs_brute_force}, {2, closed_forms},  {3, monotonicity_laws}, {4, keyl_counting},
        {5, keyl_masses},       {6, emes},          {7, type_evidence}, {8, book},
        {9, duality},               {10, determinism},
    };
    int failed = 0;
    for (const auto& [n, fn] : criteria) {
        const auto t0 = clk::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d: %s  %s  [%.1fs]\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                    seconds_since(t0));
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
