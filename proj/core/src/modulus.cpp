#include "combmod/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "combmod/errors.hpp"
#include "combmod/graph_ops.hpp"

namespace combmod {

double MassDistribution::energy() const {
    double s = 0.0;
    for (double x : m) s += x * x;
    return s;
}

double MassDistribution::total() const {
    double s = 0.0;
    for (double x : m) s += x;
    return s;
}

namespace {

void check_in_range(const Graph& g, const std::set<Index>& s, const char* what) {
    for (Index v : s)
        if (v < 0 || v >= static_cast<Index>(g.size())) throw InputError(std::string(what) + " contains an unknown vertex");
}

struct DijkstraTree {
    std::vector<double> dist;
    std::vector<Index> pred;
};

// Vertex-weighted Dijkstra from all sources; dist includes both endpoints.
DijkstraTree vertex_dijkstra(const Graph& g, const MassDistribution& m, const std::set<Index>& sources) {
    const double inf = std::numeric_limits<double>::infinity();
    DijkstraTree t{std::vector<double>(g.size(), inf), std::vector<Index>(g.size(), -1)};
    using Item = std::pair<double, Index>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (Index s : sources) {
        t.dist[static_cast<std::size_t>(s)] = std::max(m[s], 0.0);
        pq.emplace(t.dist[static_cast<std::size_t>(s)], s);
    }
    std::vector<char> done(g.size(), 0);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        for (Index v : g.neighbors(u)) {
            if (done[static_cast<std::size_t>(v)]) continue;
            const double nd = d + std::max(m[v], 0.0);
            if (nd < t.dist[static_cast<std::size_t>(v)]) {
                t.dist[static_cast<std::size_t>(v)] = nd;
                t.pred[static_cast<std::size_t>(v)] = u;
                pq.emplace(nd, v);
            }
        }
    }
    return t;
}

Chain trace(const DijkstraTree& t, Index target) {
    Chain c;
    for (Index v = target; v >= 0; v = t.pred[static_cast<std::size_t>(v)]) c.vertices.push_back(v);
    std::reverse(c.vertices.begin(), c.vertices.end());
    return c;
}

// Ordered by (length, vertex) so ties are reproducible.
std::vector<std::pair<double, Index>> ranked_targets(const DijkstraTree& t, const std::set<Index>& targets) {
    std::vector<std::pair<double, Index>> r;
    for (Index b : targets)
        if (std::isfinite(t.dist[static_cast<std::size_t>(b)])) r.emplace_back(t.dist[static_cast<std::size_t>(b)], b);
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

std::set<Index> family_targets(const Graph& g, const ChainFamilySpec& spec) {
    if (spec.a.empty()) throw InputError("chain family needs a non-empty source set");
    check_in_range(g, spec.a, "source set");
    switch (spec.kind) {
    case ChainFamilySpec::Connect:
        if (spec.b.empty()) throw InputError("Connect needs a non-empty target set");
        check_in_range(g, spec.b, "target set");
        return spec.b;
    case ChainFamilySpec::ToFrontier: {
        auto f = g.frontier();
        return {f.begin(), f.end()};
    }
    case ChainFamilySpec::EscapeThrough: {
        check_in_range(g, spec.gates, "gate set");
        for (Index v : spec.gates)
            if (spec.a.count(v)) throw InputError("gates must be disjoint from the source set");
        std::set<Index> rest = complement(g, spec.gates);
        std::set<Index> far;
        for (const auto& comp : components(g, rest)) {
            bool touches_a = false;
            for (Index v : comp.members) touches_a = touches_a || spec.a.count(v) > 0;
            if (touches_a) continue;
            for (Index v : comp.members)
                if (g.has_tag(v, "frontier")) far.insert(v);
        }
        return far;
    }
    }
    throw InputError("unknown chain family");
}

WeightedChain shortest_weighted_chain(const Graph& g, const MassDistribution& m, const ChainFamilySpec& spec) {
    if (m.m.size() != g.size()) throw InputError("mass distribution does not match the graph");
    auto targets = family_targets(g, spec);
    auto t = vertex_dijkstra(g, m, spec.a);
    auto r = ranked_targets(t, targets);
    if (r.empty()) return {};
    return {trace(t, r.front().second), r.front().first};
}

double verify_admissible(const Graph& g, const MassDistribution& m, const ChainFamilySpec& spec) {
    return shortest_weighted_chain(g, m, spec).length;
}

double serial_annuli_bound(const std::vector<double>& moduli) {
    if (moduli.empty()) throw InputError("serial bound needs at least one annulus");
    double s = 0.0;
    for (double x : moduli) {
        if (x < 0) throw InputError("moduli must be non-negative");
        if (x == 0.0) return 0.0;
        s += 1.0 / x;
    }
    return 1.0 / s;
}

ModulusResult modulus(const Graph& g, const ChainFamilySpec& spec, const ModulusOptions& opts) {
    if (!(opts.tol > 0)) throw InputError("tolerance must be positive");
    const auto targets = family_targets(g, spec);
    const std::size_t n = g.size();

    // Restricted problem in dual form: min 1/2 |A^T y|^2 - 1^T y over y >= 0,
    // m = A^T y; coordinate steps on y (Hildreth).
    std::vector<std::vector<Index>> rows;
    std::vector<double> y;
    std::vector<int> idle;
    std::set<std::vector<Index>> seen;
    MassDistribution m(n);

    ModulusResult best;
    best.upper = std::numeric_limits<double>::infinity();
    best.lower = 0.0;
    double inner_tol = 1e-4;

    auto sweep_until = [&](double tol) {
        for (int sweep = 0; sweep < 20000; ++sweep) {
            double worst = 0.0;
            for (std::size_t p = 0; p < rows.size(); ++p) {
                double len = 0.0;
                for (Index v : rows[p]) len += m[v];
                const double norm2 = static_cast<double>(rows[p].size());
                const double ny = std::max(0.0, y[p] - (len - 1.0) / norm2);
                const double dy = ny - y[p];
                if (dy != 0.0) {
                    for (Index v : rows[p]) m[v] += dy;
                    y[p] = ny;
                    worst = std::max(worst, std::abs(dy) * std::sqrt(norm2));
                }
            }
            if (worst < tol) return;
        }
    };

    for (int it = 1; it <= opts.max_iterations; ++it) {
        auto t = vertex_dijkstra(g, m, spec.a);
        auto ranked = ranked_targets(t, targets);
        if (ranked.empty()) {
            ModulusResult r;
            r.masses = MassDistribution(n);
            r.exact = true;
            r.iterations = it;
            return r;
        }
        const double ell = ranked.front().first;
        const double q = m.energy();
        double s = 0.0;
        for (double v : y) s += v;
        if (q > 0) best.lower = std::max(best.lower, s * s / q);
        if (ell > 0) {
            // Round-off can leave -1e-17 masses; the oracle already read them as 0.
            double qc = 0.0;
            for (double x : m.m) qc += x > 0 ? x * x : 0.0;
            const double up = qc / (ell * ell);
            if (up < best.upper) {
                best.upper = up;
                best.masses = m;
                for (auto& x : best.masses.m) x = std::max(x, 0.0) / ell;
            }
        }
        best.iterations = it;
        best.constraints_used = static_cast<int>(rows.size());
        if (best.upper - best.lower <= opts.tol) break;

        int added = 0;
        for (const auto& [len, b] : ranked) {
            if (len >= 1.0 - 1e-12 || added >= opts.chains_per_round) break;
            auto c = trace(t, b);
            if (seen.insert(c.vertices).second) {
                rows.push_back(std::move(c.vertices));
                y.push_back(0.0);
                idle.push_back(0);
                ++added;
            }
        }
        if (added == 0) inner_tol = std::max(inner_tol * 0.1, 1e-16);
        sweep_until(inner_tol);

        // Rows that stay slack for a few rounds only slow the sweeps down;
        // drop them (they come back if they are ever violated again).
        std::size_t keep = 0;
        for (std::size_t p = 0; p < rows.size(); ++p) {
            idle[p] = y[p] == 0.0 ? idle[p] + 1 : 0;
            if (idle[p] > 4) {
                seen.erase(rows[p]);
                continue;
            }
            if (keep != p) {
                rows[keep] = std::move(rows[p]);
                y[keep] = y[p];
                idle[keep] = idle[p];
            }
            ++keep;
        }
        rows.resize(keep);
        y.resize(keep);
        idle.resize(keep);
    }
    if (best.upper - best.lower > opts.tol)
        throw ResourceError("modulus did not converge within the iteration cap", best.lower, best.upper);
    best.value = best.upper;
    best.gap = best.upper - best.lower;
    return best;
}

AnnulusSpec make_annulus(const Graph& g, const std::set<Index>& vertices, std::optional<Index> inner_hint) {
    auto chk = is_annulus(g, vertices);
    if (!chk.is_annulus) throw InputError("vertex set is not an annulus");
    AnnulusSpec a{vertices, chk.first, chk.second};
    if (inner_hint && a.outer.contains(*inner_hint)) std::swap(a.inner, a.outer);
    return a;
}

ModulusResult annulus_modulus(const Graph& g, const AnnulusSpec& a, const ModulusOptions& opts) {
    std::set<Index> near_inner, near_outer;
    for (Index v : a.vertices)
        for (Index w : g.neighbors(v)) {
            if (a.inner.contains(w)) near_inner.insert(v);
            if (a.outer.contains(w)) near_outer.insert(v);
        }
    if (near_inner.empty() || near_outer.empty()) throw InputError("annulus does not touch both complementary domains");
    Graph h = induced_subgraph(g, a.vertices);
    std::set<Index> ha, hb;
    for (Index v : near_inner) ha.insert(h.index(g.id(v)));
    for (Index v : near_outer) hb.insert(h.index(g.id(v)));
    auto r = modulus(h, ChainFamilySpec::connect(ha, hb), opts);
    MassDistribution full(g.size());
    for (Index v = 0; v < static_cast<Index>(h.size()); ++v) full[g.index(h.id(v))] = r.masses[v];
    r.masses = std::move(full);
    return r;
}

}  // namespace combmod
