#include "combmod/type_problem.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "combmod/electrical.hpp"
#include "combmod/errors.hpp"
#include "combmod/graph_ops.hpp"
#include "combmod/modulus.hpp"
#include "combmod/parallel.hpp"

namespace combmod {

ExhaustionProfile exhaustion_profile(const GraphFamily& family, const VertexId& v0, const std::vector<int>& radii,
                                     double tol, int jobs) {
    if (radii.empty()) throw InputError("no radii given");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1]) throw InputError("radii must be increasing");
    ExhaustionProfile p;
    p.radii = radii;
    p.modulus_upper.resize(radii.size());
    p.resistance.resize(radii.size());
    p.counts.resize(radii.size());
    parallel_for(radii.size(), jobs, [&](std::size_t i) {
        Graph g = family(radii[i]);
        const Index s = g.index(v0);
        auto f = g.frontier();
        std::set<Index> front(f.begin(), f.end());
        front.erase(s);
        ModulusOptions o;
        o.tol = tol;
        p.modulus_upper[i] = modulus(g, ChainFamilySpec::to_frontier({s}), o).value;
        const double c = front.empty() ? 0.0 : effective_conductance(g, {s}, front);
        p.resistance[i] = c > 0 ? 1.0 / c : std::numeric_limits<double>::infinity();
        p.counts[i] = g.size();
    });
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (p.modulus_upper[i] > p.modulus_upper[i - 1] * (1 + 1e-7) + tol)
            throw InvariantError("modulus increased from radius " + std::to_string(radii[i - 1]) + " to " +
                                 std::to_string(radii[i]));
        if (p.resistance[i] < p.resistance[i - 1] * (1 - 1e-7))
            throw InvariantError("resistance decreased from radius " + std::to_string(radii[i - 1]) + " to " +
                                 std::to_string(radii[i]));
    }
    return p;
}

std::string profile_csv(const ExhaustionProfile& p) {
    std::ostringstream os;
    os << "radius,modulus_upper,resistance,vertices\n";
    char buf[128];
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%zu\n", p.radii[i], p.modulus_upper[i], p.resistance[i], p.counts[i]);
        os << buf;
    }
    return os.str();
}

const char* TypeVerdict::name() const {
    switch (kind) {
    case Parabolic: return "parabolic-evidence";
    case Hyperbolic: return "hyperbolic-evidence";
    default: return "inconclusive";
    }
}

TypeVerdict classify_type(const ExhaustionProfile& p, const TypePolicy& policy) {
    const std::size_t n = p.radii.size();
    if (n < 4) throw InputError("type classification needs at least 4 radii");
    TypeVerdict v;
    v.policy = policy;
    const std::size_t half = n / 2;
    const double r_mid = p.resistance[half - 1], r_last = p.resistance[n - 1];
    v.relative_growth = std::isfinite(r_last) && r_last > 0 ? (r_last - r_mid) / r_last : 0.0;
    v.min_step = std::numeric_limits<double>::infinity();
    for (std::size_t i = half; i < n; ++i) v.min_step = std::min(v.min_step, p.resistance[i] - p.resistance[i - 1]);
    v.last_modulus = p.modulus_upper[n - 1];

    char buf[256];
    if (v.relative_growth < policy.plateau_tol) {
        v.kind = TypeVerdict::Hyperbolic;
        std::snprintf(buf, sizeof buf, "resistance grew by %.4g (relative) over the last half < plateau_tol %.4g",
                      v.relative_growth, policy.plateau_tol);
    } else if (v.min_step > policy.min_increment && v.last_modulus < policy.eps) {
        v.kind = TypeVerdict::Parabolic;
        std::snprintf(buf, sizeof buf,
                      "resistance steps >= %.4g > min_increment %.4g; final modulus %.4g < eps %.4g", v.min_step,
                      policy.min_increment, v.last_modulus, policy.eps);
    } else {
        std::snprintf(buf, sizeof buf, "relative growth %.4g, smallest step %.4g, final modulus %.4g", v.relative_growth,
                      v.min_step, v.last_modulus);
    }
    v.basis = buf;
    return v;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

ReturnEstimate random_walk_returns(const Graph& g, Index v0, int steps, int trials, std::uint64_t seed, int jobs) {
    if (steps <= 0 || trials <= 0) throw InputError("steps and trials must be positive");
    if (v0 < 0 || v0 >= static_cast<Index>(g.size())) throw InputError("unknown start vertex");
    std::vector<int> returns(static_cast<std::size_t>(trials), 0);
    parallel_for(returns.size(), jobs, [&](std::size_t t) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t)));
        Index x = v0;
        int r = 0;
        for (int s = 0; s < steps; ++s) {
            if (g.has_tag(x, "frontier")) break;
            const auto& nb = g.neighbors(x);
            if (nb.empty()) break;
            std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
            x = nb[pick(rng)];
            if (x == v0) ++r;
        }
        returns[t] = r;
    });
    ReturnEstimate e;
    e.trials = static_cast<std::uint64_t>(trials);
    double sum = 0;
    for (int r : returns) {
        e.returned += r > 0;
        sum += r;
    }
    e.mean_returns = sum / trials;
    const double nn = trials, ph = static_cast<double>(e.returned) / nn, z = 1.959963984540054;
    e.frequency = ph;
    const double den = 1 + z * z / nn;
    const double centre = (ph + z * z / (2 * nn)) / den;
    const double half = z * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn)) / den;
    e.lower = std::max(0.0, centre - half);
    e.upper = std::min(1.0, centre + half);
    return e;
}

bool surgery_monotonicity_check(const Graph& g, const std::set<Index>& a, const std::set<Index>& b, const Surgery& s) {
    const double before = effective_conductance(g, a, b);
    Graph h;
    if (s.kind == Surgery::Short) {
        if (s.shorted.empty()) throw InputError("nothing to short");
        h = short_vertices(g, s.shorted);
    } else {
        h = cut_edges(g, s.cut);
    }
    auto remap = [&](const std::set<Index>& t) {
        std::set<Index> r;
        const VertexId merged = s.kind == Surgery::Short ? g.id(*s.shorted.begin()) : VertexId{};
        for (Index v : t) r.insert(h.index(s.kind == Surgery::Short && s.shorted.count(v) ? merged : g.id(v)));
        return r;
    };
    auto ha = remap(a), hb = remap(b);
    for (Index v : ha)
        if (hb.count(v)) throw InputError("shorting merges the two terminal sets");
    const double after = effective_conductance(h, ha, hb);
    return s.kind == Surgery::Short ? after >= before - 1e-9 : after <= before + 1e-9;
}

}  // namespace combmod
