#include "combmod/electrical.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "combmod/errors.hpp"
#include "combmod/graph_ops.hpp"

namespace combmod {

double effective_conductance(const Graph& g, const std::set<Index>& a, const std::set<Index>& b) {
    if (a.empty() || b.empty()) throw InputError("terminal sets must be non-empty");
    for (Index v : a)
        if (b.count(v)) throw InputError("terminal sets must be disjoint");

    // Only the components meeting both terminals carry current.
    std::set<Index> all;
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v) all.insert(v);
    std::vector<int> comp_of(g.size(), -1);
    auto comps = components(g, all);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (Index v : comps[c].members) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    std::set<int> with_a, live;
    for (Index v : a) with_a.insert(comp_of[static_cast<std::size_t>(v)]);
    for (Index v : b)
        if (with_a.count(comp_of[static_cast<std::size_t>(v)])) live.insert(comp_of[static_cast<std::size_t>(v)]);
    if (live.empty()) return 0.0;

    std::vector<int> slot(g.size(), -1);
    int unknowns = 0;
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v)
        if (live.count(comp_of[static_cast<std::size_t>(v)]) && !a.count(v) && !b.count(v))
            slot[static_cast<std::size_t>(v)] = unknowns++;

    auto potential_fixed = [&](Index v) { return a.count(v) ? 1.0 : 0.0; };
    double direct = 0.0;  // current through A-B edges
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
    for (auto [u, v] : g.edges()) {
        if (!live.count(comp_of[static_cast<std::size_t>(u)])) continue;
        const double c = g.multiplicity(u, v);
        const int su = slot[static_cast<std::size_t>(u)], sv = slot[static_cast<std::size_t>(v)];
        if (su >= 0 && sv >= 0) {
            trip.emplace_back(su, su, c);
            trip.emplace_back(sv, sv, c);
            trip.emplace_back(su, sv, -c);
            trip.emplace_back(sv, su, -c);
        } else if (su >= 0) {
            trip.emplace_back(su, su, c);
            rhs[su] += c * potential_fixed(v);
        } else if (sv >= 0) {
            trip.emplace_back(sv, sv, c);
            rhs[sv] += c * potential_fixed(u);
        } else if (a.count(u) != a.count(v)) {
            direct += c;
        }
    }
    if (unknowns == 0) return direct;
    Eigen::SparseMatrix<double> lap(unknowns, unknowns);
    lap.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
    if (solver.info() != Eigen::Success) throw InvariantError("Laplacian factorisation failed");
    Eigen::VectorXd phi = solver.solve(rhs);

    // Current leaving A.
    double current = direct;
    for (Index v : a)
        for (Index w : g.neighbors(v)) {
            const int sw = slot[static_cast<std::size_t>(w)];
            if (sw >= 0) current += g.multiplicity(v, w) * (1.0 - phi[sw]);
        }
    return current;
}

}  // namespace combmod
