#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combmod/graph.hpp"

namespace combmod {

/// Graph truncated at radius R with its truncation sphere tagged frontier.
using GraphFamily = std::function<Graph(int)>;

struct ExhaustionProfile {
    std::vector<int> radii;
    std::vector<double> modulus_upper;  // mod(v0 -> frontier_R)
    std::vector<double> resistance;     // effective resistance v0 -> frontier_R
    std::vector<std::size_t> counts;    // vertices of the truncation
};

/// Throws InvariantError if modulus increases or resistance decreases with R
/// (beyond 1e-7 relative slack): that can only be a solver bug.
ExhaustionProfile exhaustion_profile(const GraphFamily& family, const VertexId& v0, const std::vector<int>& radii,
                                     double tol = 1e-8, int jobs = 1);

/// `radius,modulus_upper,resistance,vertices`
std::string profile_csv(const ExhaustionProfile& p);

struct TypePolicy {
    double min_increment = 0.01;  // every resistance step over the last half
    double eps = 0.75;            // final modulus must fall below this
    double plateau_tol = 0.1;     // relative resistance growth over the last half
};

struct TypeVerdict {
    enum Kind { Parabolic, Hyperbolic, Inconclusive } kind = Inconclusive;
    std::string basis;
    TypePolicy policy;
    double relative_growth = 0.0;
    double min_step = 0.0;
    double last_modulus = 0.0;
    const char* name() const;
};

/// Hyperbolic evidence if resistance plateaus over the last half of radii,
/// parabolic evidence if it keeps growing by min_increment per step while the
/// modulus is small. Needs at least 4 radii.
TypeVerdict classify_type(const ExhaustionProfile& p, const TypePolicy& policy = {});

struct ReturnEstimate {
    std::uint64_t trials = 0;
    std::uint64_t returned = 0;   // trials with at least one return
    double frequency = 0.0;
    double lower = 0.0;           // Wilson 95% interval
    double upper = 0.0;
    double mean_returns = 0.0;    // visits to v0 after time 0, per trial
};

/// Simple random walks from v0 for `steps` steps, absorbed at the frontier.
/// Trial i uses its own generator seeded from (seed, i), so the estimate does
/// not depend on `jobs`.
ReturnEstimate random_walk_returns(const Graph& g, Index v0, int steps, int trials, std::uint64_t seed, int jobs = 1);

struct Surgery {
    enum Kind { Short, Cut } kind = Short;
    std::set<Index> shorted;
    std::vector<std::pair<Index, Index>> cut;
};

/// Shorting Law (conductance does not drop) / Cutting Law (does not rise),
/// with 1e-9 slack. Terminals inside the shorted set follow the merged vertex.
bool surgery_monotonicity_check(const Graph& g, const std::set<Index>& a, const std::set<Index>& b, const Surgery& s);

}  // namespace combmod
