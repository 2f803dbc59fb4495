#pragma once

#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "combmod/graph.hpp"

namespace combmod {

/// Which chains a modulus is taken over.
///
/// Connect(A, B): chains from A to B; single-vertex chains on A n B count.
/// ToFrontier(A): Connect(A, frontier).
/// EscapeThrough(A, gates): chains from A to a frontier vertex lying in a
/// component of g - gates that meets no vertex of A. Such a chain leaves the
/// A side through a gate.
struct ChainFamilySpec {
    enum Kind { Connect, ToFrontier, EscapeThrough } kind = Connect;
    std::set<Index> a;
    std::set<Index> b;
    std::set<Index> gates;

    static ChainFamilySpec connect(std::set<Index> a, std::set<Index> b) { return {Connect, std::move(a), std::move(b), {}}; }
    static ChainFamilySpec to_frontier(std::set<Index> a) { return {ToFrontier, std::move(a), {}, {}}; }
    static ChainFamilySpec escape_through(std::set<Index> a, std::set<Index> gates) {
        return {EscapeThrough, std::move(a), {}, std::move(gates)};
    }
};

/// Non-negative mass per vertex index.
struct MassDistribution {
    std::vector<double> m;

    MassDistribution() = default;
    explicit MassDistribution(std::size_t n, double value = 0.0) : m(n, value) {}
    double operator[](Index v) const { return m[static_cast<std::size_t>(v)]; }
    double& operator[](Index v) { return m[static_cast<std::size_t>(v)]; }
    double energy() const;
    double total() const;
};

struct WeightedChain {
    Chain chain;
    double length = std::numeric_limits<double>::infinity();  // infinite iff the family is empty
};

struct ModulusResult {
    double value = 0.0;        // energy of `masses`, which are admissible
    MassDistribution masses;
    double upper = 0.0;
    double lower = 0.0;
    double gap = 0.0;
    int iterations = 0;
    int constraints_used = 0;
    bool exact = false;        // empty family
};

struct ModulusOptions {
    double tol = 1e-9;           // absolute gap
    int max_iterations = 200000;
    int chains_per_round = 16;
};

/// Target vertices of the family: B, the frontier, or the far frontier.
std::set<Index> family_targets(const Graph& g, const ChainFamilySpec& spec);

/// Minimum-weight chain of the family, both endpoints counted. Ties go to
/// the lexicographically smaller vertex index.
WeightedChain shortest_weighted_chain(const Graph& g, const MassDistribution& m, const ChainFamilySpec& spec);

/// Cutting-plane computation of min sum m^2 over admissible masses.
/// Throws ResourceError carrying the bracket when the cap is hit.
ModulusResult modulus(const Graph& g, const ChainFamilySpec& spec, const ModulusOptions& opts = {});
inline ModulusResult modulus(const Graph& g, const ChainFamilySpec& spec, double tol) {
    ModulusOptions o;
    o.tol = tol;
    return modulus(g, spec, o);
}

/// Enumerates every minimal simple chain and solves the full QP; g <= 12 vertices.
double brute_force_modulus(const Graph& g, const ChainFamilySpec& spec);

/// Minimum weighted length over the family (admissible iff >= 1).
double verify_admissible(const Graph& g, const MassDistribution& m, const ChainFamilySpec& spec);

/// 1 / sum(1 / mod_k); 0 if any modulus is 0.
double serial_annuli_bound(const std::vector<double>& moduli);

struct AnnulusSpec {
    std::set<Index> vertices;
    DomainSet inner;
    DomainSet outer;
};

/// Validates with is_annulus; `inner` is the component containing `inner_hint`
/// (or the first component when the hint is absent).
AnnulusSpec make_annulus(const Graph& g, const std::set<Index>& vertices, std::optional<Index> inner_hint = {});

/// Modulus of the chains inside the annulus joining the vertices adjacent to
/// the inner domain to those adjacent to the outer one; masses are supported
/// on the annulus. Returned masses are indexed by g.
ModulusResult annulus_modulus(const Graph& g, const AnnulusSpec& a, const ModulusOptions& opts = {});

}  // namespace combmod
