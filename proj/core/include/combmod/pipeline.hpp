#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combmod/book.hpp"
#include "combmod/modulus.hpp"
#include "combmod/sigma.hpp"
#include "combmod/t3.hpp"
#include "combmod/type_problem.hpp"

namespace combmod {

/// Truncated estimates of eps_k = mod of the chains from v0 escaping through
/// v_k or v_-k, on T3 balls. Row k = 0 is the unconstrained v0 -> frontier.
struct EpsilonTable {
    std::vector<int> radii;
    std::vector<std::vector<double>> upper;  // upper[k][i]; NaN where radii[i] <= k
    std::vector<double> estimate;            // last finite upper bound per k
    std::vector<bool> plateau;
    double tol = 0.0;

    int kmax() const { return static_cast<int>(estimate.size()) - 1; }
};

/// Throws InvariantError if a sequence increases with R or the estimates
/// increase with k.
EpsilonTable estimate_epsilon(int kmax, const std::vector<int>& radii, double tol, int jobs = 1,
                              double solver_tol = 1e-9);

/// Prescribed growth r -> M(r), a step function: the running maximum over
/// table entries with r_i <= r, and 1 below the first entry.
struct MTable {
    std::vector<std::pair<double, double>> rows;  // strictly increasing r > 0
    /// M(exp(log_r)); works for astronomically large r.
    double at_log(double log_r) const;
};

MTable parse_m_csv(const std::string& text);

/// Non-increasing step function through (eps_k, L_k), k = 0..K.
struct LFunction {
    std::vector<double> eps;     // breakpoints, non-increasing in k
    std::vector<double> values;  // non-decreasing in k
    std::vector<int> floors;     // floor(values[k])

    /// Largest value among breakpoints eps_k >= e; 1 above eps_0.
    double operator()(double e) const;
    /// Per-k hanging depths for the KeyL tree: floor L(eps_{k+1}), k = 0..kmax.
    std::vector<int> keyl_floors(int kmax) const;
};

/// Direct construction from floor values, e.g. for counting tests.
LFunction l_from_floors(const std::vector<int>& floors);

struct PipelineConfig {
    MTable M{{{1.0, 1.0}}};
    double C1 = 1.0;
    int kmax = 6;
    std::vector<int> eps_radii{4, 6, 8, 10};
    double eps_tol = 1e-3;   // plateau detection
    double tol = 1e-7;       // modulus gap
    std::uint64_t seed = 1;
    int samples = 200;       // sampled (E:Me) domains beyond the exhaustive ones
    int exhaustive_max = 12;
    std::vector<int> type_radii{2, 3, 4, 5, 6, 8, 10, 12};
    std::vector<int> book_shelves{1, 2, 4, 8};
    int book_height = 12;
};

/// JSON config; unknown keys, duplicate or unordered r, C1 <= 0 -> InputError.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& json_text);

/// L(eps) = max{M(exp(4 pi C1 / eps)), 1} at eps_0..eps_K, then made monotone.
/// Floors above 12 raise ResourceError (hanging trees of 2^13 vertices).
LFunction choose_L(const PipelineConfig& config, const EpsilonTable& eps);

struct EpaResult {
    std::uint64_t num = 0;   // max ratio as num / den
    std::uint64_t den = 1;
    int argmax_k = 0;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// max over k <= kmax of (sum_{j<=k} 2^f_j) / 2^f_{k+1}, f_j = floor L(eps_j).
EpaResult check_epa(const LFunction& L, int kmax);

struct AkBk {
    int a_closed = 0, b_closed = 0;
    int a_contour = 0, b_contour = 0;
    bool equal() const { return a_closed == a_contour && b_closed == b_contour; }
};

/// Closed forms from the floors, and the extreme V- columns adjacent to v_k in
/// sigma. The tree must reach v_{k+1}. Throws InvariantError on mismatch.
AkBk ak_bk(const LFunction& L, const EmbeddedTree& tree, const SigmaGraph& sigma, int k);

/// Lower-face corners on the positive side whose tree vertex lies in B_l.
int vminus_adjacency_count(const EmbeddedTree& tree, const SigmaGraph& sigma, int l);

/// Vertices of B_k with non-negative spine index (v_0's tree for k = 0).
std::size_t bk_one_side(const EmbeddedTree& tree, int k);

struct AkMasses {
    AnnulusSpec annulus;
    MassDistribution masses;   // indexed by sigma
    std::set<Index> vminus;    // A_k n V-
    std::set<Index> vplus;     // A_k n V+
    std::set<Index> tree_part; // B_k
    int a = 0, b = 0;
};

/// A_k with the explicit mass assignment: 1 on V+, 1/2^{l-1} at depth l of
/// B_k, 1/2^{f-1} on V- with f = floor L(eps_{k+1}).
AkMasses build_Ak_with_masses(const EmbeddedTree& tree, const SigmaGraph& sigma, const LFunction& L, int k);

/// Shortest weighted crossing of the annulus using only vertices of `within`
/// (all of the annulus when empty).
double annulus_min_length(const Graph& g, const AnnulusSpec& a, const MassDistribution& m,
                          const std::set<Index>& within = {});

/// Exact vertex modulus of {root} -> boundary(D) on a tree domain.
double tree_domain_modulus(const Graph& tree, Index root, const std::set<Index>& domain);

struct DomainRow {
    std::string family;      // exhaustive | ball | sigma-ball | random
    std::uint64_t seed = 0;  // random family only
    std::size_t size = 0;
    double mod = 0.0;
    std::vector<VertexId> members;  // kept for violations and sampled rows
};

struct KeyLRecord {
    int k = 0;
    std::size_t bk_side = 0;
    int floor_next = 0;  // floor L(eps_{k+1})
    AkBk akbk;
    int adjacency = 0;
    double vminus_length = 0.0;   // shortest V- only crossing
    double vminus_bound = 0.0;    // 4 (1 - 2^-f)
    double bk_length = 0.0;       // shortest B_k only crossing (inf if none)
    double full_length = 0.0;     // shortest crossing overall
    double rescale = 1.0;         // max(1, 1 / full_length)
    double energy = 0.0;          // sum m^2 of the annulus-supported masses
    double total = 0.0;           // sum m
    double annulus_mod_lower = 0.0;
    double annulus_mod_upper = 0.0;
};

struct KeyLReport {
    int kmax = 0;
    EpaResult epa;
    std::vector<KeyLRecord> records;
    double rescale_ratio = 1.0;  // max / min rescale over k
    double fit_alpha = 0.0, fit_beta = 0.0, fit_max_residual = 0.0;
    std::size_t exhaustive_domains = 0;
    std::size_t sampled_domains = 0;
    std::vector<DomainRow> samples;
    std::vector<DomainRow> violations;
    double sigma_mod_upper = 0.0;   // v0 -> outside of A_kmax (bounds v0 -> frontier)
    double serial_bound = 0.0;      // from annulus lower bounds
    bool separation_ok = true;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

struct KeyLInputs {
    EmbeddedTree tree;   // built to kmax + 1
    SigmaGraph sigma;    // depth >= b_kmax + 2
    LFunction L;
    EpsilonTable eps;
    int kmax = 0;
};

/// Tree to kmax + 1 and sigma deep enough for A_kmax.
KeyLInputs prepare_keyl(const LFunction& L, const EpsilonTable& eps, int kmax);

struct VerifyOptions {
    std::uint64_t seed = 1;
    int samples = 200;
    int exhaustive_max = 12;
    double tol = 1e-7;
    bool with_moduli = true;  // annulus moduli, serial rule (the slow part)
    int jobs = 1;
};

KeyLReport verify_keyl(const KeyLInputs& in, const VerifyOptions& opts);

struct BookReport {
    std::map<int, double> odd_moduli;              // for the given shelves
    std::map<int, double> odd_moduli_plain;        // N = 0
    double spread = 0.0;                           // max - min over both
    std::vector<int> radii;
    std::vector<std::size_t> ball_counts;
    std::vector<std::size_t> ball_counts_plain;
    bool dominates = true;
    bool strict_where_shelved = true;
    ExhaustionProfile profile;
    TypeVerdict verdict;
};

BookReport book_checks(const std::vector<int>& shelves, int height, const std::vector<int>& radii, int jobs = 1);

/// Profile of sigma(T) balls around v0 for a KeyL tree (sigma depth follows
/// the largest radius).
ExhaustionProfile sigma_type_profile(const EmbeddedTree& tree, const std::vector<int>& radii, int jobs = 1);

struct PipelineReport {
    PipelineConfig config;
    EpsilonTable eps;
    LFunction L;
    KeyLReport keyl;
    ExhaustionProfile sigma_profile;
    TypeVerdict sigma_verdict;
    BookReport book;
};

PipelineReport run_pipeline(const PipelineConfig& config, int jobs = 1);

}  // namespace combmod
