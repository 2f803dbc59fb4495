#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "combmod/errors.hpp"
#include "combmod/modulus.hpp"

namespace combmod {

namespace {

constexpr std::size_t kMaxVertices = 12;
constexpr std::size_t kMaxChains = 2'000'000;

// Minimal chains only: stop at the first target and never revisit the
// source side, since any longer chain contains one of these.
void extend(const Graph& g, const ChainFamilySpec& spec, const std::set<Index>& targets, std::vector<Index>& path,
            std::vector<char>& on_path, std::vector<std::vector<Index>>& out) {
    const Index u = path.back();
    if (targets.count(u)) {
        out.push_back(path);
        if (out.size() > kMaxChains) throw ResourceError("too many chains for brute force");
        return;
    }
    for (Index v : g.neighbors(u)) {
        if (on_path[static_cast<std::size_t>(v)] || spec.a.count(v)) continue;
        on_path[static_cast<std::size_t>(v)] = 1;
        path.push_back(v);
        extend(g, spec, targets, path, on_path, out);
        path.pop_back();
        on_path[static_cast<std::size_t>(v)] = 0;
    }
}

// Active-set polish: given a support estimate S (chains tight at the
// optimum), the min-norm m with A_S m = 1 and the y with A_S^T y = m are
// the KKT pair. Returns a certified (lower, upper) or nothing.
struct Bounds {
    double lower, upper;
};

std::optional<Bounds> polish(const std::vector<std::vector<Index>>& chains, const std::vector<std::size_t>& support,
                             std::size_t n) {
    if (support.empty()) return std::nullopt;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(support.size()), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < support.size(); ++r)
        for (Index v : chains[support[r]]) a(static_cast<Eigen::Index>(r), v) += 1.0;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    const Eigen::VectorXd m = cod.solve(Eigen::VectorXd::Ones(a.rows()));
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> codt(a.transpose());
    Eigen::VectorXd y = codt.solve(m).cwiseMax(0.0);

    const Eigen::VectorXd my = a.transpose() * y;
    const double qy = my.squaredNorm();
    if (!(qy > 0)) return std::nullopt;
    const double lower = y.sum() * y.sum() / qy;
    const Eigen::VectorXd mp = m.cwiseMax(0.0);
    double ell = std::numeric_limits<double>::infinity();
    for (const auto& c : chains) {
        double len = 0.0;
        for (Index v : c) len += mp(v);
        ell = std::min(ell, len);
    }
    if (!(ell > 0)) return std::nullopt;
    return Bounds{lower, mp.squaredNorm() / (ell * ell)};
}

}  // namespace

double brute_force_modulus(const Graph& g, const ChainFamilySpec& spec) {
    if (g.size() > kMaxVertices) throw InputError("brute force is limited to 12 vertices");
    const auto targets = family_targets(g, spec);
    std::vector<std::vector<Index>> chains;
    std::vector<char> on_path(g.size(), 0);
    for (Index a : spec.a) {
        std::vector<Index> path{a};
        on_path[static_cast<std::size_t>(a)] = 1;
        extend(g, spec, targets, path, on_path, chains);
        on_path[static_cast<std::size_t>(a)] = 0;
    }
    if (chains.empty()) return 0.0;

    // Dual: min f(y) = 1/2 |A^T y|^2 - sum y, y >= 0, by accelerated
    // projected gradient with adaptive restart. Stops on the certified gap
    // between s^2/q (any y >= 0) and q / l^2 (rescaled primal).
    const std::size_t n = g.size(), k = chains.size();
    std::vector<double> ones_img(n, 0.0);
    for (const auto& c : chains)
        for (Index v : c) ones_img[static_cast<std::size_t>(v)] += 1.0;
    double lip = 0.0;
    for (const auto& c : chains) {
        double s = 0.0;
        for (Index v : c) s += ones_img[static_cast<std::size_t>(v)];
        lip = std::max(lip, s);
    }
    const double step = 1.0 / lip;

    auto image = [&](const std::vector<double>& y) {
        std::vector<double> m(n, 0.0);
        for (std::size_t p = 0; p < k; ++p)
            for (Index v : chains[p]) m[static_cast<std::size_t>(v)] += y[p];
        return m;
    };
    auto lengths = [&](const std::vector<double>& m) {
        std::vector<double> len(k, 0.0);
        for (std::size_t p = 0; p < k; ++p)
            for (Index v : chains[p]) len[p] += m[static_cast<std::size_t>(v)];
        return len;
    };
    auto objective = [&](const std::vector<double>& y, const std::vector<double>& m) {
        double q = 0.0, s = 0.0;
        for (double x : m) q += x * x;
        for (double x : y) s += x;
        return 0.5 * q - s;
    };

    std::vector<double> y(k, 0.0), z = y, prev = y;
    double theta = 1.0, lower = 0.0, upper = std::numeric_limits<double>::infinity();
    double f_prev = 0.0;
    double polish_at = 1e-2;
    for (long it = 0; it < 5'000'000; ++it) {
        auto mz = image(z);
        auto gz = lengths(mz);
        prev = y;
        for (std::size_t p = 0; p < k; ++p) y[p] = std::max(0.0, z[p] - step * (gz[p] - 1.0));
        auto my = image(y);
        const double f = objective(y, my);

        if (it % 10 == 0) {
            double q = 0.0, s = 0.0;
            for (double x : my) q += x * x;
            for (double x : y) s += x;
            auto len = lengths(my);
            const double ell = *std::min_element(len.begin(), len.end());
            if (q > 0) lower = std::max(lower, s * s / q);
            if (ell > 0) upper = std::min(upper, q / (ell * ell));
            if (upper - lower <= 1e-10) return 0.5 * (upper + lower);
            if (upper - lower <= polish_at) {
                polish_at *= 0.01;
                std::vector<std::size_t> support;
                for (std::size_t p = 0; p < k; ++p)
                    if (y[p] > 1e-9 * s) support.push_back(p);
                if (auto b = polish(chains, support, n)) {
                    lower = std::max(lower, b->lower);
                    upper = std::min(upper, b->upper);
                    if (upper - lower <= 1e-10) return 0.5 * (upper + lower);
                }
            }
        }
        if (f > f_prev) {  // restart momentum
            theta = 1.0;
            z = y;
        } else {
            const double nt = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
            for (std::size_t p = 0; p < k; ++p) z[p] = y[p] + (theta - 1.0) / nt * (y[p] - prev[p]);
            theta = nt;
        }
        f_prev = f;
    }
    throw ResourceError("brute force did not reach 1e-10", lower, upper);
}

}  // namespace combmod
