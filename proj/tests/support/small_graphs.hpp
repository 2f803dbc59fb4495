#pragma once

// Independent enumeration of small graphs up to isomorphism, for oracles.
// Graphs are adjacency bitmasks; no library code is used here.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace testsupport {

struct SmallGraph {
    int n = 0;
    std::vector<std::uint32_t> adj;  // adj[i] bit j <=> edge ij

    bool edge(int i, int j) const { return (adj[static_cast<std::size_t>(i)] >> j) & 1u; }
    int degree(int i) const { return __builtin_popcount(adj[static_cast<std::size_t>(i)]); }

    bool connected() const {
        if (n == 0) return true;
        std::uint32_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint32_t next = 0;
            for (int i = 0; i < n; ++i)
                if ((frontier >> i) & 1u) next |= adj[static_cast<std::size_t>(i)];
            frontier = next & ~seen;
            seen |= next;
        }
        return seen == (n == 32 ? ~0u : ((1u << n) - 1));
    }
};

/// Upper-triangle bit string under a vertex order; the max over all orders
/// that respect the (iterated) degree classes is a canonical form.
inline std::vector<std::uint64_t> canonical_code(const SmallGraph& g) {
    const int n = g.n;
    // Two rounds of degree refinement give the class key.
    std::vector<std::uint64_t> key(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) key[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(g.degree(i));
    for (int round = 0; round < 2; ++round) {
        std::vector<std::uint64_t> next(key.size());
        for (int i = 0; i < n; ++i) {
            std::vector<std::uint64_t> nb;
            for (int j = 0; j < n; ++j)
                if (g.edge(i, j)) nb.push_back(key[static_cast<std::size_t>(j)]);
            std::sort(nb.begin(), nb.end());
            std::uint64_t h = key[static_cast<std::size_t>(i)] * 1000003u;
            for (auto x : nb) h = h * 31u + x + 7u;
            next[static_cast<std::size_t>(i)] = h;
        }
        key = next;
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
    });
    // Blocks of equal key; permute within blocks only.
    std::vector<std::pair<int, int>> blocks;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && key[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] ==
                            key[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
            ++j;
        blocks.push_back({i, j});
        i = j;
    }
    std::uint64_t best = 0;
    auto code = [&]() {
        std::uint64_t c = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                c = (c << 1) | (g.edge(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]) ? 1u : 0u);
        return c;
    };
    auto rec = [&](auto&& self, std::size_t b) -> void {
        if (b == blocks.size()) {
            best = std::max(best, code());
            return;
        }
        auto first = order.begin() + blocks[b].first;
        auto last = order.begin() + blocks[b].second;
        std::sort(first, last);
        do {
            self(self, b + 1);
        } while (std::next_permutation(first, last));
    };
    rec(rec, 0);
    // Prefix with the sorted class keys so that equal codes imply equal classes.
    std::vector<std::uint64_t> out;
    for (int v : order) out.push_back(key[static_cast<std::size_t>(v)]);
    std::sort(out.begin(), out.end());
    out.push_back(best);
    return out;
}

/// All graphs (not necessarily connected) on n vertices, one per iso class.
inline std::vector<SmallGraph> all_graphs(int n) {
    std::vector<SmallGraph> level{SmallGraph{0, {}}};
    for (int k = 1; k <= n; ++k) {
        std::set<std::vector<std::uint64_t>> seen;
        std::vector<SmallGraph> next;
        for (const auto& g : level)
            for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
                SmallGraph h{k, g.adj};
                h.adj.push_back(mask);
                for (int i = 0; i < g.n; ++i)
                    if ((mask >> i) & 1u) h.adj[static_cast<std::size_t>(i)] |= 1u << g.n;
                if (seen.insert(canonical_code(h)).second) next.push_back(std::move(h));
            }
        level = std::move(next);
    }
    return level;
}

inline std::vector<SmallGraph> connected_graphs(int n) {
    std::vector<SmallGraph> out;
    for (auto& g : all_graphs(n))
        if (g.connected()) out.push_back(std::move(g));
    return out;
}

}  // namespace testsupport
