#include <algorithm>
#include <map>
#include <vector>

#include "combmod/graph_ops.hpp"

namespace combmod {

namespace {

using Colors = std::vector<int>;

// Joint colour refinement of two graphs. Colour ids are ranks of signatures,
// so equal colours mean equal refined classes across both graphs.
void refine(const Graph& a, const Graph& b, Colors& ca, Colors& cb) {
    std::size_t classes = 0;
    for (;;) {
        using Sig = std::pair<int, std::vector<int>>;
        auto sig = [](const Graph& g, const Colors& c, Index v) {
            Sig s{c[static_cast<std::size_t>(v)], {}};
            for (Index w : g.neighbors(v)) s.second.push_back(c[static_cast<std::size_t>(w)]);
            std::sort(s.second.begin(), s.second.end());
            return s;
        };
        std::vector<Sig> sa, sb;
        for (Index v = 0; v < static_cast<Index>(a.size()); ++v) sa.push_back(sig(a, ca, v));
        for (Index v = 0; v < static_cast<Index>(b.size()); ++v) sb.push_back(sig(b, cb, v));
        std::map<Sig, int> rank;
        for (const auto& s : sa) rank.emplace(s, 0);
        for (const auto& s : sb) rank.emplace(s, 0);
        int r = 0;
        for (auto& kv : rank) kv.second = r++;
        for (std::size_t i = 0; i < sa.size(); ++i) ca[i] = rank[sa[i]];
        for (std::size_t i = 0; i < sb.size(); ++i) cb[i] = rank[sb[i]];
        if (rank.size() == classes) return;
        classes = rank.size();
    }
}

bool search(const Graph& a, const Graph& b, Colors ca, Colors cb) {
    refine(a, b, ca, cb);
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;

    std::map<int, int> count;
    for (int c : ca) ++count[c];
    int target = -1;
    for (const auto& [c, n] : count)
        if (n > 1 && (target < 0 || n < count[target])) target = c;

    if (target < 0) {
        std::vector<Index> map_ab(a.size());
        std::map<int, Index> where_b;
        for (Index v = 0; v < static_cast<Index>(b.size()); ++v) where_b[cb[static_cast<std::size_t>(v)]] = v;
        for (Index v = 0; v < static_cast<Index>(a.size()); ++v)
            map_ab[static_cast<std::size_t>(v)] = where_b[ca[static_cast<std::size_t>(v)]];
        for (auto [u, v] : a.edges())
            if (!b.adjacent(map_ab[static_cast<std::size_t>(u)], map_ab[static_cast<std::size_t>(v)])) return false;
        return true;
    }

    Index va = -1;
    for (Index v = 0; v < static_cast<Index>(a.size()); ++v)
        if (ca[static_cast<std::size_t>(v)] == target) {
            va = v;
            break;
        }
    const int fresh = static_cast<int>(a.size() + b.size()) + 1;
    for (Index vb = 0; vb < static_cast<Index>(b.size()); ++vb) {
        if (cb[static_cast<std::size_t>(vb)] != target) continue;
        auto na = ca, nb = cb;
        na[static_cast<std::size_t>(va)] = fresh;
        nb[static_cast<std::size_t>(vb)] = fresh;
        if (search(a, b, std::move(na), std::move(nb))) return true;
    }
    return false;
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    return search(a, b, Colors(a.size(), 0), Colors(b.size(), 0));
}

}  // namespace combmod
