#pragma once

// Plane trees with bounded degree, one per orientation-preserving
// isomorphism class, from Dyck words. Independent of the library.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

struct PlaneTree {
    // rot[v]: neighbours in counter-clockwise order.
    std::vector<std::vector<int>> rot;
    int edges() const { return static_cast<int>(rot.size()) - 1; }
};

inline PlaneTree tree_from_dyck(const std::string& w) {
    PlaneTree t;
    t.rot.emplace_back();
    std::vector<int> stack{0};
    for (char c : w) {
        if (c == '(') {
            const int v = static_cast<int>(t.rot.size());
            t.rot.push_back({stack.back()});
            t.rot[static_cast<std::size_t>(stack.back())].push_back(v);
            stack.push_back(v);
        } else {
            stack.pop_back();
        }
    }
    return t;
}

/// Dyck word of the contour walk that starts along dart (v, rot[v][i]).
inline std::string contour_from(const PlaneTree& t, int v, std::size_t i) {
    std::string w;
    std::set<std::pair<int, int>> used;
    std::size_t slot = i;
    const std::size_t steps = 2 * static_cast<std::size_t>(t.edges());
    for (std::size_t s = 0; s < steps; ++s) {
        const auto& r = t.rot[static_cast<std::size_t>(v)];
        const int u = r[slot];
        const auto e = std::minmax(v, u);
        w += used.insert(e).second ? '(' : ')';
        // Next dart: at u, the neighbour after v in ccw order.
        const auto& ru = t.rot[static_cast<std::size_t>(u)];
        const auto pos = static_cast<std::size_t>(std::find(ru.begin(), ru.end(), v) - ru.begin());
        slot = (pos + 1) % ru.size();
        v = u;
    }
    return w;
}

inline std::string canonical_plane_word(const PlaneTree& t) {
    std::string best;
    for (std::size_t v = 0; v < t.rot.size(); ++v)
        for (std::size_t i = 0; i < t.rot[v].size(); ++i) {
            auto w = contour_from(t, static_cast<int>(v), i);
            if (best.empty() || w < best) best = w;
        }
    return best;
}

/// All plane trees with 1..max_edges edges and every degree <= max_degree.
inline std::vector<PlaneTree> plane_trees(int max_edges, int max_degree) {
    std::vector<PlaneTree> out;
    std::set<std::string> seen;
    std::function<void(std::string&, int, int, int)> gen = [&](std::string& w, int open, int close, int n) {
        if (close == n) {
            auto t = tree_from_dyck(w);
            for (const auto& r : t.rot)
                if (static_cast<int>(r.size()) > max_degree) return;
            if (seen.insert(canonical_plane_word(t)).second) out.push_back(std::move(t));
            return;
        }
        if (open < n) {
            w.push_back('(');
            gen(w, open + 1, close, n);
            w.pop_back();
        }
        if (close < open) {
            w.push_back(')');
            gen(w, open, close + 1, n);
            w.pop_back();
        }
    };
    for (int n = 1; n <= max_edges; ++n) {
        std::string w;
        gen(w, 0, 0, n);
    }
    return out;
}

}  // namespace testsupport
