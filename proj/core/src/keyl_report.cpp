#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "combmod/errors.hpp"
#include "combmod/graph_ops.hpp"
#include "combmod/parallel.hpp"
#include "combmod/pipeline.hpp"

namespace combmod {

namespace {

int pow2(int e) { return 1 << e; }

T3Address address_of(const EmbeddedTree& t, Index v) {
    auto a = parse_t3_id(t.graph.id(v));
    if (!a) throw InputError("tree vertex " + t.graph.id(v) + " has no T3 address");
    return *a;
}

const SigmaFace& lower_face(const SigmaGraph& s) {
    if (s.vminus_face < 0) throw InputError("sigma was not built from an open-spine tree");
    return s.faces[static_cast<std::size_t>(s.vminus_face)];
}

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

AkBk ak_bk(const LFunction& L, const EmbeddedTree& tree, const SigmaGraph& sigma, int k) {
    if (k < 1) throw InputError("a_k, b_k need k >= 1");
    if (static_cast<int>(L.floors.size()) < k + 2) throw InputError("L is not tabulated up to eps_{k+1}");
    if (tree.spine_max < k + 1) throw InputError("tree must reach v_{k+1}");
    AkBk r;
    int s_k = 0;
    for (int j = 2; j <= k; ++j) s_k += pow2(L.floors[static_cast<std::size_t>(j)]);
    const int f1 = pow2(L.floors[1]);
    r.a_closed = f1 + 2 * s_k - k + 1;
    r.b_closed = f1 + 2 * (s_k + pow2(L.floors[static_cast<std::size_t>(k) + 1])) - k - 1;

    const auto& f = lower_face(sigma);
    const Index vk = tree.spine_vertex(k);
    r.a_contour = std::numeric_limits<int>::max();
    r.b_contour = std::numeric_limits<int>::min();
    for (int i = 0; i < static_cast<int>(f.corner_vertex.size()); ++i)
        if (f.corner_vertex[static_cast<std::size_t>(i)] == vk) {
            r.a_contour = std::min(r.a_contour, f.column(i));
            r.b_contour = std::max(r.b_contour, f.column(i));
        }
    if (!r.equal())
        throw InvariantError("a_" + std::to_string(k) + ", b_" + std::to_string(k) + " closed form (" +
                             std::to_string(r.a_closed) + ", " + std::to_string(r.b_closed) + ") != contour (" +
                             std::to_string(r.a_contour) + ", " + std::to_string(r.b_contour) + ")");
    return r;
}

int vminus_adjacency_count(const EmbeddedTree& tree, const SigmaGraph& sigma, int l) {
    const auto& f = lower_face(sigma);
    int n = 0;
    for (Index v : f.corner_vertex)
        if (address_of(tree, v).spine == l) ++n;
    return n;
}

std::size_t bk_one_side(const EmbeddedTree& tree, int k) {
    auto it = tree.bsets.find(k);
    if (it == tree.bsets.end()) return 0;
    std::size_t n = 0;
    for (Index v : it->second)
        if (address_of(tree, v).spine == k) ++n;
    return n;
}

AkMasses build_Ak_with_masses(const EmbeddedTree& tree, const SigmaGraph& sigma, const LFunction& L, int k) {
    AkMasses out;
    const auto ab = ak_bk(L, tree, sigma, k);
    out.a = ab.a_closed;
    out.b = ab.b_closed;
    if (sigma.depth < out.b + 2) throw InputError("sigma depth must be at least b_k + 2");
    const int fl = L.floors[static_cast<std::size_t>(k) + 1];
    const auto& g = sigma.graph;
    out.masses = MassDistribution(g.size());

    for (Index v : tree.bsets.at(k)) {
        const Index s = sigma.tree(v);
        const int l = address_of(tree, v).depth();
        out.tree_part.insert(s);
        out.masses[s] = l == 0 ? 2.0 : 1.0 / pow2(l - 1);
    }
    auto plus = [&](int m, int n) {
        const Index v = sigma.at_column(sigma.vplus_face, m, n);
        if (v < 0) throw InputError("sigma's upper grid is too narrow for A_" + std::to_string(k));
        out.vplus.insert(v);
        out.masses[v] = 1.0;
    };
    for (int n = 1; n <= k; ++n) {
        plus(k, n);
        plus(-k, n);
    }
    for (int m = -k; m <= k; ++m) plus(m, k);

    const auto& f = lower_face(sigma);
    const double w = 1.0 / pow2(fl - 1);
    for (int i = 0; i < static_cast<int>(f.corner_vertex.size()); ++i) {
        const int c = std::abs(f.column(i));
        for (int n = 1; n <= sigma.depth; ++n) {
            const int r = std::max(c, n);
            if (r < out.a || r > out.b) continue;
            const Index v = sigma.grid(sigma.vminus_face, i, n);
            out.vminus.insert(v);
            out.masses[v] = w;
        }
    }
    std::set<Index> all = out.tree_part;
    all.insert(out.vplus.begin(), out.vplus.end());
    all.insert(out.vminus.begin(), out.vminus.end());
    const Index v0 = sigma.tree(tree.base);
    try {
        out.annulus = make_annulus(g, all, v0);
    } catch (const InputError&) {
        throw InvariantError("A_" + std::to_string(k) + " is not an annulus");
    }
    if (!out.annulus.inner.contains(v0)) throw InvariantError("v0 is not inside A_" + std::to_string(k));
    return out;
}

double annulus_min_length(const Graph& g, const AnnulusSpec& a, const MassDistribution& m, const std::set<Index>& within) {
    const std::set<Index>& w = within.empty() ? a.vertices : within;
    std::set<Index> near_in, near_out;
    for (Index v : w)
        for (Index x : g.neighbors(v)) {
            if (a.inner.contains(x)) near_in.insert(v);
            if (a.outer.contains(x)) near_out.insert(v);
        }
    if (near_in.empty() || near_out.empty()) return std::numeric_limits<double>::infinity();
    Graph h = induced_subgraph(g, w);
    MassDistribution hm(h.size());
    std::set<Index> ha, hb;
    for (Index v = 0; v < static_cast<Index>(h.size()); ++v) hm[v] = m[g.index(h.id(v))];
    for (Index v : near_in) ha.insert(h.index(g.id(v)));
    for (Index v : near_out) hb.insert(h.index(g.id(v)));
    return shortest_weighted_chain(h, hm, ChainFamilySpec::connect(ha, hb)).length;
}

double tree_domain_modulus(const Graph& tree, Index root, const std::set<Index>& domain) {
    if (!domain.count(root)) throw InputError("domain must contain the root");
    // F(v) = S / (1 + S), S = sum over children; boundary vertices have F = 1.
    std::function<double(Index, Index)> F = [&](Index v, Index parent) -> double {
        double s = 0.0;
        for (Index w : tree.neighbors(v)) {
            if (w == parent) continue;
            s += domain.count(w) ? F(w, v) : 1.0;
        }
        return s / (1.0 + s);
    };
    return F(root, -1);
}

KeyLInputs prepare_keyl(const LFunction& L, const EpsilonTable& eps, int kmax) {
    if (kmax < 1) throw InputError("kmax must be at least 1");
    KeyLInputs in;
    in.L = L;
    in.eps = eps;
    in.kmax = kmax;
    in.tree = build_keyl_tree(L.keyl_floors(kmax + 1));
    int s = 0;
    for (int j = 2; j <= kmax + 1; ++j) s += pow2(L.floors[static_cast<std::size_t>(j)]);
    const int b = pow2(L.floors[1]) + 2 * s - kmax - 1;
    in.sigma = build_sigma(in.tree, b + 2);
    return in;
}

namespace {

struct DomainCheck {
    const KeyLInputs& in;
    std::set<Index> forbidden;  // truncation vertices of the tree
    std::vector<double> eps;
    std::vector<double> Ls;

    // Returns false on a violation of (mod < eps_k) => (|D| > L(eps_k)).
    bool ok(double mod, std::size_t size) const {
        for (std::size_t k = 0; k < eps.size(); ++k)
            if (mod < eps[k] && !(static_cast<double>(size) > Ls[k])) return false;
        return true;
    }
};

void enumerate_subtrees(const Graph& t, const std::set<Index>& forbidden, std::vector<Index>& cur,
                        std::vector<Index>& parent_of, const std::vector<Index>& ext, std::size_t max_size,
                        const std::function<void(const std::vector<Index>&)>& visit) {
    visit(cur);
    if (cur.size() == max_size) return;
    for (std::size_t i = 0; i < ext.size(); ++i) {
        const Index w = ext[i];
        std::vector<Index> next(ext.begin() + static_cast<std::ptrdiff_t>(i) + 1, ext.end());
        for (Index x : t.neighbors(w))
            if (x != parent_of[static_cast<std::size_t>(w)] && !forbidden.count(x)) {
                parent_of[static_cast<std::size_t>(x)] = w;
                next.push_back(x);
            }
        cur.push_back(w);
        enumerate_subtrees(t, forbidden, cur, parent_of, next, max_size, visit);
        cur.pop_back();
    }
}

}  // namespace

KeyLReport verify_keyl(const KeyLInputs& in, const VerifyOptions& opts) {
    KeyLReport rep;
    rep.kmax = in.kmax;
    rep.epa = check_epa(in.L, in.kmax);
    const auto& tree = in.tree;
    const auto& sigma = in.sigma;
    auto fail = [&](std::string s) { rep.failures.push_back(std::move(s)); };

    // Per-annulus records.
    std::vector<AkMasses> ak(static_cast<std::size_t>(in.kmax) + 1);
    rep.records.resize(static_cast<std::size_t>(in.kmax));
    parallel_for(static_cast<std::size_t>(in.kmax), opts.jobs, [&](std::size_t idx) {
        const int k = static_cast<int>(idx) + 1;
        auto& r = rep.records[idx];
        r.k = k;
        r.bk_side = bk_one_side(tree, k);
        r.floor_next = in.L.floors[static_cast<std::size_t>(k) + 1];
        r.akbk = ak_bk(in.L, tree, sigma, k);
        r.adjacency = vminus_adjacency_count(tree, sigma, k);
        auto& a = ak[static_cast<std::size_t>(k)];
        a = build_Ak_with_masses(tree, sigma, in.L, k);
        r.vminus_length = annulus_min_length(sigma.graph, a.annulus, a.masses, a.vminus);
        r.vminus_bound = 4.0 * (1.0 - 1.0 / pow2(r.floor_next));
        r.bk_length = annulus_min_length(sigma.graph, a.annulus, a.masses, a.tree_part);
        r.full_length = annulus_min_length(sigma.graph, a.annulus, a.masses);
        r.rescale = r.full_length > 0 ? std::max(1.0, 1.0 / r.full_length) : std::numeric_limits<double>::infinity();
        r.energy = a.masses.energy();
        r.total = a.masses.total();
        if (opts.with_moduli) {
            ModulusOptions mo;
            mo.tol = opts.tol;
            auto mr = annulus_modulus(sigma.graph, a.annulus, mo);
            r.annulus_mod_lower = mr.lower;
            r.annulus_mod_upper = mr.upper;
        }
    });
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const auto& r : rep.records) {
        const std::string k = std::to_string(r.k);
        if (r.bk_side != static_cast<std::size_t>(pow2(r.floor_next))) fail("|B_" + k + "| per side differs from 2^floor");
        if (r.adjacency != pow2(r.floor_next + 1) - 1) fail("V- adjacency count at B_" + k + " differs from 2^{f+1}-1");
        if (r.vminus_length < r.vminus_bound - 1e-9) fail("V- crossing of A_" + k + " shorter than 4(1-2^-f)");
        if (r.bk_length < 1.0 - 1e-12) fail("B_" + k + "-only crossing shorter than 1");
        rmin = std::min(rmin, r.rescale);
        rmax = std::max(rmax, r.rescale);
    }
    rep.rescale_ratio = rmax / rmin;

    // Least-squares fit of the energy against k.
    {
        double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : rep.records) {
            n += 1;
            sx += r.k;
            sy += r.energy;
            sxx += r.k * r.k;
            sxy += r.k * r.energy;
        }
        const double den = n * sxx - sx * sx;
        rep.fit_alpha = den != 0 ? (n * sxy - sx * sy) / den : 0.0;
        rep.fit_beta = (sy - rep.fit_alpha * sx) / n;
        for (const auto& r : rep.records)
            rep.fit_max_residual = std::max(rep.fit_max_residual,
                                            std::abs(r.energy - (rep.fit_alpha * r.k + rep.fit_beta)) / r.energy);
    }

    // Nesting: A_k disjoint, and each inside the inner domain of the next.
    for (int k = 1; k < in.kmax; ++k) {
        const auto& inner = ak[static_cast<std::size_t>(k) + 1].annulus.inner;
        for (Index v : ak[static_cast<std::size_t>(k)].annulus.vertices)
            if (!inner.contains(v)) {
                rep.separation_ok = false;
                fail("A_" + std::to_string(k + 1) + " does not separate A_" + std::to_string(k) + " from the frontier");
                break;
            }
    }

    if (opts.with_moduli) {
        ModulusOptions mo;
        mo.tol = opts.tol;
        // Chains from v0 that leave the ball bounded by A_kmax cross every
        // annulus, and they are sub-chains of every chain to the frontier;
        // the ball is much smaller than sigma.
        const auto& last = ak.back().annulus;
        std::set<Index> ball(last.inner.members.begin(), last.inner.members.end());
        ball.insert(last.vertices.begin(), last.vertices.end());
        Graph h = induced_subgraph(sigma.graph, ball);
        std::set<Index> exits;
        for (Index v : last.vertices)
            for (Index w : sigma.graph.neighbors(v))
                if (last.outer.contains(w)) exits.insert(h.index(sigma.graph.id(v)));
        const Index v0 = h.index(sigma.graph.id(sigma.tree(tree.base)));
        rep.sigma_mod_upper = modulus(h, ChainFamilySpec::connect({v0}, exits), mo).upper;
        std::vector<double> lows;
        for (const auto& r : rep.records) lows.push_back(r.annulus_mod_lower);
        rep.serial_bound = serial_annuli_bound(lows);
        if (rep.sigma_mod_upper > rep.serial_bound) fail("serial annuli bound is below mod(v0, outside A_kmax)");
    }

    // (E:Me) on domains of the tree.
    DomainCheck chk{in, {}, {}, {}};
    for (Index v : tree.graph.frontier()) chk.forbidden.insert(v);
    for (std::size_t k = 1; k < in.eps.estimate.size(); ++k) {
        chk.eps.push_back(in.eps.estimate[k]);
        chk.Ls.push_back(in.L(in.eps.estimate[k]));
    }
    const Index v0 = tree.base;
    auto as_row = [&](const std::string& family, std::uint64_t seed, const std::set<Index>& d, double mod) {
        DomainRow row{family, seed, d.size(), mod, {}};
        for (Index v : d) row.members.push_back(tree.graph.id(v));
        return row;
    };
    {
        std::vector<Index> cur{v0}, parent_of(tree.graph.size(), -1), ext;
        for (Index x : tree.graph.neighbors(v0))
            if (!chk.forbidden.count(x)) {
                parent_of[static_cast<std::size_t>(x)] = v0;
                ext.push_back(x);
            }
        enumerate_subtrees(tree.graph, chk.forbidden, cur, parent_of, ext, static_cast<std::size_t>(opts.exhaustive_max),
                           [&](const std::vector<Index>& d) {
                               ++rep.exhaustive_domains;
                               std::set<Index> ds(d.begin(), d.end());
                               const double mod = tree_domain_modulus(tree.graph, v0, ds);
                               if (!chk.ok(mod, ds.size()) && rep.violations.size() < 100)
                                   rep.violations.push_back(as_row("exhaustive", 0, ds, mod));
                           });
    }

    std::vector<std::pair<std::string, std::uint64_t>> fams;
    std::vector<std::set<Index>> doms;
    auto admit = [&](const std::set<Index>& d, const std::string& fam, std::uint64_t seed) {
        for (Index v : d)
            if (chk.forbidden.count(v)) return;
        if (boundary(tree.graph, d).empty()) return;
        doms.push_back(d);
        fams.emplace_back(fam, seed);
    };
    auto dist = distance_vector(tree.graph, {v0});
    std::size_t last_size = 0;
    for (int r = 1;; ++r) {
        std::set<Index> d;
        for (Index v = 0; v < static_cast<Index>(tree.graph.size()); ++v)
            if (dist[static_cast<std::size_t>(v)] >= 0 && dist[static_cast<std::size_t>(v)] <= r && !chk.forbidden.count(v))
                d.insert(v);
        auto comps = components(tree.graph, d);
        if (comps.empty()) break;
        std::set<Index> c0(comps[0].members.begin(), comps[0].members.end());
        if (!c0.count(v0) || c0.size() == last_size) break;
        last_size = c0.size();
        admit(c0, "ball", static_cast<std::uint64_t>(r));
    }
    auto sdist = distance_vector(sigma.graph, {sigma.tree(v0)});
    for (int r = 1; r <= sigma.depth; ++r) {
        std::set<Index> d;
        for (Index v = 0; v < static_cast<Index>(tree.graph.size()); ++v)
            if (!chk.forbidden.count(v)) {
                const int sd = sdist[static_cast<std::size_t>(sigma.tree(v))];
                if (sd >= 0 && sd <= r) d.insert(v);
            }
        for (const auto& c : components(tree.graph, d))
            if (c.contains(v0)) admit({c.members.begin(), c.members.end()}, "sigma-ball", static_cast<std::uint64_t>(r));
    }
    std::size_t allowed = tree.graph.size() - chk.forbidden.size();
    if (allowed > 1) {
        const std::size_t lo = std::min<std::size_t>(static_cast<std::size_t>(opts.exhaustive_max) + 1, allowed - 1);
        for (int i = 0; i < opts.samples; ++i) {
            const std::uint64_t seed = mix(opts.seed ^ mix(static_cast<std::uint64_t>(i)));
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::size_t> size_pick(lo, allowed - 1);
            const std::size_t target = size_pick(rng);
            std::set<Index> d{v0};
            while (d.size() < target) {
                std::vector<Index> cand;
                for (Index v : boundary(tree.graph, d))
                    if (!chk.forbidden.count(v)) cand.push_back(v);
                if (cand.empty()) break;
                std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
                d.insert(cand[pick(rng)]);
            }
            admit(d, "random", seed);
        }
    }
    std::vector<double> mods(doms.size());
    std::vector<double> exact(doms.size());
    parallel_for(doms.size(), opts.jobs, [&](std::size_t i) {
        const auto& d = doms[i];
        auto bd = boundary(tree.graph, d);
        std::set<Index> keep = d;
        keep.insert(bd.begin(), bd.end());
        Graph h = induced_subgraph(tree.graph, keep);
        std::set<Index> hb;
        for (Index v : bd) hb.insert(h.index(tree.graph.id(v)));
        ModulusOptions mo;
        mo.tol = opts.tol;
        mods[i] = modulus(h, ChainFamilySpec::connect({h.index(tree.graph.id(v0))}, hb), mo).value;
        exact[i] = tree_domain_modulus(tree.graph, v0, d);
    });
    for (std::size_t i = 0; i < doms.size(); ++i) {
        auto row = as_row(fams[i].first, fams[i].second, doms[i], mods[i]);
        if (std::abs(mods[i] - exact[i]) > 1e-6) fail("solver and tree recursion disagree on a sampled domain");
        if (!chk.ok(mods[i], doms[i].size())) rep.violations.push_back(row);
        row.members.clear();
        rep.samples.push_back(std::move(row));
    }
    rep.sampled_domains = doms.size();
    if (!rep.violations.empty()) fail(std::to_string(rep.violations.size()) + " (E:Me) violation(s)");
    return rep;
}

ExhaustionProfile sigma_type_profile(const EmbeddedTree& tree, const std::vector<int>& radii, int jobs) {
    if (radii.empty()) throw InputError("no radii given");
    const int rmax = *std::max_element(radii.begin(), radii.end());
    if (tree.spine_max < rmax + 1 || -tree.spine_min < rmax + 1)
        throw InputError("the tree's spine must reach beyond the largest radius");
    auto sigma = build_sigma(tree, rmax + 1);
    const Index v0 = sigma.tree(tree.base);
    const auto dist = distance_vector(sigma.graph, {v0});
    for (Index f : sigma.graph.frontier())
        if (dist[static_cast<std::size_t>(f)] <= rmax)
            throw InputError("sigma truncation lies inside the largest ball");
    return exhaustion_profile([&](int r) { return ball(sigma.graph, v0, r); }, sigma.graph.id(v0), radii, 1e-8, jobs);
}

BookReport book_checks(const std::vector<int>& shelves, int height, const std::vector<int>& radii, int jobs) {
    BookReport rep;
    auto bk = build_book_complex(shelves, height);
    auto plain = build_book_complex({}, height);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    auto odd = [&](const BookComplex& b, std::map<int, double>& out) {
        for (const auto& [n, ids] : b.annuli) {
            auto a = make_annulus(b.graph, b.graph.indices_of(ids), b.graph.index(b.base));
            const double v = annulus_modulus(b.graph, a).value;
            out[n] = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    };
    odd(bk, rep.odd_moduli);
    odd(plain, rep.odd_moduli_plain);
    rep.spread = rep.odd_moduli.empty() ? 0.0 : hi - lo;

    rep.radii = radii;
    const int rmax = radii.empty() ? 0 : *std::max_element(radii.begin(), radii.end());
    auto tall = build_book_complex(shelves, std::max(height, rmax + 1));
    auto tall_plain = build_book_complex({}, std::max(height, rmax + 1));
    const Index b0 = tall.graph.index(tall.base), p0 = tall_plain.graph.index(tall_plain.base);
    auto dt = distance_vector(tall.graph, {b0}), dp = distance_vector(tall_plain.graph, {p0});
    for (int r : radii) {
        std::size_t ct = 0, cp = 0;
        for (int d : dt) ct += d >= 0 && d <= r;
        for (int d : dp) cp += d >= 0 && d <= r;
        rep.ball_counts.push_back(ct);
        rep.ball_counts_plain.push_back(cp);
        if (ct < cp) rep.dominates = false;
        bool shelved = false;
        for (std::size_t k = 0; k < shelves.size(); ++k)
            shelved = shelved || (shelves[k] > 0 && static_cast<int>(2 * k + 1) <= r &&
                                  static_cast<int>(2 * k + 1) <= tall.height);
        if (shelved && !(ct > cp)) rep.strict_where_shelved = false;
    }
    if (radii.size() >= 4) {
        rep.profile = exhaustion_profile([&](int r) { return ball(tall.graph, b0, r); }, tall.base, radii, 1e-8, jobs);
        rep.verdict = classify_type(rep.profile);
    } else {
        rep.verdict.basis = "fewer than 4 radii";
    }
    return rep;
}

PipelineReport run_pipeline(const PipelineConfig& config, int jobs) {
    PipelineReport rep;
    rep.config = config;
    rep.eps = estimate_epsilon(config.kmax + 2, config.eps_radii, config.eps_tol, jobs, std::min(config.tol, 1e-9));
    rep.L = choose_L(config, rep.eps);
    auto in = prepare_keyl(rep.L, rep.eps, config.kmax);
    VerifyOptions vo;
    vo.seed = config.seed;
    vo.samples = config.samples;
    vo.exhaustive_max = config.exhaustive_max;
    vo.tol = config.tol;
    vo.jobs = jobs;
    rep.keyl = verify_keyl(in, vo);

    std::vector<int> radii;
    for (int r : config.type_radii)
        if (r + 1 <= in.tree.spine_max) radii.push_back(r);
    if (radii.size() >= 4) {
        rep.sigma_profile = sigma_type_profile(in.tree, radii, jobs);
        rep.sigma_verdict = classify_type(rep.sigma_profile);
    } else {
        rep.sigma_verdict.basis = "fewer than 4 type radii fit inside the KeyL tree";
    }
    rep.book = book_checks(config.book_shelves, config.book_height, config.type_radii, jobs);
    return rep;
}

}  // namespace combmod
