#include "combmod/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace combmod {

using nlohmann::json;

namespace {

// Non-finite values become null rather than invalid JSON.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json nums(const std::vector<double>& xs) {
    json a = json::array();
    for (double x : xs) a.push_back(num(x));
    return a;
}

}  // namespace

json modulus_to_json(const Graph& g, const ModulusResult& r) {
    json masses = json::object();
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v)
        if (r.masses.m.size() == g.size() && r.masses[v] != 0.0) masses[g.id(v)] = r.masses[v];
    return {{"value", num(r.value)},   {"upper", num(r.upper)},         {"lower", num(r.lower)},
            {"gap", num(r.gap)},       {"iterations", r.iterations},    {"constraints_used", r.constraints_used},
            {"exact", r.exact},        {"masses", masses}};
}

std::string masses_csv(const Graph& g, const MassDistribution& m) {
    std::ostringstream os;
    os << "vertex,mass\n";
    char buf[64];
    for (Index v = 0; v < static_cast<Index>(g.size()); ++v) {
        std::snprintf(buf, sizeof buf, "%.17g", m.m.empty() ? 0.0 : m[v]);
        os << g.id(v) << ',' << buf << '\n';
    }
    return os.str();
}

json profile_to_json(const ExhaustionProfile& p) {
    return {{"radii", p.radii}, {"modulus_upper", nums(p.modulus_upper)}, {"resistance", nums(p.resistance)},
            {"vertices", p.counts}};
}

json verdict_to_json(const TypeVerdict& v) {
    return {{"verdict", v.name()},
            {"basis", v.basis},
            {"policy", {{"min_increment", v.policy.min_increment}, {"eps", v.policy.eps}, {"plateau_tol", v.policy.plateau_tol}}},
            {"relative_growth", num(v.relative_growth)},
            {"min_step", num(v.min_step)},
            {"last_modulus", num(v.last_modulus)}};
}

json returns_to_json(const ReturnEstimate& e) {
    return {{"trials", e.trials},        {"returned", e.returned}, {"frequency", e.frequency},
            {"wilson_lower", e.lower},   {"wilson_upper", e.upper}, {"mean_returns", e.mean_returns}};
}

json epsilon_to_json(const EpsilonTable& t) {
    json rows = json::array();
    for (std::size_t k = 0; k < t.estimate.size(); ++k)
        rows.push_back({{"k", k}, {"upper", nums(t.upper[k])}, {"estimate", num(t.estimate[k])}, {"plateau", static_cast<bool>(t.plateau[k])}});
    return {{"radii", t.radii}, {"tol", t.tol}, {"rows", rows}};
}

json l_to_json(const LFunction& L) {
    return {{"eps", nums(L.eps)}, {"values", nums(L.values)}, {"floors", L.floors}};
}

json config_to_json(const PipelineConfig& c) {
    json m = json::array();
    for (auto [r, v] : c.M.rows) m.push_back({r, v});
    return {{"M", m},
            {"C1", c.C1},
            {"kmax", c.kmax},
            {"eps_radii", c.eps_radii},
            {"eps_tol", c.eps_tol},
            {"tol", c.tol},
            {"seed", c.seed},
            {"samples", c.samples},
            {"exhaustive_max", c.exhaustive_max},
            {"type_radii", c.type_radii},
            {"book_shelves", c.book_shelves},
            {"book_height", c.book_height}};
}

json keyl_to_json(const KeyLReport& r) {
    json recs = json::array();
    for (const auto& x : r.records)
        recs.push_back({{"k", x.k},
                        {"bk_per_side", x.bk_side},
                        {"floor_L_next", x.floor_next},
                        {"a_closed", x.akbk.a_closed},
                        {"b_closed", x.akbk.b_closed},
                        {"a_contour", x.akbk.a_contour},
                        {"b_contour", x.akbk.b_contour},
                        {"ak_bk_equal", x.akbk.equal()},
                        {"vminus_adjacent", x.adjacency},
                        {"vminus_length", num(x.vminus_length)},
                        {"vminus_bound", num(x.vminus_bound)},
                        {"bk_length", num(x.bk_length)},
                        {"full_length", num(x.full_length)},
                        {"rescale", num(x.rescale)},
                        {"energy", num(x.energy)},
                        {"total_mass", num(x.total)},
                        {"annulus_mod_lower", num(x.annulus_mod_lower)},
                        {"annulus_mod_upper", num(x.annulus_mod_upper)}});
    auto rows = [](const std::vector<DomainRow>& v) {
        json a = json::array();
        for (const auto& d : v) {
            json o = {{"family", d.family}, {"size", d.size}, {"mod", num(d.mod)}};
            if (d.family == "random") o["seed"] = d.seed;
            if (!d.members.empty()) o["members"] = d.members;
            a.push_back(o);
        }
        return a;
    };
    return {{"kmax", r.kmax},
            {"epa", {{"num", r.epa.num}, {"den", r.epa.den}, {"value", r.epa.value()}, {"k", r.epa.argmax_k}}},
            {"records", recs},
            {"rescale_ratio", num(r.rescale_ratio)},
            {"mass_fit", {{"alpha", num(r.fit_alpha)}, {"beta", num(r.fit_beta)}, {"max_relative_residual", num(r.fit_max_residual)}}},
            {"exhaustive_domains", r.exhaustive_domains},
            {"sampled_domains", r.sampled_domains},
            {"samples", rows(r.samples)},
            {"violations", rows(r.violations)},
            {"sigma_mod_upper", num(r.sigma_mod_upper)},
            {"serial_bound", num(r.serial_bound)},
            {"separation_ok", r.separation_ok},
            {"failures", r.failures},
            {"ok", r.ok()}};
}

json book_to_json(const BookReport& r) {
    auto mods = [](const std::map<int, double>& m) {
        json o = json::object();
        for (auto [n, v] : m) o[std::to_string(n)] = v;
        return o;
    };
    return {{"odd_moduli", mods(r.odd_moduli)},
            {"odd_moduli_plain", mods(r.odd_moduli_plain)},
            {"spread", r.spread},
            {"radii", r.radii},
            {"ball_counts", r.ball_counts},
            {"ball_counts_plain", r.ball_counts_plain},
            {"dominates", r.dominates},
            {"strict_where_shelved", r.strict_where_shelved},
            {"profile", profile_to_json(r.profile)},
            {"verdict", verdict_to_json(r.verdict)}};
}

json pipeline_to_json(const PipelineReport& r) {
    return {{"config", config_to_json(r.config)},
            {"epsilon", epsilon_to_json(r.eps)},
            {"L", l_to_json(r.L)},
            {"keyl", keyl_to_json(r.keyl)},
            {"sigma_profile", profile_to_json(r.sigma_profile)},
            {"sigma_verdict", verdict_to_json(r.sigma_verdict)},
            {"book", book_to_json(r.book)}};
}

std::string keyl_csv(const KeyLReport& r, const EpsilonTable& eps) {
    std::ostringstream os;
    os << "k,eps_hat,floorL,Bk,ak_closed,ak_contour,bk_closed,bk_contour,adm_margin,total_mass\n";
    char buf[256];
    for (const auto& x : r.records) {
        const double e = static_cast<std::size_t>(x.k) < eps.estimate.size() ? eps.estimate[static_cast<std::size_t>(x.k)] : NAN;
        std::snprintf(buf, sizeof buf, "%d,%.12g,%d,%zu,%d,%d,%d,%d,%.12g,%.12g\n", x.k, e, x.floor_next, x.bk_side,
                      x.akbk.a_closed, x.akbk.a_contour, x.akbk.b_closed, x.akbk.b_contour, x.full_length - 1.0, x.energy);
        os << buf;
    }
    return os.str();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace combmod
