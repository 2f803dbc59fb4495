#include "combmod/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "combmod/errors.hpp"
#include "combmod/parallel.hpp"

namespace combmod {

EpsilonTable estimate_epsilon(int kmax, const std::vector<int>& radii, double tol, int jobs, double solver_tol) {
    if (kmax < 1) throw InputError("kmax must be at least 1");
    if (radii.empty()) throw InputError("empty radius schedule");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1]) throw InputError("radii must be increasing");
    if (radii.back() <= kmax) throw InputError("the largest radius must exceed kmax");

    EpsilonTable t;
    t.radii = radii;
    t.tol = tol;
    const auto K = static_cast<std::size_t>(kmax) + 1;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    t.upper.assign(K, std::vector<double>(radii.size(), nan));

    std::vector<EmbeddedTree> balls(radii.size());
    parallel_for(radii.size(), jobs, [&](std::size_t i) { balls[i] = build_t3_ball(radii[i]); });
    parallel_for(K * radii.size(), jobs, [&](std::size_t job) {
        const std::size_t k = job / radii.size(), i = job % radii.size();
        if (radii[i] <= static_cast<int>(k)) return;
        const auto& b = balls[i];
        const int kk = static_cast<int>(k);
        auto spec = k == 0 ? ChainFamilySpec::to_frontier({b.base})
                           : ChainFamilySpec::escape_through({b.base}, {b.spine_vertex(kk), b.spine_vertex(-kk)});
        ModulusOptions o;
        o.tol = solver_tol;
        t.upper[k][i] = modulus(b.graph, spec, o).value;
    });

    const double slack = 10 * solver_tol;
    for (std::size_t k = 0; k < K; ++k) {
        double prev = nan, last = nan;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double v = t.upper[k][i];
            if (std::isnan(v)) continue;
            if (!std::isnan(last) && v > last + slack)
                throw InvariantError("eps sequence increased with the radius at k = " + std::to_string(k));
            prev = last;
            last = v;
        }
        t.estimate.push_back(last);
        t.plateau.push_back(!std::isnan(prev) && std::abs(prev - last) < tol);
        if (!(last > 0)) throw InvariantError("eps estimate is not positive at k = " + std::to_string(k));
        if (k > 0 && last > t.estimate[k - 1] + slack)
            throw InvariantError("eps estimates increased with k at k = " + std::to_string(k));
    }
    return t;
}

double MTable::at_log(double log_r) const {
    double best = 1.0;
    bool any = false;
    for (auto [r, m] : rows) {
        if (std::log(r) > log_r) break;
        best = any ? std::max(best, m) : m;
        any = true;
    }
    return best;
}

MTable parse_m_csv(const std::string& text) {
    MTable t;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line == "r,M") continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw InputError("M table rows must be 'r,M': " + line);
        double r, m;
        try {
            std::size_t used;
            r = std::stod(line.substr(0, comma), &used);
            m = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw InputError("M table row is not numeric: " + line);
        }
        if (!(r > 0) || !std::isfinite(m)) throw InputError("M table needs r > 0 and finite M: " + line);
        if (!t.rows.empty() && r <= t.rows.back().first) throw InputError("M table r values must increase strictly");
        t.rows.emplace_back(r, m);
    }
    if (t.rows.empty()) throw InputError("M table is empty");
    return t;
}

double LFunction::operator()(double e) const {
    double best = 1.0;
    for (std::size_t k = 0; k < eps.size(); ++k)
        if (eps[k] >= e) best = std::max(best, values[k]);
    return best;
}

std::vector<int> LFunction::keyl_floors(int kmax) const {
    if (static_cast<int>(floors.size()) < kmax + 2) throw InputError("L is not tabulated up to eps_{kmax+1}");
    return {floors.begin() + 1, floors.begin() + kmax + 2};
}

LFunction l_from_floors(const std::vector<int>& floors) {
    LFunction L;
    for (std::size_t k = 0; k < floors.size(); ++k) {
        if (floors[k] < 1) throw InputError("floors must be at least 1");
        if (k > 0 && floors[k] < floors[k - 1]) throw InputError("floors must be non-decreasing");
        L.eps.push_back(1.0 / static_cast<double>(k + 1));
        L.values.push_back(floors[k]);
        L.floors.push_back(floors[k]);
    }
    return L;
}

namespace {

template <class T>
T get_number(const nlohmann::json& j, const char* key) {
    if (!j.is_number()) throw InputError(std::string("config key '") + key + "' must be a number");
    return j.get<T>();
}

std::vector<int> get_int_list(const nlohmann::json& j, const char* key) {
    if (!j.is_array()) throw InputError(std::string("config key '") + key + "' must be an array");
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InputError(std::string("config key '") + key + "' must hold integers");
        out.push_back(x.get<int>());
    }
    return out;
}

}  // namespace

PipelineConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config must be a JSON object");
    PipelineConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& key = it.key();
        const auto& v = it.value();
        if (key == "M") {
            if (!v.is_array() || v.empty()) throw InputError("config key 'M' must be a non-empty array of [r, M]");
            c.M.rows.clear();
            for (const auto& row : v) {
                if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
                    throw InputError("each M row must be [r, M]");
                const double r = row[0].get<double>(), m = row[1].get<double>();
                if (!(r > 0)) throw InputError("M table needs r > 0");
                if (!c.M.rows.empty() && r == c.M.rows.back().first) throw InputError("duplicate r in M table");
                if (!c.M.rows.empty() && r < c.M.rows.back().first) throw InputError("M table r values must increase");
                c.M.rows.emplace_back(r, m);
            }
        } else if (key == "C1") {
            c.C1 = get_number<double>(v, "C1");
        } else if (key == "kmax") {
            c.kmax = get_number<int>(v, "kmax");
        } else if (key == "eps_radii") {
            c.eps_radii = get_int_list(v, "eps_radii");
        } else if (key == "eps_tol") {
            c.eps_tol = get_number<double>(v, "eps_tol");
        } else if (key == "tol") {
            c.tol = get_number<double>(v, "tol");
        } else if (key == "seed") {
            c.seed = get_number<std::uint64_t>(v, "seed");
        } else if (key == "samples") {
            c.samples = get_number<int>(v, "samples");
        } else if (key == "exhaustive_max") {
            c.exhaustive_max = get_number<int>(v, "exhaustive_max");
        } else if (key == "type_radii") {
            c.type_radii = get_int_list(v, "type_radii");
        } else if (key == "book_shelves") {
            c.book_shelves = get_int_list(v, "book_shelves");
        } else if (key == "book_height") {
            c.book_height = get_number<int>(v, "book_height");
        } else {
            throw InputError("unknown config key '" + key + "'");
        }
    }
    if (!(c.C1 > 0)) throw InputError("C1 must be positive");
    if (c.kmax < 1) throw InputError("kmax must be at least 1");
    if (!(c.tol > 0) || !(c.eps_tol > 0)) throw InputError("tolerances must be positive");
    if (c.exhaustive_max < 1 || c.exhaustive_max > 14) throw InputError("exhaustive_max must be in 1..14");
    if (c.samples < 0) throw InputError("samples must be non-negative");
    return c;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

LFunction choose_L(const PipelineConfig& config, const EpsilonTable& eps) {
    if (!(config.C1 > 0)) throw InputError("C1 must be positive");
    LFunction L;
    double running = 1.0;
    for (std::size_t k = 0; k < eps.estimate.size(); ++k) {
        const double e = eps.estimate[k];
        if (!(e > 0)) throw InputError("eps estimate must be positive");
        const double log_r = 4.0 * std::numbers::pi * config.C1 / e;
        running = std::max({running, config.M.at_log(log_r), 1.0});
        L.eps.push_back(e);
        L.values.push_back(running);
        const double f = std::floor(running);
        if (f > 12) throw ResourceError("floor L(eps_" + std::to_string(k) + ") = " + std::to_string(f) +
                                        " exceeds 12: hanging trees would be too large");
        L.floors.push_back(static_cast<int>(f));
    }
    return L;
}

EpaResult check_epa(const LFunction& L, int kmax) {
    if (kmax < 1) throw InputError("kmax must be at least 1");
    if (static_cast<int>(L.floors.size()) < kmax + 2) throw InputError("L is not tabulated up to eps_{kmax+1}");
    EpaResult best{0, 1, 0};
    std::uint64_t sum = 0;
    for (int k = 1; k <= kmax; ++k) {
        sum += std::uint64_t{1} << L.floors[static_cast<std::size_t>(k)];
        const std::uint64_t den = std::uint64_t{1} << L.floors[static_cast<std::size_t>(k) + 1];
        if (sum * best.den > best.num * den) best = {sum, den, k};
    }
    return best;
}

}  // namespace combmod
