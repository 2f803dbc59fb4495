#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "combmod/book.hpp"
#include "combmod/errors.hpp"
#include "combmod/graph_ops.hpp"
#include "combmod/json_io.hpp"
#include "combmod/lattice.hpp"
#include "combmod/modulus.hpp"
#include "combmod/pipeline.hpp"
#include "combmod/report_io.hpp"
#include "combmod/sigma.hpp"
#include "combmod/speiser.hpp"
#include "combmod/t3.hpp"
#include "combmod/type_problem.hpp"

#ifndef COMBMOD_VERSION
#define COMBMOD_VERSION "dev"
#endif

namespace combmod::cli {

using nlohmann::json;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Options {
    std::string kind;
    std::string graph, out, csv, from, to, gates, v0, family = "path", lattice = "half-plane", M, config, manifest,
        out_dir;
    bool frontier = false, brute = false, no_moduli = false;
    int radius = 3, depth = 3, width = 5, n = 3, kmax = 6, height = 12, jobs = 1, steps = 0, trials = 0,
        samples = 200, exhaustive_max = 12;
    double C1 = 1.0, tol = 1e-9, eps_tol = 1e-3;
    std::uint64_t seed = 1;
    std::vector<int> radii, floors, shelves;
};

struct Output {
    std::string path;  // empty: the report stream
    std::string content;
};

struct Result {
    std::vector<Output> outputs;
    std::vector<std::string> inputs;
    int code = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw InputError("cannot write " + path);
    o << content;
}

std::vector<std::string> split_ids(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::set<Index> id_set(const Graph& g, const std::string& s, const char* flag) {
    auto ids = split_ids(s);
    if (ids.empty()) throw InputError(std::string(flag) + " needs at least one vertex id");
    std::set<Index> r;
    for (const auto& id : ids) r.insert(g.index(id));
    return r;
}

EmbeddedTree tree_source(const Options& o, std::vector<std::string>& inputs) {
    if (!o.graph.empty()) {
        inputs.push_back(o.graph);
        return embedded_tree_from_graph(load_graph_file(o.graph));
    }
    if (!o.floors.empty()) return build_keyl_tree(o.floors);
    return build_t3_ball(o.radius);
}

Result run_build(const Options& o) {
    Result r;
    Graph g;
    if (o.kind == "t3") {
        g = build_t3_ball(o.radius).graph;
    } else if (o.kind == "keyl") {
        if (o.floors.empty()) throw InputError("build keyl needs --floors");
        g = build_keyl_tree(o.floors).graph;
    } else if (o.kind == "sigma") {
        g = build_sigma(tree_source(o, r.inputs), o.depth).graph;
    } else if (o.kind == "speiser" || o.kind == "extended") {
        auto t = tree_source(o, r.inputs);
        auto s = build_speiser_from_tree(t, alternating_labels(t));
        g = o.kind == "speiser" ? s.graph : build_extended_speiser(s, o.n, o.depth).graph;
    } else if (o.kind == "lattice") {
        if (o.lattice == "half-plane")
            g = build_lattice(LatticeKind::half_plane(), o.depth, o.width);
        else if (o.lattice == "half-cylinder")
            g = build_lattice(LatticeKind::half_cylinder(o.n), o.depth, o.width);
        else
            throw InputError("--lattice must be half-plane or half-cylinder");
    } else if (o.kind == "book") {
        g = build_book_complex(o.shelves, o.height).graph;
    } else {
        throw InputError("unknown build kind '" + o.kind + "'");
    }
    r.outputs.push_back({o.out, dump_graph(g)});
    return r;
}

Result run_modulus(const Options& o) {
    Result r;
    if (o.graph.empty()) throw InputError("modulus needs --graph");
    r.inputs.push_back(o.graph);
    Graph g = load_graph_file(o.graph);
    auto a = id_set(g, o.from, "--from");
    const int chosen = !o.to.empty() + o.frontier + !o.gates.empty();
    if (chosen != 1) throw InputError("give exactly one of --to, --frontier, --gates");
    ChainFamilySpec spec = !o.to.empty()   ? ChainFamilySpec::connect(a, id_set(g, o.to, "--to"))
                           : o.frontier     ? ChainFamilySpec::to_frontier(a)
                                            : ChainFamilySpec::escape_through(a, id_set(g, o.gates, "--gates"));
    ModulusOptions mo;
    mo.tol = o.tol;
    auto res = modulus(g, spec, mo);
    json j = modulus_to_json(g, res);
    if (o.brute) j["brute_force"] = brute_force_modulus(g, spec);
    r.outputs.push_back({o.out, dump_json(j)});
    if (!o.csv.empty()) r.outputs.push_back({o.csv, masses_csv(g, res.masses)});
    return r;
}

Result run_type_profile(const Options& o) {
    Result r;
    std::vector<int> radii = o.radii.empty() ? std::vector<int>{2, 4, 6, 8} : o.radii;
    ExhaustionProfile p;
    Graph host;
    if (o.family == "path") {
        p = exhaustion_profile([](int R) { return build_path(R); }, "p:0", radii, 1e-8, o.jobs);
    } else if (o.family == "grid") {
        p = exhaustion_profile([](int R) { return build_grid_box(R); }, "z:0:0", radii, 1e-8, o.jobs);
    } else if (o.family == "t3") {
        p = exhaustion_profile([](int R) { return build_t3_ball(R).graph; }, T3Address{}.id(), radii, 1e-8, o.jobs);
    } else if (o.family == "keyl") {
        if (o.floors.empty()) throw InputError("--family keyl needs --floors");
        p = sigma_type_profile(build_keyl_tree(o.floors), radii, o.jobs);
    } else if (o.family == "graph") {
        if (o.graph.empty() || o.v0.empty()) throw InputError("--family graph needs --graph and --v0");
        r.inputs.push_back(o.graph);
        host = load_graph_file(o.graph);
        const Index v0 = host.index(o.v0);
        p = exhaustion_profile([&](int R) { return ball(host, v0, R); }, o.v0, radii, 1e-8, o.jobs);
    } else {
        throw InputError("unknown family '" + o.family + "'");
    }
    json j = {{"family", o.family}, {"profile", profile_to_json(p)}};
    j["verdict"] = radii.size() >= 4 ? verdict_to_json(classify_type(p)) : json("fewer than 4 radii");
    if (o.trials > 0) {
        Graph g = o.family == "path"   ? build_path(radii.back())
                  : o.family == "grid" ? build_grid_box(radii.back())
                  : o.family == "t3"   ? build_t3_ball(radii.back()).graph
                  : o.family == "graph" ? ball(host, host.index(o.v0), radii.back())
                                        : Graph{};
        if (g.size() == 0) throw InputError("random walks are not available for this family");
        const Index v0 = o.family == "path" ? g.index("p:0") : o.family == "grid" ? g.index("z:0:0")
                         : o.family == "t3" ? g.index(T3Address{}.id()) : g.index(o.v0);
        j["random_walk"] = returns_to_json(random_walk_returns(g, v0, o.steps > 0 ? o.steps : 1000, o.trials, o.seed, o.jobs));
    }
    r.outputs.push_back({o.out, dump_json(j)});
    if (!o.csv.empty()) r.outputs.push_back({o.csv, profile_csv(p)});
    return r;
}

std::vector<int> eps_radii(const Options& o) { return o.radii.empty() ? std::vector<int>{4, 6, 8, 10} : o.radii; }

Result run_epsilon(const Options& o) {
    Result r;
    auto t = estimate_epsilon(o.kmax, eps_radii(o), o.eps_tol, o.jobs, o.tol);
    r.outputs.push_back({o.out, dump_json(epsilon_to_json(t))});
    return r;
}

PipelineConfig config_from(const Options& o, std::vector<std::string>& inputs) {
    PipelineConfig c;
    if (!o.config.empty()) {
        inputs.push_back(o.config);
        c = load_config(o.config);
    }
    if (!o.M.empty()) {
        inputs.push_back(o.M);
        c.M = parse_m_csv(read_file(o.M));
    }
    return c;
}

Result run_verify_keyl(const Options& o) {
    Result r;
    auto c = config_from(o, r.inputs);
    c.C1 = o.C1;
    if (!(c.C1 > 0)) throw InputError("--C1 must be positive");
    auto eps = estimate_epsilon(o.kmax + 2, eps_radii(o), o.eps_tol, o.jobs, 1e-9);
    LFunction L = o.floors.empty() ? choose_L(c, eps) : l_from_floors(o.floors);
    auto in = prepare_keyl(L, eps, o.kmax);
    VerifyOptions vo;
    vo.seed = o.seed;
    vo.samples = o.samples;
    vo.exhaustive_max = o.exhaustive_max;
    vo.jobs = o.jobs;
    vo.with_moduli = !o.no_moduli;
    auto rep = verify_keyl(in, vo);
    json j = {{"epsilon", epsilon_to_json(eps)}, {"L", l_to_json(L)}, {"C1", c.C1}, {"keyl", keyl_to_json(rep)}};
    r.outputs.push_back({o.out, dump_json(j)});
    if (!o.csv.empty()) r.outputs.push_back({o.csv, keyl_csv(rep, eps)});
    r.code = rep.ok() ? 0 : 3;
    return r;
}

Result run_book_check(const Options& o) {
    Result r;
    std::vector<int> radii = o.radii.empty() ? std::vector<int>{2, 4, 6, 8, 10, 12} : o.radii;
    auto rep = book_checks(o.shelves, o.height, radii, o.jobs);
    r.outputs.push_back({o.out, dump_json(book_to_json(rep))});
    r.code = rep.spread <= 1e-6 && rep.dominates ? 0 : 3;
    return r;
}

Result run_pipeline_cmd(const Options& o, const CLI::App& sub) {
    Result r;
    auto c = config_from(o, r.inputs);
    // Explicit flags override the config file.
    if (sub.count("--C1")) c.C1 = o.C1;
    if (sub.count("--kmax")) c.kmax = o.kmax;
    if (sub.count("--radii")) c.eps_radii = o.radii;
    if (sub.count("--seed")) c.seed = o.seed;
    if (sub.count("--samples")) c.samples = o.samples;
    if (!(c.C1 > 0)) throw InputError("--C1 must be positive");
    auto rep = run_pipeline(c, o.jobs);
    r.outputs.push_back({o.out, dump_json(pipeline_to_json(rep))});
    if (!o.csv.empty()) r.outputs.push_back({o.csv, keyl_csv(rep.keyl, rep.eps)});
    r.code = rep.keyl.ok() ? 0 : 3;
    return r;
}

void add_common(CLI::App* s, Options& o) {
    s->add_option("--out", o.out, "Write the report here (and <out>.manifest.json)");
    s->add_option("--jobs", o.jobs, "Worker threads; never changes the output")->check(CLI::PositiveNumber);
}

struct Parsed {
    std::unique_ptr<CLI::App> app;
    Options opts;
    CLI::App* used = nullptr;
};

std::unique_ptr<CLI::App> make_app(Options& o) {
    auto app = std::make_unique<CLI::App>("combmod: vertex modulus and type evidence for plane graphs", "combmod");
    app->require_subcommand(1);
    app->set_version_flag("--version", COMBMOD_VERSION);

    auto* b = app->add_subcommand("build", "Build a graph family and print its JSON");
    b->add_option("kind", o.kind, "t3|keyl|sigma|speiser|extended|lattice|book")->required();
    b->add_option("--radius", o.radius, "T3 ball radius");
    b->add_option("--floors", o.floors, "KeyL hanging depths per k")->delimiter(',');
    b->add_option("--graph", o.graph, "Plane tree JSON (sigma, speiser, extended)");
    b->add_option("--depth", o.depth, "Grid / lattice depth");
    b->add_option("--width", o.width, "Half-plane width");
    b->add_option("--n", o.n, "Ring size or Speiser threshold n");
    b->add_option("--lattice", o.lattice, "half-plane|half-cylinder");
    b->add_option("--shelves", o.shelves, "Book shelf counts N(k)")->delimiter(',');
    b->add_option("--height", o.height, "Book height");
    add_common(b, o);

    auto* m = app->add_subcommand("modulus", "Vertex modulus of a chain family");
    m->add_option("--graph", o.graph, "Graph JSON")->required();
    m->add_option("--from", o.from, "Source ids, comma separated")->required();
    m->add_option("--to", o.to, "Target ids (Connect)");
    m->add_flag("--frontier", o.frontier, "Chains to the frontier");
    m->add_option("--gates", o.gates, "Gate ids (escape through gates)");
    m->add_option("--tol", o.tol, "Certificate gap");
    m->add_flag("--brute", o.brute, "Also run the brute-force oracle (<= 12 vertices)");
    m->add_option("--csv", o.csv, "Write vertex,mass here");
    add_common(m, o);

    auto* t = app->add_subcommand("type-profile", "Exhaustion profile and type evidence");
    t->add_option("--family", o.family, "path|grid|t3|keyl|graph");
    t->add_option("--radii", o.radii, "Increasing radii")->delimiter(',');
    t->add_option("--floors", o.floors, "KeyL hanging depths")->delimiter(',');
    t->add_option("--graph", o.graph, "Graph JSON for --family graph");
    t->add_option("--v0", o.v0, "Base vertex for --family graph");
    t->add_option("--trials", o.trials, "Random-walk trials at the largest radius");
    t->add_option("--steps", o.steps, "Random-walk steps");
    t->add_option("--seed", o.seed, "Random-walk seed");
    t->add_option("--csv", o.csv, "Write the profile CSV here");
    add_common(t, o);

    auto* e = app->add_subcommand("epsilon-table", "Truncated eps_k on T3 balls");
    e->add_option("--kmax", o.kmax, "Largest k");
    e->add_option("--radii", o.radii, "Ball radii")->delimiter(',');
    e->add_option("--eps-tol", o.eps_tol, "Plateau tolerance");
    e->add_option("--tol", o.tol, "Modulus gap");
    add_common(e, o);

    auto add_keyl_opts = [&](CLI::App* s) {
        s->add_option("--M", o.M, "M table CSV (r,M)");
        s->add_option("--C1", o.C1, "Comparison constant C1 > 0");
        s->add_option("--kmax", o.kmax, "Number of annuli");
        s->add_option("--radii", o.radii, "Radii for eps estimation")->delimiter(',');
        s->add_option("--seed", o.seed, "Domain sampler seed");
        s->add_option("--samples", o.samples, "Random domains");
        s->add_option("--csv", o.csv, "Write the per-k table here");
    };
    auto* v = app->add_subcommand("verify-keyl", "Check the KeyL construction for one L");
    add_keyl_opts(v);
    v->add_option("--floors", o.floors, "floor L(eps_k) for k = 0..kmax+2 (instead of --M)")->delimiter(',');
    v->add_option("--exhaustive-max", o.exhaustive_max, "Largest exhaustively enumerated domain");
    v->add_flag("--no-moduli", o.no_moduli, "Skip annulus moduli and the serial rule (large sigma)");
    add_common(v, o);

    auto* bc = app->add_subcommand("book-check", "Odd annuli and growth of the book surface");
    bc->add_option("--shelves", o.shelves, "N(k)")->delimiter(',');
    bc->add_option("--height", o.height, "Book height");
    bc->add_option("--radii", o.radii, "Ball radii")->delimiter(',');
    add_common(bc, o);

    auto* p = app->add_subcommand("pipeline", "M table -> eps -> L -> tree -> sigma -> KeyL report");
    add_keyl_opts(p);
    p->add_option("--config", o.config, "Pipeline config JSON");
    add_common(p, o);

    auto* r = app->add_subcommand("replay", "Re-run a manifest and compare output digests");
    r->add_option("--manifest", o.manifest, "Manifest written by an earlier run")->required();
    r->add_option("--jobs", o.jobs, "Override the worker count")->check(CLI::PositiveNumber);
    r->add_option("--out-dir", o.out_dir, "Write replayed outputs here instead of the original paths");
    return app;
}

// Only the lines of the subcommand that ran.
std::string used_configuration(const CLI::App& app, const std::string& name) {
    std::istringstream all(app.config_to_str(true, false));
    std::string line, out;
    while (std::getline(all, line))
        if (line.rfind(name + ".", 0) == 0) out += line + "\n";
    return out;
}

// Runs a non-replay command; writes outputs and, with --out, the manifest.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool write_manifest,
        std::vector<Output>* produced) {
    Options o;
    auto app = make_app(o);
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app->parse(rev);
    } catch (const CLI::ParseError& e) {
        const int rc = app->exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }
    CLI::App* sub = app->get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        Result res;
        if (name == "build") res = run_build(o);
        else if (name == "modulus") res = run_modulus(o);
        else if (name == "type-profile") res = run_type_profile(o);
        else if (name == "epsilon-table") res = run_epsilon(o);
        else if (name == "verify-keyl") res = run_verify_keyl(o);
        else if (name == "book-check") res = run_book_check(o);
        else if (name == "pipeline") res = run_pipeline_cmd(o, *sub);
        else if (name == "replay") {
            if (!o.out_dir.empty()) std::filesystem::create_directories(o.out_dir);
            json m = json::parse(read_file(o.manifest));
            for (const auto& in : m.at("inputs"))
                if (fnv1a_hex(read_file(in.at("path").get<std::string>())) != in.at("fnv1a").get<std::string>())
                    throw InputError("input " + in.at("path").get<std::string>() + " changed since the manifest was written");
            std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
            std::vector<std::string> replay;
            for (std::size_t i = 0; i < argv.size(); ++i) {
                if (argv[i] == "--jobs" && i + 1 < argv.size()) {
                    ++i;
                    continue;
                }
                replay.push_back(argv[i]);
                if ((argv[i] == "--out" || argv[i] == "--csv") && i + 1 < argv.size()) {
                    std::string path = argv[++i];
                    if (!o.out_dir.empty()) path = (std::filesystem::path(o.out_dir) / std::filesystem::path(path).filename()).string();
                    replay.push_back(path);
                }
            }
            replay.push_back("--jobs");
            replay.push_back(std::to_string(o.jobs));
            std::vector<Output> outs;
            std::ostringstream sink;
            const int rc = run(replay, sink, err, false, &outs);
            const auto& expected = m.at("outputs");
            bool same = expected.size() == outs.size();
            json rows = json::array();
            for (std::size_t i = 0; i < outs.size(); ++i) {
                const std::string got = fnv1a_hex(outs[i].content);
                const std::string want = i < expected.size() ? expected[i].at("fnv1a").get<std::string>() : "";
                same = same && got == want;
                rows.push_back({{"path", outs[i].path}, {"expected", want}, {"actual", got}});
            }
            out << dump_json({{"manifest", o.manifest}, {"exit_code", rc}, {"identical", same}, {"outputs", rows}});
            return same ? 0 : 3;
        }
        for (const auto& f : res.outputs) {
            if (f.path.empty()) out << f.content;
            else write_file(f.path, f.content);
        }
        if (produced) *produced = res.outputs;
        if (write_manifest && !o.out.empty()) {
            json ins = json::array();
            for (const auto& p : res.inputs) ins.push_back({{"path", p}, {"fnv1a", fnv1a_hex(read_file(p))}});
            json outs = json::array();
            for (const auto& f : res.outputs) outs.push_back({{"path", f.path}, {"fnv1a", fnv1a_hex(f.content)}});
            json manifest = {{"tool", "combmod"},
                             {"version", COMBMOD_VERSION},
                             {"command", name},
                             {"argv", args},
                             {"configuration", used_configuration(*app, name)},
                             {"seed", o.seed},
                             {"inputs", ins},
                             {"outputs", outs},
                             {"exit_code", res.code}};
            write_file(o.out + ".manifest.json", dump_json(manifest));
        }
        return res.code;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << " (bracket [" << e.lower() << ", " << e.upper() << "])\n";
        return 4;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        err << "invariant failure: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run(args, out, err, true, nullptr);
}

}  // namespace combmod::cli
