#include "cli.hpp"

#include "twapprox/cvc_approx.hpp"
#include "twapprox/cvc_exact.hpp"
#include "twapprox/errors.hpp"
#include "twapprox/framework.hpp"
#include "twapprox/generator.hpp"
#include "twapprox/instance_io.hpp"
#include "twapprox/oracles.hpp"
#include "twapprox/tss_vds.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace twapprox::cli {

using nlohmann::json;

namespace {

struct Options {
    std::string instance;
    std::string graph;
    std::string td;
    std::string epsilon;
    std::string budget = "auto";
    std::size_t table_cap = 0;
    std::string json_out;
    std::uint64_t seed = 0;
    std::string witness_out;
    // gen
    Vertex n = 10;
    std::int32_t k = 2;
    std::string keep = "1";
    std::string kind = "cvc";
    std::int64_t max_weight = 3;
    std::string out;
    std::string td_out;
    // sweep
    std::int32_t count = 12;
};

struct Loaded {
    WeightedInstance inst;
    TreeDecomposition td;
    NiceTreeDecomposition ntd;
    bool td_given = false;
};

Loaded load(const Options& o) {
    Loaded l;
    l.inst = read_instance_file(o.instance);
    if (!o.td.empty()) {
        std::ifstream in(o.td);
        if (!in) throw InputError("cannot open decomposition file " + o.td);
        l.td = read_pace_td(in);
        l.td_given = true;
    } else {
        l.td = min_fill_decomposition(l.inst.graph);
    }
    l.ntd = make_nice(l.inst.graph, l.td);
    return l;
}

json base_report(const std::string& command, const Loaded& l, const Options& o) {
    json r;
    r["command"] = command;
    r["instance_hash"] = hex64(instance_hash(l.inst));
    r["n"] = l.inst.graph.n();
    r["m"] = l.inst.graph.m();
    r["seed"] = o.seed;
    r["decomposition"] = l.td_given ? "file" : "min-fill";
    r["width"] = l.ntd.width();
    r["root_height"] = l.ntd.root_height();
    return r;
}

void write_witness(const std::string& path, const Graph& g, const Orientation& o, const VertexSet& cover) {
    if (path.empty()) return;
    json w;
    w["cover"] = cover;
    json arcs = json::array();
    for (EdgeId e = 0; e < g.m(); ++e) arcs.push_back({g.edge(e).u, g.edge(e).v, o[e]});
    w["orientation"] = arcs;
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << w.dump() << '\n';
}

void require_kind(const WeightedInstance& inst, ProblemKind kind) {
    if (inst.kind != kind)
        throw InputError("instance is '" + to_string(inst.kind) + "', expected '" + to_string(kind) + "'");
}

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_exact(const Options& o, json& r) {
    auto l = load(o);
    require_kind(l.inst, ProblemKind::CVC);
    r = base_report("solve-cvc-exact", l, o);
    ExactOptions eo;
    if (o.table_cap != 0) eo.table_cap = o.table_cap;
    r["table_cap"] = eo.table_cap;
    ExactSolution sol;
    r["wall_time_s"] = timed([&] { sol = solve_exact(l.inst.graph, l.ntd, l.inst.weight, eo); });
    r["table_sizes"] = sol.table_sizes;
    if (!sol.opt) {
        r["status"] = "infeasible";
        return kNoSolution;
    }
    r["status"] = "ok";
    r["opt"] = *sol.opt;
    r["cover"] = sol.cover;
    write_witness(o.witness_out, l.inst.graph, sol.orientation, sol.cover);
    return kOk;
}

void fill_approx(json& r, const ApproxSolution& sol) {
    r["epsilon"] = to_string(sol.schedule.eps);
    r["epsilon_overridden"] = sol.schedule.overridden;
    r["delta_h0"] = to_string(sol.schedule.delta_root());
    r["delta_h0_approx"] = sol.schedule.delta_root().get_d();
    r["table_sizes"] = sol.table_sizes;
    r["flow_calls"] = sol.flow_calls;
    if (!sol.feasible) {
        r["status"] = "infeasible";
        return;
    }
    r["status"] = "ok";
    r["k_hat_raw"] = sol.raw_min;
    r["k_hat_min"] = to_string(sol.k_hat_min);
    r["k_hat_ceil"] = sol.k_hat_ceil;
    r["opt_lower"] = sol.opt_lower;
    r["witness_size"] = sol.cover.size();
}

int cmd_approx(const Options& o, json& r) {
    auto l = load(o);
    require_kind(l.inst, ProblemKind::CVC);
    r = base_report("solve-cvc-approx", l, o);
    ApproxOptions ao;
    if (!o.epsilon.empty()) ao.epsilon = parse_rational(o.epsilon);
    if (o.table_cap != 0) ao.table_cap = o.table_cap;
    r["table_cap"] = ao.table_cap;
    ApproxSolution sol;
    r["wall_time_s"] = timed([&] { sol = solve_cvc_approx(l.inst.graph, l.ntd, l.inst.weight, ao); });
    fill_approx(r, sol);
    if (!sol.feasible) return kNoSolution;
    r["cover"] = sol.cover;
    write_witness(o.witness_out, l.inst.graph, sol.orientation, sol.cover);
    return kOk;
}

std::int32_t parse_budget(const std::string& s, ProblemKind kind, std::int32_t w, Vertex n) {
    if (s == "auto") {
        if (kind == ProblemKind::TSS) throw InputError("solve-tss needs an explicit --budget C");
        return default_vds_budget(std::max(w, 1), n);
    }
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size() || v < 0) throw InputError("");
        return v;
    } catch (const std::exception&) {
        throw InputError("--budget must be a non-negative integer or 'auto'");
    }
}

json framework_json(const FrameworkResult& fr) {
    json r;
    r["l"] = fr.l;
    r["ratio_bound"] = to_string(fr.ratio_bound);
    r["rounds"] = fr.rounds;
    r["bad_node_heights"] = fr.bad_node_heights;
    if (fr.solution) {
        r["status"] = "ok";
        r["solution"] = *fr.solution;
        r["solution_size"] = fr.solution->size();
    } else {
        r["status"] = "no_solution";
    }
    return r;
}

int cmd_subset(const Options& o, json& r, ProblemKind kind) {
    auto l = load(o);
    require_kind(l.inst, kind);
    const std::string name = kind == ProblemKind::TSS ? "solve-tss" : "solve-vds";
    r = base_report(name, l, o);
    std::int32_t budget = parse_budget(o.budget, kind, l.ntd.width(), l.inst.graph.n());
    TssProblem tss;
    VdsProblem vds;
    const SubsetProblem& prob = kind == ProblemKind::TSS ? static_cast<const SubsetProblem&>(tss) : vds;
    FrameworkResult fr;
    double t = timed([&] { fr = solve_framework(prob, l.inst, l.td, budget); });
    r.update(framework_json(fr));
    r["budget"] = budget;
    r["wall_time_s"] = t;
    if (fr.solution && !prob.is_solution(l.inst, *fr.solution)) throw InternalError("framework output fails the check");
    return fr.solution ? kOk : kNoSolution;
}

int cmd_oracle(const Options& o, json& r) {
    WeightedInstance inst = read_instance_file(o.instance);
    r["command"] = "oracle";
    r["instance_hash"] = hex64(instance_hash(inst));
    r["kind"] = to_string(inst.kind);
    switch (inst.kind) {
    case ProblemKind::CVC: {
        auto opt = cvc_opt_brute(inst.graph, inst.weight);
        if (!opt) {
            r["status"] = "infeasible";
            return kNoSolution;
        }
        r["opt"] = *opt;
        break;
    }
    case ProblemKind::TSS: r["opt"] = tss_opt_brute(inst.graph, inst.weight); break;
    case ProblemKind::VDS: r["opt"] = vds_opt_brute(inst.graph, inst.weight); break;
    }
    r["status"] = "ok";
    return kOk;
}

Rational parse_keep(const std::string& s) {
    Rational keep = parse_rational(s);
    if (keep < 0 || keep > 1) throw InputError("--keep must lie in [0, 1]");
    return keep;
}

WeightedInstance random_instance(const GeneratedGraph& gg, ProblemKind kind, std::int64_t max_weight, Rng& rng) {
    WeightedInstance inst;
    inst.graph = gg.graph;
    inst.kind = kind;
    inst.weight.assign(static_cast<std::size_t>(gg.graph.n()) + 1, 0);
    for (Vertex v = 1; v <= gg.graph.n(); ++v) {
        std::int64_t hi = kind == ProblemKind::CVC ? max_weight : gg.graph.degree(v);
        inst.weight[static_cast<std::size_t>(v)] = rng.uniform(0, hi);
    }
    return inst;
}

int cmd_gen(const Options& o, json& r) {
    Rational keep = parse_keep(o.keep);
    ProblemKind kind = parse_problem_kind(o.kind);
    if (o.max_weight < 0) throw InputError("--max-weight must be non-negative");
    auto gg = generate_partial_ktree(o.n, o.k, keep.get_num().get_si(), keep.get_den().get_si(), o.seed);
    Rng rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    auto inst = random_instance(gg, kind, o.max_weight, rng);
    r["command"] = "gen";
    r["seed"] = o.seed;
    r["n"] = gg.graph.n();
    r["k"] = o.k;
    r["keep"] = to_string(keep);
    r["edges"] = gg.graph.m();
    r["width"] = gg.td.width();
    r["td_valid"] = validate(gg.graph, gg.td).empty();
    r["instance_hash"] = hex64(instance_hash(inst));
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw InputError("cannot write " + o.out);
        write_instance(f, inst);
    }
    if (!o.td_out.empty()) {
        std::ofstream f(o.td_out);
        if (!f) throw InputError("cannot write " + o.td_out);
        write_pace_td(f, gg.td, gg.graph.n());
    }
    return kOk;
}

int cmd_validate(const Options& o, json& r) {
    WeightedInstance inst = read_instance_file(o.instance);
    std::ifstream in(o.td);
    if (!in) throw InputError("cannot open decomposition file " + o.td);
    TreeDecomposition td = read_pace_td(in);
    auto bad = validate(inst.graph, td);
    r["command"] = "validate-td";
    r["valid"] = bad.empty();
    r["width"] = td.width();
    json v = json::array();
    for (const auto& b : bad) v.push_back(b.message);
    r["violations"] = v;
    return bad.empty() ? kOk : kInputError;
}

int cmd_nice(const Options& o, json& r) {
    auto l = load(o);
    r = base_report("nice-td", l, o);
    r["nodes"] = l.ntd.size();
    json nodes = json::array();
    for (NodeId a = 0; a < l.ntd.size(); ++a) {
        const auto& nd = l.ntd.node(a);
        nodes.push_back({{"id", a},
                         {"kind", to_string(nd.kind)},
                         {"vertex", nd.vertex},
                         {"bag", nd.bag},
                         {"children", nd.children},
                         {"height", nd.height}});
    }
    r["nice"] = nodes;
    auto issues = l.ntd.check_nice();
    r["well_formed"] = issues.empty();
    if (!issues.empty()) throw InternalError("nicification produced: " + issues.front());
    return kOk;
}

json sweep_run(std::int32_t index, Rng& rng) {
    const Vertex n = static_cast<Vertex>(rng.uniform(6, 12));
    const auto k = static_cast<std::int32_t>(rng.uniform(1, 3));
    const bool half = rng.chance(1, 2);
    const std::uint64_t gseed = rng.next();
    auto gg = generate_partial_ktree(n, k, 1, half ? 2 : 1, gseed);
    json run;
    run["index"] = index;
    run["graph_seed"] = gseed;
    run["n"] = n;
    run["k"] = k;
    run["keep"] = half ? "1/2" : "1";
    run["edges"] = gg.graph.m();
    auto ntd = make_nice(gg.graph, gg.td);
    run["nice_width"] = ntd.width();
    run["root_height"] = ntd.root_height();

    auto cvc = random_instance(gg, ProblemKind::CVC, 3, rng);
    json c;
    c["instance_hash"] = hex64(instance_hash(cvc));
    auto ex = solve_exact(cvc.graph, ntd, cvc.weight);
    auto oracle = cvc_opt_brute(cvc.graph, cvc.weight);
    c["exact"] = ex.opt ? json(*ex.opt) : json("infeasible");
    c["oracle"] = oracle ? json(*oracle) : json("infeasible");
    auto ap = solve_cvc_approx(cvc.graph, ntd, cvc.weight);
    json a;
    fill_approx(a, ap);
    c["approx"] = a;
    run["cvc"] = c;

    for (ProblemKind kind : {ProblemKind::TSS, ProblemKind::VDS}) {
        auto inst = random_instance(gg, kind, 0, rng);
        TssProblem tss;
        VdsProblem vds;
        const SubsetProblem& prob = kind == ProblemKind::TSS ? static_cast<const SubsetProblem&>(tss) : vds;
        json s;
        s["instance_hash"] = hex64(instance_hash(inst));
        s["oracle"] = kind == ProblemKind::TSS ? tss_opt_brute(inst.graph, inst.weight)
                                               : vds_opt_brute(inst.graph, inst.weight);
        s["framework"] = framework_json(solve_framework(prob, inst, gg.td, 2));
        run[to_string(kind)] = s;
    }
    return run;
}

int cmd_sweep(const Options& o, json& r) {
    if (o.count < 1) throw InputError("--count must be positive");
    Rng rng(o.seed);
    r["command"] = "sweep";
    r["seed"] = o.seed;
    r["count"] = o.count;
    json runs = json::array();
    for (std::int32_t i = 0; i < o.count; ++i) runs.push_back(sweep_run(i, rng));
    r["runs"] = runs;
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Treewidth-parameterized solvers for capacitated vertex cover, target set selection and vector "
                 "dominating set",
                 "twapprox"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--json", o.json_out, "also write the report to this file");
        s->add_option("--seed", o.seed, "seed recorded in the report");
    };
    auto add_solver = [&](CLI::App* s) {
        s->add_option("instance", o.instance, "instance file")->required();
        s->add_option("--td", o.td, "PACE .td decomposition (default: min-fill)");
        add_common(s);
    };

    auto* exact = app.add_subcommand("solve-cvc-exact", "exact record-set DP");
    add_solver(exact);
    exact->add_option("--table-cap", o.table_cap, "max entries per table");
    exact->add_option("--emit-witness", o.witness_out, "write cover and orientation as JSON");

    auto* approx = app.add_subcommand("solve-cvc-approx", "rounded record-set DP");
    add_solver(approx);
    approx->add_option("--epsilon", o.epsilon, "rational epsilon override, e.g. 1/1000");
    approx->add_option("--table-cap", o.table_cap, "max entries per table");
    approx->add_option("--emit-witness", o.witness_out, "write cover and orientation as JSON");

    auto* tss = app.add_subcommand("solve-tss", "framework approximation for target set selection");
    add_solver(tss);
    tss->add_option("--budget", o.budget, "partial-solution budget C");

    auto* vds = app.add_subcommand("solve-vds", "framework approximation for vector dominating set");
    add_solver(vds);
    vds->add_option("--budget", o.budget, "budget l or 'auto'");

    auto* oracle = app.add_subcommand("oracle", "brute-force optimum");
    oracle->add_option("instance", o.instance, "instance file")->required();
    add_common(oracle);

    auto* gen = app.add_subcommand("gen", "random partial k-tree instance");
    gen->add_option("--n", o.n, "vertex count")->required();
    gen->add_option("--k", o.k, "k-tree parameter")->required();
    gen->add_option("--keep", o.keep, "edge keep probability, decimal or p/q");
    gen->add_option("--kind", o.kind, "cvc, tss or vds");
    gen->add_option("--max-weight", o.max_weight, "capacity range [0, max] for cvc");
    gen->add_option("--out", o.out, "instance output file");
    gen->add_option("--td-out", o.td_out, "decomposition output file");
    add_common(gen);

    auto* vtd = app.add_subcommand("validate-td", "check a decomposition against an instance");
    vtd->add_option("instance", o.instance, "instance file")->required();
    vtd->add_option("td", o.td, "PACE .td file")->required();
    add_common(vtd);

    auto* nice = app.add_subcommand("nice-td", "print the nice decomposition");
    add_solver(nice);

    auto* sweep = app.add_subcommand("sweep", "deterministic experiment sweep");
    sweep->add_option("--count", o.count, "number of generated instances");
    add_common(sweep);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kInputError;
    }

    json r;
    int code = kOk;
    try {
        if (exact->parsed()) code = cmd_exact(o, r);
        else if (approx->parsed()) code = cmd_approx(o, r);
        else if (tss->parsed()) code = cmd_subset(o, r, ProblemKind::TSS);
        else if (vds->parsed()) code = cmd_subset(o, r, ProblemKind::VDS);
        else if (oracle->parsed()) code = cmd_oracle(o, r);
        else if (gen->parsed()) code = cmd_gen(o, r);
        else if (vtd->parsed()) code = cmd_validate(o, r);
        else if (nice->parsed()) code = cmd_nice(o, r);
        else if (sweep->parsed()) code = cmd_sweep(o, r);
    } catch (const InputError& e) {
        r = {{"status", "input_error"}, {"message", e.what()}};
        code = kInputError;
    } catch (const ConfigError& e) {
        r = {{"status", "config_error"}, {"message", e.what()}};
        code = kInputError;
    } catch (const ResourceError& e) {
        r = {{"status", "resource_limit"}, {"message", e.what()}};
        code = kResource;
    } catch (const std::exception& e) {
        r = {{"status", "internal_error"}, {"message", e.what()}};
        code = kInternal;
    }
    if (code != kOk && code != kNoSolution) err << "error: " << r.value("message", "") << '\n';

    const std::string text = r.dump();
    out << text << '\n';
    if (!o.json_out.empty()) {
        std::ofstream f(o.json_out);
        if (!f) {
            err << "error: cannot write " << o.json_out << '\n';
            return kInputError;
        }
        f << text << '\n';
    }
    return code;
}

} // namespace twapprox::cli
