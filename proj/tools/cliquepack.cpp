// cliquepack: k-clique removal process on G(n,p), predictions and packing checks.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cliquepack/cliques.hpp"
#include "cliquepack/config.hpp"
#include "cliquepack/errors.hpp"
#include "cliquepack/experiments.hpp"
#include "cliquepack/graph.hpp"
#include "cliquepack/process.hpp"
#include "cliquepack/report_io.hpp"
#include "cliquepack/theory.hpp"

namespace fs = std::filesystem;
using namespace cliquepack;

namespace {

enum Exit { kOk = 0, kInvalid = 2, kCap = 3, kVerifyFailed = 4 };

struct Common {
    bool json = false;
    bool csv = false;
    std::string out;
};

struct ModelFlags {
    std::uint64_t n = 0;
    double p = 0.5;
    std::optional<unsigned> k;
    std::optional<unsigned> C;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m)
{
    cmd->add_option("--n", m.n, "number of vertices")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
    cmd->add_option("--p", m.p, "edge probability, 0 < p < 1")->check(CLI::Range(0.0, 1.0));
    auto* k = cmd->add_option("--k", m.k, "clique size");
    auto* c = cmd->add_option("--C", m.C, "use k = k0 - C");
    k->excludes(c);
    c->excludes(k);
}

unsigned resolve_k(const ModelFlags& m)
{
    if (!(m.p > 0.0 && m.p < 1.0))
        throw std::invalid_argument("--p must lie strictly between 0 and 1");
    if (m.k.has_value() == m.C.has_value())
        throw std::invalid_argument("give exactly one of --k and --C");
    if (m.k) {
        if (*m.k < 1 || *m.k > m.n)
            throw std::invalid_argument("--k must satisfy 1 <= k <= n");
        return *m.k;
    }
    const unsigned k0 = find_k0(m.n, m.p);
    if (*m.C >= k0)
        throw std::invalid_argument("--C " + std::to_string(*m.C) + " leaves k < 1 (k0 = " + std::to_string(k0) + ")");
    return k0 - *m.C;
}

std::string num(double x)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string out_dir(const Common& c)
{
    if (!c.out.empty())
        return c.out;
    if (const char* env = std::getenv("CLIQUEPACK_OUT"))
        return env;
    return {};
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write " + path.string());
    return os;
}

TheoryParams params_for_graph(const GraphState& g, unsigned k, std::optional<double> p)
{
    const double density = g.n() > 1 ? static_cast<double>(g.edge_count()) / static_cast<double>(pair_count(g.n())) : 0;
    const double q = p.value_or(density);
    if (q > 0.0 && q < 1.0)
        return make_theory_params(g.n(), q, k);
    TheoryParams tp;
    tp.n = g.n();
    tp.p = q;
    tp.k = k;
    tp.log_expected_q0 = q >= 1.0 ? log_binomial(g.n(), k) : -std::numeric_limits<double>::infinity();
    tp.out_of_regime = true;
    return tp;
}

std::string in_file(const std::string& path, const ParseError& e)
{
    const std::string what = e.what();
    const auto cut = what.find(": ");
    return (cut == std::string::npos ? what : what.substr(cut + 2)) + " (" + path + ")";
}

GraphState load_graph(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::invalid_argument("cannot open graph file " + path);
    try {
        return read_edge_list(is);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), in_file(path, e));
    }
}

std::vector<Clique> load_packing(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::invalid_argument("cannot open packing file " + path);
    try {
        return read_packing(is);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), in_file(path, e));
    }
}

// predict

struct PredictFlags {
    ModelFlags model;
    double beta = 0.25;
    double epsilon = 0.5;
};

int cmd_predict(const PredictFlags& f, const Common& c)
{
    const unsigned k = resolve_k(f.model);
    if (!(f.beta >= 0.0 && f.beta <= 0.25))
        throw std::invalid_argument("--beta must lie in [0, 1/4]");
    if (!(f.epsilon > 0.0 && f.epsilon < 1.0))
        throw std::invalid_argument("--epsilon must lie in (0, 1)");
    const std::uint64_t n = f.model.n;
    const double p = f.model.p;
    const TheoryParams tp = make_theory_params(n, p, k);

    Json j{{"version", kVersion},
           {"config", {{"n", n}, {"p", p}, {"k", f.model.k ? Json(*f.model.k) : Json(nullptr)},
                       {"C", f.model.C ? Json(*f.model.C) : Json(nullptr)}, {"beta", f.beta}, {"epsilon", f.epsilon}}},
           {"params", to_json(tp)}};
    std::vector<std::string> warnings;
    if (tp.gamma < 2.0)
        warnings.push_back("gamma = " + num(tp.gamma) + " < 2: out of regime, delta is negative");
    else if (tp.gamma <= 2.0)
        warnings.push_back("gamma = 2: out of regime");
    if (tp.m_star == 0)
        warnings.push_back("m_star = 0: the trajectory guarantee covers no steps at these parameters");

    if (tp.gamma > 2.0) {
        j["heuristic_duration"] = to_json(heuristic_duration(n, p, k));
        const std::size_t steps = std::min<std::size_t>(max_schedule_steps(tp.e0_nominal, k),
                                                        static_cast<std::size_t>(tp.m_star) + 1);
        const auto sched = build_schedule(n, tp.e0_nominal, k, std::exp(tp.log_expected_q0), tp.delta, steps);
        j["nominal_schedule"] = to_json(sched);
        const auto env = check_error_envelope(sched, tp.m_star);
        j["error_envelope"] = {{"skipped", env.skipped}, {"gQ_at_least_floor", env.gq_at_least_floor},
                               {"gQ_below_gY", env.gq_below_gy}, {"gY_below_cap", env.gy_below_cap},
                               {"gY_at_m_star", env.gy_at_m_star}, {"cap", env.cap}};
        j["upper_bound"] = to_json(upper_bound_report(n, p, k, f.beta, f.epsilon));
    }
    j["lower_bound_M"] = p * double(n) * double(n) * std::log(double(n)) / (40.0 * std::pow(double(k), 4));
    j["warnings"] = warnings;

    if (c.json) {
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::cout << kVersion << '\n';
    std::cout << "config: n=" << n << " p=" << num(p) << " k=" << k << " beta=" << num(f.beta)
              << " epsilon=" << num(f.epsilon) << '\n';
    std::cout << "k0 = " << tp.k0 << ", k = " << k << " (k0 - " << (int(tp.k0) - int(k)) << ")\n";
    std::cout << "log E_p(n,k) = " << num(tp.log_expected_q0) << "\n";
    std::cout << "gamma = " << num(tp.gamma) << ", delta = " << num(tp.delta) << ", m_star = " << tp.m_star << '\n';
    std::cout << "lower bound on M: " << num(j["lower_bound_M"].get<double>()) << '\n';
    if (j.contains("heuristic_duration")) {
        std::cout << "heuristic duration: m_conj = " << num(j["heuristic_duration"]["m_conj"].get<double>())
                  << ", m_traj = " << j["heuristic_duration"]["m_traj"].get<std::int64_t>() << '\n';
        const auto& u = j["upper_bound"];
        std::cout << "t0 = " << (u["t0"].is_string() ? std::string("inf") : num(u["t0"].get<double>()))
                  << ", t = " << num(u["t_threshold"].get<double>()) << '\n';
        if (u["bracket_value"].is_number()) {
            std::cout << "first-moment bracket = " << num(u["bracket_value"].get<double>())
                      << " (asymptotic target " << num(u["bracket_target"].get<double>())
                      << ", o(1) term dropped)\n";
            std::cout << "log first-moment bound = " << num(u["log_first_moment"].get<double>()) << '\n';
        } else {
            std::cout << "first-moment bracket undefined: t < 1\n";
        }
    }
    for (const auto& w : warnings)
        std::cout << "warning: " << w << '\n';
    return kOk;
}

// simulate

struct SimulateFlags {
    ModelFlags model;
    std::uint64_t seed = 0;
    unsigned replicas = 1;
    std::optional<std::uint64_t> horizon;
    bool exhaustion = false;
    bool m_star = false;
    unsigned jobs = 1;
    bool paranoid = false;
    std::size_t tracked = 64;
    bool track_all = false;
    std::uint64_t index_cap = kDefaultIndexCap;
    bool no_initial_checks = false;
    bool realized_q0 = false;
    double adherence_max = Tolerances{}.adherence_median_max;
    double initial_slack = Tolerances{}.initial_check_slack;
    double window = 0.5;
};

int cmd_simulate(const SimulateFlags& f, const Common& c)
{
    ExperimentConfig cfg;
    cfg.n = f.model.n;
    cfg.p = f.model.p;
    cfg.k = f.model.k;
    cfg.C = f.model.C;
    cfg.replicas = f.replicas;
    cfg.master_seed = f.seed;
    const int policies = int(f.exhaustion) + int(f.m_star) + int(f.horizon.has_value());
    if (policies > 1)
        throw std::invalid_argument("give at most one of --horizon, --exhaustion, --m-star");
    if (f.horizon) {
        cfg.horizon = HorizonPolicy::fixed;
        cfg.fixed_horizon = *f.horizon;
    } else if (f.m_star) {
        cfg.horizon = HorizonPolicy::m_star;
    } else {
        cfg.horizon = HorizonPolicy::exhaustion;
    }
    cfg.jobs = f.jobs;
    cfg.process.paranoid = f.paranoid;
    cfg.process.tracked_edges = f.tracked;
    cfg.process.track_all_pairs = f.track_all;
    cfg.process.index_cap = f.index_cap;
    cfg.process.seed_qtilde_with_realized = f.realized_q0;
    cfg.run_initial_checks = !f.no_initial_checks;
    cfg.tolerances.adherence_median_max = f.adherence_max;
    cfg.tolerances.initial_check_slack = f.initial_slack;
    cfg.window_fraction = f.window;
    resolve_experiment(cfg);

    const AggregateReport rep = replicate(cfg);

    const std::string dir = out_dir(c);
    if (!dir.empty()) {
        fs::create_directories(dir);
        for (const ReplicaResult& r : rep.replicas) {
            const std::string stem = "replica_" + std::to_string(r.replica);
            {
                auto os = open_out(fs::path(dir) / (stem + ".jsonl"));
                write_trace_jsonl(os, *r.trace);
            }
            {
                auto os = open_out(fs::path(dir) / (stem + ".json"));
                Json s = trace_summary_json(*r.trace);
                s["config"] = to_json(cfg);
                os << s.dump(2) << '\n';
            }
            {
                Rng rng(r.seed);
                auto os = open_out(fs::path(dir) / (stem + ".graph"));
                write_edge_list(os, sample_gnp(cfg.n, cfg.p, rng));
            }
            if (cfg.horizon == HorizonPolicy::exhaustion) {
                std::vector<Clique> cl;
                for (const auto& s : r.trace->records)
                    cl.push_back(s.removed);
                auto os = open_out(fs::path(dir) / (stem + ".packing"));
                write_packing(os, cl);
            }
        }
        {
            auto os = open_out(fs::path(dir) / "aggregate.json");
            os << to_json(rep).dump(2) << '\n';
        }
        {
            auto os = open_out(fs::path(dir) / "replicas.csv");
            write_replica_csv(os, rep);
        }
    }

    if (c.json) {
        std::cout << to_json(rep).dump(2) << '\n';
    } else if (c.csv) {
        write_replica_csv(std::cout, rep);
    } else {
        std::cout << kVersion << '\n';
        std::cout << "config: " << to_json(cfg).dump() << '\n';
        std::cout << "k = " << rep.resolved.k << ", gamma = " << num(rep.resolved.params.gamma)
                  << ", delta = " << num(rep.resolved.params.delta) << ", m_star = " << rep.resolved.params.m_star
                  << '\n';
        for (const auto& w : rep.resolved.warnings)
            std::cout << "warning: " << w << '\n';
        for (const ReplicaResult& r : rep.replicas) {
            std::cout << "replica " << r.replica << ": e0 = " << r.e0 << ", Q0 = " << r.q0 << ", M = " << r.M
                      << ", max|Q/Qt-1| = " << num(r.adherence.max_dev_q);
            if (r.initial)
                std::cout << ", initial checks " << (r.initial->passed ? "pass" : "fail");
            if (r.packing)
                std::cout << ", packing " << (r.packing->ok ? "valid" : "INVALID");
            std::cout << '\n';
        }
        std::cout << "median M = " << num(rep.median_M) << ", median max|Q/Qt-1| = " << num(rep.median_max_dev_q)
                  << " (tolerance " << num(cfg.tolerances.adherence_median_max) << ")\n";
        if (rep.resolved.params.m_star == 0)
            std::cout << "note: m_star = 0, every executed step lies outside the guaranteed window\n";
        if (!dir.empty())
            std::cout << "wrote " << dir << '\n';
    }
    if (rep.partial) {
        std::cerr << "error: replica " << *rep.failed_replica << ": " << rep.failure << '\n';
        return kCap;
    }
    return kOk;
}

// graph

struct GraphFlags {
    std::uint64_t n = 0;
    double p = 0.5;
    std::optional<std::uint64_t> m;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string file;
};

int cmd_graph(const GraphFlags& f, const Common&)
{
    if (f.n < 1)
        throw std::invalid_argument("--n must be at least 1");
    const Seed seed{f.seed, f.stream};
    const GraphState g = f.m ? sample_gnm(f.n, *f.m, seed) : sample_gnp(f.n, f.p, seed);
    if (f.file.empty()) {
        write_edge_list(std::cout, g);
    } else {
        auto os = open_out(f.file);
        write_edge_list(os, g);
    }
    return kOk;
}

// pack

struct PackFlags {
    std::string graph;
    unsigned k = 0;
    std::optional<double> p;
    std::uint64_t seed = 0;
    std::string file;
    std::uint64_t index_cap = kDefaultIndexCap;
};

int cmd_pack(const PackFlags& f, const Common& c)
{
    const GraphState g = load_graph(f.graph);
    if (f.k < 2 || f.k > g.n())
        throw std::invalid_argument("--k must satisfy 2 <= k <= n");
    if (f.p && !(*f.p >= 0.0 && *f.p <= 1.0))
        throw std::invalid_argument("--p must lie in [0, 1]");
    const TheoryParams tp = params_for_graph(g, f.k, f.p);
    Rng rng(Seed{f.seed, 0});
    ProcessOptions opts;
    opts.index_cap = f.index_cap;
    const ExhaustionResult ex = run_to_exhaustion(g, tp, rng, opts);
    const PackingVerification v = verify_packing(g, ex.packing.cliques, f.k);

    if (!f.file.empty()) {
        auto os = open_out(f.file);
        write_packing(os, ex.packing.cliques);
    }
    if (c.json) {
        Json j{{"version", kVersion},
               {"config", {{"graph", f.graph}, {"k", f.k}, {"seed", f.seed}}},
               {"packing", to_json(ex.packing)},
               {"verification", to_json(v)}};
        std::cout << j.dump(2) << '\n';
    } else if (f.file.empty()) {
        write_packing(std::cout, ex.packing.cliques);
    } else {
        std::cout << kVersion << '\n'
                  << "config: graph=" << f.graph << " k=" << f.k << " seed=" << f.seed << '\n'
                  << "M = " << ex.packing.M << ", e0 = " << ex.packing.e0 << ", final edges = "
                  << ex.packing.final_edges << ", final graph " << (ex.packing.final_clique_free ? "is" : "is NOT")
                  << " K_" << f.k << "-free\n";
    }
    return v.ok && ex.packing.final_clique_free ? kOk : kVerifyFailed;
}

// verify

struct VerifyFlags {
    std::string graph;
    std::string packing;
    unsigned k = 0;
};

int cmd_verify(const VerifyFlags& f, const Common& c)
{
    const GraphState g = load_graph(f.graph);
    const auto packing = load_packing(f.packing);
    if (f.k < 1)
        throw std::invalid_argument("--k must be positive");
    const PackingVerification v = verify_packing(g, packing, f.k);
    if (c.json) {
        Json j{{"version", kVersion},
               {"config", {{"graph", f.graph}, {"packing", f.packing}, {"k", f.k}}},
               {"cliques", packing.size()},
               {"verification", to_json(v)}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << kVersion << '\n'
                  << "config: graph=" << f.graph << " packing=" << f.packing << " k=" << f.k << '\n';
        if (v.ok)
            std::cout << "pass: " << packing.size() << " edge-disjoint " << f.k << "-cliques\n";
        else
            std::cout << "fail (" << to_string(v.fault) << "): " << v.message << '\n';
    }
    return v.ok ? kOk : kVerifyFailed;
}

// zeta

struct ZetaFlags {
    std::uint64_t n = 0;
    unsigned k = 0;
    std::optional<unsigned> t;
    std::optional<unsigned> t_max;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double beta = 0.25;
};

int cmd_zeta(const ZetaFlags& f, const Common& c)
{
    if (f.k < 1 || f.k > f.n)
        throw std::invalid_argument("--k must satisfy 1 <= k <= n");
    if (f.t.has_value() == f.t_max.has_value())
        throw std::invalid_argument("give exactly one of --t and --t-max");
    if (f.trials < 1)
        throw std::invalid_argument("--trials must be positive");
    const unsigned lo = f.t ? *f.t : 1;
    const unsigned hi = f.t ? *f.t : *f.t_max;
    if (lo < 1)
        throw std::invalid_argument("t must be at least 1");

    const double nn = static_cast<double>(f.n);
    const double k4 = std::pow(static_cast<double>(f.k), 4);
    Json rows = Json::array();
    for (unsigned t = lo; t <= hi; ++t) {
        const ZetaEstimate z = zeta_monte_carlo(f.n, f.k, t, f.trials, Seed{f.seed, t});
        Json r = to_json(z);
        r["heuristic_log"] = -f.beta * double(t) * double(t) * k4 / (nn * nn);
        r["log_estimate"] = z.estimate > 0 ? Json(std::log(z.estimate)) : Json(nullptr);
        r["exact"] = t == 2 ? Json(exact_zeta2(f.n, f.k).convert_to<double>()) : Json(nullptr);
        rows.push_back(std::move(r));
    }
    const Json cfg{{"n", f.n}, {"k", f.k}, {"t_min", lo}, {"t_max", hi}, {"trials", f.trials},
                   {"seed", f.seed}, {"beta", f.beta}};
    if (c.json) {
        std::cout << Json{{"version", kVersion}, {"config", cfg}, {"estimates", rows}}.dump(2) << '\n';
    } else if (c.csv) {
        std::cout << "# " << kVersion << " config=" << cfg.dump() << '\n';
        std::cout << "t,estimate,stderr,log_estimate,heuristic_log,exact\n";
        for (const auto& r : rows) {
            std::cout << r["t"].get<unsigned>() << ',' << format_double(r["estimate"].get<double>()) << ','
                      << format_double(r["stderr"].get<double>()) << ','
                      << (r["log_estimate"].is_null() ? "" : format_double(r["log_estimate"].get<double>())) << ','
                      << format_double(r["heuristic_log"].get<double>()) << ','
                      << (r["exact"].is_null() ? "" : format_double(r["exact"].get<double>())) << '\n';
        }
    } else {
        std::cout << kVersion << '\n' << "config: " << cfg.dump() << '\n';
        for (const auto& r : rows) {
            std::cout << "t = " << r["t"].get<unsigned>() << ": estimate " << num(r["estimate"].get<double>())
                      << " +- " << num(r["stderr"].get<double>());
            if (!r["exact"].is_null())
                std::cout << ", exact " << num(r["exact"].get<double>());
            std::cout << ", heuristic exp(-beta t^2 k^4 / n^2) = " << num(std::exp(r["heuristic_log"].get<double>()))
                      << '\n';
        }
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"k-clique removal process on G(n,p): predictions, simulation, packings"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--json", common.json, "print JSON");
    app.add_flag("--csv", common.csv, "print CSV where supported");
    app.add_option("--out", common.out, "output directory (default: $CLIQUEPACK_OUT)");

    PredictFlags pf;
    auto* predict = app.add_subcommand("predict", "closed-form predictions for (n, p, k)");
    add_model_flags(predict, pf.model);
    predict->add_option("--beta", pf.beta, "assumed overlap exponent in [0, 1/4]");
    predict->add_option("--epsilon", pf.epsilon, "slack in (0, 1)");

    SimulateFlags sf;
    auto* simulate = app.add_subcommand("simulate", "run the removal process on seeded replicas");
    add_model_flags(simulate, sf.model);
    simulate->add_option("--seed", sf.seed, "master seed");
    simulate->add_option("--replicas", sf.replicas, "number of replicas")->check(CLI::PositiveNumber);
    simulate->add_option("--horizon", sf.horizon, "stop after this many steps");
    simulate->add_flag("--exhaustion", sf.exhaustion, "run until no k-clique is left (default)");
    simulate->add_flag("--m-star", sf.m_star, "run for m_star steps");
    simulate->add_option("--jobs", sf.jobs, "parallel replicas")->check(CLI::PositiveNumber);
    simulate->add_flag("--paranoid", sf.paranoid, "recount Q and every Y_e after each step");
    simulate->add_option("--tracked", sf.tracked, "pairs whose Y_e is recorded each step");
    simulate->add_flag("--track-all", sf.track_all, "record Y_e for every pair");
    simulate->add_option("--index-cap", sf.index_cap, "clique index budget in clique-id references");
    simulate->add_flag("--no-initial-checks", sf.no_initial_checks, "skip the initial-graph checks");
    simulate->add_flag("--realized-q0", sf.realized_q0, "start the trajectory at Q(G0) instead of E_p(n,k)");
    simulate->add_option("--adherence-max", sf.adherence_max, "tolerance on the median max |Q/Qt - 1|");
    simulate->add_option("--initial-slack", sf.initial_slack, "exponent scale for the initial-graph bands");
    simulate->add_option("--window", sf.window, "adherence window as a fraction of e0")->check(CLI::Range(0.0, 1.0));

    GraphFlags gf;
    auto* graph = app.add_subcommand("graph", "sample G(n,p) or G(n,m) as an edge list");
    graph->add_option("--n", gf.n, "number of vertices")->required();
    graph->add_option("--p", gf.p, "edge probability")->check(CLI::Range(0.0, 1.0));
    graph->add_option("--m", gf.m, "exact edge count (G(n,m))");
    graph->add_option("--seed", gf.seed, "master seed");
    graph->add_option("--stream", gf.stream, "stream (replica) id");
    graph->add_option("--file", gf.file, "write here instead of stdout");

    PackFlags kf;
    auto* pack = app.add_subcommand("pack", "run the process to exhaustion on a graph file");
    pack->add_option("--graph", kf.graph, "edge-list file")->required();
    pack->add_option("--k", kf.k, "clique size")->required();
    pack->add_option("--p", kf.p, "p for the trajectory (default: edge density)");
    pack->add_option("--seed", kf.seed, "seed");
    pack->add_option("--file", kf.file, "write the packing here");
    pack->add_option("--index-cap", kf.index_cap, "clique index budget in clique-id references");

    VerifyFlags vf;
    auto* verify = app.add_subcommand("verify", "check a packing against a graph");
    verify->add_option("--graph", vf.graph, "edge-list file")->required();
    verify->add_option("--packing", vf.packing, "packing file")->required();
    verify->add_option("--k", vf.k, "clique size")->required();

    ZetaFlags zf;
    auto* zeta = app.add_subcommand("zeta", "Monte Carlo estimate of zeta(n, k, t)");
    zeta->add_option("--n", zf.n, "number of vertices")->required();
    zeta->add_option("--k", zf.k, "subset size")->required();
    zeta->add_option("--t", zf.t, "number of subsets");
    zeta->add_option("--t-max", zf.t_max, "sweep t = 1..t-max");
    zeta->add_option("--trials", zf.trials, "trials per t");
    zeta->add_option("--seed", zf.seed, "seed");
    zeta->add_option("--beta", zf.beta, "beta for the heuristic curve");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*predict)
            return cmd_predict(pf, common);
        if (*simulate)
            return cmd_simulate(sf, common);
        if (*graph)
            return cmd_graph(gf, common);
        if (*pack)
            return cmd_pack(kf, common);
        if (*verify)
            return cmd_verify(vf, common);
        if (*zeta)
            return cmd_zeta(zf, common);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "; reduce n or raise k, or pass a larger --index-cap\n";
        return kCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kOk;
}
