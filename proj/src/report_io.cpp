#include "cliquepack/report_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cliquepack/config.hpp"
#include "cliquepack/errors.hpp"

namespace cliquepack {

namespace {

template <class T>
Json opt(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

Json opt_edge(const std::optional<Edge>& e) { return e ? to_json(*e) : Json(nullptr); }

Json linear(double log_value)
{
    const double x = std::exp(log_value);
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

} // namespace

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json to_json(const Edge& e) { return Json::array({e.u, e.v}); }

Json to_json(const Clique& c) { return Json(c.vertices); }

Json to_json(const Seed& s) { return Json{{"master", s.master}, {"stream", s.stream}}; }

Json to_json(const Tolerances& t)
{
    return Json{{"ratio_band_lo", t.ratio_band_lo},
                {"ratio_band_hi", t.ratio_band_hi},
                {"ai_max_slack_exponent", t.ai_max_slack_exponent},
                {"adherence_median_max", t.adherence_median_max},
                {"initial_check_slack", t.initial_check_slack}};
}

Json to_json(const TheoryParams& tp)
{
    return Json{{"n", tp.n},
                {"p", tp.p},
                {"k", tp.k},
                {"k0", tp.k0},
                {"gamma", tp.gamma},
                {"delta", tp.delta},
                {"m_star", tp.m_star},
                {"e0_nominal", tp.e0_nominal},
                {"log_expected_q0", tp.log_expected_q0},
                {"expected_q0", linear(tp.log_expected_q0)},
                {"out_of_regime", tp.out_of_regime},
                {"log", kLogConvention}};
}

Json to_json(const TrajectorySchedule& s)
{
    Json j{{"n", s.n}, {"k", s.k}, {"e0", s.e0}, {"delta", s.delta}, {"m_max", s.m_max},
           {"truncated", s.truncated}};
    if (!s.q_tilde.empty()) {
        j["Qtilde0"] = s.q_tilde.front();
        j["Ytilde0"] = s.y_tilde.front();
        j["gQ0"] = s.g_q.front();
        j["gY0"] = s.g_y.front();
        j["Qtilde_last"] = s.q_tilde.back();
        j["gY_last"] = s.g_y.back();
    }
    return j;
}

Json to_json(const StoppingTime& t) { return Json{{"first_exit", opt(t.first_exit)}, {"tau", opt(t.tau)}}; }

Json to_json(const StoppingReport& r)
{
    return Json{{"m_star", r.m_star},
                {"degenerate_horizon", r.degenerate_horizon},
                {"initial_checks_passed", opt(r.initial_checks_passed)},
                {"tau_Q_plus", to_json(r.q_plus)},
                {"tau_Q_minus", to_json(r.q_minus)},
                {"tau_Y_plus", to_json(r.y_plus)},
                {"tau_Y_minus", to_json(r.y_minus)},
                {"tau_Q", to_json(r.q)},
                {"tau_Y", to_json(r.y)},
                {"tau", opt(r.tau)},
                {"first_violating_edge", opt_edge(r.first_violating_edge)},
                {"exit_beyond_m_star", r.exit_beyond_m_star},
                {"schedule_exhausted", r.schedule_exhausted}};
}

Json to_json(const PackingResult& r)
{
    Json cliques = Json::array();
    for (const Clique& c : r.cliques)
        cliques.push_back(to_json(c));
    return Json{{"M", r.M},
                {"e0", r.e0},
                {"final_edges", r.final_edges},
                {"final_clique_free", r.final_clique_free},
                {"cliques", std::move(cliques)}};
}

Json to_json(const PackingVerification& v)
{
    return Json{{"ok", v.ok},
                {"fault", to_string(v.fault)},
                {"clique", v.ok ? Json(nullptr) : Json(v.clique)},
                {"other_clique", opt(v.other_clique)},
                {"witness", opt_edge(v.witness)},
                {"message", v.message}};
}

Json to_json(const CheckItem& c)
{
    return Json{{"skipped", c.skipped}, {"passed", c.passed}, {"value", c.value}, {"bound", c.bound},
                {"examined", c.examined}};
}

Json to_json(const InitialChecksReport& r)
{
    return Json{{"edges", to_json(r.edges)},
                {"cliques", to_json(r.cliques)},
                {"pair_counts", to_json(r.pair_counts)},
                {"triple_counts", to_json(r.triple_counts)},
                {"pair_min_rel", r.pair_min_rel},
                {"pair_max_rel", r.pair_max_rel},
                {"slack", r.slack},
                {"passed", r.passed}};
}

Json to_json(const ExperimentConfig& c)
{
    return Json{{"n", c.n},
                {"p", c.p},
                {"k", opt(c.k)},
                {"C", opt(c.C)},
                {"replicas", c.replicas},
                {"master_seed", c.master_seed},
                {"horizon", to_string(c.horizon)},
                {"fixed_horizon", c.fixed_horizon},
                {"window_fraction", c.window_fraction},
                {"run_initial_checks", c.run_initial_checks},
                {"observe_y", c.process.observe_y},
                {"tracked_edges", c.process.tracked_edges},
                {"track_all_pairs", c.process.track_all_pairs},
                {"paranoid", c.process.paranoid},
                {"index_cap", c.process.index_cap},
                {"seed_qtilde_with_realized", c.process.seed_qtilde_with_realized},
                {"tolerances", to_json(c.tolerances)}};
}

Json to_json(const AdherenceStats& a)
{
    return Json{{"window_steps", a.window_steps},
                {"window_clipped", a.window_clipped},
                {"max_dev_Q", a.max_dev_q},
                {"max_dev_Y", a.y_observed ? Json(a.max_dev_y) : Json(nullptr)},
                {"Q_in_band_before_m_star", a.q_in_band_before_m_star},
                {"Y_in_band_before_m_star", a.y_in_band_before_m_star}};
}

Json to_json(const ReplicaResult& r)
{
    Json j{{"replica", r.replica},
           {"seed", to_json(r.seed)},
           {"e0", r.e0},
           {"Q0", r.q0},
           {"M", r.M},
           {"exhausted", r.exhausted},
           {"adherence", to_json(r.adherence)},
           {"initial_checks", r.initial ? to_json(*r.initial) : Json(nullptr)},
           {"stopping", to_json(r.stopping)},
           {"packing", r.packing ? to_json(*r.packing) : Json(nullptr)},
           {"final_clique_free", opt(r.final_clique_free)},
           {"meets_lower_bound", r.meets_lower_bound}};
    return j;
}

Json to_json(const AggregateReport& r)
{
    Json reps = Json::array();
    for (const ReplicaResult& x : r.replicas)
        reps.push_back(to_json(x));
    return Json{{"version", r.version},
                {"config", to_json(r.config)},
                {"k", r.resolved.k},
                {"params", to_json(r.resolved.params)},
                {"warnings", r.resolved.warnings},
                {"M_values", r.M_values},
                {"median_M", r.median_M},
                {"median_max_dev_Q", r.median_max_dev_q},
                {"median_max_dev_Y", r.median_max_dev_y},
                {"adherence_threshold", r.config.tolerances.adherence_median_max},
                {"adherence_within_tolerance", r.adherence_within_tolerance},
                {"init_checks_run", r.init_checks_run},
                {"init_checks_passed", r.init_checks_passed},
                {"Q_band_fraction", r.q_band_fraction},
                {"Y_band_fraction", r.y_band_fraction},
                {"theorem_lower_bound", r.theorem_lower_bound},
                {"all_packings_valid", r.all_packings_valid},
                {"partial", r.partial},
                {"failed_replica", opt(r.failed_replica)},
                {"failure", r.failure},
                {"replicas", std::move(reps)}};
}

Json to_json(const UpperBoundReport& r)
{
    return Json{{"t0", std::isfinite(r.t0) ? Json(r.t0) : Json("inf")},
                {"beta", r.beta},
                {"epsilon", r.epsilon},
                {"t_threshold", r.t_threshold},
                {"log_first_moment", r.log_first_moment},
                {"first_moment", linear(r.log_first_moment)},
                {"bracket_value", r.bracket_value},
                {"bracket_target", r.bracket_target},
                {"o1_dropped", r.o1_dropped}};
}

Json to_json(const HeuristicDuration& h) { return Json{{"m_conj", h.m_conj}, {"m_traj", h.m_traj}}; }

Json to_json(const ZetaEstimate& z)
{
    return Json{{"n", z.n},
                {"k", z.k},
                {"t", z.t},
                {"trials", z.trials},
                {"successes", z.successes},
                {"estimate", z.estimate},
                {"stderr", z.std_error}};
}

Json step_json(const StepRecord& r)
{
    Json j;
    j["m"] = r.m;
    j["e"] = r.e;
    j["Q"] = r.q;
    j["Qtilde"] = opt(r.q_tilde);
    j["gQ"] = opt(r.g_q);
    j["Ymin"] = r.y_observed ? Json(r.y_min) : Json(nullptr);
    j["Ymax"] = r.y_observed ? Json(r.y_max) : Json(nullptr);
    j["Ybar"] = r.y_observed ? Json(r.y_bar) : Json(nullptr);
    j["Ytilde"] = opt(r.y_tilde);
    j["gY"] = opt(r.g_y);
    j["destroyed"] = r.destroyed;
    j["removed_vertices"] = r.removed.vertices;
    return j;
}

void write_trace_jsonl(std::ostream& os, const ProcessTrace& trace)
{
    for (const StepRecord& r : trace.records)
        os << step_json(r).dump() << '\n';
}

Json trace_summary_json(const ProcessTrace& trace)
{
    Json tracked = Json::array();
    for (const Edge& e : trace.tracked_edges)
        tracked.push_back(to_json(e));
    return Json{{"version", kVersion},
                {"params", to_json(trace.params)},
                {"seed", to_json(trace.seed)},
                {"schedule", to_json(trace.schedule)},
                {"initial", step_json(trace.initial)},
                {"M", trace.M},
                {"exhausted", trace.exhausted},
                {"final_edges", trace.final_graph.edge_count()},
                {"tracked_edges", std::move(tracked)},
                {"stopping", to_json(trace.stopping)}};
}

void write_replica_csv(std::ostream& os, const AggregateReport& r)
{
    os << "# " << r.version << " config=" << to_json(r.config).dump() << '\n';
    os << "replica,seed,M,max_dev_Q,max_dev_Y,init_checks_passed\n";
    for (const ReplicaResult& x : r.replicas) {
        os << x.replica << ',' << x.seed.master << ':' << x.seed.stream << ',' << x.M << ','
           << format_double(x.adherence.max_dev_q) << ','
           << (x.adherence.y_observed ? format_double(x.adherence.max_dev_y) : "") << ','
           << (x.initial ? (x.initial->passed ? "1" : "0") : "") << '\n';
    }
}

void write_packing(std::ostream& os, const std::vector<Clique>& packing)
{
    for (const Clique& c : packing) {
        for (std::size_t i = 0; i < c.vertices.size(); ++i)
            os << (i ? " " : "") << c.vertices[i];
        os << '\n';
    }
}

std::vector<Clique> read_packing(std::istream& is)
{
    std::vector<Clique> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        std::string tok;
        Clique c;
        while (fields >> tok) {
            std::uint64_t v = 0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() ||
                v > std::numeric_limits<Vertex>::max())
                throw ParseError(lineno, "\"" + tok + "\" is not a vertex id");
            c.vertices.push_back(static_cast<Vertex>(v));
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace cliquepack
