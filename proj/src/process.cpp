#include "cliquepack/process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "cliquepack/errors.hpp"

namespace cliquepack {

namespace {

constexpr std::uint64_t kTrackSalt = 0x7472'6163'6b65'6421ULL;

std::string edge_str(Edge e) { return "{" + std::to_string(e.u) + ", " + std::to_string(e.v) + "}"; }

std::vector<Edge> choose_tracked(std::size_t n, const ProcessOptions& opts, Seed seed)
{
    std::vector<Edge> out;
    const std::uint64_t total = pair_count(n);
    if (opts.track_all_pairs) {
        out.reserve(total);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                out.emplace_back(u, v);
        return out;
    }
    const std::uint64_t want = std::min<std::uint64_t>(opts.tracked_edges, total);
    Rng rng(Seed{seed.master ^ kTrackSalt, seed.stream});
    std::unordered_set<std::uint64_t> chosen;
    std::vector<std::uint64_t> picks;
    while (picks.size() < want) {
        const std::uint64_t idx = rng.below(total);
        if (chosen.insert(idx).second)
            picks.push_back(idx);
    }
    std::sort(picks.begin(), picks.end());
    for (std::uint64_t idx : picks)
        out.push_back(pair_from_index(n, idx));
    return out;
}

void observe(StepRecord& rec, const GraphState& g, const CliqueIndex& index,
             const TrajectorySchedule& schedule, const std::vector<Edge>& tracked, bool observe_y)
{
    rec.e = g.edge_count();
    rec.q = index.live_count();
    if (rec.m < schedule.size()) {
        rec.q_tilde = schedule.q_tilde[rec.m];
        rec.g_q = schedule.g_q[rec.m];
        rec.y_tilde = schedule.y_tilde[rec.m];
        rec.g_y = schedule.g_y[rec.m];
    }
    if (!observe_y)
        return;
    rec.y_observed = true;
    bool first = true;
    for (Vertex u = 0; u < g.n(); ++u) {
        const auto r = g.row(u);
        for (std::size_t w = (u + 1) / kWordBits; w < r.size(); ++w) {
            Word bits = r[w];
            if (w == (u + 1) / kWordBits)
                bits &= ~Word{0} << ((u + 1) % kWordBits);
            while (bits != 0) {
                const auto v = static_cast<Vertex>(w * kWordBits + std::countr_zero(bits));
                bits &= bits - 1;
                const Edge e(u, v);
                const std::uint64_t y = index.y(e);
                rec.y_sum += y;
                if (first || y < rec.y_min) {
                    rec.y_min = y;
                    rec.y_min_edge = e;
                }
                if (first || y > rec.y_max) {
                    rec.y_max = y;
                    rec.y_max_edge = e;
                }
                first = false;
            }
        }
    }
    rec.y_bar = rec.e > 0 ? static_cast<double>(rec.y_sum) / static_cast<double>(rec.e) : 0.0;
    if (rec.y_sum != choose2(index.k()) * rec.q)
        throw ContractViolation("sum of Y_e over current edges (" + std::to_string(rec.y_sum) +
                                ") != C(k,2) Q (" + std::to_string(choose2(index.k()) * rec.q) +
                                ") at m = " + std::to_string(rec.m));
    rec.tracked_y.reserve(tracked.size());
    rec.tracked_is_edge.reserve(tracked.size());
    for (const Edge& e : tracked) {
        const bool present = g.has_edge(e.u, e.v);
        rec.tracked_y.push_back(present ? index.y(e) : y_edge(g, index.k(), e));
        rec.tracked_is_edge.push_back(present);
    }
}

void paranoid_recount(const GraphState& g, const CliqueIndex& index, std::uint64_t m)
{
    g.validate();
    index.check_invariants();
    const unsigned k = index.k();
    const std::uint64_t q = count_cliques(g, k);
    if (q != index.live_count())
        throw ContractViolation("recount Q = " + std::to_string(q) + " but index holds " +
                                std::to_string(index.live_count()) + " at m = " + std::to_string(m));
    for (const Edge& e : g.edges()) {
        const std::uint64_t y = y_edge(g, k, e);
        if (y != index.y(e))
            throw ContractViolation("recount Y" + edge_str(e) + " = " + std::to_string(y) +
                                    " but index holds " + std::to_string(index.y(e)) +
                                    " at m = " + std::to_string(m));
    }
}

std::uint64_t sum_y_over_triples(const GraphState& g, unsigned k, const std::vector<Vertex>& K)
{
    std::uint64_t total = 0;
    for (std::size_t a = 0; a < K.size(); ++a)
        for (std::size_t b = a + 1; b < K.size(); ++b)
            for (std::size_t c = b + 1; c < K.size(); ++c)
                total += y_set(g, k, {K[a], K[b], K[c]});
    return total;
}

struct ExitScan {
    std::optional<std::int64_t> first;
    std::optional<Edge> edge;

    void hit(std::int64_t m, std::optional<Edge> e = std::nullopt)
    {
        if (!first) {
            first = m;
            edge = e;
        }
    }
};

StoppingTime cap_time(std::optional<std::int64_t> first_exit, std::int64_t m_star, std::int64_t last_m)
{
    StoppingTime t;
    t.first_exit = first_exit;
    if (first_exit)
        t.tau = std::min(m_star, *first_exit);
    else if (last_m >= m_star)
        t.tau = m_star;
    return t;
}

std::optional<std::int64_t> earlier(std::optional<std::int64_t> a, std::optional<std::int64_t> b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return std::min(*a, *b);
}

StoppingReport detect(const ProcessTrace& trace, const TrajectorySchedule& schedule,
                      std::optional<bool> initial_ok, bool allow_short)
{
    const std::uint64_t last = trace.last_m();
    StoppingReport r;
    if (schedule.size() < last + 1) {
        if (!allow_short)
            throw std::invalid_argument("detect_stopping_times: schedule covers " +
                                        std::to_string(schedule.size()) + " states, trace has " +
                                        std::to_string(last + 1));
        r.schedule_exhausted = true;
    }
    r.m_star = trace.params.m_star;
    r.degenerate_horizon = r.m_star == 0;
    r.initial_checks_passed = initial_ok;

    ExitScan qp, qm, yp, ym;
    const std::uint64_t covered = std::min<std::uint64_t>(last + 1, schedule.size());
    for (std::uint64_t m = 0; m < covered; ++m) {
        const StepRecord& s = trace.state(m);
        const auto mi = static_cast<std::int64_t>(m);
        const double q = static_cast<double>(s.q);
        if (q > (1.0 + schedule.g_q[m]) * schedule.q_tilde[m])
            qp.hit(mi);
        if (q < (1.0 - schedule.g_q[m]) * schedule.q_tilde[m])
            qm.hit(mi);
        if (s.y_observed && s.e > 0) {
            if (static_cast<double>(s.y_max) > (1.0 + schedule.g_y[m]) * schedule.y_tilde[m])
                yp.hit(mi, s.y_max_edge);
            if (static_cast<double>(s.y_min) < (1.0 - schedule.g_y[m]) * schedule.y_tilde[m])
                ym.hit(mi, s.y_min_edge);
        }
    }
    const auto scanned_to = static_cast<std::int64_t>(covered) - 1;
    r.q_plus = cap_time(qp.first, r.m_star, scanned_to);
    r.q_minus = cap_time(qm.first, r.m_star, scanned_to);
    r.y_plus = cap_time(yp.first, r.m_star, scanned_to);
    r.y_minus = cap_time(ym.first, r.m_star, scanned_to);
    r.q = cap_time(earlier(qp.first, qm.first), r.m_star, scanned_to);
    r.y = cap_time(earlier(yp.first, ym.first), r.m_star, scanned_to);

    if (yp.first && (!ym.first || *yp.first <= *ym.first))
        r.first_violating_edge = yp.edge;
    else if (ym.first)
        r.first_violating_edge = ym.edge;

    for (const auto* x : {&qp, &qm, &yp, &ym})
        if (x->first && *x->first > r.m_star)
            r.exit_beyond_m_star = true;

    if (initial_ok && !*initial_ok)
        r.tau = 0;
    else
        r.tau = earlier(r.q.tau, r.y.tau);
    return r;
}

} // namespace

ProcessTrace run_removal_process(const GraphState& g0, const TheoryParams& params, std::uint64_t horizon,
                                 Rng& rng, const ProcessOptions& opts)
{
    const unsigned k = params.k;
    if (k < 2)
        throw std::invalid_argument("run_removal_process: k must be at least 2");
    if (params.n != g0.n())
        throw std::invalid_argument("run_removal_process: params.n = " + std::to_string(params.n) +
                                    " but the graph has " + std::to_string(g0.n()) + " vertices");

    CliqueIndex index = CliqueIndex::build(g0, k, opts.index_cap);

    ProcessTrace trace;
    trace.params = params;
    trace.seed = rng.seed();
    const auto e0 = static_cast<double>(g0.edge_count());
    if (e0 > 0) {
        const double q0 = opts.seed_qtilde_with_realized ? static_cast<double>(index.live_count())
                                                         : std::exp(params.log_expected_q0);
        trace.schedule = build_schedule(g0.n(), e0, k, q0, params.delta, max_schedule_steps(e0, k));
    } else {
        trace.schedule.n = g0.n();
        trace.schedule.k = k;
        trace.schedule.delta = params.delta;
    }
    trace.tracked_edges = choose_tracked(g0.n(), opts, rng.seed());

    GraphState g = g0;
    trace.initial.m = 0;
    observe(trace.initial, g, index, trace.schedule, trace.tracked_edges, opts.observe_y);
    if (opts.paranoid)
        paranoid_recount(g, index, 0);

    const std::uint64_t c = choose2(k);
    for (std::uint64_t m = 1; m <= horizon; ++m) {
        const auto id = index.sample(rng);
        if (!id)
            break;
        StepRecord rec;
        rec.m = m;
        rec.removed = index.clique(*id);
        const auto& K = rec.removed.vertices;

        std::uint64_t y_sum_k = 0;
        for (std::size_t a = 0; a < K.size(); ++a)
            for (std::size_t b = a + 1; b < K.size(); ++b)
                y_sum_k += index.y(Edge(K[a], K[b]));
        rec.y_over_removed = y_sum_k;
        if (opts.paranoid)
            rec.ys_over_removed = sum_y_over_triples(g, k, K);

        const std::uint64_t q_before = index.live_count();
        RemovalReport rep = index.remove(*id);
        rec.destroyed = rep.destroyed;
        for (const Edge& e : rep.removed_edges)
            g.remove_edge(e.u, e.v);

        if (rec.destroyed == 0 || q_before - index.live_count() != rec.destroyed)
            throw ContractViolation("destroyed count " + std::to_string(rec.destroyed) +
                                    " inconsistent with Q change at m = " + std::to_string(m));
        if (rec.destroyed > y_sum_k)
            throw ContractViolation("destroyed " + std::to_string(rec.destroyed) +
                                    " exceeds the sum of Y_e over E(K) at m = " + std::to_string(m));
        if (rec.ys_over_removed && y_sum_k > 3 * *rec.ys_over_removed &&
            rec.destroyed < y_sum_k - 3 * *rec.ys_over_removed)
            throw ContractViolation("destroyed " + std::to_string(rec.destroyed) +
                                    " below the overcount lower bound at m = " + std::to_string(m));

        observe(rec, g, index, trace.schedule, trace.tracked_edges, opts.observe_y);
        if (static_cast<double>(rec.e) != e0 - static_cast<double>(m * c))
            throw ContractViolation("edge count " + std::to_string(rec.e) + " != e0 - m C(k,2) at m = " +
                                    std::to_string(m));
        if (opts.paranoid)
            paranoid_recount(g, index, m);
        trace.records.push_back(std::move(rec));
    }

    trace.M = trace.records.size();
    trace.exhausted = index.live_count() == 0;
    trace.final_graph = std::move(g);
    trace.stopping = detect(trace, trace.schedule, std::nullopt, true);
    return trace;
}

StoppingReport detect_stopping_times(const ProcessTrace& trace, const TrajectorySchedule& schedule,
                                     std::optional<bool> initial_checks_passed)
{
    return detect(trace, schedule, initial_checks_passed, false);
}

ExhaustionResult run_to_exhaustion(const GraphState& g0, const TheoryParams& params, Rng& rng,
                                   const ProcessOptions& opts)
{
    ExhaustionResult out;
    out.trace = run_removal_process(g0, params, kUnboundedHorizon, rng, opts);
    PackingResult& pk = out.packing;
    pk.cliques.reserve(out.trace.records.size());
    for (const StepRecord& r : out.trace.records)
        pk.cliques.push_back(r.removed);
    pk.M = out.trace.M;
    pk.e0 = g0.edge_count();
    pk.final_edges = out.trace.final_graph.edge_count();
    pk.final_clique_free = count_cliques(out.trace.final_graph, params.k) == 0;
    return out;
}

const char* to_string(PackingFault f)
{
    switch (f) {
    case PackingFault::none: return "none";
    case PackingFault::wrong_size: return "wrong_size";
    case PackingFault::not_increasing: return "not_increasing";
    case PackingFault::vertex_out_of_range: return "vertex_out_of_range";
    case PackingFault::missing_edge: return "missing_edge";
    case PackingFault::shared_edge: return "shared_edge";
    }
    return "unknown";
}

PackingVerification verify_packing(const GraphState& g0, const std::vector<Clique>& packing, unsigned k)
{
    PackingVerification r;
    auto fail = [&r](PackingFault f, std::size_t i, std::string msg) {
        r.ok = false;
        r.fault = f;
        r.clique = i;
        r.message = std::move(msg);
        return r;
    };
    std::unordered_map<std::uint64_t, std::size_t> owner;
    for (std::size_t i = 0; i < packing.size(); ++i) {
        const auto& vs = packing[i].vertices;
        const std::string tag = "clique " + std::to_string(i);
        if (vs.size() != k)
            return fail(PackingFault::wrong_size, i,
                        tag + " has " + std::to_string(vs.size()) + " vertices, expected " + std::to_string(k));
        for (std::size_t a = 0; a < vs.size(); ++a) {
            if (vs[a] >= g0.n())
                return fail(PackingFault::vertex_out_of_range, i,
                            tag + ": vertex " + std::to_string(vs[a]) + " is out of range");
            if (a > 0 && vs[a - 1] >= vs[a])
                return fail(PackingFault::not_increasing, i, tag + ": vertices are not strictly increasing");
        }
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                const Edge e(vs[a], vs[b]);
                if (!g0.has_edge(e.u, e.v)) {
                    r.witness = e;
                    return fail(PackingFault::missing_edge, i, tag + ": " + edge_str(e) + " is not an edge");
                }
                const auto [it, fresh] = owner.emplace(pair_index(g0.n(), e.u, e.v), i);
                if (!fresh) {
                    r.witness = e;
                    r.other_clique = it->second;
                    return fail(PackingFault::shared_edge, i,
                                tag + " shares " + edge_str(e) + " with clique " + std::to_string(it->second));
                }
            }
    }
    return r;
}

InitialChecksReport initial_checks(const GraphState& g0, unsigned k, double p, double delta,
                                   double exponent_slack, const InitialCheckOptions& opts)
{
    const std::uint64_t n = g0.n();
    if (k < 3 || k > n)
        throw std::invalid_argument("initial_checks: need 3 <= k <= n");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("initial_checks: p must lie in (0, 1]");

    InitialChecksReport r;
    r.slack = exponent_slack;
    const double nd = static_cast<double>(n);
    const double band = std::pow(nd, -delta * exponent_slack);
    Rng rng(opts.sample_seed);

    if (p >= 1.0) {
        r.edges.skipped = r.cliques.skipped = r.pair_counts.skipped = true;
    } else {
        const double e_mean = p * static_cast<double>(pair_count(n));
        r.edges.value = std::abs(static_cast<double>(g0.edge_count()) - e_mean);
        r.edges.bound = std::pow(nd, 1.5);
        r.edges.passed = r.edges.value <= r.edges.bound;

        const double q_tilde = std::exp(log_expected_cliques(n, k, p));
        r.cliques.value = std::abs(static_cast<double>(count_cliques(g0, k)) / q_tilde - 1.0);
        r.cliques.bound = band;
        r.cliques.passed = r.cliques.value <= band;

        const double y_tilde = std::exp(expected_y(n, k, p, 2));
        r.pair_min_rel = std::numeric_limits<double>::infinity();
        r.pair_max_rel = -std::numeric_limits<double>::infinity();
        auto visit = [&](Edge e) {
            const double rel = static_cast<double>(y_edge(g0, k, e)) / y_tilde - 1.0;
            r.pair_min_rel = std::min(r.pair_min_rel, rel);
            r.pair_max_rel = std::max(r.pair_max_rel, rel);
            ++r.pair_counts.examined;
        };
        const std::uint64_t pairs = pair_count(n);
        if (pairs <= opts.exhaustive_pairs) {
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v)
                    visit(Edge(u, v));
        } else {
            for (std::uint64_t i = 0; i < opts.sampled_pairs; ++i)
                visit(pair_from_index(n, rng.below(pairs)));
        }
        if (r.pair_counts.examined > 0)
            r.pair_counts.value = std::max(std::abs(r.pair_min_rel), std::abs(r.pair_max_rel));
        r.pair_counts.bound = band;
        r.pair_counts.passed = r.pair_counts.value <= band;
    }

    r.triple_counts.bound = std::pow(nd, delta * exponent_slack) * std::max(1.0, std::exp(expected_y(n, k, p, 3)));
    std::uint64_t worst = 0;
    auto visit3 = [&](Vertex a, Vertex b, Vertex c) {
        worst = std::max(worst, y_set(g0, k, {a, b, c}));
        ++r.triple_counts.examined;
    };
    const std::uint64_t triples = n * (n - 1) * (n - 2) / 6;
    if (triples <= opts.exhaustive_triples) {
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                for (Vertex c = b + 1; c < n; ++c)
                    visit3(a, b, c);
    } else {
        for (std::uint64_t i = 0; i < opts.sampled_triples; ++i) {
            Vertex s[3];
            do {
                for (auto& x : s)
                    x = static_cast<Vertex>(rng.below(n));
            } while (s[0] == s[1] || s[1] == s[2] || s[0] == s[2]);
            visit3(s[0], s[1], s[2]);
        }
    }
    r.triple_counts.value = static_cast<double>(worst);
    r.triple_counts.passed = r.triple_counts.value <= r.triple_counts.bound;

    r.passed = true;
    for (const CheckItem* item : {&r.edges, &r.cliques, &r.pair_counts, &r.triple_counts})
        if (!item->skipped && !item->passed)
            r.passed = false;
    return r;
}

} // namespace cliquepack
