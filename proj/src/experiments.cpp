#include "cliquepack/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "cliquepack/errors.hpp"

namespace cliquepack {

namespace {

constexpr std::uint64_t kCheckSalt = 0x696e'6974'6368'6b73ULL;

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

ReplicaResult run_replica(const ExperimentConfig& cfg, const ResolvedExperiment& res, unsigned r)
{
    ReplicaResult out;
    out.replica = r;
    out.seed = Seed{cfg.master_seed, r};
    Rng rng(out.seed);
    const GraphState g0 = sample_gnp(cfg.n, cfg.p, rng);
    out.e0 = g0.edge_count();

    if (cfg.run_initial_checks && res.k >= 3) {
        InitialCheckOptions io;
        io.sample_seed = Seed{cfg.master_seed ^ kCheckSalt, r};
        out.initial = initial_checks(g0, res.k, cfg.p, res.params.delta, cfg.tolerances.initial_check_slack, io);
    }

    std::uint64_t horizon = kUnboundedHorizon;
    if (cfg.horizon == HorizonPolicy::m_star)
        horizon = static_cast<std::uint64_t>(std::max<std::int64_t>(res.params.m_star, 0));
    else if (cfg.horizon == HorizonPolicy::fixed)
        horizon = cfg.fixed_horizon;

    ProcessTrace trace;
    if (cfg.horizon == HorizonPolicy::exhaustion) {
        ExhaustionResult ex = run_to_exhaustion(g0, res.params, rng, cfg.process);
        out.packing = verify_packing(g0, ex.packing.cliques, res.k);
        out.final_clique_free = ex.packing.final_clique_free;
        trace = std::move(ex.trace);
    } else {
        trace = run_removal_process(g0, res.params, horizon, rng, cfg.process);
    }
    if (out.initial) {
        trace.stopping.initial_checks_passed = out.initial->passed;
        if (!out.initial->passed)
            trace.stopping.tau = 0;
    }

    out.q0 = trace.initial.q;
    out.M = trace.M;
    out.exhausted = trace.exhausted;
    out.stopping = trace.stopping;
    if (out.e0 > 0)
        out.adherence = adherence_stats(trace, trace.schedule,
                                        adherence_window(out.e0, res.k, cfg.window_fraction));
    const double nd = static_cast<double>(cfg.n);
    out.meets_lower_bound = static_cast<double>(out.M) >=
                            cfg.p * nd * nd * std::log(nd) / (40.0 * std::pow(static_cast<double>(res.k), 4));
    if (cfg.keep_traces)
        out.trace = std::move(trace);
    return out;
}

} // namespace

const char* to_string(HorizonPolicy h)
{
    switch (h) {
    case HorizonPolicy::m_star: return "m_star";
    case HorizonPolicy::exhaustion: return "exhaustion";
    case HorizonPolicy::fixed: return "fixed";
    }
    return "unknown";
}

HorizonPolicy parse_horizon_policy(const std::string& s)
{
    if (s == "m_star")
        return HorizonPolicy::m_star;
    if (s == "exhaustion")
        return HorizonPolicy::exhaustion;
    if (s == "fixed")
        return HorizonPolicy::fixed;
    throw std::invalid_argument("unknown horizon policy \"" + s + "\"");
}

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg)
{
    if (cfg.n < 2)
        throw std::invalid_argument("n must be at least 2");
    if (!(cfg.p > 0.0 && cfg.p < 1.0))
        throw std::invalid_argument("p must lie in (0, 1)");
    if (cfg.k.has_value() == cfg.C.has_value())
        throw std::invalid_argument("exactly one of k and C must be given");
    if (cfg.replicas < 1)
        throw std::invalid_argument("replicas must be at least 1");
    if (cfg.jobs < 1)
        throw std::invalid_argument("jobs must be at least 1");
    if (!(cfg.window_fraction >= 0.0 && cfg.window_fraction <= 1.0))
        throw std::invalid_argument("window fraction must lie in [0, 1]");

    ResolvedExperiment r;
    if (cfg.k) {
        r.k = *cfg.k;
    } else {
        const unsigned k0 = find_k0(cfg.n, cfg.p);
        if (*cfg.C >= k0)
            throw std::invalid_argument("C = " + std::to_string(*cfg.C) + " leaves k = k0 - C < 1 (k0 = " +
                                        std::to_string(k0) + ")");
        r.k = k0 - *cfg.C;
    }
    if (r.k < 2 || r.k > cfg.n)
        throw std::invalid_argument("k = " + std::to_string(r.k) + " must satisfy 2 <= k <= n");
    r.params = make_theory_params(cfg.n, cfg.p, r.k);

    const double log_base = std::log(static_cast<double>(cfg.n)) / std::log(1.0 / cfg.p);
    if (static_cast<double>(r.k) < log_base)
        r.warnings.push_back("k = " + std::to_string(r.k) + " is below log_{1/p} n = " + fmt(log_base));
    if (r.params.gamma <= 2.0)
        r.warnings.push_back("gamma = " + fmt(r.params.gamma) + " <= 2: outside the trajectory regime");
    if (r.params.m_star == 0)
        r.warnings.push_back("m_star = 0: the guaranteed window is empty at these parameters");
    return r;
}

std::uint64_t adherence_window(std::uint64_t e0, unsigned k, double fraction)
{
    const double c = static_cast<double>(choose2(k));
    if (c <= 0)
        return 0;
    return static_cast<std::uint64_t>(std::floor(fraction * static_cast<double>(e0) / c));
}

AdherenceStats adherence_stats(const ProcessTrace& trace, const TrajectorySchedule& schedule,
                               std::uint64_t window_steps)
{
    if (trace.params.n != schedule.n || trace.params.k != schedule.k)
        throw std::invalid_argument("adherence_stats: trace and schedule disagree on n or k");
    if (static_cast<double>(trace.initial.e) != schedule.e0)
        throw std::invalid_argument("adherence_stats: trace e0 = " + std::to_string(trace.initial.e) +
                                    " but the schedule was built for " + fmt(schedule.e0));

    AdherenceStats a;
    a.window_steps = std::min<std::uint64_t>(window_steps, schedule.size());
    a.window_clipped = a.window_steps < window_steps;
    a.y_observed = trace.initial.y_observed;
    const std::uint64_t last = trace.last_m();
    const auto m_star = static_cast<std::uint64_t>(std::max<std::int64_t>(trace.params.m_star, 0));
    const std::uint64_t band_end = std::min<std::uint64_t>(m_star, schedule.size());

    auto y_dev = [&](const StepRecord& s, std::uint64_t m, double& worst, bool& inside) {
        const double yt = schedule.y_tilde[m];
        for (std::size_t i = 0; i < s.tracked_y.size(); ++i) {
            if (!s.tracked_is_edge[i])
                continue;
            const double y = static_cast<double>(s.tracked_y[i]);
            worst = std::max(worst, std::abs(y / yt - 1.0));
            if (std::abs(y - yt) > schedule.g_y[m] * yt)
                inside = false;
        }
    };

    const std::uint64_t scan_end = std::max(a.window_steps, band_end);
    for (std::uint64_t m = 0; m < scan_end; ++m) {
        const StepRecord& s = trace.state(std::min(m, last));
        const double q = static_cast<double>(s.q);
        const double qt = schedule.q_tilde[m];
        const double dev = std::abs(q / qt - 1.0);
        double ydev = 0;
        bool y_inside = true;
        if (a.y_observed)
            y_dev(s, m, ydev, y_inside);
        if (m < a.window_steps) {
            a.max_dev_q = std::max(a.max_dev_q, dev);
            a.max_dev_y = std::max(a.max_dev_y, ydev);
        }
        if (m < band_end) {
            if (std::abs(q - qt) > schedule.g_q[m] * qt)
                a.q_in_band_before_m_star = false;
            if (!y_inside)
                a.y_in_band_before_m_star = false;
        }
    }
    return a;
}

double median(std::vector<double> values)
{
    if (values.empty())
        return 0;
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return values.size() % 2 == 1 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

AggregateReport replicate(const ExperimentConfig& cfg)
{
    AggregateReport rep;
    rep.config = cfg;
    rep.resolved = resolve_experiment(cfg);
    rep.version = kVersion;

    const unsigned R = cfg.replicas;
    std::vector<std::optional<ReplicaResult>> slots(R);
    std::vector<std::exception_ptr> errors(R);
    std::atomic<unsigned> next{0};
    std::atomic<unsigned> stop_at{R};

    auto worker = [&] {
        for (;;) {
            const unsigned r = next.fetch_add(1);
            if (r >= R || r >= stop_at.load())
                return;
            try {
                slots[r] = run_replica(cfg, rep.resolved, r);
            } catch (...) {
                errors[r] = std::current_exception();
                unsigned cur = stop_at.load();
                while (r < cur && !stop_at.compare_exchange_weak(cur, r)) {
                }
            }
        }
    };
    const unsigned threads = std::min(cfg.jobs, R);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    for (unsigned r = 0; r < R; ++r) {
        if (errors[r]) {
            try {
                std::rethrow_exception(errors[r]);
            } catch (const CapExceeded& e) {
                rep.partial = true;
                rep.failed_replica = r;
                rep.failure = e.what();
                break;
            }
        }
        if (!slots[r])
            break;
        rep.replicas.push_back(std::move(*slots[r]));
    }

    std::vector<double> ms, dq, dy;
    unsigned q_in = 0, y_in = 0;
    for (const ReplicaResult& r : rep.replicas) {
        rep.M_values.push_back(r.M);
        ms.push_back(static_cast<double>(r.M));
        dq.push_back(r.adherence.max_dev_q);
        dy.push_back(r.adherence.max_dev_y);
        q_in += r.adherence.q_in_band_before_m_star;
        y_in += r.adherence.y_in_band_before_m_star;
        if (r.initial) {
            ++rep.init_checks_run;
            rep.init_checks_passed += r.initial->passed;
        }
        if ((r.packing && !r.packing->ok) || (r.final_clique_free && !*r.final_clique_free))
            rep.all_packings_valid = false;
    }
    rep.median_M = median(ms);
    rep.median_max_dev_q = median(dq);
    rep.median_max_dev_y = median(dy);
    rep.adherence_within_tolerance =
        !rep.replicas.empty() && rep.median_max_dev_q <= cfg.tolerances.adherence_median_max;
    if (!rep.replicas.empty()) {
        rep.q_band_fraction = static_cast<double>(q_in) / static_cast<double>(rep.replicas.size());
        rep.y_band_fraction = static_cast<double>(y_in) / static_cast<double>(rep.replicas.size());
    }
    const double nd = static_cast<double>(cfg.n);
    rep.theorem_lower_bound =
        cfg.p * nd * nd * std::log(nd) / (40.0 * std::pow(static_cast<double>(rep.resolved.k), 4));
    return rep;
}

ZetaEstimate zeta_monte_carlo(std::uint64_t n, unsigned k, unsigned t, std::uint64_t trials, Seed seed)
{
    if (t < 1 || trials < 1)
        throw std::invalid_argument("zeta_monte_carlo: need t >= 1 and trials >= 1");
    if (k < 1 || k > n)
        throw std::invalid_argument("zeta_monte_carlo: need 1 <= k <= n");
    ZetaEstimate z{n, k, t, trials, 0, 0, 0};
    Rng rng(seed);
    std::vector<Vertex> set;
    std::unordered_set<std::uint64_t> used;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        used.clear();
        bool disjoint = true;
        for (unsigned c = 0; c < t && disjoint; ++c) {
            set.clear();
            for (std::uint64_t j = n - k; j < n; ++j) {
                const auto x = static_cast<Vertex>(rng.below(j + 1));
                const bool taken = std::find(set.begin(), set.end(), x) != set.end();
                set.push_back(taken ? static_cast<Vertex>(j) : x);
            }
            std::sort(set.begin(), set.end());
            for (std::size_t a = 0; a < set.size() && disjoint; ++a)
                for (std::size_t b = a + 1; b < set.size(); ++b)
                    if (!used.insert(pair_index(n, set[a], set[b])).second) {
                        disjoint = false;
                        break;
                    }
        }
        z.successes += disjoint;
    }
    const double tr = static_cast<double>(trials);
    z.estimate = static_cast<double>(z.successes) / tr;
    z.std_error = std::sqrt(z.estimate * (1.0 - z.estimate) / tr);
    return z;
}

} // namespace cliquepack
