#ifndef CLIQUEPACK_PROCESS_HPP
#define CLIQUEPACK_PROCESS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cliquepack/cliques.hpp"
#include "cliquepack/graph.hpp"
#include "cliquepack/rng.hpp"
#include "cliquepack/theory.hpp"

namespace cliquepack {

/// Observation of the graph G_m. For m >= 1 it also describes the step that
/// produced G_m from G_{m-1}: the removed clique and how many cliques died.
struct StepRecord {
    std::uint64_t m = 0;
    std::uint64_t e = 0;
    std::uint64_t q = 0;

    /// Y_e statistics over the current edges (only when Y is observed).
    bool y_observed = false;
    std::uint64_t y_min = 0;
    std::uint64_t y_max = 0;
    Edge y_min_edge;
    Edge y_max_edge;
    std::uint64_t y_sum = 0;
    double y_bar = 0;
    std::vector<std::uint64_t> tracked_y;
    /// 1 where the tracked pair is an edge of G_m.
    std::vector<std::uint8_t> tracked_is_edge;

    /// Trajectory values at m; absent past the end of the schedule.
    std::optional<double> q_tilde;
    std::optional<double> g_q;
    std::optional<double> y_tilde;
    std::optional<double> g_y;

    std::uint64_t destroyed = 0;
    Clique removed;

    /// Overcount sandwich terms for the removed clique K, evaluated on
    /// G_{m-1}: sum of Y_e over E(K), and sum of Y_S over 3-sets S of K.
    /// sum Y_e - 3 sum Y_S <= destroyed <= sum Y_e. A clique meeting K in j >= 3
    /// vertices is counted C(j,2) times above and C(j,3) times below.
    std::optional<std::uint64_t> y_over_removed;
    std::optional<std::uint64_t> ys_over_removed;
};

struct StoppingTime {
    /// First m at which the quantity left its band, if it did within the trace.
    std::optional<std::int64_t> first_exit;
    /// min(m_star, first_exit); nullopt means "never within horizon".
    std::optional<std::int64_t> tau;
};

struct StoppingReport {
    std::int64_t m_star = 0;
    /// m_star == 0: the guarantee window is empty at these parameters.
    bool degenerate_horizon = false;
    /// nullopt when the initial-graph checks were not run.
    std::optional<bool> initial_checks_passed;
    StoppingTime q_plus;
    StoppingTime q_minus;
    StoppingTime y_plus;
    StoppingTime y_minus;
    StoppingTime q;
    StoppingTime y;
    std::optional<std::int64_t> tau;
    std::optional<Edge> first_violating_edge;
    /// Some band exit happened after m_star, outside the guaranteed window.
    bool exit_beyond_m_star = false;
    /// The trace ran past the end of the schedule; later steps were not checked.
    bool schedule_exhausted = false;
};

struct ProcessTrace {
    TheoryParams params;
    TrajectorySchedule schedule;
    Seed seed;
    StepRecord initial;
    std::vector<StepRecord> records;  // records[i] describes G_{i+1}
    std::vector<Edge> tracked_edges;
    StoppingReport stopping;
    std::uint64_t M = 0;
    bool exhausted = false;
    GraphState final_graph;

    /// G_m for m = 0..M.
    const StepRecord& state(std::uint64_t m) const { return m == 0 ? initial : records.at(m - 1); }
    std::uint64_t last_m() const { return records.size(); }
};

struct ProcessOptions {
    bool observe_y = true;
    /// Pairs of K_n whose Y_e is recorded at every step (non-edges on demand).
    std::size_t tracked_edges = 64;
    bool track_all_pairs = false;
    /// Recount Q and every Y_e from scratch after each step, check the index
    /// invariants and the overcount sandwich; throws ContractViolation on any
    /// disagreement.
    bool paranoid = false;
    std::uint64_t index_cap = kDefaultIndexCap;
    /// Start the schedule at the realized Q(G_0) instead of E_p(n, k).
    bool seed_qtilde_with_realized = false;
};

inline constexpr std::uint64_t kUnboundedHorizon = std::numeric_limits<std::uint64_t>::max();

/// Runs min(horizon, M) steps of the uniform k-clique removal process.
/// Throws CapExceeded (before any step) if the clique index does not fit.
ProcessTrace run_removal_process(const GraphState& g0, const TheoryParams& params,
                                 std::uint64_t horizon, Rng& rng, const ProcessOptions& opts = {});

/// Band-exit times of Q and Y against the schedule. Throws
/// std::invalid_argument if the schedule is shorter than the trace.
StoppingReport detect_stopping_times(const ProcessTrace& trace, const TrajectorySchedule& schedule,
                                     std::optional<bool> initial_checks_passed = std::nullopt);

struct PackingResult {
    std::vector<Clique> cliques;
    std::uint64_t M = 0;
    std::uint64_t e0 = 0;
    std::uint64_t final_edges = 0;
    /// Fresh count of k-cliques in the final graph is zero.
    bool final_clique_free = false;
};

struct ExhaustionResult {
    PackingResult packing;
    ProcessTrace trace;
};

ExhaustionResult run_to_exhaustion(const GraphState& g0, const TheoryParams& params, Rng& rng,
                                   const ProcessOptions& opts = {});

enum class PackingFault { none, wrong_size, not_increasing, vertex_out_of_range, missing_edge, shared_edge };

const char* to_string(PackingFault f);

struct PackingVerification {
    bool ok = true;
    PackingFault fault = PackingFault::none;
    std::size_t clique = 0;
    std::optional<std::size_t> other_clique;
    std::optional<Edge> witness;
    std::string message;
};

/// Every clique has k increasing vertices, is complete in g0, and no pair of
/// g0 is used twice. Reports the first violation.
PackingVerification verify_packing(const GraphState& g0, const std::vector<Clique>& packing, unsigned k);

struct CheckItem {
    bool skipped = false;
    bool passed = false;
    double value = 0;
    double bound = 0;
    /// Pairs or triples examined (items 3 and 4).
    std::uint64_t examined = 0;
};

struct InitialChecksReport {
    CheckItem edges;        // |e(G0) - p C(n,2)| <= n^{3/2}
    CheckItem cliques;      // |Q / Qt(0) - 1| <= n^{-delta slack}
    CheckItem pair_counts;  // max over pairs |Y_e / Yt(0) - 1| <= n^{-delta slack}
    CheckItem triple_counts;  // max Y_S <= n^{delta slack} max(1, E[Y_S])
    double pair_min_rel = 0;
    double pair_max_rel = 0;
    double slack = 0;
    bool passed = false;
};

struct InitialCheckOptions {
    /// Exhaustive over all pairs / triples up to these counts, sampled beyond.
    std::uint64_t exhaustive_pairs = 20'000;
    std::uint64_t exhaustive_triples = 200'000;
    std::uint64_t sampled_pairs = 2'000;
    std::uint64_t sampled_triples = 2'000;
    Seed sample_seed{0x5eed, 0};
};

/// Initial-graph concentration items. p = 1 makes items 1-3 degenerate; they
/// are reported as skipped.
InitialChecksReport initial_checks(const GraphState& g0, unsigned k, double p, double delta,
                                   double exponent_slack, const InitialCheckOptions& opts = {});

} // namespace cliquepack

#endif // CLIQUEPACK_PROCESS_HPP
