#ifndef CLIQUEPACK_EXPERIMENTS_HPP
#define CLIQUEPACK_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cliquepack/config.hpp"
#include "cliquepack/process.hpp"
#include "cliquepack/theory.hpp"

namespace cliquepack {

enum class HorizonPolicy { m_star, exhaustion, fixed };

const char* to_string(HorizonPolicy h);
HorizonPolicy parse_horizon_policy(const std::string& s);

struct ExperimentConfig {
    std::uint64_t n = 100;
    double p = 0.5;
    /// Exactly one of k and C; C resolves to k = k0 - C.
    std::optional<unsigned> k;
    std::optional<unsigned> C;
    unsigned replicas = 1;
    std::uint64_t master_seed = 0;
    HorizonPolicy horizon = HorizonPolicy::exhaustion;
    std::uint64_t fixed_horizon = 0;
    Tolerances tolerances;
    /// Adherence window: steps until this fraction of e0 has been consumed.
    double window_fraction = 0.5;
    bool run_initial_checks = true;
    ProcessOptions process;
    unsigned jobs = 1;
    bool keep_traces = true;
};

struct ResolvedExperiment {
    unsigned k = 0;
    TheoryParams params;
    std::vector<std::string> warnings;
};

/// Validates the config and resolves k. Throws std::invalid_argument.
ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg);

struct AdherenceStats {
    /// Number of states examined: m = 0 .. window_steps - 1.
    std::uint64_t window_steps = 0;
    /// The window asked for states the schedule does not cover; it was clipped.
    bool window_clipped = false;
    /// max |Q_m / Qt(m) - 1| over the window (0 when the window is empty).
    double max_dev_q = 0;
    /// max |Y_e / Yt(m) - 1| over tracked pairs that are edges of G_m.
    double max_dev_y = 0;
    bool y_observed = false;
    /// Q_m and tracked Y_e inside their bands for every m < m_star.
    bool q_in_band_before_m_star = true;
    bool y_in_band_before_m_star = true;
};

/// Window in steps: floor(fraction * e0 / C(k,2)).
std::uint64_t adherence_window(std::uint64_t e0, unsigned k, double fraction);

/// Past the last recorded step the process is stationary (Q = 0). Throws
/// std::invalid_argument when trace and schedule disagree on n, k or e0.
AdherenceStats adherence_stats(const ProcessTrace& trace, const TrajectorySchedule& schedule,
                               std::uint64_t window_steps);

struct ReplicaResult {
    unsigned replica = 0;
    Seed seed;
    std::uint64_t e0 = 0;
    std::uint64_t q0 = 0;
    std::uint64_t M = 0;
    bool exhausted = false;
    AdherenceStats adherence;
    std::optional<InitialChecksReport> initial;
    StoppingReport stopping;
    /// Only for exhaustion runs.
    std::optional<PackingVerification> packing;
    std::optional<bool> final_clique_free;
    /// M >= p n^2 ln n / (40 k^4).
    bool meets_lower_bound = false;
    std::optional<ProcessTrace> trace;
};

struct AggregateReport {
    ExperimentConfig config;
    ResolvedExperiment resolved;
    std::string version;
    std::vector<ReplicaResult> replicas;
    std::vector<std::uint64_t> M_values;
    double median_M = 0;
    double median_max_dev_q = 0;
    double median_max_dev_y = 0;
    bool adherence_within_tolerance = false;
    unsigned init_checks_run = 0;
    unsigned init_checks_passed = 0;
    double q_band_fraction = 0;
    double y_band_fraction = 0;
    /// p n^2 ln n / (40 k^4).
    double theorem_lower_bound = 0;
    bool all_packings_valid = true;
    /// A replica hit a resource cap; only replicas before it are reported.
    bool partial = false;
    std::optional<unsigned> failed_replica;
    std::string failure;
};

/// Replica r draws G0 and runs the process from Rng(Seed{master, r}). The
/// report does not depend on `jobs` or on scheduling.
AggregateReport replicate(const ExperimentConfig& cfg);

double median(std::vector<double> values);

struct ZetaEstimate {
    std::uint64_t n = 0;
    unsigned k = 0;
    unsigned t = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double estimate = 0;
    double std_error = 0;
};

/// Fraction of trials in which t independent uniform k-subsets of [n] are
/// pairwise edge-disjoint (share at most one vertex).
ZetaEstimate zeta_monte_carlo(std::uint64_t n, unsigned k, unsigned t, std::uint64_t trials, Seed seed);

} // namespace cliquepack

#endif // CLIQUEPACK_EXPERIMENTS_HPP
