#ifndef CLIQUEPACK_THEORY_HPP
#define CLIQUEPACK_THEORY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cliquepack/config.hpp"

namespace cliquepack {

// Closed-form quantities for the k-clique removal process on G(n, p).
// Large magnitudes are carried as natural logarithms.

/// C(k, 2).
inline std::uint64_t choose2(std::uint64_t k) { return k * (k - (k > 0 ? 1 : 0)) / 2; }

/// log C(n, k); -inf when k > n.
double log_binomial(std::uint64_t n, std::uint64_t k);

/// log E_p(n, k) = log( C(n,k) p^{C(k,2)} ). Requires 0 < p < 1.
double log_expected_cliques(std::uint64_t n, unsigned k, double p);

/// Least k with E_p(n, k) < 1.
unsigned find_k0(std::uint64_t n, double p);

struct GammaDelta {
    double gamma = 0;
    double delta = 0;
    /// gamma < 2: delta is negative and the trajectory results do not apply.
    bool below_two = false;
};

/// gamma = log E_p(n,k) / log n, delta = min(gamma - 2, 1) / 10.
GammaDelta gamma_delta(std::uint64_t n, unsigned k, double p);
double delta_from_gamma(double gamma);

/// min{ floor(delta p n^2 log n / (4 k^4)), floor(p n^2 / (2 k^2)) }.
std::int64_t m_star(std::uint64_t n, double p, unsigned k, double delta);

struct TheoryParams {
    std::uint64_t n = 0;
    double p = 0;
    unsigned k = 0;
    unsigned k0 = 0;
    double gamma = 0;
    double delta = 0;
    /// Zero when delta is negative (gamma < 2).
    std::int64_t m_star = 0;
    double e0_nominal = 0;
    double log_expected_q0 = 0;
    bool out_of_regime = false;
};

TheoryParams make_theory_params(std::uint64_t n, double p, unsigned k);

/// Deterministic trajectories indexed by step m = 0..m_max:
///   e(m)      = e0 - m C(k,2)
///   Qt(m+1)   = Qt(m) (1 - C(k,2)^2 / e(m))
///   gQ(m+1)   = gQ(m) (1 + C(k,2)^2 / e(m)),    gQ(0) = 2 n^{-delta}
///   gY(m+1)   = gY(m) (1 + 2 C(k,2)^2 / e(m)),  gY(0) = 10 n^{-delta}
///   Yt(m)     = C(k,2) Qt(m) / e(m)
struct TrajectorySchedule {
    std::uint64_t n = 0;
    unsigned k = 0;
    double e0 = 0;
    double delta = 0;
    std::vector<double> e;
    std::vector<double> q_tilde;
    std::vector<double> g_q;
    std::vector<double> y_tilde;
    std::vector<double> g_y;
    std::size_t m_max = 0;
    /// The bracket 1 - C(k,2)^2/e(m) turned nonpositive before the requested
    /// m_max; the arrays stop at the last step whose bracket was still defined.
    bool truncated = false;

    std::size_t size() const { return q_tilde.size(); }
};

TrajectorySchedule build_schedule(std::uint64_t n, double e0, unsigned k, double q0, double delta,
                                  std::size_t m_max);

/// Largest m_max the edge budget allows: floor(e0 / C(k,2)).
std::size_t max_schedule_steps(double e0, unsigned k);

struct EnvelopeCheck {
    /// m_star = 0 (or outside the schedule): the inequality chain is vacuous.
    bool skipped = true;
    bool gq_at_least_floor = false;  // gQ(m) >= n^{-delta}
    bool gq_below_gy = false;        // gQ(m) <= gY(m)
    bool gy_below_cap = false;       // gY(m_star) <= n^{-delta/4}
    double gy_at_m_star = 0;
    double cap = 0;
};

/// n^{-delta} <= gQ(m) <= gY(m) <= n^{-delta/4} for m <= m_star.
EnvelopeCheck check_error_envelope(const TrajectorySchedule& s, std::int64_t m_star);

struct HeuristicDuration {
    double m_conj = 0;        // 2 (gamma - 2) p n^2 log n / k^4
    std::int64_t m_traj = 0;  // first m with Qt(m) <= n^2 on the nominal schedule
};

/// Throws std::invalid_argument when gamma <= 2.
HeuristicDuration heuristic_duration(std::uint64_t n, double p, unsigned k);

/// Probability that two uniform k-subsets of [n] share at most one vertex:
/// [C(n-k,k) + k C(n-k,k-1)] / C(n,k).
boost::multiprecision::cpp_rational exact_zeta2(std::uint64_t n, unsigned k);

/// k^4 / (2 n^2).
double overlap_asymptotic(std::uint64_t n, unsigned k);

/// Values of t0 above this are reported as +infinity.
inline constexpr double kT0Cap = 1e300;

/// 5 (gamma - 2) / (1 - p) * p n^2 log n / k^4. Rejects p >= 1.
double t0_threshold(std::uint64_t n, double p, unsigned k, double gamma);

/// (gamma - 2)(4 + eps) / (1 + (4 beta - 1) p) * p n^2 log n / k^4.
double upper_bound_t(std::uint64_t n, double p, unsigned k, double beta, double eps, double gamma);

struct FirstMomentBound {
    /// t k^4 (1 + (4 beta - 1) p) / (4 p n^2) - gamma log n + log t
    double bracket = 0;
    /// -t * bracket
    double log_bound = 0;
    /// The o(1) correction inside the bracket is not evaluated.
    bool o1_dropped = true;
};

FirstMomentBound log_first_moment_bound(std::uint64_t n, double p, unsigned k, double t, double beta,
                                        double gamma);

struct UpperBoundReport {
    double t0 = 0;
    double beta = 0;
    double epsilon = 0;
    double t_threshold = 0;
    double log_first_moment = 0;
    double bracket_value = 0;
    /// eps (gamma - 2) log n / 6, the bracket's asymptotic lower bound.
    double bracket_target = 0;
    bool o1_dropped = true;
};

UpperBoundReport upper_bound_report(std::uint64_t n, double p, unsigned k, double beta, double eps);

/// log of (m)_r / (N)_r with N = C(n,2): the chance that r fixed pairs all
/// land in G(n, m). -inf when r > m.
double prob_fixed_edges_gnm(std::uint64_t n, std::uint64_t m, std::uint64_t r);

/// log of C(n-s, k-s) p^{C(k,2) - C(s,2)}, the mean number of k-cliques of
/// G(n,p) + (pairs inside S) containing a fixed s-set S. Allows p = 1.
double expected_y(std::uint64_t n, unsigned k, double p, unsigned s);

struct XiSequence {
    std::uint64_t n = 0;
    unsigned k = 0;
    double p = 0;
    unsigned s = 0;
    /// log xi_i for i = s..k, stored at [i - s].
    std::vector<double> log_xi;

    double at(unsigned i) const { return log_xi.at(i - s); }
};

/// xi_i = n^{k-i} / (k-i)! * p^{C(k,2) - C(i,2)}, i = s..k (so xi_k = 1).
XiSequence xi_sequence(std::uint64_t n, unsigned k, double p, unsigned s);

struct ScanResult {
    bool ok = true;
    std::optional<unsigned> first_failure;
};

struct XiDiagnostics {
    unsigned D = 0;             // ceil(1/(1-p) + 1)
    ScanResult small_i;         // xi_i <= n^{-(i-s)/2} xi_s, s <= i <= floor(k/8)
    ScanResult middle;          // xi_b <= max(xi_a, xi_c), s <= a <= b <= c <= k-D
    ScanResult large_i;         // xi_i <= n^{-(k-i)/8} max(xi_s, xi_k), i >= ceil(7k/8)
};

XiDiagnostics check_xi_properties(const XiSequence& xi);

struct AiSequence {
    std::uint64_t n = 0;
    unsigned k = 0;
    double p = 0;
    /// log a_i for i = 1..k-2, stored at [i - 1].
    std::vector<double> log_a;
    double log_delta_bar = 0;

    double at(unsigned i) const { return log_a.at(i - 1); }
};

/// a_i = C(k-2,i) C(n-k,k-2-i) p^{C(k,2) - C(i+2,2)} and
/// Delta_bar = C(n,k-2) p^{C(k,2)-1} sum_i a_i. Requires k >= 3.
AiSequence ai_sequence(std::uint64_t n, unsigned k, double p);

struct AiDiagnostics {
    unsigned D = 0;  // ceil((1 - p^{1/4})^{-1}) + 1
    /// [D, k-D] is empty, so the valley shape holds trivially.
    bool valley_vacuous = false;
    bool valley_ok = false;
    unsigned valley_index = 0;
    bool max_ok = false;
    double log_max = 0;
    double log_max_bound = 0;
};

/// Non-increasing then non-decreasing on [D, k-D]; max a_i <= n^{slack} max(a_1, a_{k-2}).
AiDiagnostics check_ai_shape(const AiSequence& a, double slack_exponent);

struct RatioCheckRow {
    unsigned C = 0;
    unsigned k = 0;
    /// log(E(k0-C) / E(k0-C+1)) / log n
    double ratio_exponent = 0;
    bool in_band = false;
    /// log E(k0-C) / log n, which should sit in [C-1, C] up to o(1).
    double expectation_exponent = 0;
};

struct RatioCheckReport {
    std::uint64_t n = 0;
    double p = 0;
    unsigned k0 = 0;
    bool k0_verified = false;
    double band_lo = 0;
    double band_hi = 0;
    std::vector<RatioCheckRow> rows;
    bool all_in_band = false;
    bool o1_dropped = true;
};

RatioCheckReport appendix_a_ratio_check(std::uint64_t n, double p, unsigned c_max,
                                       const Tolerances& tol = {});

} // namespace cliquepack

#endif // CLIQUEPACK_THEORY_HPP
