#include "cliquepack/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cliquepack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScanEps = 1e-9;

void require_open_unit(double p, const char* who)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument(std::string(who) + ": p must lie in (0, 1)");
}

double log_sum_exp(const std::vector<double>& xs)
{
    double hi = -kInf;
    for (double x : xs)
        hi = std::max(hi, x);
    if (hi == -kInf)
        return -kInf;
    double s = 0;
    for (double x : xs)
        s += std::exp(x - hi);
    return hi + std::log(s);
}

boost::multiprecision::cpp_int binomial_exact(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    boost::multiprecision::cpp_int r = 1;
    for (std::int64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

double log_binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return -kInf;
    k = std::min(k, n - k);
    if (k <= 4096) {
        double s = 0;
        for (std::uint64_t i = 0; i < k; ++i)
            s += std::log(static_cast<double>(n - i));
        return s - std::lgamma(static_cast<double>(k) + 1.0);
    }
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double log_expected_cliques(std::uint64_t n, unsigned k, double p)
{
    require_open_unit(p, "log_expected_cliques");
    if (k > n)
        return -kInf;
    return log_binomial(n, k) + static_cast<double>(choose2(k)) * std::log(p);
}

unsigned find_k0(std::uint64_t n, double p)
{
    if (n < 2)
        throw std::invalid_argument("find_k0: n must be at least 2");
    require_open_unit(p, "find_k0");
    unsigned k = 1;
    while (log_expected_cliques(n, k, p) >= 0.0)
        ++k;
    return k;
}

double delta_from_gamma(double gamma) { return std::min(gamma - 2.0, 1.0) / 10.0; }

GammaDelta gamma_delta(std::uint64_t n, unsigned k, double p)
{
    if (n < 2)
        throw std::invalid_argument("gamma_delta: n must be at least 2");
    GammaDelta gd;
    gd.gamma = log_expected_cliques(n, k, p) / std::log(static_cast<double>(n));
    gd.delta = delta_from_gamma(gd.gamma);
    gd.below_two = gd.gamma < 2.0;
    return gd;
}

std::int64_t m_star(std::uint64_t n, double p, unsigned k, double delta)
{
    if (delta < 0)
        throw std::invalid_argument("m_star: delta must be non-negative");
    if (k == 0)
        throw std::invalid_argument("m_star: k must be positive");
    const double nn = static_cast<double>(n);
    const double k2 = static_cast<double>(k) * k;
    const double first = std::floor(delta * p * nn * nn * std::log(nn) / (4.0 * k2 * k2));
    const double second = std::floor(p * nn * nn / (2.0 * k2));
    return static_cast<std::int64_t>(std::min(first, second));
}

TheoryParams make_theory_params(std::uint64_t n, double p, unsigned k)
{
    require_open_unit(p, "make_theory_params");
    if (k < 1 || k > n)
        throw std::invalid_argument("make_theory_params: need 1 <= k <= n");
    TheoryParams tp;
    tp.n = n;
    tp.p = p;
    tp.k = k;
    tp.k0 = find_k0(n, p);
    const auto gd = gamma_delta(n, k, p);
    tp.gamma = gd.gamma;
    tp.delta = gd.delta;
    tp.m_star = gd.delta >= 0 ? m_star(n, p, k, gd.delta) : 0;
    tp.e0_nominal = p * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    tp.log_expected_q0 = log_expected_cliques(n, k, p);
    tp.out_of_regime = gd.gamma <= 2.0;
    return tp;
}

TrajectorySchedule build_schedule(std::uint64_t n, double e0, unsigned k, double q0, double delta,
                                  std::size_t m_max)
{
    if (n < 2 || k < 2)
        throw std::invalid_argument("build_schedule: need n >= 2 and k >= 2");
    if (!(e0 > 0))
        throw std::invalid_argument("build_schedule: e0 must be positive");
    TrajectorySchedule s;
    s.n = n;
    s.k = k;
    s.e0 = e0;
    s.delta = delta;
    const double c = static_cast<double>(choose2(k));
    const double c2 = c * c;
    const double floor_err = std::pow(static_cast<double>(n), -delta);

    double q = q0;
    double gq = 2.0 * floor_err;
    double gy = 10.0 * floor_err;
    for (std::size_t m = 0;; ++m) {
        const double e = e0 - static_cast<double>(m) * c;
        s.e.push_back(e);
        s.q_tilde.push_back(q);
        s.g_q.push_back(gq);
        s.g_y.push_back(gy);
        s.y_tilde.push_back(c * q / e);
        if (m == m_max)
            break;
        if (e <= c2) {
            s.truncated = true;
            break;
        }
        q *= 1.0 - c2 / e;
        gq *= 1.0 + c2 / e;
        gy *= 1.0 + 2.0 * c2 / e;
    }
    s.m_max = s.q_tilde.size() - 1;
    return s;
}

std::size_t max_schedule_steps(double e0, unsigned k)
{
    const double c = static_cast<double>(choose2(k));
    return e0 > 0 && c > 0 ? static_cast<std::size_t>(std::floor(e0 / c)) : 0;
}

EnvelopeCheck check_error_envelope(const TrajectorySchedule& s, std::int64_t m_star)
{
    EnvelopeCheck r;
    r.cap = std::pow(static_cast<double>(s.n), -s.delta / 4.0);
    if (m_star <= 0 || static_cast<std::size_t>(m_star) >= s.size())
        return r;
    r.skipped = false;
    const double floor_err = std::pow(static_cast<double>(s.n), -s.delta);
    r.gq_at_least_floor = true;
    r.gq_below_gy = true;
    for (std::size_t m = 0; m <= static_cast<std::size_t>(m_star); ++m) {
        r.gq_at_least_floor = r.gq_at_least_floor && s.g_q[m] >= floor_err;
        r.gq_below_gy = r.gq_below_gy && s.g_q[m] <= s.g_y[m];
    }
    r.gy_at_m_star = s.g_y[static_cast<std::size_t>(m_star)];
    r.gy_below_cap = r.gy_at_m_star <= r.cap;
    return r;
}

HeuristicDuration heuristic_duration(std::uint64_t n, double p, unsigned k)
{
    const auto gd = gamma_delta(n, k, p);
    if (gd.gamma <= 2.0)
        throw std::invalid_argument("heuristic_duration: requires gamma > 2");
    const double nn = static_cast<double>(n);
    const double k2 = static_cast<double>(k) * k;
    HeuristicDuration h;
    h.m_conj = 2.0 * (gd.gamma - 2.0) * p * nn * nn * std::log(nn) / (k2 * k2);

    // Same recurrence as build_schedule, streamed in log space so that large n
    // does not need the full arrays.
    const double c = static_cast<double>(choose2(k));
    const double c2 = c * c;
    const double e0 = p * nn * (nn - 1.0) / 2.0;
    const double target = 2.0 * std::log(nn);
    double log_q = log_expected_cliques(n, k, p);
    std::int64_t m = 0;
    while (log_q > target) {
        const double e = e0 - static_cast<double>(m) * c;
        ++m;
        if (e <= c2)
            break;  // next value is nonpositive, so below n^2
        log_q += std::log1p(-c2 / e);
    }
    h.m_traj = m;
    return h;
}

boost::multiprecision::cpp_rational exact_zeta2(std::uint64_t n, unsigned k)
{
    if (k > n)
        throw std::invalid_argument("exact_zeta2: need k <= n");
    const auto nn = static_cast<std::int64_t>(n);
    const auto kk = static_cast<std::int64_t>(k);
    const boost::multiprecision::cpp_int num =
        binomial_exact(nn - kk, kk) + kk * binomial_exact(nn - kk, kk - 1);
    return boost::multiprecision::cpp_rational(num, binomial_exact(nn, kk));
}

double overlap_asymptotic(std::uint64_t n, unsigned k)
{
    const double k2 = static_cast<double>(k) * k;
    const double nn = static_cast<double>(n);
    return k2 * k2 / (2.0 * nn * nn);
}

double t0_threshold(std::uint64_t n, double p, unsigned k, double gamma)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("t0_threshold: p must lie in (0, 1)");
    if (gamma < 2.0)
        throw std::invalid_argument("t0_threshold: requires gamma >= 2");
    const double nn = static_cast<double>(n);
    const double k2 = static_cast<double>(k) * k;
    const double v = 5.0 * (gamma - 2.0) / (1.0 - p) * p * nn * nn * std::log(nn) / (k2 * k2);
    return (std::isfinite(v) && v <= kT0Cap) ? v : kInf;
}

double upper_bound_t(std::uint64_t n, double p, unsigned k, double beta, double eps, double gamma)
{
    if (gamma < 2.0)
        throw std::invalid_argument("upper_bound_t: requires gamma >= 2");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("upper_bound_t: epsilon must lie in (0, 1)");
    const double denom = 1.0 + (4.0 * beta - 1.0) * p;
    if (!(denom > 0))
        throw std::invalid_argument("upper_bound_t: 1 + (4 beta - 1) p must be positive");
    const double nn = static_cast<double>(n);
    const double k2 = static_cast<double>(k) * k;
    return (gamma - 2.0) * (4.0 + eps) / denom * p * nn * nn / (k2 * k2) * std::log(nn);
}

FirstMomentBound log_first_moment_bound(std::uint64_t n, double p, unsigned k, double t, double beta,
                                        double gamma)
{
    if (!(t >= 1.0))
        throw std::invalid_argument("log_first_moment_bound: t must be at least 1");
    const double nn = static_cast<double>(n);
    const double k2 = static_cast<double>(k) * k;
    FirstMomentBound b;
    b.bracket = t * k2 * k2 * (1.0 + (4.0 * beta - 1.0) * p) / (4.0 * p * nn * nn) -
                gamma * std::log(nn) + std::log(t);
    b.log_bound = -t * b.bracket;
    return b;
}

UpperBoundReport upper_bound_report(std::uint64_t n, double p, unsigned k, double beta, double eps)
{
    if (!(beta >= 0.0 && beta <= 0.25))
        throw std::invalid_argument("upper_bound_report: beta is an assumption in [0, 1/4]");
    const auto gd = gamma_delta(n, k, p);
    UpperBoundReport r;
    r.beta = beta;
    r.epsilon = eps;
    r.t0 = t0_threshold(n, p, k, gd.gamma);
    r.t_threshold = upper_bound_t(n, p, k, beta, eps, gd.gamma);
    r.bracket_target = eps * (gd.gamma - 2.0) * std::log(static_cast<double>(n)) / 6.0;
    if (r.t_threshold >= 1.0) {
        const auto b = log_first_moment_bound(n, p, k, r.t_threshold, beta, gd.gamma);
        r.bracket_value = b.bracket;
        r.log_first_moment = b.log_bound;
    } else {
        r.bracket_value = std::numeric_limits<double>::quiet_NaN();
        r.log_first_moment = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

double prob_fixed_edges_gnm(std::uint64_t n, std::uint64_t m, std::uint64_t r)
{
    const std::uint64_t total = n * (n - (n > 0 ? 1 : 0)) / 2;
    if (m > total)
        throw std::invalid_argument("prob_fixed_edges_gnm: m exceeds C(n,2)");
    if (r > m)
        return -kInf;
    if (r <= 1'000'000) {
        double s = 0;
        for (std::uint64_t i = 0; i < r; ++i)
            s += std::log(static_cast<double>(m - i) / static_cast<double>(total - i));
        return s;
    }
    const auto lg = [](std::uint64_t x) { return std::lgamma(static_cast<double>(x) + 1.0); };
    return (lg(m) - lg(m - r)) - (lg(total) - lg(total - r));
}

double expected_y(std::uint64_t n, unsigned k, double p, unsigned s)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("expected_y: p must lie in (0, 1]");
    if (s > k || k > n)
        throw std::invalid_argument("expected_y: need s <= k <= n");
    return log_binomial(n - s, k - s) +
           static_cast<double>(choose2(k) - choose2(s)) * std::log(p);
}

XiSequence xi_sequence(std::uint64_t n, unsigned k, double p, unsigned s)
{
    require_open_unit(p, "xi_sequence");
    if (s > k)
        throw std::invalid_argument("xi_sequence: need s <= k");
    XiSequence xi{n, k, p, s, {}};
    const double ln_n = std::log(static_cast<double>(n));
    const double ln_p = std::log(p);
    for (unsigned i = s; i <= k; ++i)
        xi.log_xi.push_back(static_cast<double>(k - i) * ln_n -
                            std::lgamma(static_cast<double>(k - i) + 1.0) +
                            static_cast<double>(choose2(k) - choose2(i)) * ln_p);
    return xi;
}

XiDiagnostics check_xi_properties(const XiSequence& xi)
{
    XiDiagnostics d;
    const unsigned s = xi.s;
    const unsigned k = xi.k;
    const double ln_n = std::log(static_cast<double>(xi.n));
    d.D = static_cast<unsigned>(std::ceil(1.0 / (1.0 - xi.p) + 1.0));

    const auto fail = [](ScanResult& r, unsigned i) {
        if (r.ok) {
            r.ok = false;
            r.first_failure = i;
        }
    };

    for (unsigned i = s; i <= k / 8; ++i)
        if (xi.at(i) > -0.5 * (i - s) * ln_n + xi.at(s) + kScanEps)
            fail(d.small_i, i);

    if (k >= d.D) {
        const unsigned hi = k - d.D;
        for (unsigned a = s; a <= hi; ++a)
            for (unsigned b = a; b <= hi; ++b)
                for (unsigned c = b; c <= hi; ++c)
                    if (xi.at(b) > std::max(xi.at(a), xi.at(c)) + kScanEps)
                        fail(d.middle, b);
    }

    const double top = std::max(xi.at(s), xi.at(k));
    const auto first_large = static_cast<unsigned>(std::ceil(7.0 * k / 8.0));
    for (unsigned i = std::max(first_large, s); i <= k; ++i)
        if (xi.at(i) > -(static_cast<double>(k - i) / 8.0) * ln_n + top + kScanEps)
            fail(d.large_i, i);
    return d;
}

AiSequence ai_sequence(std::uint64_t n, unsigned k, double p)
{
    require_open_unit(p, "ai_sequence");
    if (k < 3 || k > n)
        throw std::invalid_argument("ai_sequence: need 3 <= k <= n");
    AiSequence a{n, k, p, {}, 0};
    const double ln_p = std::log(p);
    for (unsigned i = 1; i <= k - 2; ++i)
        a.log_a.push_back(log_binomial(k - 2, i) + log_binomial(n - k, k - 2 - i) +
                          static_cast<double>(choose2(k) - choose2(i + 2)) * ln_p);
    a.log_delta_bar = log_binomial(n, k - 2) + static_cast<double>(choose2(k) - 1) * ln_p +
                      log_sum_exp(a.log_a);
    return a;
}

AiDiagnostics check_ai_shape(const AiSequence& a, double slack_exponent)
{
    AiDiagnostics d;
    const unsigned k = a.k;
    d.D = static_cast<unsigned>(std::ceil(1.0 / (1.0 - std::pow(a.p, 0.25)))) + 1;
    if (k < 2 * d.D) {
        d.valley_vacuous = true;
        d.valley_ok = true;
    } else {
        const unsigned lo = d.D;
        const unsigned hi = k - d.D;
        unsigned j = lo;
        for (unsigned i = lo; i <= hi; ++i)
            if (a.at(i) < a.at(j))
                j = i;
        d.valley_index = j;
        d.valley_ok = true;
        for (unsigned i = lo; i < j; ++i)
            d.valley_ok = d.valley_ok && a.at(i + 1) <= a.at(i) + kScanEps;
        for (unsigned i = j; i < hi; ++i)
            d.valley_ok = d.valley_ok && a.at(i + 1) + kScanEps >= a.at(i);
    }
    d.log_max = *std::max_element(a.log_a.begin(), a.log_a.end());
    d.log_max_bound = slack_exponent * std::log(static_cast<double>(a.n)) +
                      std::max(a.at(1), a.at(k - 2));
    d.max_ok = d.log_max <= d.log_max_bound + kScanEps;
    return d;
}

RatioCheckReport appendix_a_ratio_check(std::uint64_t n, double p, unsigned c_max, const Tolerances& tol)
{
    if (n < 100)
        throw std::invalid_argument("appendix_a_ratio_check: n must be at least 100");
    RatioCheckReport r;
    r.n = n;
    r.p = p;
    r.k0 = find_k0(n, p);
    r.k0_verified = log_expected_cliques(n, r.k0, p) < 0.0 &&
                    log_expected_cliques(n, r.k0 - 1, p) >= 0.0;
    r.band_lo = tol.ratio_band_lo;
    r.band_hi = tol.ratio_band_hi;
    const double ln_n = std::log(static_cast<double>(n));
    r.all_in_band = true;
    for (unsigned c = 1; c <= c_max && c < r.k0; ++c) {
        RatioCheckRow row;
        row.C = c;
        row.k = r.k0 - c;
        const double here = log_expected_cliques(n, row.k, p);
        row.ratio_exponent = (here - log_expected_cliques(n, row.k + 1, p)) / ln_n;
        row.in_band = row.ratio_exponent >= tol.ratio_band_lo && row.ratio_exponent <= tol.ratio_band_hi;
        row.expectation_exponent = here / ln_n;
        r.all_in_band = r.all_in_band && row.in_band;
        r.rows.push_back(row);
    }
    return r;
}

} // namespace cliquepack
