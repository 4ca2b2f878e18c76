#ifndef CLIQUEPACK_CONFIG_HPP
#define CLIQUEPACK_CONFIG_HPP

namespace cliquepack {

inline constexpr const char* kVersion = "cliquepack 0.1.0";

/// Every logarithm in the library is natural unless a base is named.
inline constexpr const char* kLogConvention = "natural";

/// Calibrated slack constants. The analytic statements they stand in for
/// carry o(1) or n^{o(1)} terms, which cannot be evaluated at a fixed n.
struct Tolerances {
    /// Accepted band for log(E(k0-C)/E(k0-C+1)) / log n.
    double ratio_band_lo = 0.8;
    double ratio_band_hi = 1.2;
    /// max_i a_i <= n^{this} * max(a_1, a_{k-2}).
    double ai_max_slack_exponent = 0.5;
    /// Median over replicas of max |Q_m / Qtilde(m) - 1| must not exceed this.
    double adherence_median_max = 0.2;
    /// Initial-graph band exponents are scaled by this factor.
    double initial_check_slack = 0.5;
};

} // namespace cliquepack

#endif // CLIQUEPACK_CONFIG_HPP
