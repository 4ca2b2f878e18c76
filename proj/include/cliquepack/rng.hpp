#ifndef CLIQUEPACK_RNG_HPP
#define CLIQUEPACK_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace cliquepack {

/// Identifies one random stream: `master` keys the generator, `stream`
/// selects a disjoint counter range (one per replica).
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    friend bool operator==(const Seed&, const Seed&) = default;
};

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based generator. The 128-bit counter is (block index, stream), so
/// two streams under one master key never share a counter value and their
/// outputs are independent for all practical purposes.
///
/// Satisfies UniformRandomBitGenerator, but the helpers below should be
/// preferred over <random> distributions: their output is fixed across
/// standard library implementations.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(Seed seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform integer in [0, bound). `bound` must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    Seed seed() const { return seed_; }

private:
    void refill();

    Seed seed_;
    std::array<std::uint32_t, 2> key_{};
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned used_ = 4;
};

} // namespace cliquepack

#endif // CLIQUEPACK_RNG_HPP
