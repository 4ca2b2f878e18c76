#ifndef CLIQUEPACK_CLIQUES_HPP
#define CLIQUEPACK_CLIQUES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cliquepack/graph.hpp"
#include "cliquepack/rng.hpp"

namespace cliquepack {

/// Strictly increasing vertex ids of a complete subgraph.
struct Clique {
    std::vector<Vertex> vertices;

    std::size_t size() const { return vertices.size(); }
    friend auto operator<=>(const Clique&, const Clique&) = default;
    friend bool operator==(const Clique&, const Clique&) = default;
};

using CliqueId = std::uint32_t;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;
/// Default index budget, counted in clique-id references (C(k,2) per clique).
inline constexpr std::uint64_t kDefaultIndexCap = 50'000'000;
inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

/// Exact number of k-cliques. Depth-first over a smallest-last (degeneracy)
/// ordering with bitset candidate intersection.
std::uint64_t count_cliques(const GraphState& g, unsigned k);

/// Number of r-cliques of g lying entirely inside `candidates` (an n-bit set).
std::uint64_t count_cliques_within(const GraphState& g, std::span<const Word> candidates, unsigned r);

/// Tests every k-subset. Refuses when C(n, k) exceeds kBruteForceGuard.
std::uint64_t brute_force_count(const GraphState& g, unsigned k);

/// Visits every k-clique once, in lexicographic order of sorted vertex lists.
void for_each_clique(const GraphState& g, unsigned k,
                     const std::function<void(std::span<const Vertex>)>& visit);

/// All k-cliques in lexicographic order; throws CapExceeded past `cap`.
std::vector<Clique> enumerate_cliques(const GraphState& g, unsigned k,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// Uniform k-clique via enumerate-then-draw, or nullopt if there is none.
std::optional<Clique> sample_uniform_clique(const GraphState& g, unsigned k, Rng& rng,
                                            std::uint64_t cap = kDefaultEnumerationCap);

/// k-cliques of g + {e} that contain both endpoints of e.
std::uint64_t y_edge(const GraphState& g, unsigned k, Edge e);

/// k-cliques of g with the three pairs inside s added, that contain s.
std::uint64_t y_set(const GraphState& g, unsigned k, std::array<Vertex, 3> s);

struct RemovalReport {
    std::uint64_t destroyed = 0;
    std::vector<Edge> removed_edges;
};

/// Every k-clique of an initial graph, plus an edge -> clique inverted index
/// supporting the removal cascade: retiring a clique's edges kills every
/// live clique that uses one of them.
///
/// Edge lists only shrink. Dead ids stay in them until an edge's list is
/// more than half dead, at which point it is compacted in place.
class CliqueIndex {
public:
    CliqueIndex() = default;

    static CliqueIndex build(const GraphState& g, unsigned k, std::uint64_t cap = kDefaultIndexCap);

    std::size_t n() const { return n_; }
    unsigned k() const { return k_; }
    std::size_t live_count() const { return live_.size(); }
    std::size_t record_count() const { return alive_.size(); }

    bool is_live(CliqueId id) const { return id < alive_.size() && alive_[id]; }
    std::span<const Vertex> vertices(CliqueId id) const
    {
        return {verts_.data() + static_cast<std::size_t>(id) * k_, k_};
    }
    Clique clique(CliqueId id) const;

    /// Live cliques through e. For a current edge of the indexed graph this is Y_e.
    std::uint64_t y(Edge e) const { return live_y_[pair_index(n_, e.u, e.v)]; }

    std::span<const CliqueId> live_ids() const { return live_; }

    /// Uniform live clique id, or nullopt when none remain.
    std::optional<CliqueId> sample(Rng& rng) const;

    /// Removes clique `id` and cascades. Throws ContractViolation for dead or
    /// unknown ids.
    RemovalReport remove(CliqueId id);

    /// Throws ContractViolation if live bookkeeping, per-edge counts, or edge
    /// lists are inconsistent (each live clique listed under all C(k,2) edges).
    void check_invariants() const;

private:
    void kill(CliqueId id, std::vector<std::uint64_t>& touched);
    void compact(std::uint64_t edge);

    std::size_t n_ = 0;
    unsigned k_ = 0;
    std::vector<Vertex> verts_;
    std::vector<std::uint8_t> alive_;
    std::vector<CliqueId> live_;
    std::vector<std::uint32_t> live_pos_;
    std::vector<std::uint64_t> edge_offset_;
    std::vector<std::uint32_t> edge_len_;
    std::vector<CliqueId> edge_ids_;
    std::vector<std::uint32_t> live_y_;
};

inline CliqueIndex build_clique_index(const GraphState& g, unsigned k,
                                      std::uint64_t cap = kDefaultIndexCap)
{
    return CliqueIndex::build(g, k, cap);
}

inline RemovalReport index_remove_clique(CliqueIndex& index, CliqueId id) { return index.remove(id); }

} // namespace cliquepack

#endif // CLIQUEPACK_CLIQUES_HPP
