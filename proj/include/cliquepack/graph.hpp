#ifndef CLIQUEPACK_GRAPH_HPP
#define CLIQUEPACK_GRAPH_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cliquepack/rng.hpp"

namespace cliquepack {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

inline constexpr unsigned kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Unordered vertex pair, normalized so that u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// C(n, 2) for vertex counts.
inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

/// Position of {u, v} (u < v) in the row-major enumeration of pairs of [n].
inline std::uint64_t pair_index(std::uint64_t n, Vertex u, Vertex v)
{
    return static_cast<std::uint64_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

/// Inverse of pair_index.
Edge pair_from_index(std::uint64_t n, std::uint64_t index);

/// Dense undirected simple graph. Row u is an n-bit set of u's neighbours.
class GraphState {
public:
    GraphState() = default;
    explicit GraphState(std::size_t n);

    static GraphState complete(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t words_per_row() const { return words_; }
    std::uint64_t edge_count() const { return edge_count_; }

    std::span<const Word> row(Vertex u) const { return {adj_.data() + u * words_, words_}; }

    bool has_edge(Vertex u, Vertex v) const
    {
        return (adj_[u * words_ + v / kWordBits] >> (v % kWordBits)) & 1u;
    }

    std::size_t degree(Vertex u) const;

    /// Adds {u, v}; throws ContractViolation on self-loops or existing edges.
    void add_edge(Vertex u, Vertex v);
    /// Removes {u, v}; throws ContractViolation if it is not an edge.
    void remove_edge(Vertex u, Vertex v);

    /// All edges in lexicographic order.
    std::vector<Edge> edges() const;

    /// Throws ContractViolation when symmetry, the empty diagonal, stray bits
    /// past column n, or the edge count are inconsistent.
    void validate() const;

    friend bool operator==(const GraphState&, const GraphState&) = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::uint64_t edge_count_ = 0;
    std::vector<Word> adj_;
};

/// G(n, p): every pair independently with probability p, pairs visited in
/// lexicographic order.
GraphState sample_gnp(std::size_t n, double p, Seed seed);
GraphState sample_gnp(std::size_t n, double p, Rng& rng);

/// G(n, m): uniform over graphs with exactly m edges (Floyd's subset sampler).
GraphState sample_gnm(std::size_t n, std::uint64_t m, Seed seed);
GraphState sample_gnm(std::size_t n, std::uint64_t m, Rng& rng);

/// Returns `g` with `edges` deleted. Every pair must currently be an edge.
GraphState remove_edges(GraphState g, std::span<const Edge> edges);

/// Edge-list text: "n m" then one "u v" line per edge (0-indexed, u < v).
void write_edge_list(std::ostream& os, const GraphState& g);
GraphState read_edge_list(std::istream& is);

} // namespace cliquepack

#endif // CLIQUEPACK_GRAPH_HPP
