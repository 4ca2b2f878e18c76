#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "cliquepack/errors.hpp"
#include "cliquepack/graph.hpp"
#include "cliquepack/rng.hpp"
#include "support.hpp"

using namespace cliquepack;

TEST(Philox, KnownAnswers)
{
    using A4 = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, StreamsAreReproducibleAndDistinct)
{
    Rng a(Seed{5, 0}), b(Seed{5, 0}), c(Seed{5, 1}), d(Seed{6, 0});
    int same_c = 0, same_d = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        EXPECT_EQ(x, b());
        same_c += x == c();
        same_d += x == d();
    }
    EXPECT_LT(same_c, 2);
    EXPECT_LT(same_d, 2);
}

TEST(Rng, BelowStaysInRangeAndIsUniform)
{
    Rng r(Seed{1, 2});
    std::vector<double> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = r.below(7);
        ASSERT_LT(v, 7u);
        counts[v] += 1;
    }
    EXPECT_TRUE(oracle::chi_square_passes(counts, std::vector<double>(7, 10000)));
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Graph, PairIndexRoundTrip)
{
    const std::uint64_t n = 9;
    std::uint64_t idx = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, ++idx) {
            EXPECT_EQ(pair_index(n, u, v), idx);
            EXPECT_EQ(pair_from_index(n, idx), Edge(u, v));
        }
    EXPECT_EQ(idx, pair_count(n));
}

TEST(Graph, MutationKeepsInvariants)
{
    GraphState g(70);
    g.add_edge(3, 69);
    g.add_edge(0, 64);
    g.add_edge(5, 6);
    g.validate();
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_TRUE(g.has_edge(69, 3));
    EXPECT_EQ(g.degree(3), 1u);
    g.remove_edge(64, 0);
    g.validate();
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_THROW(g.remove_edge(0, 64), ContractViolation);
    EXPECT_THROW(g.add_edge(5, 6), ContractViolation);
    EXPECT_THROW(g.add_edge(4, 4), ContractViolation);
    EXPECT_THROW(g.add_edge(4, 70), ContractViolation);
}

TEST(SampleGnp, Extremes)
{
    EXPECT_EQ(sample_gnp(5, 0.0, Seed{1, 0}).edge_count(), 0u);
    const auto g = sample_gnp(5, 1.0, Seed{1, 0});
    EXPECT_EQ(g.edge_count(), 10u);
    EXPECT_EQ(g, GraphState::complete(5));
    EXPECT_THROW(sample_gnp(5, 1.5, Seed{}), std::invalid_argument);
    EXPECT_THROW(sample_gnp(5, -0.1, Seed{}), std::invalid_argument);
}

TEST(SampleGnp, ReproducibleForFixedSeed)
{
    EXPECT_EQ(sample_gnp(80, 0.3, Seed{9, 4}), sample_gnp(80, 0.3, Seed{9, 4}));
    EXPECT_NE(sample_gnp(80, 0.3, Seed{9, 4}), sample_gnp(80, 0.3, Seed{9, 5}));
}

TEST(SampleGnp, EdgeCountWithinFourSigma)
{
    const double N = static_cast<double>(pair_count(2000));
    const double mean = 0.5 * N, sd = std::sqrt(0.25 * N);
    for (std::uint64_t s = 0; s < 3; ++s) {
        const auto g = sample_gnp(2000, 0.5, Seed{2024, s});
        g.validate();
        EXPECT_LE(std::abs(static_cast<double>(g.edge_count()) - mean), 4 * sd);
    }
}

TEST(SampleGnm, Extremes)
{
    EXPECT_EQ(sample_gnm(4, 6, Seed{3, 0}), GraphState::complete(4));
    EXPECT_EQ(sample_gnm(4, 0, Seed{3, 0}).edge_count(), 0u);
    EXPECT_THROW(sample_gnm(4, 7, Seed{}), std::invalid_argument);
    const auto g = sample_gnm(50, 600, Seed{1, 1});
    g.validate();
    EXPECT_EQ(g.edge_count(), 600u);
}

namespace {

std::uint64_t mask(const GraphState& g)
{
    std::uint64_t m = 0;
    for (const Edge& e : g.edges())
        m |= std::uint64_t{1} << pair_index(g.n(), e.u, e.v);
    return m;
}

std::vector<double> tally(const std::map<std::uint64_t, double>& counts, std::size_t cells)
{
    std::vector<double> v;
    for (const auto& [k, c] : counts)
        v.push_back(c);
    v.resize(cells, 0.0);
    return v;
}

} // namespace

TEST(SampleGnm, SingleEdgeGraphsUniform)
{
    std::map<std::uint64_t, double> counts;
    for (std::uint64_t s = 0; s < 60000; ++s)
        counts[mask(sample_gnm(4, 1, Seed{77, s}))] += 1;
    EXPECT_EQ(counts.size(), 6u);
    EXPECT_TRUE(oracle::chi_square_passes(tally(counts, 6), std::vector<double>(6, 10000)));
}

TEST(SampleGnm, MatchesGnpConditionedOnEdgeCount)
{
    // n = 5, m = 4: C(10, 4) = 210 graphs, each equally likely under both.
    const std::size_t cells = 210;
    std::map<std::uint64_t, double> gnm, gnp;
    const int draws = 105000;
    for (int s = 0; s < draws; ++s)
        gnm[mask(sample_gnm(5, 4, Seed{11, static_cast<std::uint64_t>(s)}))] += 1;
    double kept = 0;
    for (std::uint64_t s = 0; kept < draws; ++s) {
        const auto g = sample_gnp(5, 0.4, Seed{12, s});
        if (g.edge_count() == 4) {
            gnp[mask(g)] += 1;
            kept += 1;
        }
    }
    EXPECT_EQ(gnm.size(), cells);
    EXPECT_EQ(gnp.size(), cells);
    const std::vector<double> expect(cells, draws / double(cells));
    EXPECT_TRUE(oracle::chi_square_passes(tally(gnm, cells), expect));
    EXPECT_TRUE(oracle::chi_square_passes(tally(gnp, cells), expect));
}

TEST(RemoveEdges, Examples)
{
    const Edge tri[] = {Edge(0, 1), Edge(0, 2), Edge(1, 2)};
    EXPECT_EQ(remove_edges(GraphState::complete(3), tri).edge_count(), 0u);
    const auto g = remove_edges(GraphState::complete(4), tri);
    EXPECT_EQ(g.edge_count(), 3u);
    g.validate();
    const auto k5 = GraphState::complete(5);
    EXPECT_EQ(remove_edges(k5, {}), k5);
    const Edge missing[] = {Edge(0, 1), Edge(0, 1)};
    EXPECT_THROW(remove_edges(k5, missing), ContractViolation);
}

TEST(EdgeList, RoundTrip)
{
    const auto g = sample_gnp(30, 0.2, Seed{4, 0});
    std::stringstream ss;
    write_edge_list(ss, g);
    EXPECT_EQ(read_edge_list(ss), g);
}

TEST(EdgeList, ReportsLineNumbers)
{
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream is(text);
        try {
            read_edge_list(is);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("3 2\n0 1\n1 0\n"), 3u);  // u > v
    EXPECT_EQ(line_of("3 2\n0 1\n0 1\n"), 3u);  // duplicate
    EXPECT_EQ(line_of("3 2\n0 1\n0 3\n"), 3u);  // out of range
    EXPECT_EQ(line_of("3 2\n0 1\n"), 3u);       // too few
    EXPECT_EQ(line_of("3 1\n0 1\n1 2\n"), 3u);  // trailing
    EXPECT_EQ(line_of("3\n"), 1u);              // header
    EXPECT_EQ(line_of("3 1\n0 x\n"), 2u);
    EXPECT_EQ(line_of("3 4\n"), 1u);            // m > C(n,2)
}
