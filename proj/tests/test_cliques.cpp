#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "cliquepack/cliques.hpp"
#include "cliquepack/errors.hpp"
#include "support.hpp"

using namespace cliquepack;

namespace {

GraphState two_triangles()
{
    GraphState g(6);
    for (Vertex base : {0u, 3u}) {
        g.add_edge(base, base + 1);
        g.add_edge(base, base + 2);
        g.add_edge(base + 1, base + 2);
    }
    return g;
}

} // namespace

TEST(CountCliques, Examples)
{
    EXPECT_EQ(count_cliques(GraphState::complete(6), 3), 20u);
    EXPECT_EQ(count_cliques(oracle::cycle(5), 3), 0u);
    const auto g = sample_gnp(12, 0.5, Seed{1, 0});
    EXPECT_EQ(count_cliques(g, 4), brute_force_count(g, 4));
    EXPECT_EQ(count_cliques(g, 1), 12u);
    EXPECT_EQ(count_cliques(g, 2), g.edge_count());
}

TEST(BruteForce, ExamplesAndGuard)
{
    EXPECT_EQ(brute_force_count(GraphState::complete(5), 5), 1u);
    EXPECT_EQ(brute_force_count(GraphState(5), 2), 0u);
    auto g = GraphState::complete(4);
    g.remove_edge(0, 1);
    EXPECT_EQ(brute_force_count(g, 3), 2u);
    EXPECT_THROW(brute_force_count(GraphState(60), 10), CapExceeded);
}

TEST(CountCliques, MatchesBruteForceOnRandomGraphs)
{
    for (std::uint64_t s = 0; s < 40; ++s) {
        const std::size_t n = 5 + s % 8;
        const double p = 0.3 + 0.1 * static_cast<double>(s % 6);
        const auto g = sample_gnp(n, p, Seed{31, s});
        for (unsigned k = 1; k <= n; ++k)
            ASSERT_EQ(count_cliques(g, k), brute_force_count(g, k)) << "seed " << s << " k " << k;
    }
}

TEST(CountCliques, WideGraphCrossesWordBoundaries)
{
    const auto g = sample_gnp(150, 0.5, Seed{3, 3});
    std::uint64_t listed = 0;
    for_each_clique(g, 4, [&](std::span<const Vertex>) { ++listed; });
    EXPECT_EQ(count_cliques(g, 4), listed);
}

TEST(Enumerate, Examples)
{
    const auto k4 = enumerate_cliques(GraphState::complete(4), 3);
    const std::vector<Clique> expect{{{0, 1, 2}}, {{0, 1, 3}}, {{0, 2, 3}}, {{1, 2, 3}}};
    EXPECT_EQ(k4, expect);
    const auto g = sample_gnp(10, 0.5, Seed{2, 0});
    EXPECT_EQ(enumerate_cliques(g, 1).size(), 10u);
    EXPECT_EQ(enumerate_cliques(g, 3), oracle::all_cliques(g, 3));
}

TEST(Enumerate, CapNamesCapAndCount)
{
    try {
        enumerate_cliques(GraphState::complete(8), 3, 10);
        FAIL() << "expected CapExceeded";
    } catch (const CapExceeded& e) {
        EXPECT_EQ(e.cap(), 10u);
        EXPECT_GT(e.reached(), 10u);
    }
}

TEST(Sample, NoneWithoutCliques)
{
    Rng rng(Seed{1, 1});
    EXPECT_FALSE(sample_uniform_clique(oracle::cycle(5), 3, rng).has_value());
}

TEST(Sample, UniformOnK4)
{
    Rng rng(Seed{4, 0});
    std::map<Clique, double> hits;
    for (int i = 0; i < 40000; ++i)
        hits[*sample_uniform_clique(GraphState::complete(4), 3, rng)] += 1;
    ASSERT_EQ(hits.size(), 4u);
    std::vector<double> obs;
    for (auto& [c, n] : hits)
        obs.push_back(n);
    EXPECT_TRUE(oracle::chi_square_passes(obs, std::vector<double>(4, 10000)));
}

TEST(Sample, UniformAgainstEnumeration)
{
    const auto g = sample_gnp(12, 0.6, Seed{5, 0});
    const auto all = enumerate_cliques(g, 4);
    ASSERT_GE(all.size(), 4u);
    ASSERT_LE(all.size(), 200u);
    std::map<Clique, double> hits;
    Rng rng(Seed{5, 1});
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        hits[*sample_uniform_clique(g, 4, rng)] += 1;
    std::vector<double> obs;
    for (const auto& c : all)
        obs.push_back(hits[c]);
    EXPECT_EQ(hits.size(), all.size());
    EXPECT_TRUE(oracle::chi_square_passes(obs, std::vector<double>(all.size(), draws / double(all.size()))));
}

TEST(YEdge, Examples)
{
    const auto k6 = GraphState::complete(6);
    EXPECT_EQ(y_edge(k6, 3, Edge(1, 4)), 4u);
    EXPECT_EQ(y_edge(GraphState(6), 3, Edge(1, 4)), 0u);
    auto g = k6;
    g.remove_edge(1, 4);
    EXPECT_EQ(y_edge(g, 3, Edge(1, 4)), 4u);  // non-edges are force-added
}

TEST(YEdge, MatchesBruteForce)
{
    const auto g = sample_gnp(12, 0.5, Seed{6, 0});
    Rng rng(Seed{6, 1});
    for (int i = 0; i < 10; ++i) {
        const auto u = static_cast<Vertex>(rng.below(12));
        auto v = static_cast<Vertex>(rng.below(11));
        if (v >= u)
            ++v;
        for (unsigned k = 2; k <= 6; ++k)
            EXPECT_EQ(y_edge(g, k, Edge(u, v)), oracle::y_edge(g, k, Edge(u, v)));
    }
}

TEST(YSet, Examples)
{
    EXPECT_EQ(y_set(GraphState::complete(6), 4, {0, 2, 5}), 3u);
    EXPECT_EQ(y_set(GraphState(6), 4, {0, 2, 5}), 0u);
    EXPECT_EQ(y_set(GraphState(6), 3, {0, 2, 5}), 1u);
}

TEST(YSet, MatchesBruteForce)
{
    const auto g = sample_gnp(12, 0.5, Seed{7, 0});
    Rng rng(Seed{7, 1});
    for (int i = 0; i < 10; ++i) {
        Vertex s[3];
        do {
            for (auto& x : s)
                x = static_cast<Vertex>(rng.below(12));
        } while (s[0] == s[1] || s[1] == s[2] || s[0] == s[2]);
        for (unsigned k = 3; k <= 6; ++k)
            EXPECT_EQ(y_set(g, k, {s[0], s[1], s[2]}), oracle::y_set(g, k, s[0], s[1], s[2]));
    }
}

TEST(CliqueIndex, BuildOnK5)
{
    const auto g = GraphState::complete(5);
    const auto idx = build_clique_index(g, 3);
    EXPECT_EQ(idx.live_count(), 10u);
    for (const Edge& e : g.edges())
        EXPECT_EQ(idx.y(e), 3u);
    idx.check_invariants();
}

TEST(CliqueIndex, TriangleFreeIsEmpty)
{
    const auto idx = build_clique_index(oracle::cycle(7), 3);
    EXPECT_EQ(idx.live_count(), 0u);
    Rng rng(Seed{});
    EXPECT_FALSE(idx.sample(rng).has_value());
}

TEST(CliqueIndex, IdentityAtBuild)
{
    const auto g = sample_gnp(60, 0.5, Seed{8, 0});
    const unsigned k = 6;
    const auto idx = build_clique_index(g, k);
    std::uint64_t total = 0;
    for (const Edge& e : g.edges()) {
        total += idx.y(e);
        ASSERT_EQ(idx.y(e), y_edge(g, k, e));
    }
    EXPECT_EQ(total, 15 * idx.live_count());
    EXPECT_EQ(idx.live_count(), count_cliques(g, k));
}

TEST(CliqueIndex, CapRefusesBuild)
{
    EXPECT_THROW(build_clique_index(GraphState::complete(20), 4, 1000), CapExceeded);
}

TEST(CliqueIndex, RemovalCascadeExamples)
{
    auto k4 = build_clique_index(GraphState::complete(4), 3);
    const auto rep = index_remove_clique(k4, 0);
    EXPECT_EQ(rep.destroyed, 4u);
    EXPECT_EQ(rep.removed_edges.size(), 3u);
    EXPECT_EQ(k4.live_count(), 0u);
    EXPECT_THROW(index_remove_clique(k4, 0), ContractViolation);
    EXPECT_THROW(index_remove_clique(k4, 99), ContractViolation);

    auto two = build_clique_index(two_triangles(), 3);
    EXPECT_EQ(index_remove_clique(two, 1).destroyed, 1u);
    EXPECT_EQ(two.live_count(), 1u);
}

TEST(CliqueIndex, RemovalMatchesRecount)
{
    auto g = sample_gnp(40, 0.5, Seed{9, 0});
    const unsigned k = 4;
    auto idx = build_clique_index(g, k);
    Rng rng(Seed{9, 1});
    for (int step = 0; step < 30 && idx.live_count() > 0; ++step) {
        const std::uint64_t before = count_cliques(g, k);
        const auto rep = idx.remove(*idx.sample(rng));
        for (const Edge& e : rep.removed_edges)
            g.remove_edge(e.u, e.v);
        EXPECT_EQ(rep.destroyed, before - count_cliques(g, k));
        EXPECT_EQ(idx.live_count(), count_cliques(g, k));
        idx.check_invariants();
        for (const Edge& e : g.edges())
            ASSERT_EQ(idx.y(e), y_edge(g, k, e));
    }
}
