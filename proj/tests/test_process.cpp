#include <cmath>

#include <gtest/gtest.h>

#include "cliquepack/errors.hpp"
#include "cliquepack/process.hpp"
#include "support.hpp"

using namespace cliquepack;

namespace {

ProcessTrace run(const GraphState& g, unsigned k, std::uint64_t horizon, std::uint64_t seed,
                 const ProcessOptions& opts = {})
{
    Rng rng(Seed{seed, 0});
    return run_removal_process(g, make_theory_params(g.n(), 0.5, k), horizon, rng, opts);
}

GraphState disjoint_triangles(std::size_t count)
{
    GraphState g(3 * count);
    for (Vertex b = 0; b < 3 * count; b += 3) {
        g.add_edge(b, b + 1);
        g.add_edge(b, b + 2);
        g.add_edge(b + 1, b + 2);
    }
    return g;
}

} // namespace

TEST(Process, TriangleFreeTakesNoSteps)
{
    const auto t = run(oracle::cycle(8), 3, 10, 1);
    EXPECT_EQ(t.M, 0u);
    EXPECT_EQ(t.initial.q, 0u);
    EXPECT_TRUE(t.records.empty());
    EXPECT_TRUE(t.exhausted);
}

TEST(Process, K4CascadesInOneStep)
{
    const auto t = run(GraphState::complete(4), 3, 10, 2);
    ASSERT_EQ(t.M, 1u);
    EXPECT_EQ(t.records[0].e, 3u);
    EXPECT_EQ(t.records[0].q, 0u);
    EXPECT_EQ(t.records[0].destroyed, 4u);
    EXPECT_EQ(count_cliques(t.final_graph, 3), 0u);
}

TEST(Process, HorizonStopsEarly)
{
    const auto g = sample_gnp(60, 0.5, Seed{3, 0});
    const auto t = run(g, 4, 5, 3);
    EXPECT_EQ(t.M, 5u);
    EXPECT_FALSE(t.exhausted);
}

TEST(Process, ParanoidRunOnSixtyVertices)
{
    const auto g = sample_gnp(60, 0.5, Seed{4, 0});
    ProcessOptions opts;
    opts.paranoid = true;
    const auto t = run(g, 5, 20, 4, opts);
    ASSERT_EQ(t.M, 20u);
    for (const auto& r : t.records) {
        ASSERT_TRUE(r.y_over_removed && r.ys_over_removed);
        EXPECT_LE(r.destroyed, *r.y_over_removed);
        EXPECT_LE(static_cast<std::int64_t>(*r.y_over_removed) - 3 * static_cast<std::int64_t>(*r.ys_over_removed),
                  static_cast<std::int64_t>(r.destroyed));
    }
}

TEST(Process, StepIdentitiesHold)
{
    const auto g = sample_gnp(50, 0.5, Seed{5, 0});
    const auto t = run(g, 4, kUnboundedHorizon, 5);
    const std::uint64_t e0 = g.edge_count();
    EXPECT_EQ(t.initial.e, e0);
    std::uint64_t prev_q = t.initial.q;
    for (const auto& r : t.records) {
        EXPECT_EQ(r.e, e0 - r.m * 6);
        EXPECT_EQ(r.y_sum, 6 * r.q);
        EXPECT_LT(r.q, prev_q);
        EXPECT_EQ(prev_q - r.q, r.destroyed);
        prev_q = r.q;
    }
    EXPECT_TRUE(t.exhausted);
    EXPECT_EQ(t.records.back().q, 0u);
}

TEST(Process, SameSeedSameTrace)
{
    const auto g = sample_gnp(40, 0.5, Seed{6, 0});
    const auto a = run(g, 4, kUnboundedHorizon, 6);
    const auto b = run(g, 4, kUnboundedHorizon, 6);
    ASSERT_EQ(a.M, b.M);
    for (std::size_t i = 0; i < a.records.size(); ++i)
        EXPECT_EQ(a.records[i].removed, b.records[i].removed);
}

TEST(Process, RejectsMismatchedParamsAndCap)
{
    Rng rng(Seed{});
    const auto g = GraphState::complete(10);
    EXPECT_THROW(run_removal_process(g, make_theory_params(11, 0.5, 3), 5, rng), std::invalid_argument);
    ProcessOptions opts;
    opts.index_cap = 10;
    EXPECT_THROW(run_removal_process(g, make_theory_params(10, 0.5, 3), 5, rng, opts), CapExceeded);
}

TEST(Sandwich, ThreeSetTermNeedsFactorThree)
{
    // K4, k = 3: removing {0,1,2} destroys all four triangles.
    const auto g = GraphState::complete(4);
    const Edge es[] = {Edge(0, 1), Edge(0, 2), Edge(1, 2)};
    std::uint64_t sum_e = 0;
    for (const Edge& e : es)
        sum_e += oracle::y_edge(g, 3, e);
    const std::uint64_t sum_s = oracle::y_set(g, 3, 0, 1, 2);
    const std::uint64_t destroyed = 4;
    EXPECT_EQ(sum_e, 6u);
    EXPECT_EQ(sum_s, 1u);
    EXPECT_GT(sum_e - sum_s, destroyed);
    EXPECT_LE(sum_e - 3 * sum_s, destroyed);
    EXPECT_LE(destroyed, sum_e);
}

TEST(Exhaustion, Examples)
{
    Rng rng(Seed{7, 0});
    const auto k4 = run_to_exhaustion(GraphState::complete(4), make_theory_params(4, 0.5, 3), rng);
    EXPECT_EQ(k4.packing.M, 1u);
    EXPECT_EQ(k4.packing.final_edges, 3u);
    EXPECT_TRUE(k4.packing.final_clique_free);

    const auto two = run_to_exhaustion(disjoint_triangles(2), make_theory_params(6, 0.5, 3), rng);
    EXPECT_EQ(two.packing.M, 2u);
    EXPECT_EQ(two.packing.final_edges, 0u);
}

TEST(Exhaustion, PackingsVerifyAtDeskScale)
{
    const auto tp = make_theory_params(100, 0.5, 6);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto g = sample_gnp(100, 0.5, Seed{8, s});
        Rng rng(Seed{9, s});
        const auto r = run_to_exhaustion(g, tp, rng);
        EXPECT_TRUE(verify_packing(g, r.packing.cliques, 6).ok);
        EXPECT_LE(r.packing.M * 15, g.edge_count());
        EXPECT_TRUE(r.packing.final_clique_free);
        EXPECT_EQ(r.packing.final_edges, g.edge_count() - 15 * r.packing.M);
    }
}

TEST(VerifyPacking, Faults)
{
    const auto g = sample_gnp(30, 0.6, Seed{10, 0});
    Rng rng(Seed{10, 1});
    const auto r = run_to_exhaustion(g, make_theory_params(30, 0.6, 4), rng);
    ASSERT_GE(r.packing.cliques.size(), 2u);
    auto cl = r.packing.cliques;
    EXPECT_TRUE(verify_packing(g, cl, 4).ok);

    auto dup = cl;
    dup.push_back(cl[0]);
    const auto v = verify_packing(g, dup, 4);
    EXPECT_FALSE(v.ok);
    EXPECT_EQ(v.fault, PackingFault::shared_edge);
    EXPECT_EQ(v.clique, dup.size() - 1);
    EXPECT_EQ(v.other_clique, std::optional<std::size_t>(0));
    EXPECT_TRUE(v.witness.has_value());

    GraphState missing = g;
    const Edge e(cl[1].vertices[0], cl[1].vertices[1]);
    missing.remove_edge(e.u, e.v);
    const auto m = verify_packing(missing, cl, 4);
    EXPECT_EQ(m.fault, PackingFault::missing_edge);
    EXPECT_EQ(m.clique, 1u);
    EXPECT_EQ(m.witness, std::optional<Edge>(e));

    auto bad = cl;
    bad[0].vertices.pop_back();
    EXPECT_EQ(verify_packing(g, bad, 4).fault, PackingFault::wrong_size);
    bad = cl;
    std::swap(bad[0].vertices[0], bad[0].vertices[1]);
    EXPECT_EQ(verify_packing(g, bad, 4).fault, PackingFault::not_increasing);
    bad = cl;
    bad[0].vertices.back() = 30;
    EXPECT_EQ(verify_packing(g, bad, 4).fault, PackingFault::vertex_out_of_range);
    EXPECT_TRUE(verify_packing(g, {}, 4).ok);
}

namespace {

ProcessTrace synthetic(std::int64_t m_star, std::size_t steps)
{
    ProcessTrace t;
    t.params = make_theory_params(1000, 0.5, 3);
    t.params.m_star = m_star;
    t.schedule = build_schedule(1000, 100000, 3, 50000, 1.0, steps + 2);
    auto state = [&](std::uint64_t m) {
        StepRecord r;
        r.m = m;
        r.e = static_cast<std::uint64_t>(t.schedule.e[m]);
        r.q = static_cast<std::uint64_t>(std::llround(t.schedule.q_tilde[m]));
        return r;
    };
    t.initial = state(0);
    for (std::uint64_t m = 1; m <= steps; ++m)
        t.records.push_back(state(m));
    return t;
}

} // namespace

TEST(Stopping, InsideBandsGivesHorizon)
{
    const auto t = synthetic(5, 8);
    const auto r = detect_stopping_times(t, t.schedule);
    EXPECT_EQ(r.tau, std::optional<std::int64_t>(5));
    EXPECT_FALSE(r.q_plus.first_exit.has_value());
    EXPECT_FALSE(r.degenerate_horizon);
    EXPECT_FALSE(r.exit_beyond_m_star);
}

TEST(Stopping, QAboveBandAtStepOne)
{
    auto t = synthetic(5, 8);
    t.records[0].q = static_cast<std::uint64_t>(2 * t.schedule.q_tilde[1]);
    const auto r = detect_stopping_times(t, t.schedule);
    EXPECT_EQ(r.q_plus.first_exit, std::optional<std::int64_t>(1));
    EXPECT_EQ(r.q_plus.tau, std::optional<std::int64_t>(1));
    EXPECT_FALSE(r.q_minus.first_exit.has_value());
    EXPECT_EQ(r.tau, std::optional<std::int64_t>(1));
}

TEST(Stopping, ExitAfterHorizonIsCapped)
{
    auto t = synthetic(2, 8);
    t.records[5].q = 0;
    const auto r = detect_stopping_times(t, t.schedule);
    EXPECT_EQ(r.q_minus.first_exit, std::optional<std::int64_t>(6));
    EXPECT_EQ(r.tau, std::optional<std::int64_t>(2));
    EXPECT_TRUE(r.exit_beyond_m_star);
}

TEST(Stopping, FailedInitialChecksGiveZero)
{
    const auto t = synthetic(5, 8);
    EXPECT_EQ(detect_stopping_times(t, t.schedule, false).tau, std::optional<std::int64_t>(0));
    EXPECT_EQ(detect_stopping_times(t, t.schedule, true).tau, std::optional<std::int64_t>(5));
}

TEST(Stopping, ShortScheduleRejected)
{
    const auto t = synthetic(5, 8);
    auto s = build_schedule(1000, 100000, 3, 50000, 0.1, 3);
    EXPECT_THROW(detect_stopping_times(t, s), std::invalid_argument);
}

TEST(Stopping, DegenerateHorizonAtDeskScale)
{
    const auto g = sample_gnp(100, 0.5, Seed{11, 0});
    const auto t = run(g, 6, 30, 11);
    ASSERT_EQ(t.params.m_star, 0);
    const auto r = detect_stopping_times(t, t.schedule);
    EXPECT_TRUE(r.degenerate_horizon);
    ASSERT_TRUE(r.tau.has_value());
    EXPECT_EQ(*r.tau, 0);
}

TEST(InitialChecks, CompleteGraphSkipsDegenerateItems)
{
    const auto rep = initial_checks(GraphState::complete(12), 5, 1.0, 0.1, 0.5);
    EXPECT_TRUE(rep.edges.skipped);
    EXPECT_TRUE(rep.cliques.skipped);
    EXPECT_TRUE(rep.pair_counts.skipped);
    EXPECT_FALSE(rep.triple_counts.skipped);
    // Every triple of K_12 lies in C(9, 2) = 36 five-cliques.
    EXPECT_DOUBLE_EQ(rep.triple_counts.value, 36.0);
    EXPECT_NEAR(std::exp(expected_y(12, 5, 1.0, 3)), 36.0, 1e-9);
    EXPECT_EQ(rep.triple_counts.examined, 220u);
}

TEST(InitialChecks, ReportsBoundsOnRandomGraph)
{
    const auto g = sample_gnp(60, 0.5, Seed{12, 0});
    const auto tp = make_theory_params(60, 0.5, 5);
    const auto rep = initial_checks(g, 5, 0.5, std::max(tp.delta, 0.0), 0.5);
    EXPECT_FALSE(rep.edges.skipped);
    EXPECT_DOUBLE_EQ(rep.edges.value, std::abs(static_cast<double>(g.edge_count()) - 0.5 * 1770));
    EXPECT_DOUBLE_EQ(rep.edges.bound, std::pow(60.0, 1.5));
    EXPECT_TRUE(rep.edges.passed);
    EXPECT_EQ(rep.pair_counts.examined, 1770u);
    EXPECT_LE(rep.pair_min_rel, rep.pair_max_rel);
    EXPECT_EQ(rep.passed, rep.edges.passed && rep.cliques.passed && rep.pair_counts.passed &&
                              rep.triple_counts.passed);
}
