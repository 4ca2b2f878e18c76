#ifndef CLIQUEPACK_TESTS_SUPPORT_HPP
#define CLIQUEPACK_TESTS_SUPPORT_HPP

#include <cstdint>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "cliquepack/cliques.hpp"
#include "cliquepack/graph.hpp"

namespace oracle {

using cliquepack::Clique;
using cliquepack::Edge;
using cliquepack::GraphState;
using cliquepack::Vertex;

/// Calls f on every k-subset of [n] in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, unsigned k, F&& f)
{
    std::vector<Vertex> s(k);
    for (unsigned i = 0; i < k; ++i)
        s[i] = i;
    if (k > n)
        return;
    for (;;) {
        f(s);
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && s[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++s[i];
        for (unsigned j = i + 1; j < k; ++j)
            s[j] = s[j - 1] + 1;
    }
}

/// Every pair of s is an edge of g, except pairs listed in `forced`.
inline bool complete_with(const GraphState& g, const std::vector<Vertex>& s, const std::vector<Edge>& forced = {})
{
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            const Edge e(s[a], s[b]);
            bool f = false;
            for (const Edge& x : forced)
                f |= x == e;
            if (!f && !g.has_edge(e.u, e.v))
                return false;
        }
    return true;
}

inline std::vector<Clique> all_cliques(const GraphState& g, unsigned k)
{
    std::vector<Clique> out;
    for_each_subset(g.n(), k, [&](const std::vector<Vertex>& s) {
        if (complete_with(g, s))
            out.push_back(Clique{s});
    });
    return out;
}

inline bool contains(const std::vector<Vertex>& s, Vertex v)
{
    for (Vertex x : s)
        if (x == v)
            return true;
    return false;
}

/// k-subsets containing both ends of e, complete once e is added.
inline std::uint64_t y_edge(const GraphState& g, unsigned k, Edge e)
{
    std::uint64_t c = 0;
    for_each_subset(g.n(), k, [&](const std::vector<Vertex>& s) {
        if (contains(s, e.u) && contains(s, e.v) && complete_with(g, s, {e}))
            ++c;
    });
    return c;
}

inline std::uint64_t y_set(const GraphState& g, unsigned k, Vertex a, Vertex b, Vertex d)
{
    std::uint64_t c = 0;
    const std::vector<Edge> forced{Edge(a, b), Edge(a, d), Edge(b, d)};
    for_each_subset(g.n(), k, [&](const std::vector<Vertex>& s) {
        if (contains(s, a) && contains(s, b) && contains(s, d) && complete_with(g, s, forced))
            ++c;
    });
    return c;
}

/// Pearson statistic against `expected` counts; true when it stays below the
/// (1 - level) quantile of chi-square with (cells - 1) degrees of freedom.
inline bool chi_square_passes(const std::vector<double>& observed, const std::vector<double>& expected,
                              double level = 0.001)
{
    double stat = 0;
    for (std::size_t i = 0; i < observed.size(); ++i)
        stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return stat <= boost::math::quantile(boost::math::complement(dist, level));
}

inline GraphState cycle(std::size_t n)
{
    GraphState g(n);
    for (Vertex v = 0; v < n; ++v)
        g.add_edge(v, static_cast<Vertex>((v + 1) % n));
    return g;
}

} // namespace oracle

#endif // CLIQUEPACK_TESTS_SUPPORT_HPP
