#include "cliquepack/cliques.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cliquepack/errors.hpp"

namespace cliquepack {

namespace {

/// Ordered depth-first walker. A vertex v taken from the candidate set is
/// cleared before branching, so the branch only sees candidates after v and
/// each clique is reached exactly once, in increasing label order.
class Walker {
public:
    Walker(const GraphState& g, unsigned depth)
        : g_(g), words_(g.words_per_row()), scratch_((depth + 1) * g.words_per_row(), 0)
    {
    }

    Word* level(unsigned l) { return scratch_.data() + static_cast<std::size_t>(l) * words_; }

    std::uint64_t count(unsigned l, std::size_t first, unsigned r)
    {
        Word* cur = level(l);
        if (r == 0)
            return 1;
        if (r == 1)
            return popcount(cur, first);
        std::uint64_t total = 0;
        Word* next = level(l + 1);
        for (std::size_t w = first; w < words_; ++w) {
            while (cur[w] != 0) {
                const auto v = static_cast<Vertex>(w * kWordBits + std::countr_zero(cur[w]));
                cur[w] &= cur[w] - 1;
                if (popcount(cur, w) < r - 1)
                    return total;
                const Word* nbr = g_.row(v).data();
                if (r == 2) {
                    for (std::size_t x = w; x < words_; ++x)
                        total += static_cast<std::uint64_t>(std::popcount(cur[x] & nbr[x]));
                    continue;
                }
                std::uint64_t avail = 0;
                for (std::size_t x = w; x < words_; ++x) {
                    next[x] = cur[x] & nbr[x];
                    avail += static_cast<std::uint64_t>(std::popcount(next[x]));
                }
                if (avail >= r - 1)
                    total += count(l + 1, w, r - 1);
            }
        }
        return total;
    }

    template <class Visit>
    void enumerate(unsigned l, std::size_t first, unsigned r, std::vector<Vertex>& path, Visit& visit)
    {
        Word* cur = level(l);
        if (r == 0) {
            visit(std::span<const Vertex>(path));
            return;
        }
        Word* next = level(l + 1);
        for (std::size_t w = first; w < words_; ++w) {
            while (cur[w] != 0) {
                const auto v = static_cast<Vertex>(w * kWordBits + std::countr_zero(cur[w]));
                cur[w] &= cur[w] - 1;
                if (popcount(cur, w) < r - 1)
                    return;
                const Word* nbr = g_.row(v).data();
                for (std::size_t x = w; x < words_; ++x)
                    next[x] = cur[x] & nbr[x];
                path.push_back(v);
                enumerate(l + 1, w, r - 1, path, visit);
                path.pop_back();
            }
        }
    }

private:
    std::uint64_t popcount(const Word* set, std::size_t first) const
    {
        std::uint64_t c = 0;
        for (std::size_t x = first; x < words_; ++x)
            c += static_cast<std::uint64_t>(std::popcount(set[x]));
        return c;
    }

    const GraphState& g_;
    std::size_t words_;
    std::vector<Word> scratch_;
};

void fill_all(Word* set, std::size_t n)
{
    const std::size_t words = words_for(n);
    std::fill(set, set + words, ~Word{0});
    if (n % kWordBits != 0)
        set[words - 1] = (Word{1} << (n % kWordBits)) - 1;
}

/// Smallest-last vertex ordering: order[i] is the i-th vertex peeled.
std::vector<Vertex> degeneracy_order(const GraphState& g)
{
    const std::size_t n = g.n();
    std::vector<std::size_t> deg(n);
    for (Vertex u = 0; u < n; ++u)
        deg[u] = g.degree(u);
    std::vector<std::uint8_t> gone(n, 0);
    std::vector<Vertex> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = 0;
        std::size_t best_deg = std::numeric_limits<std::size_t>::max();
        for (Vertex u = 0; u < n; ++u)
            if (!gone[u] && deg[u] < best_deg) {
                best = u;
                best_deg = deg[u];
            }
        gone[best] = 1;
        order.push_back(best);
        for (Vertex v = 0; v < n; ++v)
            if (!gone[v] && g.has_edge(best, v))
                --deg[v];
    }
    return order;
}

double binomial_estimate(std::size_t n, unsigned k)
{
    if (k > n)
        return 0.0;
    double c = 1.0;
    for (unsigned i = 0; i < k; ++i)
        c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return c;
}

} // namespace

std::uint64_t count_cliques(const GraphState& g, unsigned k)
{
    if (k < 1)
        throw std::invalid_argument("count_cliques: k must be at least 1");
    const std::size_t n = g.n();
    if (k > n)
        return 0;
    if (k == 1)
        return n;
    if (k == 2)
        return g.edge_count();

    const auto order = degeneracy_order(g);
    std::vector<Vertex> label(n);
    for (std::size_t i = 0; i < n; ++i)
        label[order[i]] = static_cast<Vertex>(i);
    GraphState relabeled(n);
    for (const Edge& e : g.edges())
        relabeled.add_edge(label[e.u], label[e.v]);

    Walker walker(relabeled, k);
    fill_all(walker.level(0), n);
    return walker.count(0, 0, k);
}

std::uint64_t count_cliques_within(const GraphState& g, std::span<const Word> candidates, unsigned r)
{
    if (candidates.size() != g.words_per_row())
        throw std::invalid_argument("count_cliques_within: candidate set has the wrong width");
    Walker walker(g, r);
    std::copy(candidates.begin(), candidates.end(), walker.level(0));
    return walker.count(0, 0, r);
}

std::uint64_t brute_force_count(const GraphState& g, unsigned k)
{
    const std::size_t n = g.n();
    if (k > n)
        return 0;
    const double subsets = binomial_estimate(n, k);
    if (subsets > static_cast<double>(kBruteForceGuard))
        throw CapExceeded("brute_force_count: too many subsets", kBruteForceGuard,
                          static_cast<std::uint64_t>(std::min(subsets, 1e19)));
    if (k == 0)
        return 1;
    std::vector<Vertex> idx(k);
    std::iota(idx.begin(), idx.end(), Vertex{0});
    std::uint64_t total = 0;
    while (true) {
        bool complete = true;
        for (unsigned a = 0; a < k && complete; ++a)
            for (unsigned b = a + 1; b < k; ++b)
                if (!g.has_edge(idx[a], idx[b])) {
                    complete = false;
                    break;
                }
        total += complete ? 1 : 0;
        // Next combination in lexicographic order.
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (unsigned j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return total;
}

void for_each_clique(const GraphState& g, unsigned k,
                     const std::function<void(std::span<const Vertex>)>& visit)
{
    if (k < 1)
        throw std::invalid_argument("for_each_clique: k must be at least 1");
    if (k > g.n())
        return;
    Walker walker(g, k);
    fill_all(walker.level(0), g.n());
    std::vector<Vertex> path;
    path.reserve(k);
    walker.enumerate(0, 0, k, path, visit);
}

std::vector<Clique> enumerate_cliques(const GraphState& g, unsigned k, std::uint64_t cap)
{
    std::vector<Clique> out;
    for_each_clique(g, k, [&](std::span<const Vertex> c) {
        if (out.size() >= cap)
            throw CapExceeded("enumerate_cliques: clique cap exceeded", cap, out.size() + 1);
        out.push_back(Clique{{c.begin(), c.end()}});
    });
    return out;
}

std::optional<Clique> sample_uniform_clique(const GraphState& g, unsigned k, Rng& rng, std::uint64_t cap)
{
    auto all = enumerate_cliques(g, k, cap);
    if (all.empty())
        return std::nullopt;
    return std::move(all[rng.below(all.size())]);
}

std::uint64_t y_edge(const GraphState& g, unsigned k, Edge e)
{
    if (e.u == e.v || e.v >= g.n())
        throw std::invalid_argument("y_edge: e must be a pair of distinct vertices");
    if (k < 2)
        return 0;
    if (k == 2)
        return 1;
    std::vector<Word> common(g.words_per_row());
    const auto ru = g.row(e.u);
    const auto rv = g.row(e.v);
    for (std::size_t w = 0; w < common.size(); ++w)
        common[w] = ru[w] & rv[w];
    return count_cliques_within(g, common, k - 2);
}

std::uint64_t y_set(const GraphState& g, unsigned k, std::array<Vertex, 3> s)
{
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
        throw std::invalid_argument("y_set: S must have three distinct vertices");
    for (Vertex v : s)
        if (v >= g.n())
            throw std::invalid_argument("y_set: vertex out of range");
    if (k < 3)
        return 0;
    if (k == 3)
        return 1;
    std::vector<Word> common(g.words_per_row());
    const auto r0 = g.row(s[0]);
    const auto r1 = g.row(s[1]);
    const auto r2 = g.row(s[2]);
    for (std::size_t w = 0; w < common.size(); ++w)
        common[w] = r0[w] & r1[w] & r2[w];
    return count_cliques_within(g, common, k - 3);
}

// ---------------------------------------------------------------------------
// CliqueIndex

CliqueIndex CliqueIndex::build(const GraphState& g, unsigned k, std::uint64_t cap)
{
    if (k < 2)
        throw std::invalid_argument("CliqueIndex: k must be at least 2");
    const std::uint64_t pairs_per_clique = static_cast<std::uint64_t>(k) * (k - 1) / 2;
    const std::uint64_t q = count_cliques(g, k);
    if (q * pairs_per_clique > cap)
        throw CapExceeded("clique index too large: " + std::to_string(q) + " cliques of size " +
                              std::to_string(k) + "; reduce n or raise k",
                          cap, q * pairs_per_clique);
    if (q >= std::numeric_limits<CliqueId>::max())
        throw CapExceeded("clique index: ids exhausted", std::numeric_limits<CliqueId>::max(), q);

    CliqueIndex idx;
    idx.n_ = g.n();
    idx.k_ = k;
    idx.verts_.reserve(q * k);
    for_each_clique(g, k, [&](std::span<const Vertex> c) { idx.verts_.insert(idx.verts_.end(), c.begin(), c.end()); });

    const std::size_t records = idx.verts_.size() / k;
    const std::uint64_t pairs = pair_count(g.n());
    idx.alive_.assign(records, 1);
    idx.live_.resize(records);
    idx.live_pos_.resize(records);
    std::iota(idx.live_.begin(), idx.live_.end(), CliqueId{0});
    std::iota(idx.live_pos_.begin(), idx.live_pos_.end(), std::uint32_t{0});

    idx.live_y_.assign(pairs, 0);
    for (std::size_t id = 0; id < records; ++id) {
        const auto vs = idx.vertices(static_cast<CliqueId>(id));
        for (unsigned a = 0; a < k; ++a)
            for (unsigned b = a + 1; b < k; ++b)
                ++idx.live_y_[pair_index(idx.n_, vs[a], vs[b])];
    }
    idx.edge_offset_.assign(pairs + 1, 0);
    for (std::uint64_t e = 0; e < pairs; ++e)
        idx.edge_offset_[e + 1] = idx.edge_offset_[e] + idx.live_y_[e];
    idx.edge_len_.assign(pairs, 0);
    idx.edge_ids_.resize(idx.edge_offset_[pairs]);
    for (std::size_t id = 0; id < records; ++id) {
        const auto vs = idx.vertices(static_cast<CliqueId>(id));
        for (unsigned a = 0; a < k; ++a)
            for (unsigned b = a + 1; b < k; ++b) {
                const auto e = pair_index(idx.n_, vs[a], vs[b]);
                idx.edge_ids_[idx.edge_offset_[e] + idx.edge_len_[e]++] = static_cast<CliqueId>(id);
            }
    }
    return idx;
}

Clique CliqueIndex::clique(CliqueId id) const
{
    const auto vs = vertices(id);
    return Clique{{vs.begin(), vs.end()}};
}

std::optional<CliqueId> CliqueIndex::sample(Rng& rng) const
{
    if (live_.empty())
        return std::nullopt;
    return live_[rng.below(live_.size())];
}

void CliqueIndex::kill(CliqueId id, std::vector<std::uint64_t>& touched)
{
    alive_[id] = 0;
    const std::uint32_t pos = live_pos_[id];
    const CliqueId last = live_.back();
    live_[pos] = last;
    live_pos_[last] = pos;
    live_.pop_back();

    const auto vs = vertices(id);
    for (unsigned a = 0; a < k_; ++a)
        for (unsigned b = a + 1; b < k_; ++b) {
            const auto e = pair_index(n_, vs[a], vs[b]);
            --live_y_[e];
            if (edge_len_[e] > 2 * live_y_[e])
                touched.push_back(e);
        }
}

void CliqueIndex::compact(std::uint64_t e)
{
    CliqueId* first = edge_ids_.data() + edge_offset_[e];
    CliqueId* last = first + edge_len_[e];
    CliqueId* end = std::remove_if(first, last, [&](CliqueId c) { return !alive_[c]; });
    edge_len_[e] = static_cast<std::uint32_t>(end - first);
}

RemovalReport CliqueIndex::remove(CliqueId id)
{
    if (!is_live(id))
        throw ContractViolation("CliqueIndex::remove: clique " + std::to_string(id) +
                                " is dead or unknown");
    RemovalReport report;
    const std::size_t before = live_.size();
    const std::vector<Vertex> vs(vertices(id).begin(), vertices(id).end());
    std::vector<std::uint64_t> retired;
    for (unsigned a = 0; a < k_; ++a)
        for (unsigned b = a + 1; b < k_; ++b) {
            report.removed_edges.emplace_back(vs[a], vs[b]);
            retired.push_back(pair_index(n_, vs[a], vs[b]));
        }

    std::vector<std::uint64_t> touched;
    for (const auto e : retired) {
        const std::uint64_t off = edge_offset_[e];
        for (std::uint32_t i = 0; i < edge_len_[e]; ++i) {
            const CliqueId c = edge_ids_[off + i];
            if (alive_[c])
                kill(c, touched);
        }
    }
    for (const auto e : retired) {
        if (live_y_[e] != 0)
            throw ContractViolation("CliqueIndex::remove: retired edge still carries live cliques");
        edge_len_[e] = 0;
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (const auto e : touched)
        if (edge_len_[e] > 2 * live_y_[e])
            compact(e);

    report.destroyed = before - live_.size();
    return report;
}

void CliqueIndex::check_invariants() const
{
    std::size_t alive_total = 0;
    for (std::size_t id = 0; id < alive_.size(); ++id)
        alive_total += alive_[id];
    if (alive_total != live_.size())
        throw ContractViolation("CliqueIndex: live list disagrees with live flags");
    for (std::size_t i = 0; i < live_.size(); ++i)
        if (!alive_[live_[i]] || live_pos_[live_[i]] != i)
            throw ContractViolation("CliqueIndex: live list is corrupt");

    const std::uint64_t pairs_per_clique = static_cast<std::uint64_t>(k_) * (k_ - 1) / 2;
    std::vector<std::uint32_t> listed(live_y_.size(), 0);
    std::uint64_t sum = 0;
    for (std::uint64_t e = 0; e < live_y_.size(); ++e) {
        sum += live_y_[e];
        for (std::uint32_t i = 0; i < edge_len_[e]; ++i)
            if (alive_[edge_ids_[edge_offset_[e] + i]])
                ++listed[e];
        if (listed[e] != live_y_[e])
            throw ContractViolation("CliqueIndex: live count for an edge disagrees with its list");
    }
    if (sum != pairs_per_clique * live_.size())
        throw ContractViolation("CliqueIndex: sum of per-edge counts is not C(k,2) * live");
}

} // namespace cliquepack
