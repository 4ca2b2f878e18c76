#include "cliquepack/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "cliquepack/errors.hpp"

namespace cliquepack {

Edge pair_from_index(std::uint64_t n, std::uint64_t index)
{
    // Row u holds n - 1 - u pairs; walk rows (n is at most a few thousand).
    Vertex u = 0;
    std::uint64_t row_len = n - 1;
    while (index >= row_len) {
        index -= row_len;
        ++u;
        --row_len;
    }
    return Edge(u, static_cast<Vertex>(u + 1 + index));
}

GraphState::GraphState(std::size_t n) : n_(n), words_(words_for(n)), adj_(n * words_for(n), 0) {}

GraphState GraphState::complete(std::size_t n)
{
    GraphState g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

std::size_t GraphState::degree(Vertex u) const
{
    std::size_t d = 0;
    for (Word w : row(u))
        d += static_cast<std::size_t>(std::popcount(w));
    return d;
}

void GraphState::add_edge(Vertex u, Vertex v)
{
    if (u >= n_ || v >= n_ || u == v)
        throw ContractViolation("add_edge: invalid pair {" + std::to_string(u) + ", " +
                                std::to_string(v) + "}");
    if (has_edge(u, v))
        throw ContractViolation("add_edge: {" + std::to_string(u) + ", " + std::to_string(v) +
                                "} is already an edge");
    adj_[u * words_ + v / kWordBits] |= Word{1} << (v % kWordBits);
    adj_[v * words_ + u / kWordBits] |= Word{1} << (u % kWordBits);
    ++edge_count_;
}

void GraphState::remove_edge(Vertex u, Vertex v)
{
    if (u >= n_ || v >= n_ || u == v || !has_edge(u, v))
        throw ContractViolation("remove_edge: {" + std::to_string(u) + ", " + std::to_string(v) +
                                "} is not an edge");
    adj_[u * words_ + v / kWordBits] &= ~(Word{1} << (v % kWordBits));
    adj_[v * words_ + u / kWordBits] &= ~(Word{1} << (u % kWordBits));
    --edge_count_;
}

std::vector<Edge> GraphState::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v)
            if (has_edge(u, v))
                out.emplace_back(u, v);
    return out;
}

void GraphState::validate() const
{
    if (adj_.size() != n_ * words_)
        throw ContractViolation("validate: adjacency storage has the wrong size");
    std::uint64_t total = 0;
    for (Vertex u = 0; u < n_; ++u) {
        if (has_edge(u, u))
            throw ContractViolation("validate: self-loop at " + std::to_string(u));
        const auto r = row(u);
        if (n_ % kWordBits != 0 && (r.back() >> (n_ % kWordBits)) != 0)
            throw ContractViolation("validate: bits past column n in row " + std::to_string(u));
        for (Vertex v = u + 1; v < n_; ++v)
            if (has_edge(u, v) != has_edge(v, u))
                throw ContractViolation("validate: asymmetric pair {" + std::to_string(u) + ", " +
                                        std::to_string(v) + "}");
        total += degree(u);
    }
    if (total != 2 * edge_count_)
        throw ContractViolation("validate: edge_count " + std::to_string(edge_count_) +
                                " disagrees with half the row population " +
                                std::to_string(total / 2));
}

GraphState sample_gnp(std::size_t n, double p, Seed seed)
{
    Rng rng(seed);
    return sample_gnp(n, p, rng);
}

GraphState sample_gnp(std::size_t n, double p, Rng& rng)
{
    if (n < 1)
        throw std::invalid_argument("sample_gnp: n must be at least 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_gnp: p must lie in [0, 1]");
    GraphState g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform() < p)
                g.add_edge(u, v);
    return g;
}

GraphState sample_gnm(std::size_t n, std::uint64_t m, Seed seed)
{
    Rng rng(seed);
    return sample_gnm(n, m, rng);
}

GraphState sample_gnm(std::size_t n, std::uint64_t m, Rng& rng)
{
    if (n < 1)
        throw std::invalid_argument("sample_gnm: n must be at least 1");
    const std::uint64_t total = pair_count(n);
    if (m > total)
        throw std::invalid_argument("sample_gnm: m = " + std::to_string(m) + " exceeds C(n,2) = " +
                                    std::to_string(total));
    // Floyd: for j = N-m .. N-1 draw t in [0, j]; insert t, or j if t is taken.
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(m);
    for (std::uint64_t j = total - m; j < total; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        if (!chosen.insert(t).second)
            chosen.insert(j);
    }
    std::vector<std::uint64_t> ordered(chosen.begin(), chosen.end());
    std::sort(ordered.begin(), ordered.end());
    GraphState g(n);
    Vertex u = 0;
    std::uint64_t row_start = 0;
    for (std::uint64_t idx : ordered) {
        while (idx >= row_start + (n - 1 - u)) {
            row_start += n - 1 - u;
            ++u;
        }
        g.add_edge(u, static_cast<Vertex>(u + 1 + (idx - row_start)));
    }
    return g;
}

GraphState remove_edges(GraphState g, std::span<const Edge> edges)
{
    for (const Edge& e : edges)
        g.remove_edge(e.u, e.v);
    return g;
}

void write_edge_list(std::ostream& os, const GraphState& g)
{
    os << g.n() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges())
        os << e.u << ' ' << e.v << '\n';
}

namespace {

bool next_content_line(std::istream& is, std::string& line, std::size_t& lineno)
{
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return true;
    }
    return false;
}

} // namespace

GraphState read_edge_list(std::istream& is)
{
    std::string line;
    std::size_t lineno = 0;
    if (!next_content_line(is, line, lineno))
        throw ParseError(lineno + 1, "missing header \"n m\"");
    std::istringstream header(line);
    long long n = -1, m = -1;
    std::string extra;
    if (!(header >> n >> m) || (header >> extra) || n < 1 || m < 0)
        throw ParseError(lineno, "expected header \"n m\" with n >= 1, m >= 0");
    if (static_cast<std::uint64_t>(m) > pair_count(static_cast<std::uint64_t>(n)))
        throw ParseError(lineno, "edge count exceeds C(n,2)");

    GraphState g(static_cast<std::size_t>(n));
    for (long long i = 0; i < m; ++i) {
        if (!next_content_line(is, line, lineno))
            throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edges, found " +
                                             std::to_string(i));
        std::istringstream fields(line);
        long long u = -1, v = -1;
        if (!(fields >> u >> v) || (fields >> extra))
            throw ParseError(lineno, "expected \"u v\"");
        if (u < 0 || v >= n || u >= v)
            throw ParseError(lineno, "pair must satisfy 0 <= u < v < n");
        if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
            throw ParseError(lineno, "duplicate edge");
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (next_content_line(is, line, lineno))
        throw ParseError(lineno, "unexpected content after the last edge");
    return g;
}

} // namespace cliquepack
