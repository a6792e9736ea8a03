#pragma once

// Finite graphs, neighbor oracles for locally finite (possibly infinite)
// graphs, BFS layers and ball extraction.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ballscope/error.hpp"

namespace ballscope {

using vertex_t = std::uint64_t;
using edge_t = std::pair<vertex_t, vertex_t>;

/// Finite simple undirected graph on dense ids 0..n-1 with sorted adjacency.
/// Immutable once built.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list. Rejects loops, duplicates and ids >= n.
    /// `labels` is either empty or has exactly n entries.
    static Graph from_edges(std::size_t n, std::span<const edge_t> edges,
                            std::vector<std::string> labels = {})
    {
        if (!labels.empty() && labels.size() != n)
            throw invalid_input("label count " + std::to_string(labels.size()) +
                                " does not match vertex count " + std::to_string(n));
        Graph g;
        g.adj_.assign(n, {});
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw invalid_input("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") references a vertex >= n=" + std::to_string(n));
            if (u == v)
                throw invalid_input("self-loop at vertex " + std::to_string(u));
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (std::size_t v = 0; v < n; ++v) {
            auto& nb = g.adj_[v];
            std::ranges::sort(nb);
            if (std::ranges::adjacent_find(nb) != nb.end())
                throw invalid_input("duplicate edge at vertex " + std::to_string(v));
        }
        g.edge_count_ = edges.size();
        g.labels_ = std::move(labels);
        return g;
    }

    static Graph from_edges(std::size_t n, const std::vector<edge_t>& edges,
                            std::vector<std::string> labels = {})
    {
        return from_edges(n, std::span<const edge_t>(edges), std::move(labels));
    }

    std::size_t size() const { return adj_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    bool has_vertex(vertex_t v) const { return v < adj_.size(); }

    std::span<const vertex_t> neighbors(vertex_t v) const
    {
        check(v);
        return adj_[v];
    }

    std::size_t degree(vertex_t v) const { return neighbors(v).size(); }

    bool adjacent(vertex_t u, vertex_t v) const
    {
        auto nb = neighbors(u);
        return std::ranges::binary_search(nb, v);
    }

    bool has_labels() const { return !labels_.empty(); }

    std::string label(vertex_t v) const
    {
        check(v);
        return labels_.empty() ? std::to_string(v) : labels_[v];
    }

    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<vertex_t> find_label(std::string_view name) const
    {
        for (std::size_t v = 0; v < labels_.size(); ++v)
            if (labels_[v] == name)
                return v;
        return std::nullopt;
    }

    /// Every edge once as (u, v) with u < v, lexicographically sorted.
    std::vector<edge_t> edges() const
    {
        std::vector<edge_t> out;
        out.reserve(edge_count_);
        for (vertex_t u = 0; u < adj_.size(); ++u)
            for (vertex_t v : adj_[u])
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    bool is_complete() const
    {
        const std::size_t n = size();
        return std::ranges::all_of(adj_, [n](const auto& nb) { return nb.size() + 1 == n; });
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.adj_ == b.adj_;
    }

private:
    void check(vertex_t v) const
    {
        if (v >= adj_.size())
            throw invalid_input("unknown vertex " + std::to_string(v) + " (n=" +
                                std::to_string(adj_.size()) + ")");
    }

    std::vector<std::vector<vertex_t>> adj_;
    std::vector<std::string> labels_;
    std::size_t edge_count_ = 0;
};

inline constexpr std::size_t default_oracle_budget = 1'000'000;

/// Generator view of a locally finite graph: vertex id -> finite neighbor list.
///
/// Lists are normalized (sorted) and validated on first query and memoized in
/// shared, mutex-protected state, so copies share one cache. Exceeding the
/// memo budget throws budget_exceeded.
class GraphOracle {
public:
    using neighbor_fn = std::function<std::vector<vertex_t>(vertex_t)>;
    using label_fn = std::function<std::string(vertex_t)>;
    using member_fn = std::function<bool(vertex_t)>;

    GraphOracle(neighbor_fn neighbors, vertex_t root, label_fn label = {},
                std::size_t budget = default_oracle_budget, member_fn member = {})
        : state_(std::make_shared<State>())
    {
        state_->fn = std::move(neighbors);
        state_->label = std::move(label);
        state_->member = std::move(member);
        state_->root = root;
        state_->budget = budget;
    }

    /// Wraps a finite graph; ids are the graph's dense ids.
    static GraphOracle from_graph(Graph g)
    {
        auto shared = std::make_shared<const Graph>(std::move(g));
        return GraphOracle(
            [shared](vertex_t v) {
                auto nb = shared->neighbors(v);
                return std::vector<vertex_t>(nb.begin(), nb.end());
            },
            0, [shared](vertex_t v) { return shared->label(v); }, default_oracle_budget,
            [shared](vertex_t v) { return shared->has_vertex(v); });
    }

    vertex_t root() const { return state_->root; }

    bool has_vertex(vertex_t v) const { return !state_->member || state_->member(v); }

    /// Memoized, sorted neighbor list. The reference stays valid for the
    /// lifetime of the oracle.
    const std::vector<vertex_t>& neighbors(vertex_t v) const
    {
        std::lock_guard lock(state_->mutex);
        if (auto it = state_->memo.find(v); it != state_->memo.end())
            return it->second;
        if (!has_vertex(v))
            throw invalid_input("oracle has no vertex " + std::to_string(v));
        if (state_->memo.size() >= state_->budget)
            throw budget_exceeded("oracle memo budget of " + std::to_string(state_->budget) +
                                  " vertices exceeded");
        std::vector<vertex_t> nb = state_->fn(v);
        std::ranges::sort(nb);
        if (std::ranges::adjacent_find(nb) != nb.end())
            throw oracle_error("oracle returned a duplicate neighbor for " + label_unlocked(v));
        if (std::ranges::binary_search(nb, v))
            throw oracle_error("oracle returned a self-loop at " + label_unlocked(v));
        return state_->memo.emplace(v, std::move(nb)).first->second;
    }

    std::size_t degree(vertex_t v) const { return neighbors(v).size(); }

    bool adjacent(vertex_t u, vertex_t v) const
    {
        return std::ranges::binary_search(neighbors(u), v);
    }

    std::string label(vertex_t v) const { return label_unlocked(v); }

    std::size_t explored() const
    {
        std::lock_guard lock(state_->mutex);
        return state_->memo.size();
    }

    std::size_t budget() const { return state_->budget; }

private:
    std::string label_unlocked(vertex_t v) const
    {
        return state_->label ? state_->label(v) : std::to_string(v);
    }

    struct State {
        std::mutex mutex;
        neighbor_fn fn;
        label_fn label;
        member_fn member;
        vertex_t root = 0;
        std::size_t budget = default_oracle_budget;
        std::unordered_map<vertex_t, std::vector<vertex_t>> memo;
    };
    std::shared_ptr<State> state_;
};

/// Anything with sorted finite neighbor lists: Graph or GraphOracle.
template <class H>
concept Host = requires(const H& h, vertex_t v) {
    { h.neighbors(v) } -> std::ranges::random_access_range;
    { h.has_vertex(v) } -> std::convertible_to<bool>;
    { h.label(v) } -> std::convertible_to<std::string>;
};

namespace detail {

template <Host H>
inline constexpr bool is_oracle_v = std::is_same_v<std::remove_cvref_t<H>, GraphOracle>;

template <Host H>
void check_vertex(const H& host, vertex_t u)
{
    if (!host.has_vertex(u))
        throw invalid_input("unknown vertex " + std::to_string(u));
}

template <Host H>
void check_symmetry(const H& host, vertex_t x, vertex_t y)
{
    if (!std::ranges::binary_search(host.neighbors(y), x))
        throw oracle_error("oracle symmetry violation: " + host.label(y) + " is a neighbor of " +
                           host.label(x) + " but not vice versa");
}

} // namespace detail

/// Layers N_0(u), ..., N_r(u); each layer sorted by id. Stops early (fewer
/// layers) when the component of u is exhausted. On oracles only vertices
/// within distance r are queried, and every explored pair is checked for
/// symmetry.
template <Host H>
std::vector<std::vector<vertex_t>> bfs_layers(const H& host, vertex_t u, int r)
{
    if (r < 0)
        throw invalid_input("negative radius");
    detail::check_vertex(host, u);
    std::vector<std::vector<vertex_t>> layers{{u}};
    std::unordered_set<vertex_t> seen{u};
    for (int i = 1; i <= r; ++i) {
        std::vector<vertex_t> next;
        for (vertex_t x : layers.back()) {
            for (vertex_t y : host.neighbors(x)) {
                if constexpr (detail::is_oracle_v<H>)
                    detail::check_symmetry(host, x, y);
                if (seen.insert(y).second)
                    next.push_back(y);
            }
        }
        if (next.empty())
            break;
        std::ranges::sort(next);
        layers.push_back(std::move(next));
    }
    return layers;
}

/// Induced subgraph G_r(center) together with its bridge to host ids.
///
/// Local ids are assigned layer by layer (center is 0), ascending host id
/// within a layer.
struct Ball {
    vertex_t center = 0;
    int radius = 0;
    Graph graph;
    std::vector<vertex_t> to_host;
    std::unordered_map<vertex_t, vertex_t> from_host_map;
    std::vector<int> dist;
    std::vector<bool> interior;

    std::size_t size() const { return to_host.size(); }

    std::optional<vertex_t> from_host(vertex_t h) const
    {
        if (auto it = from_host_map.find(h); it != from_host_map.end())
            return it->second;
        return std::nullopt;
    }

    vertex_t local(vertex_t h) const
    {
        if (auto l = from_host(h))
            return *l;
        throw invalid_input("host vertex " + std::to_string(h) + " is not in the ball");
    }

    vertex_t host(vertex_t l) const { return to_host.at(l); }

    /// True when the ball is the whole component of its center.
    bool is_closed() const { return std::ranges::all_of(interior, std::identity{}); }

    std::vector<vertex_t> to_host_ids(std::span<const vertex_t> local_ids) const
    {
        std::vector<vertex_t> out;
        out.reserve(local_ids.size());
        for (vertex_t l : local_ids)
            out.push_back(to_host.at(l));
        return out;
    }
};

struct BallOptions {
    std::size_t max_vertices = 4000;
};

template <Host H>
Ball ball(const H& host, vertex_t u, int r, const BallOptions& opts = {})
{
    auto layers = bfs_layers(host, u, r);
    Ball b;
    b.center = u;
    b.radius = r;
    for (int d = 0; d < static_cast<int>(layers.size()); ++d) {
        for (vertex_t h : layers[d]) {
            b.from_host_map.emplace(h, b.to_host.size());
            b.to_host.push_back(h);
            b.dist.push_back(d);
        }
        if (b.to_host.size() > opts.max_vertices)
            throw budget_exceeded("ball of radius " + std::to_string(r) + " around " +
                                  host.label(u) + " exceeds " +
                                  std::to_string(opts.max_vertices) + " vertices");
    }
    const std::size_t n = b.to_host.size();
    std::vector<edge_t> edges;
    std::vector<std::string> labels;
    labels.reserve(n);
    b.interior.assign(n, true);
    for (vertex_t l = 0; l < n; ++l) {
        const vertex_t h = b.to_host[l];
        labels.push_back(host.label(h));
        for (vertex_t y : host.neighbors(h)) {
            auto it = b.from_host_map.find(y);
            if (it == b.from_host_map.end()) {
                b.interior[l] = false;
                continue;
            }
            if constexpr (detail::is_oracle_v<H>)
                detail::check_symmetry(host, h, y);
            if (l < it->second)
                edges.emplace_back(l, it->second);
        }
    }
    b.graph = Graph::from_edges(n, edges, std::move(labels));
    return b;
}

/// BFS distances from u; -1 for unreachable vertices.
inline std::vector<int> distances_from(const Graph& g, vertex_t u)
{
    std::vector<int> dist(g.size(), -1);
    std::queue<vertex_t> q;
    dist.at(u) = 0;
    q.push(u);
    while (!q.empty()) {
        vertex_t x = q.front();
        q.pop();
        for (vertex_t y : g.neighbors(x))
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
    }
    return dist;
}

/// Connected components as sorted vertex lists, ordered by smallest member.
inline std::vector<std::vector<vertex_t>> components(const Graph& g,
                                                     const std::vector<bool>* removed = nullptr)
{
    std::vector<int> comp(g.size(), -1);
    std::vector<std::vector<vertex_t>> out;
    for (vertex_t s = 0; s < g.size(); ++s) {
        if (comp[s] >= 0 || (removed && (*removed)[s]))
            continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<vertex_t> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            vertex_t x = stack.back();
            stack.pop_back();
            out.back().push_back(x);
            for (vertex_t y : g.neighbors(x))
                if (comp[y] < 0 && !(removed && (*removed)[y])) {
                    comp[y] = id;
                    stack.push_back(y);
                }
        }
        std::ranges::sort(out.back());
    }
    return out;
}

inline bool is_connected(const Graph& g)
{
    return g.size() > 0 && components(g).size() == 1;
}

/// Largest BFS distance over all pairs. Throws disconnected_graph.
inline int diameter(const Graph& g)
{
    if (g.size() == 0)
        throw invalid_input("diameter of the empty graph");
    int best = 0;
    for (vertex_t u = 0; u < g.size(); ++u) {
        for (int d : distances_from(g, u)) {
            if (d < 0)
                throw disconnected_graph("diameter requires a connected graph");
            best = std::max(best, d);
        }
    }
    return best;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<vertex_t> to_host; // local id i <-> to_host[i]
};

/// Subgraph induced by `s`. Local ids follow ascending host id; duplicates
/// in `s` are ignored. Labels are carried over.
inline InducedSubgraph induced(const Graph& g, std::span<const vertex_t> s)
{
    std::vector<vertex_t> verts(s.begin(), s.end());
    std::ranges::sort(verts);
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::unordered_map<vertex_t, vertex_t> local;
    for (vertex_t v : verts) {
        if (!g.has_vertex(v))
            throw invalid_input("unknown vertex " + std::to_string(v));
        local.emplace(v, local.size());
    }
    std::vector<edge_t> edges;
    std::vector<std::string> labels;
    for (vertex_t v : verts) {
        labels.push_back(g.label(v));
        for (vertex_t y : g.neighbors(v))
            if (v < y)
                if (auto it = local.find(y); it != local.end())
                    edges.emplace_back(local[v], it->second);
    }
    InducedSubgraph out{Graph::from_edges(verts.size(), edges,
                                          g.has_labels() ? std::move(labels)
                                                         : std::vector<std::string>{}),
                        std::move(verts)};
    return out;
}

inline InducedSubgraph induced(const Graph& g, const std::vector<vertex_t>& s)
{
    return induced(g, std::span<const vertex_t>(s));
}

/// Host-level helpers shared by the condition checkers.
template <Host H>
std::size_t degree(const H& host, vertex_t v)
{
    return std::ranges::size(host.neighbors(v));
}

template <Host H>
bool adjacent(const H& host, vertex_t u, vertex_t v)
{
    return std::ranges::binary_search(host.neighbors(u), v);
}

} // namespace ballscope
