#pragma once

// Oriented cycles, exact Hamiltonicity and cycle-through-S solvers, and
// the cycle-extension engine.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "ballscope/conditions.hpp"
#include "ballscope/connectivity.hpp"
#include "ballscope/graph.hpp"
#include "ballscope/parallel.hpp"
#include "ballscope/report.hpp"

namespace ballscope {

/// Cyclic vertex sequence with a fixed orientation. `succ(u)` is u⁺ and
/// `pred(u)` is u⁻.
class OrientedCycle {
public:
    OrientedCycle() = default;

    explicit OrientedCycle(std::vector<vertex_t> order) : order_(std::move(order))
    {
        if (order_.size() < 3)
            throw invalid_input("a cycle needs at least 3 vertices");
        for (std::size_t i = 0; i < order_.size(); ++i)
            if (!index_.emplace(order_[i], i).second)
                throw invalid_input("cycle repeats vertex " + std::to_string(order_[i]));
    }

    std::size_t size() const { return order_.size(); }
    const std::vector<vertex_t>& order() const { return order_; }
    bool contains(vertex_t v) const { return index_.contains(v); }

    std::size_t position(vertex_t v) const
    {
        auto it = index_.find(v);
        if (it == index_.end())
            throw invalid_input("vertex " + std::to_string(v) + " is not on the cycle");
        return it->second;
    }

    vertex_t succ(vertex_t v) const { return order_[(position(v) + 1) % order_.size()]; }
    vertex_t pred(vertex_t v) const
    {
        return order_[(position(v) + order_.size() - 1) % order_.size()];
    }

    /// a, a⁺, ..., b (inclusive).
    std::vector<vertex_t> forward(vertex_t a, vertex_t b) const
    {
        std::vector<vertex_t> out;
        for (std::size_t i = position(a);; i = (i + 1) % order_.size()) {
            out.push_back(order_[i]);
            if (order_[i] == b)
                break;
        }
        return out;
    }

    /// a, a⁻, ..., b (inclusive).
    std::vector<vertex_t> backward(vertex_t a, vertex_t b) const
    {
        std::vector<vertex_t> out;
        const std::size_t n = order_.size();
        for (std::size_t i = position(a);; i = (i + n - 1) % n) {
            out.push_back(order_[i]);
            if (order_[i] == b)
                break;
        }
        return out;
    }

    /// a, a⁺, ... up to but excluding `stop`; empty when a == stop.
    std::vector<vertex_t> forward_until(vertex_t a, vertex_t stop) const
    {
        std::vector<vertex_t> out;
        for (std::size_t i = position(a); order_[i] != stop; i = (i + 1) % order_.size())
            out.push_back(order_[i]);
        return out;
    }

    OrientedCycle reversed() const
    {
        std::vector<vertex_t> r(order_.rbegin(), order_.rend());
        return OrientedCycle(std::move(r));
    }

    /// Normalized (min, max) edges, sorted.
    std::vector<edge_t> edges() const
    {
        std::vector<edge_t> out;
        for (std::size_t i = 0; i < order_.size(); ++i) {
            vertex_t a = order_[i], b = order_[(i + 1) % order_.size()];
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::ranges::sort(out);
        return out;
    }

    /// Consecutive vertices adjacent in g; simplicity holds by construction.
    bool valid_in(const Graph& g) const
    {
        if (order_.size() < 3)
            return false;
        for (std::size_t i = 0; i < order_.size(); ++i) {
            vertex_t a = order_[i], b = order_[(i + 1) % order_.size()];
            if (!g.has_vertex(a) || !g.has_vertex(b) || !g.adjacent(a, b))
                return false;
        }
        return true;
    }

    friend bool operator==(const OrientedCycle& a, const OrientedCycle& b)
    {
        return a.order_ == b.order_;
    }

private:
    std::vector<vertex_t> order_;
    std::unordered_map<vertex_t, std::size_t> index_;
};

struct HamiltonOptions {
    std::size_t dp_limit = 20;      // bitmask DP up to this many vertices
    std::size_t max_vertices = 64;  // backtracking beyond dp_limit, up to this
};

namespace detail {

using mask_t = std::uint64_t;

inline mask_t vbit(std::size_t v) { return mask_t{1} << v; }

inline std::vector<mask_t> adjacency_masks(const Graph& g)
{
    std::vector<mask_t> adj(g.size(), 0);
    for (vertex_t v = 0; v < g.size(); ++v)
        for (vertex_t y : g.neighbors(v))
            adj[v] |= vbit(y);
    return adj;
}

/// Exact refutations that need no search: minimum degree < 2, disconnected,
/// or the edges forced by degree-2 vertices overload a vertex or close a
/// cycle shorter than n.
inline bool hamiltonicity_refuted(const Graph& g)
{
    const std::size_t n = g.size();
    for (vertex_t v = 0; v < n; ++v)
        if (g.degree(v) < 2)
            return true;
    if (!is_connected(g))
        return true;
    std::vector<std::vector<vertex_t>> forced(n);
    std::vector<edge_t> edges;
    for (vertex_t v = 0; v < n; ++v)
        if (g.degree(v) == 2)
            for (vertex_t y : g.neighbors(v))
                if (g.degree(y) != 2 || v < y)
                    edges.emplace_back(std::min(v, y), std::max(v, y));
    std::ranges::sort(edges);
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [a, b] : edges) {
        forced[a].push_back(b);
        forced[b].push_back(a);
    }
    for (const auto& f : forced)
        if (f.size() > 2)
            return true;
    // a forced component that closes into a cycle must cover all vertices
    std::vector<bool> seen(n, false);
    for (vertex_t s = 0; s < n; ++s) {
        if (seen[s] || forced[s].empty())
            continue;
        std::size_t verts = 0, degsum = 0;
        std::vector<vertex_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            vertex_t x = stack.back();
            stack.pop_back();
            ++verts;
            degsum += forced[x].size();
            for (vertex_t y : forced[x])
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
        }
        if (degsum == 2 * verts && verts < n)
            return true;
    }
    return false;
}

inline std::optional<OrientedCycle> hamilton_dp(const Graph& g)
{
    const std::size_t n = g.size();
    const auto adj = adjacency_masks(g);
    // dp[mask] = endpoints v of a path starting at 0 covering exactly mask
    std::vector<std::uint32_t> dp(std::size_t{1} << n, 0);
    dp[1] = 1;
    const std::size_t full = (std::size_t{1} << n) - 1;
    for (std::size_t mask = 1; mask <= full; mask += 2) {
        std::uint32_t ends = dp[mask];
        while (ends) {
            const int v = std::countr_zero(ends);
            ends &= ends - 1;
            mask_t ext = adj[v] & ~static_cast<mask_t>(mask);
            while (ext) {
                const int w = std::countr_zero(ext);
                ext &= ext - 1;
                dp[mask | vbit(w)] |= std::uint32_t{1} << w;
            }
        }
    }
    std::uint32_t closing = dp[full] & static_cast<std::uint32_t>(adj[0]);
    if (!closing)
        return std::nullopt;
    std::vector<vertex_t> order;
    std::size_t mask = full;
    int v = std::countr_zero(closing);
    while (true) {
        order.push_back(static_cast<vertex_t>(v));
        if (v == 0)
            break;
        const std::size_t prev = mask & ~vbit(v);
        std::uint32_t cands = dp[prev] & static_cast<std::uint32_t>(adj[v]);
        mask = prev;
        v = std::countr_zero(cands);
    }
    std::ranges::reverse(order);
    return OrientedCycle(std::move(order));
}

class HamiltonSearch {
public:
    explicit HamiltonSearch(const Graph& g) : n_(g.size()), adj_(adjacency_masks(g))
    {
        all_ = n_ == 64 ? ~mask_t{0} : vbit(n_) - 1;
        start_ = 0;
        for (vertex_t v = 1; v < n_; ++v)
            if (g.degree(v) < g.degree(start_))
                start_ = v;
    }

    std::optional<OrientedCycle> run()
    {
        path_.assign(1, start_);
        if (!extend(start_, vbit(start_)))
            return std::nullopt;
        return OrientedCycle(std::vector<vertex_t>(path_.begin(), path_.end()));
    }

private:
    bool viable(std::size_t end, mask_t visited) const
    {
        const mask_t open = all_ & ~visited;
        const mask_t ends = vbit(end) | vbit(start_);
        for (mask_t c = open; c;) {
            const int x = std::countr_zero(c);
            c &= c - 1;
            const mask_t avail = adj_[x] & (open | ends);
            if (std::popcount(avail) < 2)
                return false;
        }
        // open vertices plus the current end must be connected
        mask_t reach = vbit(end), frontier = reach;
        const mask_t space = open | vbit(end);
        while (frontier) {
            mask_t next = 0;
            for (mask_t c = frontier; c;) {
                const int x = std::countr_zero(c);
                c &= c - 1;
                next |= adj_[x] & space;
            }
            frontier = next & ~reach;
            reach |= next;
        }
        return (reach & open) == open && (adj_[start_] & open) != 0;
    }

    bool extend(std::size_t end, mask_t visited)
    {
        if (path_.size() == n_)
            return (adj_[end] & vbit(start_)) != 0;
        if (!viable(end, visited))
            return false;
        const mask_t open = all_ & ~visited;
        // fewest onward options first, ties by lowest id
        std::vector<std::pair<int, int>> cands;
        for (mask_t c = adj_[end] & open; c;) {
            const int y = std::countr_zero(c);
            c &= c - 1;
            cands.emplace_back(std::popcount(adj_[y] & open), y);
        }
        std::ranges::sort(cands);
        for (auto [_, y] : cands) {
            path_.push_back(static_cast<vertex_t>(y));
            if (extend(static_cast<std::size_t>(y), visited | vbit(y)))
                return true;
            path_.pop_back();
        }
        return false;
    }

    std::size_t n_;
    std::vector<mask_t> adj_;
    mask_t all_ = 0;
    vertex_t start_ = 0;
    std::vector<vertex_t> path_;
};

} // namespace detail

/// Exact Hamilton cycle search. Graphs with fewer than 3 vertices have no
/// cycle. Throws budget_exceeded above `opts.max_vertices` (at most 64).
inline std::optional<OrientedCycle> hamilton_cycle(const Graph& g, const HamiltonOptions& opts = {})
{
    const std::size_t n = g.size();
    if (n > std::min<std::size_t>(opts.max_vertices, 64))
        throw budget_exceeded("hamilton_cycle: " + std::to_string(n) +
                              " vertices exceeds the exact bound of " +
                              std::to_string(std::min<std::size_t>(opts.max_vertices, 64)));
    if (n < 3 || detail::hamiltonicity_refuted(g))
        return std::nullopt;
    if (n <= std::min<std::size_t>(opts.dp_limit, 24))
        return detail::hamilton_dp(g);
    return detail::HamiltonSearch(g).run();
}

namespace detail {

/// BFS path from s to t avoiding `blocked` vertices and, optionally, the
/// edge (s, t) itself.
inline std::optional<std::vector<vertex_t>> bfs_path(const Graph& g, vertex_t s, vertex_t t,
                                                     const std::vector<bool>& blocked,
                                                     bool skip_direct_edge)
{
    std::vector<vertex_t> parent(g.size(), g.size());
    std::vector<bool> seen(g.size(), false);
    std::queue<vertex_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
        vertex_t x = q.front();
        q.pop();
        for (vertex_t y : g.neighbors(x)) {
            if (seen[y] || (blocked[y] && y != t))
                continue;
            if (skip_direct_edge && x == s && y == t)
                continue;
            seen[y] = true;
            parent[y] = x;
            if (y == t) {
                std::vector<vertex_t> path{t};
                for (vertex_t z = t; z != s;) {
                    z = parent[z];
                    path.push_back(z);
                }
                std::ranges::reverse(path);
                return path;
            }
            q.push(y);
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Shortest cycle through `a`: for each neighbor x in ascending order, a
/// shortest a-x path avoiding the edge ax; the shortest wins, ties to the
/// lowest x.
inline std::optional<OrientedCycle> shortest_cycle_through(const Graph& g, vertex_t a)
{
    std::optional<std::vector<vertex_t>> best;
    std::vector<bool> blocked(g.size(), false);
    for (vertex_t x : g.neighbors(a)) {
        auto p = detail::bfs_path(g, a, x, blocked, true);
        if (p && (!best || p->size() < best->size()))
            best = std::move(p);
    }
    if (!best)
        return std::nullopt;
    return OrientedCycle(std::move(*best));
}

struct CycleSearchOptions {
    std::size_t max_vertices = 256;
};

namespace detail {

/// Depth-first search for a cycle through an anchor covering a target set.
///
/// At every node the partial path anchor..end is viable only if, in the graph
/// with the path interior removed plus a virtual edge end-anchor, every
/// remaining target lies in the block containing that virtual edge. The next
/// vertex is restricted to the same block.
class CycleThroughSearch {
public:
    CycleThroughSearch(const Graph& g, std::vector<vertex_t> targets, vertex_t anchor)
        : g_(g), anchor_(anchor), is_target_(g.size(), false), on_path_(g.size(), false)
    {
        for (vertex_t t : targets)
            is_target_[t] = true;
        remaining_ = std::ranges::count(is_target_, true);
    }

    std::optional<OrientedCycle> run()
    {
        path_ = {anchor_};
        on_path_[anchor_] = true;
        if (is_target_[anchor_])
            --remaining_;
        if (dfs())
            return OrientedCycle(path_);
        return std::nullopt;
    }

private:
    /// Vertices of the block of R + (end, anchor) that holds the virtual
    /// edge, where R = G minus the path interior. Empty if end == anchor.
    std::vector<bool> virtual_block(vertex_t end)
    {
        const std::size_t n = g_.size();
        std::vector<bool> removed(n, false);
        for (std::size_t i = 1; i + 1 < path_.size(); ++i)
            removed[path_[i]] = true;
        // Tarjan's edge-stack biconnected components rooted at anchor
        std::vector<int> disc(n, -1), low(n, 0);
        std::vector<edge_t> estack;
        std::vector<bool> block(n, false);
        bool found = false;
        int timer = 0;
        auto nbrs = [&](vertex_t x) {
            std::vector<vertex_t> out;
            for (vertex_t y : g_.neighbors(x))
                if (!removed[y])
                    out.push_back(y);
            if (x == end && !g_.adjacent(end, anchor_))
                out.push_back(anchor_);
            if (x == anchor_ && !g_.adjacent(end, anchor_))
                out.push_back(end);
            return out;
        };
        struct Frame {
            vertex_t v;
            vertex_t parent;
            std::vector<vertex_t> nb;
            std::size_t i;
        };
        std::vector<Frame> stack;
        disc[anchor_] = low[anchor_] = timer++;
        stack.push_back({anchor_, static_cast<vertex_t>(n), nbrs(anchor_), 0});
        const edge_t target_edge{std::min(end, anchor_), std::max(end, anchor_)};
        while (!stack.empty() && !found) {
            Frame& f = stack.back();
            if (f.i < f.nb.size()) {
                vertex_t y = f.nb[f.i++];
                if (disc[y] < 0) {
                    estack.emplace_back(f.v, y);
                    disc[y] = low[y] = timer++;
                    vertex_t v = f.v;
                    stack.push_back({y, v, nbrs(y), 0});
                } else if (y != f.parent && disc[y] < disc[f.v]) {
                    estack.emplace_back(f.v, y);
                    low[f.v] = std::min(low[f.v], disc[y]);
                }
                continue;
            }
            const vertex_t v = f.v, p = f.parent;
            stack.pop_back();
            if (stack.empty())
                break;
            low[p] = std::min(low[p], low[v]);
            if (low[v] >= disc[p]) {
                std::vector<vertex_t> members;
                bool has_target_edge = false;
                while (!estack.empty()) {
                    edge_t e = estack.back();
                    estack.pop_back();
                    members.push_back(e.first);
                    members.push_back(e.second);
                    if (edge_t{std::min(e.first, e.second), std::max(e.first, e.second)} ==
                        target_edge)
                        has_target_edge = true;
                    if (e == edge_t{p, v})
                        break;
                }
                if (has_target_edge) {
                    for (vertex_t m : members)
                        block[m] = true;
                    found = true;
                }
            }
        }
        return block;
    }

    bool closes() const
    {
        const vertex_t end = path_.back();
        return path_.size() >= 3 && g_.adjacent(end, anchor_);
    }

    bool finish()
    {
        // all targets collected: any end-anchor path through unused vertices
        const vertex_t end = path_.back();
        if (closes())
            return true;
        auto tail = detail::bfs_path(g_, end, anchor_, on_path_, path_.size() == 2);
        if (!tail)
            return false;
        for (std::size_t i = 1; i + 1 < tail->size(); ++i)
            path_.push_back((*tail)[i]);
        return path_.size() >= 3;
    }

    bool dfs()
    {
        if (remaining_ == 0 && path_.size() > 1)
            return finish();
        const vertex_t end = path_.back();
        std::vector<bool> allowed;
        if (end != anchor_) {
            allowed = virtual_block(end);
            for (vertex_t t = 0; t < g_.size(); ++t)
                if (is_target_[t] && !on_path_[t] && !allowed[t])
                    return false;
        } else {
            allowed.assign(g_.size(), true);
        }
        std::vector<vertex_t> cands;
        for (vertex_t y : g_.neighbors(end))
            if (!on_path_[y] && allowed[y])
                cands.push_back(y);
        std::ranges::stable_partition(cands, [&](vertex_t y) { return is_target_[y]; });
        for (vertex_t y : cands) {
            path_.push_back(y);
            on_path_[y] = true;
            if (is_target_[y])
                --remaining_;
            if (dfs())
                return true;
            if (is_target_[y])
                ++remaining_;
            on_path_[y] = false;
            path_.pop_back();
        }
        return false;
    }

    const Graph& g_;
    vertex_t anchor_;
    std::vector<bool> is_target_;
    std::vector<bool> on_path_;
    std::vector<vertex_t> path_;
    std::ptrdiff_t remaining_ = 0;
};

} // namespace detail

/// Exact search for a cycle containing every vertex of `s`; `anchor` must be
/// in `s`. Two-element sets are decided by local connectivity.
inline std::optional<OrientedCycle> cycle_through(const Graph& g, const std::vector<vertex_t>& s,
                                                  vertex_t anchor,
                                                  const CycleSearchOptions& opts = {})
{
    if (g.size() > opts.max_vertices)
        throw budget_exceeded("cycle_through: " + std::to_string(g.size()) +
                              " vertices exceeds the exact bound of " +
                              std::to_string(opts.max_vertices));
    if (std::ranges::find(s, anchor) == s.end())
        throw invalid_input("cycle_through: anchor must belong to S");
    for (vertex_t v : s)
        if (!g.has_vertex(v))
            throw invalid_input("cycle_through: unknown vertex " + std::to_string(v));
    std::vector<vertex_t> targets(s.begin(), s.end());
    std::ranges::sort(targets);
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    if (targets.size() == 1)
        return shortest_cycle_through(g, anchor);
    if (targets.size() == 2) {
        const vertex_t other = targets[0] == anchor ? targets[1] : targets[0];
        auto lc = local_connectivity(g, anchor, other, 2);
        if (lc.value < 2)
            return std::nullopt;
        const auto& p = lc.system.paths[0];
        const auto& q = lc.system.paths[1];
        std::vector<vertex_t> order(p.begin(), p.end() - 1);
        order.push_back(other);
        for (std::size_t i = q.size() - 2; i >= 1; --i)
            order.push_back(q[i]);
        return OrientedCycle(std::move(order));
    }
    return detail::CycleThroughSearch(g, std::move(targets), anchor).run();
}

enum class Rule { insertion = 1, common_neighbor = 2, crossing_chord = 3, detour = 4, disjoint_paths = 5 };

inline std::string rule_name(Rule r)
{
    switch (r) {
    case Rule::insertion: return "R1";
    case Rule::common_neighbor: return "R2";
    case Rule::crossing_chord: return "R3";
    case Rule::detour: return "R4";
    case Rule::disjoint_paths: return "R5";
    }
    return "?";
}

inline const std::vector<Rule>& default_rule_order()
{
    static const std::vector<Rule> order{Rule::insertion, Rule::common_neighbor,
                                         Rule::crossing_chord, Rule::disjoint_paths, Rule::detour};
    return order;
}

/// One application of an extension rule: the removed cycle edges, the added
/// edges, and the resulting cycle. E(result) = E(input) - removed + added.
struct ExtensionMove {
    Rule rule = Rule::insertion;
    vertex_t pivot = 0; // the off-cycle vertex the rule was applied to
    std::vector<edge_t> removed;
    std::vector<edge_t> added;
    OrientedCycle result;
};

struct ExtensionContext {
    vertex_t v = 0;                          // off-cycle vertex
    const std::vector<bool>* region = nullptr; // vertices paths may use; null = all
    std::vector<Rule> order = default_rule_order();
};

namespace detail {

inline edge_t norm(vertex_t a, vertex_t b) { return {std::min(a, b), std::max(a, b)}; }

inline void add_path_edges(std::vector<edge_t>& out, const std::vector<vertex_t>& path)
{
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        out.push_back(norm(path[i], path[i + 1]));
}

class Extender {
public:
    Extender(const Graph& g, const OrientedCycle& c, const ExtensionContext& ctx)
        : g_(g), c_(c), ctx_(ctx)
    {
    }

    std::optional<ExtensionMove> run() const
    {
        const vertex_t v = ctx_.v;
        if (c_.contains(v) || !in_region(v))
            return std::nullopt;
        for (Rule r : ctx_.order)
            for (const OrientedCycle* c : {&c_, &reversed()})
                if (auto m = apply(r, *c))
                    return m;
        return std::nullopt;
    }

private:
    const OrientedCycle& reversed() const
    {
        if (!rev_)
            rev_ = c_.reversed();
        return *rev_;
    }

    bool in_region(vertex_t x) const { return !ctx_.region || (*ctx_.region)[x]; }

    std::vector<vertex_t> cycle_neighbors(const OrientedCycle& c, vertex_t v) const
    {
        std::vector<vertex_t> w;
        for (vertex_t x : c.order())
            if (g_.adjacent(v, x))
                w.push_back(x);
        return w;
    }

    std::optional<ExtensionMove> make(Rule r, std::vector<vertex_t> seq, std::vector<edge_t> removed,
                                      std::vector<edge_t> added) const
    {
        if (seq.size() <= c_.size())
            return std::nullopt;
        OrientedCycle out;
        try {
            out = OrientedCycle(std::move(seq));
        } catch (const invalid_input&) {
            return std::nullopt;
        }
        if (!out.valid_in(g_))
            return std::nullopt;
        for (vertex_t x : out.order())
            if (!c_.contains(x) && !in_region(x))
                return std::nullopt;
        std::ranges::sort(removed);
        std::ranges::sort(added);
        return ExtensionMove{r, ctx_.v, std::move(removed), std::move(added), std::move(out)};
    }

    std::optional<ExtensionMove> apply(Rule r, const OrientedCycle& c) const
    {
        switch (r) {
        case Rule::insertion: return insertion(c);
        case Rule::common_neighbor: return common_neighbor(c);
        case Rule::crossing_chord: return crossing_chord(c);
        case Rule::detour: return detour(c);
        case Rule::disjoint_paths: return disjoint_paths(c);
        }
        return std::nullopt;
    }

    // R1: v adjacent to consecutive w, w⁺.
    std::optional<ExtensionMove> insertion(const OrientedCycle& c) const
    {
        const vertex_t v = ctx_.v;
        for (vertex_t w : cycle_neighbors(c, v)) {
            const vertex_t wp = c.succ(w);
            if (!g_.adjacent(v, wp))
                continue;
            std::vector<vertex_t> seq{w, v};
            auto rest = c.forward_until(wp, w);
            seq.insert(seq.end(), rest.begin(), rest.end());
            return make(Rule::insertion, std::move(seq), {norm(w, wp)}, {norm(w, v), norm(v, wp)});
        }
        return std::nullopt;
    }

    // R2: w_i v z w_i⁺ →C w_i with z off the cycle.
    std::optional<ExtensionMove> common_neighbor(const OrientedCycle& c) const
    {
        const vertex_t v = ctx_.v;
        for (vertex_t w : cycle_neighbors(c, v)) {
            const vertex_t wp = c.succ(w);
            for (vertex_t z : g_.neighbors(v)) {
                if (z == wp || c.contains(z) || !in_region(z) || !g_.adjacent(z, wp))
                    continue;
                std::vector<vertex_t> seq{w, v, z};
                auto rest = c.forward_until(wp, w);
                seq.insert(seq.end(), rest.begin(), rest.end());
                return make(Rule::common_neighbor, std::move(seq), {norm(w, wp)},
                            {norm(w, v), norm(v, z), norm(z, wp)});
            }
        }
        return std::nullopt;
    }

    // R3: w_i v w_j ←C w_i⁺ w_j⁺ →C w_i.
    std::optional<ExtensionMove> crossing_chord(const OrientedCycle& c) const
    {
        const vertex_t v = ctx_.v;
        const auto w = cycle_neighbors(c, v);
        for (vertex_t wi : w) {
            const vertex_t wip = c.succ(wi);
            for (vertex_t wj : w) {
                if (wj == wi || wj == wip || wj == c.pred(wi))
                    continue;
                const vertex_t wjp = c.succ(wj);
                if (!g_.adjacent(wip, wjp))
                    continue;
                std::vector<vertex_t> seq{wi, v};
                auto back = c.backward(wj, wip);
                seq.insert(seq.end(), back.begin(), back.end());
                auto fwd = c.forward_until(wjp, wi);
                seq.insert(seq.end(), fwd.begin(), fwd.end());
                return make(Rule::crossing_chord, std::move(seq), {norm(wi, wip), norm(wj, wjp)},
                            {norm(wi, v), norm(v, wj), norm(wip, wjp)});
            }
        }
        return std::nullopt;
    }

    // R4: detour through G_2(w) - w. From v, an off-cycle path inside
    // M_2(w) \ {w} reaching the cycle first at z. Splices
    //   w⁻ w⁺ w v ... z →C w⁻             when w⁻w⁺ ∈ E and z = w⁺⁺,
    //   w⁻ z ... v w →C z⁻ z⁺ →C w⁻       when w⁻z, z⁻z⁺ ∈ E.
    std::optional<ExtensionMove> detour(const OrientedCycle& c) const
    {
        const vertex_t v = ctx_.v;
        if (c.size() < 4)
            return std::nullopt;
        for (vertex_t w : cycle_neighbors(c, v)) {
            const vertex_t wm = c.pred(w), wp = c.succ(w);
            // region M_2(w) \ {w}
            std::vector<bool> near(g_.size(), false);
            for (vertex_t x : g_.neighbors(w)) {
                near[x] = true;
                for (vertex_t y : g_.neighbors(x))
                    near[y] = true;
            }
            near[w] = false;
            // BFS from v through off-cycle vertices; record first cycle hits
            std::vector<vertex_t> parent(g_.size(), g_.size());
            std::vector<bool> seen(g_.size(), false);
            std::vector<vertex_t> hits;
            std::queue<vertex_t> q;
            q.push(v);
            seen[v] = true;
            while (!q.empty()) {
                vertex_t x = q.front();
                q.pop();
                for (vertex_t y : g_.neighbors(x)) {
                    if (seen[y] || !near[y] || !in_region(y))
                        continue;
                    seen[y] = true;
                    parent[y] = x;
                    if (c.contains(y))
                        hits.push_back(y);
                    else
                        q.push(y);
                }
            }
            std::ranges::sort(hits, [&](vertex_t a, vertex_t b) {
                return c.position(a) < c.position(b);
            });
            for (vertex_t z : hits) {
                std::vector<vertex_t> tail; // v ... z
                for (vertex_t x = z; x != v; x = parent[x])
                    tail.push_back(x);
                tail.push_back(v);
                std::ranges::reverse(tail);
                if (z == c.succ(wp) && g_.adjacent(wm, wp) && z != wm) {
                    std::vector<vertex_t> seq{wm, wp, w};
                    seq.insert(seq.end(), tail.begin(), tail.end() - 1);
                    auto rest = c.forward_until(z, wm);
                    seq.insert(seq.end(), rest.begin(), rest.end());
                    std::vector<edge_t> added{norm(wm, wp), norm(w, v)};
                    add_path_edges(added, tail);
                    if (auto m = make(Rule::detour, std::move(seq), {norm(wm, w), norm(wp, z)},
                                      std::move(added)))
                        return m;
                }
                const vertex_t zm = c.pred(z), zp = c.succ(z);
                if (z != wm && zp != wm && g_.adjacent(wm, z) && g_.adjacent(zm, zp)) {
                    std::vector<vertex_t> seq{wm};
                    seq.insert(seq.end(), tail.rbegin(), tail.rend());
                    auto mid = c.forward_until(w, z);
                    seq.insert(seq.end(), mid.begin(), mid.end());
                    auto rest = c.forward_until(zp, wm);
                    seq.insert(seq.end(), rest.begin(), rest.end());
                    std::vector<edge_t> added{norm(wm, z), norm(v, w), norm(zm, zp)};
                    add_path_edges(added, tail);
                    if (auto m = make(Rule::detour, std::move(seq),
                                      {norm(wm, w), norm(zm, z), norm(z, zp)}, std::move(added)))
                        return m;
                }
            }
        }
        return std::nullopt;
    }

    // R5: internally disjoint paths P_i, P_j from v meeting the cycle only at
    // their ends v_i, v_j, with v_i⁺v_j⁺ ∈ E: drop v_iv_i⁺, v_jv_j⁺, add
    // v_i⁺v_j⁺ and both paths. With v_j = v_i⁺ the paths replace v_iv_i⁺.
    std::optional<ExtensionMove> disjoint_paths(const OrientedCycle& c) const
    {
        const vertex_t v = ctx_.v;
        std::vector<bool> allowed(g_.size(), false);
        for (vertex_t x = 0; x < g_.size(); ++x)
            allowed[x] = !c.contains(x) && in_region(x);
        auto fan = detail::disjoint_fan(g_, v, c.order(), 1, &allowed);
        if (fan.value < 2)
            return std::nullopt;
        std::vector<std::vector<vertex_t>> paths = std::move(fan.paths);
        std::ranges::sort(paths, [&](const auto& a, const auto& b) {
            return c.position(a.back()) < c.position(b.back());
        });
        for (const auto& pi : paths)
            for (const auto& pj : paths) {
                const vertex_t vi = pi.back(), vj = pj.back();
                if (vi == vj)
                    continue;
                const vertex_t vip = c.succ(vi), vjp = c.succ(vj);
                std::vector<vertex_t> seq(pi.rbegin(), pi.rend()); // vi ... v
                seq.insert(seq.end(), pj.begin() + 1, pj.end());   // ... vj
                std::vector<edge_t> added;
                add_path_edges(added, pi);
                add_path_edges(added, pj);
                if (vj == vip) {
                    auto rest = c.forward_until(c.succ(vj), vi);
                    seq.insert(seq.end(), rest.begin(), rest.end());
                    if (auto m = make(Rule::disjoint_paths, std::move(seq), {norm(vi, vip)},
                                      std::move(added)))
                        return m;
                    continue;
                }
                if (vj == c.pred(vi) || !g_.adjacent(vip, vjp))
                    continue;
                seq.pop_back();
                auto back = c.backward(vj, vip);
                seq.insert(seq.end(), back.begin(), back.end());
                auto fwd = c.forward_until(vjp, vi);
                seq.insert(seq.end(), fwd.begin(), fwd.end());
                added.push_back(norm(vip, vjp));
                if (auto m = make(Rule::disjoint_paths, std::move(seq),
                                  {norm(vi, vip), norm(vj, vjp)}, std::move(added)))
                    return m;
            }
        return std::nullopt;
    }

    const Graph& g_;
    const OrientedCycle& c_;
    const ExtensionContext& ctx_;
    mutable std::optional<OrientedCycle> rev_;
};

} // namespace detail

/// Tries the rules in `ctx.order` on off-cycle vertex ctx.v, each in both
/// orientations of c; returns the first strictly longer valid cycle.
inline std::optional<ExtensionMove> extend_cycle(const Graph& g, const OrientedCycle& c,
                                                 const ExtensionContext& ctx)
{
    if (!c.valid_in(g))
        throw invalid_input("extend_cycle: cycle is not valid in the host");
    if (ctx.region && ctx.region->size() != g.size())
        throw invalid_input("extend_cycle: region mask size mismatch");
    return detail::Extender(g, c, ctx).run();
}

class hypothesis_violation : public error {
public:
    using error::error;
};

struct TraceEntry {
    std::string step; // "initial", "R1".."R5", "fallback"
    vertex_t pivot = 0;
    std::size_t length = 0; // cycle length after the step
};

/// Which hypothesis guided_cycle_through checks before searching. `none` is
/// for hosts certified by a different local condition checked elsewhere.
enum class GuidedHypothesis { m2, none };

struct GuidedOptions {
    std::vector<Rule> order = default_rule_order();
    CycleSearchOptions exact{};
    GuidedHypothesis hypothesis = GuidedHypothesis::m2;
    int radius_margin = 5; // required ball radius is q + radius_margin
};

struct GuidedResult {
    std::optional<OrientedCycle> cycle; // host ids
    std::vector<TraceEntry> trace;
    bool fallback_used = false;
    bool fallback_absence = false; // exact search certified no cycle exists
};

/// Cycle through S inside a ball, built by the extension engine: shortest
/// cycle through the anchor, then rules until S is covered or no rule fires,
/// then the exact search as a recorded fallback. The ball must have radius
/// >= q + margin (q = largest distance between members of S) unless it is
/// its whole component, and under GuidedHypothesis::m2 both degree-bound
/// clauses must hold at every center whose radius-2 ball lies inside it;
/// otherwise throws hypothesis_violation.
inline GuidedResult guided_cycle_through(const Ball& b, const std::vector<vertex_t>& s_host,
                                         vertex_t anchor_host, const GuidedOptions& opts = {})
{
    const Graph& g = b.graph;
    std::vector<vertex_t> s;
    for (vertex_t h : s_host)
        s.push_back(b.local(h));
    const vertex_t a = b.local(anchor_host);
    if (std::ranges::find(s, a) == s.end())
        throw invalid_input("guided_cycle_through: anchor must belong to S");

    int q = 0;
    for (vertex_t x : s) {
        auto d = distances_from(g, x);
        for (vertex_t y : s) {
            if (d[y] < 0)
                throw hypothesis_violation("S is not connected inside the ball");
            q = std::max(q, d[y]);
        }
    }
    if (!b.is_closed() && b.radius < q + opts.radius_margin)
        throw hypothesis_violation("ball radius " + std::to_string(b.radius) + " < q + " +
                                   std::to_string(opts.radius_margin) + " = " +
                                   std::to_string(q + opts.radius_margin));
    if (opts.hypothesis == GuidedHypothesis::m2) {
        std::vector<vertex_t> relevant;
        for (vertex_t x = 0; x < g.size(); ++x)
            if (b.is_closed() || b.dist[x] <= b.radius - 2)
                relevant.push_back(x);
        auto rep = m2_condition(g, relevant);
        if (!rep.verdict())
            throw hypothesis_violation(
                "degree-bound hypothesis fails inside the ball (" +
                std::string(rep.balls_2connected.verdict ? "degree-sum clause" : "2-connected radius-2 balls clause") +
                ")");
    }

    GuidedResult res;
    auto to_host = [&](const OrientedCycle& c) {
        return OrientedCycle(b.to_host_ids(c.order()));
    };
    auto covers = [&](const OrientedCycle& c) {
        return std::ranges::all_of(s, [&](vertex_t x) { return c.contains(x); });
    };

    auto cyc = shortest_cycle_through(g, a);
    if (cyc) {
        res.trace.push_back({"initial", anchor_host, cyc->size()});
        while (!covers(*cyc)) {
            // candidates: uncovered S vertices first, then by distance from the center
            std::vector<vertex_t> cands;
            for (vertex_t x : s)
                if (!cyc->contains(x))
                    cands.push_back(x);
            std::ranges::sort(cands);
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            for (vertex_t x = 0; x < g.size(); ++x)
                if (!cyc->contains(x) && std::ranges::find(cands, x) == cands.end())
                    cands.push_back(x);
            std::optional<ExtensionMove> move;
            for (Rule r : opts.order) {
                for (vertex_t v : cands) {
                    ExtensionContext ctx{v, nullptr, {r}};
                    if ((move = extend_cycle(g, *cyc, ctx)))
                        break;
                }
                if (move)
                    break;
            }
            if (!move)
                break;
            res.trace.push_back({rule_name(move->rule), b.host(move->pivot), move->result.size()});
            cyc = std::move(move->result);
        }
        if (covers(*cyc)) {
            res.cycle = to_host(*cyc);
            return res;
        }
    }
    res.fallback_used = true;
    auto exact = cycle_through(g, s, a, opts.exact);
    res.trace.push_back({"fallback", anchor_host, exact ? exact->size() : 0});
    if (exact)
        res.cycle = to_host(*exact);
    else
        res.fallback_absence = true;
    return res;
}

struct BallVerdict {
    vertex_t center = 0;
    int radius = 0;
    std::size_t size = 0;
    bool hamiltonian = false;
    bool undetermined = false; // exceeded the exact bound
    std::optional<OrientedCycle> cycle; // host ids
};

struct HamiltonSweep {
    ConditionReport report;
    std::vector<BallVerdict> balls;
    std::size_t undetermined = 0;
};

struct SweepOptions {
    HamiltonOptions exact{};
    BallOptions ball{};
    bool skip_closed_balls = false; // skip a ball equal to its whole component
    bool keep_cycles = false;
};

/// Hamiltonicity of G_r(u) for every center and r = 1..r_max. Radii stop
/// growing once a ball is its whole component. Balls over the exact bound
/// are recorded as undetermined, not failures.
template <Host H>
HamiltonSweep uniformly_hamiltonian(const H& host, const std::vector<vertex_t>& centers, int r_max,
                                    const SweepOptions& opts = {})
{
    std::vector<std::vector<BallVerdict>> per_center(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        const vertex_t u = centers[i];
        for (int r = 1; r <= r_max; ++r) {
            Ball b = ball(host, u, r, opts.ball);
            const bool closed = b.is_closed();
            if (closed && opts.skip_closed_balls)
                break;
            BallVerdict v{u, r, b.size(), false, false, std::nullopt};
            try {
                auto c = hamilton_cycle(b.graph, opts.exact);
                v.hamiltonian = c.has_value();
                if (c && opts.keep_cycles)
                    v.cycle = OrientedCycle(b.to_host_ids(c->order()));
            } catch (const budget_exceeded&) {
                v.undetermined = true;
            }
            per_center[i].push_back(std::move(v));
            if (closed)
                break;
        }
    });
    HamiltonSweep sweep;
    sweep.report = {"uniformly-hamiltonian", "M_r(u)", centers};
    for (auto& list : per_center)
        for (auto& v : list) {
            if (v.undetermined)
                ++sweep.undetermined;
            else if (!v.hamiltonian)
                sweep.report.fail(CenterFailure{v.center, v.radius, "ball not Hamiltonian", {}, {},
                                                static_cast<std::int64_t>(v.size), 0});
            sweep.balls.push_back(std::move(v));
        }
    if (sweep.undetermined)
        sweep.report.notes.push_back(std::to_string(sweep.undetermined) +
                                     " balls exceeded the exact bound");
    return sweep;
}

} // namespace ballscope
