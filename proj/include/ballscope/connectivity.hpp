#pragma once

// Exact vertex connectivity via unit vertex-capacity max-flow on the split
// digraph, Menger path systems, and ball-connectivity propagation checks.

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ballscope/graph.hpp"
#include "ballscope/report.hpp"

namespace ballscope {

/// Paths from `source` to `target`, pairwise sharing only their endpoints.
struct PathSystem {
    vertex_t source = 0;
    vertex_t target = 0;
    std::vector<std::vector<vertex_t>> paths;
};

struct LocalConnectivity {
    std::size_t value = 0;
    PathSystem system;
    /// Minimum u-v separator; present iff u and v are nonadjacent.
    std::optional<std::vector<vertex_t>> separator;
};

namespace detail {

class FlowNetwork {
public:
    static constexpr int infinite = std::numeric_limits<int>::max() / 4;

    explicit FlowNetwork(std::size_t nodes) : arcs_(nodes) {}

    void add_arc(std::size_t a, std::size_t b, int cap)
    {
        arcs_[a].push_back({b, cap, 0, arcs_[b].size(), true});
        arcs_[b].push_back({a, 0, 0, arcs_[a].size() - 1, false});
    }

    /// Edmonds-Karp; arcs are scanned in insertion order, so augmenting
    /// paths are found deterministically.
    std::size_t max_flow(std::size_t s, std::size_t t, std::size_t limit)
    {
        std::size_t flow = 0;
        std::vector<std::pair<std::size_t, std::size_t>> parent(arcs_.size());
        while (flow < limit) {
            std::vector<bool> seen(arcs_.size(), false);
            std::queue<std::size_t> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty() && !seen[t]) {
                std::size_t x = q.front();
                q.pop();
                for (std::size_t i = 0; i < arcs_[x].size(); ++i) {
                    const Arc& a = arcs_[x][i];
                    if (!seen[a.to] && a.cap - a.flow > 0) {
                        seen[a.to] = true;
                        parent[a.to] = {x, i};
                        q.push(a.to);
                    }
                }
            }
            if (!seen[t])
                break;
            for (std::size_t y = t; y != s;) {
                auto [x, i] = parent[y];
                Arc& a = arcs_[x][i];
                a.flow += 1;
                arcs_[y][a.rev].flow -= 1;
                y = x;
            }
            ++flow;
        }
        return flow;
    }

    std::vector<bool> residual_reachable(std::size_t s) const
    {
        std::vector<bool> seen(arcs_.size(), false);
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (const Arc& a : arcs_[x])
                if (!seen[a.to] && a.cap - a.flow > 0) {
                    seen[a.to] = true;
                    stack.push_back(a.to);
                }
        }
        return seen;
    }

    /// Takes one unit of flow along the original arc from `x` with lowest
    /// head node; returns that head.
    std::optional<std::size_t> take_flow(std::size_t x)
    {
        Arc* best = nullptr;
        for (Arc& a : arcs_[x])
            if (a.original && a.flow > 0 && (!best || a.to < best->to))
                best = &a;
        if (!best)
            return std::nullopt;
        best->flow -= 1;
        return best->to;
    }

private:
    struct Arc {
        std::size_t to;
        int cap;
        int flow;
        std::size_t rev;
        bool original;
    };
    std::vector<std::vector<Arc>> arcs_;
};

struct FanResult {
    std::size_t value = 0;
    std::vector<std::vector<vertex_t>> paths;
    std::vector<bool> source_side; // per node of the split network
};

/// Paths from `source` ending at the first vertex of `targets` they reach,
/// pairwise disjoint apart from `source`, each target absorbing at most
/// `per_target` paths. Internal vertices must satisfy `allowed` (null = all).
inline FanResult disjoint_fan(const Graph& g, vertex_t source, const std::vector<vertex_t>& targets,
                              int per_target, const std::vector<bool>* allowed,
                              std::size_t limit = std::numeric_limits<std::size_t>::max())
{
    const std::size_t n = g.size();
    auto in = [](vertex_t x) { return 2 * static_cast<std::size_t>(x); };
    auto out = [](vertex_t x) { return 2 * static_cast<std::size_t>(x) + 1; };
    const std::size_t sink = 2 * n;
    std::vector<bool> is_target(n, false);
    for (vertex_t t : targets)
        is_target.at(t) = true;
    FlowNetwork net(2 * n + 1);
    for (vertex_t x = 0; x < n; ++x) {
        if (x == source)
            continue;
        if (is_target[x])
            net.add_arc(in(x), sink, per_target);
        else if (!allowed || (*allowed)[x])
            net.add_arc(in(x), out(x), 1);
    }
    for (vertex_t x = 0; x < n; ++x) {
        if (is_target[x] || (x != source && allowed && !(*allowed)[x]))
            continue;
        for (vertex_t y : g.neighbors(x)) {
            if (y == source || (!is_target[y] && allowed && !(*allowed)[y]))
                continue;
            const int cap = (x == source && is_target[y]) ? 1 : FlowNetwork::infinite;
            net.add_arc(out(x), in(y), cap);
        }
    }
    FanResult res;
    res.value = net.max_flow(out(source), sink, limit);
    res.source_side = net.residual_reachable(out(source));
    for (std::size_t p = 0; p < res.value; ++p) {
        std::vector<vertex_t> path{source};
        std::size_t node = out(source);
        while (true) {
            auto next = net.take_flow(node);
            if (!next || *next == sink)
                break;
            const vertex_t y = *next / 2;
            path.push_back(y);
            if (is_target[y]) {
                net.take_flow(in(y));
                break;
            }
            net.take_flow(in(y));
            node = out(y);
        }
        res.paths.push_back(std::move(path));
    }
    return res;
}

} // namespace detail

/// Maximum number of internally disjoint u-v paths (an edge uv counts as one
/// path), with a realizing path system and, for nonadjacent u, v, a minimum
/// separator. Augmentation stops once `limit` paths are found.
inline LocalConnectivity local_connectivity(const Graph& g, vertex_t u, vertex_t v,
                                            std::size_t limit =
                                                std::numeric_limits<std::size_t>::max())
{
    if (!g.has_vertex(u) || !g.has_vertex(v))
        throw invalid_input("unknown vertex in local_connectivity");
    if (u == v)
        throw invalid_input("local_connectivity needs distinct vertices");
    auto fan = detail::disjoint_fan(g, u, {v}, detail::FlowNetwork::infinite, nullptr, limit);
    LocalConnectivity res;
    res.value = fan.value;
    res.system = {u, v, std::move(fan.paths)};
    std::ranges::sort(res.system.paths);
    if (!g.adjacent(u, v) && fan.value < limit) {
        std::vector<vertex_t> sep;
        for (vertex_t x = 0; x < g.size(); ++x)
            if (x != u && x != v && fan.source_side[2 * x] && !fan.source_side[2 * x + 1])
                sep.push_back(x);
        res.separator = std::move(sep);
    }
    return res;
}

/// Checks simplicity, endpoints, edges and internal disjointness.
inline bool is_valid_path_system(const Graph& g, const PathSystem& ps)
{
    std::vector<bool> used(g.size(), false);
    for (const auto& p : ps.paths) {
        if (p.size() < 2 || p.front() != ps.source || p.back() != ps.target)
            return false;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (!g.has_vertex(p[i]) || !g.has_vertex(p[i + 1]) || !g.adjacent(p[i], p[i + 1]))
                return false;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            if (used[p[i]] || p[i] == ps.source || p[i] == ps.target)
                return false;
            used[p[i]] = true;
        }
    }
    // at most one path may be the bare edge
    return std::ranges::count_if(ps.paths, [](const auto& p) { return p.size() == 2; }) <= 1;
}

namespace detail {

inline CutWitness make_cut(const Graph& g, std::vector<vertex_t> separator, vertex_t side_of)
{
    std::vector<bool> removed(g.size(), false);
    for (vertex_t s : separator)
        removed[s] = true;
    CutWitness w;
    w.separator = std::move(separator);
    for (auto& comp : components(g, &removed)) {
        if (std::ranges::binary_search(comp, side_of))
            w.side_a = comp;
        else
            w.side_b.insert(w.side_b.end(), comp.begin(), comp.end());
    }
    std::ranges::sort(w.side_b);
    w.disconnects = !w.side_a.empty() && !w.side_b.empty();
    return w;
}

inline CutWitness trivial_cut(const Graph& g)
{
    CutWitness w;
    w.disconnects = false;
    for (vertex_t x = 1; x < g.size(); ++x)
        w.separator.push_back(x);
    if (g.size() > 0)
        w.side_a = {0};
    return w;
}

struct Connectivity {
    std::size_t kappa = 0;
    std::optional<CutWitness> witness;
};

/// Connectivity with early exit: stops as soon as a cut smaller than
/// `target` is found. Any minimum separator misses one of the first
/// kappa+1 vertices, so only those need to be tried as sources.
inline Connectivity connectivity(const Graph& g, std::size_t target)
{
    const std::size_t n = g.size();
    if (n <= 1)
        return {0, trivial_cut(g)};
    auto comps = components(g);
    if (comps.size() > 1) {
        CutWitness w;
        w.side_a = comps[0];
        for (std::size_t i = 1; i < comps.size(); ++i)
            w.side_b.insert(w.side_b.end(), comps[i].begin(), comps[i].end());
        std::ranges::sort(w.side_b);
        return {0, w};
    }
    if (g.is_complete())
        return {n - 1, trivial_cut(g)};
    std::size_t best = n - 1;
    std::optional<CutWitness> witness = trivial_cut(g);
    for (vertex_t i = 0; i < n && i <= best; ++i) {
        for (vertex_t w = 0; w < n; ++w) {
            if (w == i || g.adjacent(i, w))
                continue;
            auto lc = local_connectivity(g, i, w, best);
            if (lc.value < best) {
                best = lc.value;
                witness = make_cut(g, *lc.separator, i);
                if (best < target)
                    return {best, witness};
            }
        }
    }
    return {best, witness};
}

} // namespace detail

/// kappa(G): largest k such that removing fewer than k vertices leaves a
/// connected nontrivial graph. kappa(K_n) = n-1; disconnected or
/// single-vertex graphs have kappa 0.
inline std::size_t kappa(const Graph& g)
{
    return detail::connectivity(g, 0).kappa;
}

struct KConnectivity {
    bool holds = false;
    std::optional<CutWitness> witness; // present iff !holds
    explicit operator bool() const { return holds; }
};

/// k-connectedness (k >= 1) with a separator of size < k on failure.
inline KConnectivity is_k_connected(const Graph& g, std::size_t k)
{
    if (k < 1)
        throw invalid_input("is_k_connected needs k >= 1");
    auto c = detail::connectivity(g, k);
    if (c.kappa >= k)
        return {true, std::nullopt};
    return {false, std::move(c.witness)};
}

/// Re-checks a witness against the graph: |separator| < k and either the
/// sides are separated or only one vertex remains.
inline bool validates_cut(const Graph& g, const CutWitness& w, std::size_t k)
{
    if (w.separator.size() >= k)
        return false;
    std::vector<int> part(g.size(), 0);
    for (vertex_t s : w.separator)
        part.at(s) = 3;
    for (vertex_t a : w.side_a) {
        if (part.at(a) != 0)
            return false;
        part[a] = 1;
    }
    for (vertex_t b : w.side_b) {
        if (part.at(b) != 0)
            return false;
        part[b] = 2;
    }
    if (std::ranges::count(part, 0) != 0)
        return false;
    if (!w.disconnects)
        return w.side_a.size() + w.side_b.size() <= 1;
    if (w.side_a.empty() || w.side_b.empty())
        return false;
    for (vertex_t a : w.side_a)
        for (vertex_t y : g.neighbors(a))
            if (part[y] == 2)
                return false;
    return true;
}

inline CutWitness cut_to_host(const Ball& b, const CutWitness& w)
{
    return {b.to_host_ids(w.separator), b.to_host_ids(w.side_a), b.to_host_ids(w.side_b),
            w.disconnects};
}

struct ProfileEntry {
    int radius = 0;
    bool k_connected = false;
    std::size_t ball_size = 0;
    std::optional<CutWitness> witness; // host ids
};

/// For r = 1..r_max: is G_r(u) k-connected?
template <Host H>
std::vector<ProfileEntry> ball_connectivity_profile(const H& host, vertex_t u, int r_max,
                                                    std::size_t k, const BallOptions& opts = {})
{
    if (r_max < 1)
        throw invalid_input("ball_connectivity_profile needs r_max >= 1");
    std::vector<ProfileEntry> out;
    for (int r = 1; r <= r_max; ++r) {
        Ball b = ball(host, u, r, opts);
        auto res = is_k_connected(b.graph, k);
        ProfileEntry e{r, res.holds, b.size(), std::nullopt};
        if (res.witness)
            e.witness = cut_to_host(b, *res.witness);
        out.push_back(std::move(e));
    }
    return out;
}

/// Outcome of checking "all radius-r balls k-connected implies all
/// radius-(r+1) balls k-connected" on a finite scope.
struct BallPropagationReport {
    int r = 1;
    std::size_t k = 2;
    ConditionReport hypothesis;  // radius-r balls at every supplied center
    ConditionReport conclusion;  // radius-(r+1) balls at qualifying centers
    std::vector<vertex_t> concluded_centers;
    bool hypothesis_holds = false;
    bool violation = false; // hypothesis held on the closure but conclusion failed
};

/// A center x qualifies for the conclusion when every hypothesis ball the
/// argument uses is centered in `centers`: all of M_2(x) for r = 1 (interior
/// vertices of G_2(x)), all of M_1(x) for r >= 2.
template <Host H>
BallPropagationReport check_ball_propagation(const H& host, const std::vector<vertex_t>& centers,
                                             int r, std::size_t k, const BallOptions& opts = {})
{
    if (r < 1 || k < 2)
        throw invalid_input("ball propagation needs r >= 1 and k >= 2");
    BallPropagationReport rep;
    rep.r = r;
    rep.k = k;
    rep.hypothesis.condition = "radius-" + std::to_string(r) + " balls " + std::to_string(k) +
                               "-connected";
    rep.hypothesis.examined_set = "M_" + std::to_string(r) + "(u)";
    rep.hypothesis.scope = centers;
    rep.conclusion.condition = "radius-" + std::to_string(r + 1) + " balls " +
                               std::to_string(k) + "-connected";
    rep.conclusion.examined_set = "M_" + std::to_string(r + 1) + "(u)";

    for (vertex_t c : centers) {
        Ball b = ball(host, c, r, opts);
        auto res = is_k_connected(b.graph, k);
        if (!res.holds)
            rep.hypothesis.fail(CenterFailure{c, r, "ball not " + std::to_string(k) + "-connected",
                                              cut_to_host(b, *res.witness), {}, 0, 0});
    }
    rep.hypothesis_holds = rep.hypothesis.verdict;
    if (!rep.hypothesis_holds) {
        rep.conclusion.notes.push_back("not evaluated: hypothesis failed");
        return rep;
    }

    std::unordered_set<vertex_t> in_scope(centers.begin(), centers.end());
    const int closure_radius = (r == 1) ? 2 : 1;
    for (vertex_t c : centers) {
        auto layers = bfs_layers(host, c, closure_radius);
        bool inside = true;
        for (auto& layer : layers)
            for (vertex_t x : layer)
                inside = inside && in_scope.contains(x);
        if (inside)
            rep.concluded_centers.push_back(c);
    }
    if (rep.concluded_centers.empty())
        throw invalid_input("scope too small: no center has its hypothesis closure inside the "
                            "supplied center set");
    rep.conclusion.scope = rep.concluded_centers;
    for (vertex_t c : rep.concluded_centers) {
        Ball b = ball(host, c, r + 1, opts);
        auto res = is_k_connected(b.graph, k);
        if (!res.holds)
            rep.conclusion.fail(CenterFailure{c, r + 1, "THEOREM VIOLATION: ball not " +
                                                            std::to_string(k) + "-connected",
                                              cut_to_host(b, *res.witness), {}, 0, 0});
    }
    rep.violation = !rep.conclusion.verdict;
    return rep;
}

} // namespace ballscope
