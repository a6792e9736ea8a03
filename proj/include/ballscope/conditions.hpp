#pragma once

// Local and global hypothesis predicates. Every predicate scoped to a host
// takes an explicit center list; nothing is ever claimed for "all vertices"
// of an oracle.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ballscope/connectivity.hpp"
#include "ballscope/graph.hpp"
#include "ballscope/report.hpp"

namespace ballscope {

namespace detail {

template <class A, class B>
std::size_t intersection_size(const A& a, const B& b)
{
    std::size_t count = 0;
    auto i = std::ranges::begin(a), ie = std::ranges::end(a);
    auto j = std::ranges::begin(b), je = std::ranges::end(b);
    while (i != ie && j != je) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

template <class R>
std::vector<vertex_t> sorted_union(std::initializer_list<const R*> sets)
{
    std::vector<vertex_t> out;
    for (const R* s : sets)
        out.insert(out.end(), std::ranges::begin(*s), std::ranges::end(*s));
    std::ranges::sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <class R>
std::vector<vertex_t> to_vector(const R& r)
{
    return std::vector<vertex_t>(std::ranges::begin(r), std::ranges::end(r));
}

inline std::vector<vertex_t> flatten(const std::vector<std::vector<vertex_t>>& layers)
{
    std::vector<vertex_t> out;
    for (const auto& l : layers)
        out.insert(out.end(), l.begin(), l.end());
    std::ranges::sort(out);
    return out;
}

/// Calls f(u, v) for every nonadjacent pair u < v in N(w).
template <Host H, class F>
void for_each_path_triple(const H& host, vertex_t w, F&& f)
{
    const auto& nw = host.neighbors(w);
    std::vector<vertex_t> nb(std::ranges::begin(nw), std::ranges::end(nw));
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (!adjacent(host, nb[i], nb[j]))
                f(PathTriple{nb[i], w, nb[j]});
}

} // namespace detail

struct OreResult {
    bool holds = true;
    std::optional<PairFailure> witness;
    explicit operator bool() const { return holds; }
};

/// d(u) + d(v) >= |V| for every nonadjacent pair. Needs |V| >= 3.
inline OreResult is_ore_graph(const Graph& g)
{
    const std::size_t n = g.size();
    if (n < 3)
        throw invalid_input("Ore graphs need at least 3 vertices");
    for (vertex_t u = 0; u < n; ++u)
        for (vertex_t v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v) && g.degree(u) + g.degree(v) < n)
                return {false, PairFailure{u, v, static_cast<std::int64_t>(g.degree(u) + g.degree(v)),
                                           static_cast<std::int64_t>(n)}};
    return {true, std::nullopt};
}

/// Every G_1(w), w in centers, is an Ore graph.
template <Host H>
ConditionReport local_ore(const H& host, const std::vector<vertex_t>& centers)
{
    ConditionReport rep{"local-ore", "M_1(w)", centers};
    for (vertex_t w : centers) {
        Ball b = ball(host, w, 1);
        if (b.size() < 3) {
            rep.fail(CenterFailure{w, 1, "ball has fewer than 3 vertices", {}, {},
                                   static_cast<std::int64_t>(b.size()), 3});
            continue;
        }
        if (auto res = is_ore_graph(b.graph); !res) {
            const PairFailure& p = *res.witness;
            rep.fail(TripleFailure{{b.host(p.u), w, b.host(p.v)}, p.degree_sum, p.order});
        }
    }
    return rep;
}

/// Validates that t is a path u-w-v with uv a non-edge.
template <Host H>
bool is_path_triple(const H& host, const PathTriple& t)
{
    return t.u != t.v && adjacent(host, t.w, t.u) && adjacent(host, t.w, t.v) &&
           !adjacent(host, t.u, t.v);
}

/// |M_1(w) ∩ N(u) ∩ N(v)| >= |M_1(w) \ (N(u) ∪ N(v))|.
template <Host H>
bool eq1_condition(const H& host, const PathTriple& t)
{
    if (!is_path_triple(host, t))
        throw invalid_input("not a path triple");
    std::vector<vertex_t> m1 = detail::to_vector(host.neighbors(t.w));
    m1.insert(std::ranges::upper_bound(m1, t.w), t.w);
    const auto nu = detail::to_vector(host.neighbors(t.u));
    const auto nv = detail::to_vector(host.neighbors(t.v));
    std::vector<vertex_t> common;
    std::ranges::set_intersection(nu, nv, std::back_inserter(common));
    const std::size_t lhs = detail::intersection_size(m1, common);
    const auto uni = detail::sorted_union({&nu, &nv});
    const std::size_t rhs = m1.size() - detail::intersection_size(m1, uni);
    return lhs >= rhs;
}

/// For every nonadjacent u, v in N(w): eq1_condition <=> the Ore inequality
/// d_{G_1(w)}(u) + d_{G_1(w)}(v) >= |M_1(w)|. Returns false on the first
/// disagreement.
template <Host H>
bool eq1_equivalence(const H& host, vertex_t w)
{
    Ball b = ball(host, w, 1);
    bool ok = true;
    detail::for_each_path_triple(host, w, [&](const PathTriple& t) {
        const std::size_t ore = b.graph.degree(b.local(t.u)) + b.graph.degree(b.local(t.v));
        ok = ok && (eq1_condition(host, t) == (ore >= b.size()));
    });
    return ok;
}

/// d(u) + d(v) >= |N(u) ∪ N(v) ∪ N(w)| for every path triple centered in
/// `centers`.
template <Host H>
ConditionReport l0_condition(const H& host, const std::vector<vertex_t>& centers)
{
    ConditionReport rep{"l0", "N(u) ∪ N(v) ∪ N(w)", centers};
    for (vertex_t w : centers) {
        const auto nw = detail::to_vector(host.neighbors(w));
        detail::for_each_path_triple(host, w, [&](const PathTriple& t) {
            const auto nu = detail::to_vector(host.neighbors(t.u));
            const auto nv = detail::to_vector(host.neighbors(t.v));
            const auto lhs = static_cast<std::int64_t>(nu.size() + nv.size());
            const auto rhs = static_cast<std::int64_t>(detail::sorted_union({&nu, &nv, &nw}).size());
            if (lhs < rhs)
                rep.fail(TripleFailure{t, lhs, rhs});
        });
    }
    return rep;
}

/// d(u) + d(v) >= |M_2(w)| - 1 and its equivalent neighborhood form
/// |N(u) ∩ N(v)| >= |M_2(w) \ (N(u) ∪ N(v))| - 1, evaluated independently.
struct DegreeBoundForms {
    bool degree_form = false;
    bool neighborhood_form = false;
};

template <Host H>
DegreeBoundForms m2_degree_forms(const H& host, const PathTriple& t)
{
    const auto m2 = detail::flatten(bfs_layers(host, t.w, 2));
    const auto nu = detail::to_vector(host.neighbors(t.u));
    const auto nv = detail::to_vector(host.neighbors(t.v));
    const auto m2_size = static_cast<std::int64_t>(m2.size());
    DegreeBoundForms f;
    f.degree_form = static_cast<std::int64_t>(nu.size() + nv.size()) >= m2_size - 1;
    const auto common = static_cast<std::int64_t>(detail::intersection_size(nu, nv));
    const auto uni = detail::sorted_union({&nu, &nv});
    const auto outside = m2_size - static_cast<std::int64_t>(detail::intersection_size(m2, uni));
    f.neighborhood_form = common >= outside - 1;
    return f;
}

struct M2Report {
    ConditionReport balls_2connected; // clause A
    ConditionReport degree_bound;     // clause B
    bool verdict() const { return balls_2connected.verdict && degree_bound.verdict; }
};

/// Clause A: G_2(w) is 2-connected. Clause B: d(u) + d(v) >= |M_2(w)| - 1
/// for every path triple centered at w.
template <Host H>
M2Report m2_condition(const H& host, const std::vector<vertex_t>& centers,
                      const BallOptions& opts = {})
{
    M2Report rep{{"m2-balls-2-connected", "M_2(w)", centers},
                 {"m2-degree-bound", "M_2(w)", centers}};
    for (vertex_t w : centers) {
        Ball b = ball(host, w, 2, opts);
        if (auto res = is_k_connected(b.graph, 2); !res)
            rep.balls_2connected.fail(
                CenterFailure{w, 2, "ball not 2-connected", cut_to_host(b, *res.witness), {}, 0, 0});
        const auto m2 = static_cast<std::int64_t>(b.size());
        detail::for_each_path_triple(host, w, [&](const PathTriple& t) {
            const auto lhs = static_cast<std::int64_t>(degree(host, t.u) + degree(host, t.v));
            if (lhs < m2 - 1)
                rep.degree_bound.fail(TripleFailure{t, lhs, m2 - 1});
        });
    }
    return rep;
}

/// An induced K_{1,3}, scanning centers and leaf triples in sorted order.
inline std::optional<Claw> find_claw(const Graph& g)
{
    for (vertex_t c = 0; c < g.size(); ++c) {
        auto nb = g.neighbors(c);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                if (g.adjacent(nb[i], nb[j]))
                    continue;
                for (std::size_t k = j + 1; k < nb.size(); ++k)
                    if (!g.adjacent(nb[i], nb[k]) && !g.adjacent(nb[j], nb[k]))
                        return Claw{c, {nb[i], nb[j], nb[k]}};
            }
    }
    return std::nullopt;
}

inline bool claw_free(const Graph& g) { return !find_claw(g).has_value(); }

/// Claw check on an oracle, restricted to claws centered in `centers`.
template <Host H>
ConditionReport claw_free_on(const H& host, const std::vector<vertex_t>& centers)
{
    ConditionReport rep{"claw-free", "N(u)", centers};
    for (vertex_t c : centers) {
        Ball b = ball(host, c, 1);
        auto nb = b.graph.neighbors(0);
        bool found = false;
        for (std::size_t i = 0; i < nb.size() && !found; ++i)
            for (std::size_t j = i + 1; j < nb.size() && !found; ++j)
                for (std::size_t k = j + 1; k < nb.size() && !found; ++k)
                    if (!b.graph.adjacent(nb[i], nb[j]) && !b.graph.adjacent(nb[i], nb[k]) &&
                        !b.graph.adjacent(nb[j], nb[k])) {
                        rep.fail(Claw{c, {b.host(nb[i]), b.host(nb[j]), b.host(nb[k])}});
                        found = true;
                    }
    }
    return rep;
}

/// The subgraph induced by N(u) (not M_1(u)) is connected. An empty
/// neighborhood counts as a failure.
template <Host H>
ConditionReport locally_connected(const H& host, const std::vector<vertex_t>& centers)
{
    ConditionReport rep{"locally-connected", "N(u)", centers};
    for (vertex_t u : centers) {
        Ball b = ball(host, u, 1);
        std::vector<vertex_t> nb;
        for (vertex_t l = 1; l < b.size(); ++l)
            nb.push_back(l);
        auto sub = induced(b.graph, nb);
        if (sub.graph.size() == 0 || !is_connected(sub.graph))
            rep.fail(CenterFailure{u, 1, "neighborhood not connected", {}, {}, 0, 0});
    }
    return rep;
}

inline constexpr std::size_t default_alpha_bound = 64;

struct IndependenceResult {
    std::size_t alpha = 0;
    std::vector<vertex_t> set; // one maximum independent set, sorted
};

namespace detail {

class MisSolver {
public:
    explicit MisSolver(const Graph& g) : n_(g.size()), adj_(g.size(), 0)
    {
        for (vertex_t v = 0; v < n_; ++v)
            for (vertex_t y : g.neighbors(v))
                adj_[v] |= bit(y);
    }

    IndependenceResult solve()
    {
        const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (bit(n_) - 1);
        recurse(all, 0, 0);
        IndependenceResult res{static_cast<std::size_t>(std::popcount(best_set_)), {}};
        for (vertex_t v = 0; v < n_; ++v)
            if (best_set_ & bit(v))
                res.set.push_back(v);
        return res;
    }

private:
    static std::uint64_t bit(std::size_t v) { return std::uint64_t{1} << v; }

    /// Greedy clique cover of `p`: the number of cliques bounds alpha(p).
    int clique_cover_bound(std::uint64_t p) const
    {
        int cliques = 0;
        while (p) {
            std::uint64_t cand = p;
            while (cand) {
                const int v = std::countr_zero(cand);
                p &= ~bit(v);
                cand &= adj_[v] & ~bit(v);
            }
            ++cliques;
        }
        return cliques;
    }

    void recurse(std::uint64_t p, std::uint64_t chosen, int size)
    {
        if (p == 0) {
            if (size > best_) {
                best_ = size;
                best_set_ = chosen;
            }
            return;
        }
        if (size + clique_cover_bound(p) <= best_)
            return;
        // branch on the vertex of maximum degree inside p (ties: lowest id)
        int pick = -1, pick_deg = -1;
        for (std::uint64_t c = p; c;) {
            const int v = std::countr_zero(c);
            c &= c - 1;
            const int d = std::popcount(adj_[v] & p);
            if (d > pick_deg) {
                pick = v;
                pick_deg = d;
            }
        }
        if (pick_deg == 0) { // p is independent
            recurse(0, chosen | p, size + std::popcount(p));
            return;
        }
        recurse(p & ~bit(pick) & ~adj_[pick], chosen | bit(pick), size + 1);
        recurse(p & ~bit(pick), chosen, size);
    }

    std::size_t n_;
    std::vector<std::uint64_t> adj_;
    int best_ = -1;
    std::uint64_t best_set_ = 0;
};

} // namespace detail

/// Exact independence number by branch-and-bound with clique-cover pruning.
inline IndependenceResult alpha(const Graph& g, std::size_t bound = default_alpha_bound)
{
    const std::size_t limit = std::min(bound, std::size_t{64});
    if (g.size() > limit)
        throw budget_exceeded("alpha: " + std::to_string(g.size()) + " vertices exceeds the exact "
                              "bound of " + std::to_string(limit));
    if (g.size() == 0)
        return {};
    return detail::MisSolver(g).solve();
}

/// kappa(G_r(u)) >= alpha(G_{r+1}(u)) for every u in centers.
template <Host H>
ConditionReport chvatal_erdos_local(const H& host, const std::vector<vertex_t>& centers, int r,
                                    const BallOptions& opts = {},
                                    std::size_t alpha_bound = default_alpha_bound)
{
    if (r < 1)
        throw invalid_input("chvatal_erdos_local needs r >= 1");
    ConditionReport rep{"chvatal-erdos-local", "M_r(u), M_{r+1}(u)", centers};
    for (vertex_t u : centers) {
        Ball inner = ball(host, u, r, opts);
        Ball outer = ball(host, u, r + 1, opts);
        auto conn = detail::connectivity(inner.graph, 0);
        auto ind = alpha(outer.graph, alpha_bound);
        if (conn.kappa < ind.alpha) {
            CenterFailure f{u, r, "kappa(G_r) < alpha(G_{r+1})", std::nullopt,
                            outer.to_host_ids(ind.set), static_cast<std::int64_t>(conn.kappa),
                            static_cast<std::int64_t>(ind.alpha)};
            if (conn.witness)
                f.cut = cut_to_host(inner, *conn.witness);
            rep.fail(std::move(f));
        }
    }
    return rep;
}

/// Partition (A, B), |A| = p, |B| = p + 1, with B independent and complete
/// to A; edges inside A unconstrained.
struct KClassWitness {
    std::size_t p = 0;
    std::vector<vertex_t> a_side;
    std::vector<vertex_t> b_side;
};

/// Membership in {G : K_{p,p+1} ⊆ G ⊆ K_p ∨ complement(K_{p+1}), p >= 2}.
/// Every B vertex has neighborhood exactly A, so B is found by grouping the
/// degree-p vertices by neighborhood.
inline std::optional<KClassWitness> k_class_membership(const Graph& g)
{
    const std::size_t n = g.size();
    if (n < 5 || n % 2 == 0)
        return std::nullopt;
    const std::size_t p = (n - 1) / 2;
    std::vector<std::pair<std::vector<vertex_t>, vertex_t>> cands;
    for (vertex_t v = 0; v < n; ++v)
        if (g.degree(v) == p) {
            auto nb = g.neighbors(v);
            cands.emplace_back(std::vector<vertex_t>(nb.begin(), nb.end()), v);
        }
    std::ranges::sort(cands);
    for (std::size_t i = 0; i < cands.size();) {
        std::size_t j = i;
        while (j < cands.size() && cands[j].first == cands[i].first)
            ++j;
        if (j - i >= p + 1) {
            KClassWitness w{p, cands[i].first, {}};
            for (std::size_t t = i; t < i + p + 1; ++t)
                w.b_side.push_back(cands[t].second);
            std::ranges::sort(w.b_side);
            // degree-p vertices sharing one p-set neighborhood, disjoint from it
            bool disjoint = std::ranges::none_of(w.b_side, [&](vertex_t b) {
                return std::ranges::binary_search(w.a_side, b);
            });
            if (disjoint)
                return w;
        }
        i = j;
    }
    return std::nullopt;
}

/// On a k-regular region: |N_2(w)| <= k for every center, with the equivalent
/// 2k >= |M_2(w)| - 1 recorded alongside (lhs = |N_2(w)|, rhs = |M_2(w)| - 1).
struct RegularBoundReport {
    ConditionReport regular;     // deg(w) == k
    ConditionReport n2_bound;    // |N_2(w)| <= k
    ConditionReport m2_form;     // 2k >= |M_2(w)| - 1
    bool verdict() const { return regular.verdict && n2_bound.verdict; }
    bool forms_agree() const { return n2_bound.verdict == m2_form.verdict; }
};

template <Host H>
RegularBoundReport regular_n2_bound(const H& host, const std::vector<vertex_t>& centers,
                                    std::size_t k)
{
    RegularBoundReport rep{{"k-regular", "N(w)", centers},
                           {"n2-bound", "N_2(w)", centers},
                           {"2k-bound", "M_2(w)", centers}};
    for (vertex_t w : centers) {
        auto layers = bfs_layers(host, w, 2);
        const std::size_t deg = layers.size() > 1 ? layers[1].size() : 0;
        const std::size_t n2 = layers.size() > 2 ? layers[2].size() : 0;
        const std::size_t m2 = 1 + deg + n2;
        if (deg != k)
            rep.regular.fail(CenterFailure{w, 1, "degree differs from k", {}, {},
                                           static_cast<std::int64_t>(deg),
                                           static_cast<std::int64_t>(k)});
        if (n2 > k)
            rep.n2_bound.fail(CenterFailure{w, 2, "|N_2(w)| > k", {}, {},
                                            static_cast<std::int64_t>(n2),
                                            static_cast<std::int64_t>(k)});
        if (2 * k + 1 < m2)
            rep.m2_form.fail(CenterFailure{w, 2, "2k < |M_2(w)| - 1", {}, {},
                                           static_cast<std::int64_t>(2 * k),
                                           static_cast<std::int64_t>(m2) - 1});
    }
    return rep;
}

/// Re-checks the structural facts a witness asserts against a finite host.
inline bool revalidate(const Graph& host, const Witness& w)
{
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TripleFailure>)
                return host.has_vertex(x.triple.u) && host.has_vertex(x.triple.v) &&
                       host.has_vertex(x.triple.w) && is_path_triple(host, x.triple) &&
                       x.lhs < x.rhs;
            else if constexpr (std::is_same_v<T, PairFailure>)
                return x.u != x.v && !host.adjacent(x.u, x.v) &&
                       static_cast<std::int64_t>(host.degree(x.u) + host.degree(x.v)) ==
                           x.degree_sum &&
                       x.degree_sum < x.order;
            else if constexpr (std::is_same_v<T, Claw>) {
                const auto& l = x.leaves;
                return host.adjacent(x.center, l[0]) && host.adjacent(x.center, l[1]) &&
                       host.adjacent(x.center, l[2]) && !host.adjacent(l[0], l[1]) &&
                       !host.adjacent(l[0], l[2]) && !host.adjacent(l[1], l[2]);
            } else {
                if (!host.has_vertex(x.center))
                    return false;
                for (std::size_t i = 0; i < x.independent_set.size(); ++i)
                    for (std::size_t j = i + 1; j < x.independent_set.size(); ++j)
                        if (host.adjacent(x.independent_set[i], x.independent_set[j]))
                            return false;
                if (x.cut) {
                    Ball b = ball(host, x.center, x.radius);
                    CutWitness local;
                    for (vertex_t h : x.cut->separator)
                        local.separator.push_back(b.local(h));
                    for (vertex_t h : x.cut->side_a)
                        local.side_a.push_back(b.local(h));
                    for (vertex_t h : x.cut->side_b)
                        local.side_b.push_back(b.local(h));
                    local.disconnects = x.cut->disconnects;
                    return validates_cut(b.graph, local, x.cut->separator.size() + 1);
                }
                return true;
            }
        },
        w);
}

} // namespace ballscope
