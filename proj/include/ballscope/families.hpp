#pragma once

// Generators for the constructions G(d), H, the layered graphs G(r), the
// class K, the square of the double ray, and standard small graphs.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "ballscope/graph.hpp"

namespace ballscope {

/// A finite truncation of an infinite family. `oracle_id[v]` is the id of v
/// in the family's oracle; `boundary[v]` marks vertices whose oracle degree
/// exceeds their truncation degree.
struct Truncation {
    Graph graph;
    std::vector<vertex_t> oracle_id;
    std::vector<bool> boundary;
    std::vector<int> boundary_distance; // INT_MAX when there is no boundary

    /// G_r(v) of the truncation equals G_r(v) of the infinite graph.
    bool safe(vertex_t v, int r) const { return boundary_distance.at(v) >= r; }

    std::vector<vertex_t> safe_centers(int r) const
    {
        std::vector<vertex_t> out;
        for (vertex_t v = 0; v < graph.size(); ++v)
            if (safe(v, r))
                out.push_back(v);
        return out;
    }

    std::vector<vertex_t> boundary_vertices() const
    {
        std::vector<vertex_t> out;
        for (vertex_t v = 0; v < graph.size(); ++v)
            if (boundary[v])
                out.push_back(v);
        return out;
    }
};

namespace detail {

inline void finish_truncation(Truncation& t)
{
    const std::size_t n = t.graph.size();
    t.boundary_distance.assign(n, INT_MAX);
    std::queue<vertex_t> q;
    for (vertex_t v = 0; v < n; ++v)
        if (t.boundary[v]) {
            t.boundary_distance[v] = 0;
            q.push(v);
        }
    while (!q.empty()) {
        vertex_t x = q.front();
        q.pop();
        for (vertex_t y : t.graph.neighbors(x))
            if (t.boundary_distance[y] == INT_MAX) {
                t.boundary_distance[y] = t.boundary_distance[x] + 1;
                q.push(y);
            }
    }
}

class EdgeBuilder {
public:
    vertex_t add(std::string label)
    {
        labels_.push_back(std::move(label));
        return labels_.size() - 1;
    }
    void edge(vertex_t a, vertex_t b) { edges_.emplace_back(std::min(a, b), std::max(a, b)); }
    void clique(const std::vector<vertex_t>& vs)
    {
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                edge(vs[i], vs[j]);
    }
    std::size_t size() const { return labels_.size(); }
    Graph build()
    {
        std::ranges::sort(edges_);
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        return Graph::from_edges(labels_.size(), edges_, labels_);
    }

private:
    std::vector<std::string> labels_;
    std::vector<edge_t> edges_;
};

inline std::string indexed(char c, std::size_t i) { return std::string(1, c) + std::to_string(i); }

/// Adds H_2..H_last on b_1..b_{4 last} and c_1..c_{4 last - 4}: for each i
/// the clique on b_{4i-7}..b_{4i} and the spokes c_j b_j, c_j b_{j+4} for
/// 4i-7 <= j <= 4i-4. `b`, `c` are 1-based vectors (index 0 unused).
inline void add_block_chain(EdgeBuilder& eb, std::size_t last, const std::vector<vertex_t>& b,
                            const std::vector<vertex_t>& c)
{
    for (std::size_t i = 2; i <= last; ++i) {
        std::vector<vertex_t> block;
        for (std::size_t j = 4 * i - 7; j <= 4 * i; ++j)
            block.push_back(b[j]);
        eb.clique(block);
        for (std::size_t j = 4 * i - 7; j <= 4 * i - 4; ++j) {
            eb.edge(c[j], b[j]);
            eb.edge(c[j], b[j + 4]);
        }
    }
}

} // namespace detail

/// G(d) = H_1 ∪ ... ∪ H_{d-1} ∪ F_d on a1..a4, b1..b_{4d-4}, c1..c_{4d-8},
/// in that id order. 8d - 8 vertices, diameter d, not Hamiltonian.
inline Graph gen_Gd(int d)
{
    if (d < 3)
        throw invalid_input("gen_Gd needs d >= 3");
    const std::size_t nb = 4 * static_cast<std::size_t>(d) - 4;
    const std::size_t nc = 4 * static_cast<std::size_t>(d) - 8;
    detail::EdgeBuilder eb;
    std::vector<vertex_t> a(5), b(nb + 1), c(nc + 1);
    for (std::size_t i = 1; i <= 4; ++i)
        a[i] = eb.add(detail::indexed('a', i));
    for (std::size_t j = 1; j <= nb; ++j)
        b[j] = eb.add(detail::indexed('b', j));
    for (std::size_t j = 1; j <= nc; ++j)
        c[j] = eb.add(detail::indexed('c', j));
    eb.edge(a[1], b[1]);
    eb.edge(a[1], b[2]);
    eb.edge(a[2], b[3]);
    eb.edge(a[2], b[4]);
    detail::add_block_chain(eb, static_cast<std::size_t>(d) - 1, b, c);
    eb.edge(a[3], b[nb - 3]);
    eb.edge(a[3], b[nb - 2]);
    eb.edge(a[4], b[nb - 1]);
    eb.edge(a[4], b[nb]);
    return eb.build();
}

namespace h_ids {

enum Kind : std::uint64_t { a = 0, b = 1, c = 2 };

inline vertex_t make(Kind k, std::uint64_t index) { return (std::uint64_t{k} << 32) | index; }
inline Kind kind(vertex_t v) { return static_cast<Kind>(v >> 32); }
inline std::uint64_t index(vertex_t v) { return v & 0xffffffffu; }

} // namespace h_ids

/// H = ∪_{i>=1} H_i as a lazy oracle rooted at a1. Ids are (kind << 32) |
/// index with kind 0 = a, 1 = b, 2 = c and 1-based indices.
inline GraphOracle gen_H_oracle(std::size_t budget = default_oracle_budget)
{
    using namespace h_ids;
    auto member = [](vertex_t v) {
        const auto k = v >> 32;
        const auto i = index(v);
        return i >= 1 && ((k == a && i <= 2) || k == b || k == c);
    };
    auto neighbors = [](vertex_t v) {
        std::vector<vertex_t> out;
        const std::uint64_t j = index(v);
        switch (kind(v)) {
        case a:
            for (std::uint64_t t = 2 * j - 1; t <= 2 * j; ++t)
                out.push_back(make(b, t));
            break;
        case b: {
            // cliques of H_i for max(2, ceil(j/4)) <= i <= floor((j+7)/4)
            const std::uint64_t lo_i = std::max<std::uint64_t>(2, (j + 3) / 4);
            const std::uint64_t hi_i = (j + 7) / 4;
            if (lo_i <= hi_i) {
                const std::uint64_t lo = 4 * lo_i - 7, hi = 4 * hi_i;
                for (std::uint64_t t = lo; t <= hi; ++t)
                    if (t != j)
                        out.push_back(make(b, t));
            }
            out.push_back(make(c, j));
            if (j > 4)
                out.push_back(make(c, j - 4));
            if (j <= 4)
                out.push_back(make(a, j <= 2 ? 1 : 2));
            break;
        }
        case c:
            out.push_back(make(b, j));
            out.push_back(make(b, j + 4));
            break;
        }
        return out;
    };
    auto label = [](vertex_t v) {
        static constexpr char names[] = {'a', 'b', 'c'};
        return detail::indexed(names[kind(v)], index(v));
    };
    return GraphOracle(neighbors, make(a, 1), label, budget, member);
}

/// The truncation H_1 ∪ ... ∪ H_m on a1, a2, b1..b_{4m}, c1..c_{4m-4}, in
/// that id order. The boundary is b_{4m-3}..b_{4m}.
inline Truncation gen_H(int m)
{
    if (m < 2)
        throw invalid_input("gen_H needs m >= 2");
    const std::size_t nb = 4 * static_cast<std::size_t>(m);
    const std::size_t nc = nb - 4;
    detail::EdgeBuilder eb;
    Truncation t;
    std::vector<vertex_t> a(3), b(nb + 1), c(nc + 1);
    for (std::size_t i = 1; i <= 2; ++i) {
        a[i] = eb.add(detail::indexed('a', i));
        t.oracle_id.push_back(h_ids::make(h_ids::a, i));
    }
    for (std::size_t j = 1; j <= nb; ++j) {
        b[j] = eb.add(detail::indexed('b', j));
        t.oracle_id.push_back(h_ids::make(h_ids::b, j));
    }
    for (std::size_t j = 1; j <= nc; ++j) {
        c[j] = eb.add(detail::indexed('c', j));
        t.oracle_id.push_back(h_ids::make(h_ids::c, j));
    }
    eb.edge(a[1], b[1]);
    eb.edge(a[1], b[2]);
    eb.edge(a[2], b[3]);
    eb.edge(a[2], b[4]);
    detail::add_block_chain(eb, static_cast<std::size_t>(m), b, c);
    t.graph = eb.build();
    t.boundary.assign(t.graph.size(), false);
    for (std::size_t j = nb - 3; j <= nb; ++j)
        t.boundary[b[j]] = true;
    detail::finish_truncation(t);
    return t;
}

/// Layer sizes of G(r): |V_0| = 2 and |V_i| for i >= 1. A list gives
/// |V_0|, |V_1|, ... with its last entry repeating.
class LayerSizes {
public:
    explicit LayerSizes(std::size_t constant) : sizes_{2, constant} {}
    explicit LayerSizes(std::vector<std::size_t> sizes) : sizes_(std::move(sizes))
    {
        if (sizes_.size() < 2)
            throw invalid_input("layer sizes need |V_0| and at least one further layer");
    }
    std::size_t operator()(std::size_t layer) const
    {
        return sizes_[std::min(layer, sizes_.size() - 1)];
    }
    const std::vector<std::size_t>& listed() const { return sizes_; }

    void validate(int r) const
    {
        if (r < 1)
            throw invalid_input("layered graph needs r >= 1");
        if (sizes_[0] != 2)
            throw invalid_input("layered graph needs |V_0| = 2");
        for (std::size_t i = 1; i < sizes_.size(); ++i)
            if (sizes_[i] < static_cast<std::size_t>(r) + 3)
                throw invalid_input("layer V_" + std::to_string(i) + " has " +
                                    std::to_string(sizes_[i]) + " vertices, needs >= r+3 = " +
                                    std::to_string(r + 3));
    }

private:
    std::vector<std::size_t> sizes_;
};

namespace layer_ids {

inline vertex_t make(std::uint64_t layer, std::uint64_t index) { return (layer << 32) | index; }
inline std::uint64_t layer(vertex_t v) { return v >> 32; }
inline std::uint64_t index(vertex_t v) { return v & 0xffffffffu; }
inline std::string label(vertex_t v)
{
    return "V" + std::to_string(layer(v)) + "." + std::to_string(index(v));
}

} // namespace layer_ids

/// G(r) on V_0 ∪ V_1 ∪ ...: x ~ y iff x, y lie in one layer V_i with i >= 1,
/// or in consecutive layers. Ids are (layer << 32) | index, rooted at V_0's
/// first vertex.
inline GraphOracle gen_layered(int r, const LayerSizes& sizes,
                               std::size_t budget = default_oracle_budget)
{
    sizes.validate(r);
    auto member = [sizes](vertex_t v) {
        return layer_ids::index(v) < sizes(layer_ids::layer(v)) &&
               layer_ids::layer(v) < (std::uint64_t{1} << 31);
    };
    auto neighbors = [sizes](vertex_t v) {
        const std::uint64_t i = layer_ids::layer(v), x = layer_ids::index(v);
        std::vector<vertex_t> out;
        auto whole = [&](std::uint64_t l) {
            for (std::uint64_t t = 0; t < sizes(l); ++t)
                out.push_back(layer_ids::make(l, t));
        };
        if (i > 0)
            whole(i - 1);
        if (i > 0)
            for (std::uint64_t t = 0; t < sizes(i); ++t)
                if (t != x)
                    out.push_back(layer_ids::make(i, t));
        whole(i + 1);
        return out;
    };
    return GraphOracle(neighbors, layer_ids::make(0, 0), layer_ids::label, budget, member);
}

/// Layers V_0..V_{layers-1} of G(r); the last layer is the boundary. Ids go
/// layer by layer.
inline Truncation gen_layered_truncation(int r, const LayerSizes& sizes, std::size_t layers)
{
    sizes.validate(r);
    if (layers < 2)
        throw invalid_input("layered truncation needs at least 2 layers");
    detail::EdgeBuilder eb;
    Truncation t;
    std::vector<std::vector<vertex_t>> layer(layers);
    for (std::size_t i = 0; i < layers; ++i)
        for (std::size_t x = 0; x < sizes(i); ++x) {
            const vertex_t id = layer_ids::make(i, x);
            layer[i].push_back(eb.add(layer_ids::label(id)));
            t.oracle_id.push_back(id);
        }
    for (std::size_t i = 0; i < layers; ++i) {
        if (i > 0)
            eb.clique(layer[i]);
        if (i + 1 < layers)
            for (vertex_t x : layer[i])
                for (vertex_t y : layer[i + 1])
                    eb.edge(x, y);
    }
    t.graph = eb.build();
    t.boundary.assign(t.graph.size(), false);
    for (vertex_t v : layer[layers - 1])
        t.boundary[v] = true;
    detail::finish_truncation(t);
    return t;
}

namespace ray_ids {

inline vertex_t encode(std::int64_t z)
{
    return z >= 0 ? static_cast<vertex_t>(z) * 2 : static_cast<vertex_t>(-z) * 2 - 1;
}
inline std::int64_t decode(vertex_t v)
{
    return (v & 1) ? -static_cast<std::int64_t>((v + 1) / 2) : static_cast<std::int64_t>(v / 2);
}

} // namespace ray_ids

/// Square of the double ray: vertices are the integers, z ~ z±1, z±2.
/// 4-regular with |N_2(z)| = 4. Ids zigzag-encode the integers.
inline GraphOracle gen_ray_square(std::size_t budget = default_oracle_budget)
{
    auto neighbors = [](vertex_t v) {
        const std::int64_t z = ray_ids::decode(v);
        return std::vector<vertex_t>{ray_ids::encode(z - 2), ray_ids::encode(z - 1),
                                     ray_ids::encode(z + 1), ray_ids::encode(z + 2)};
    };
    auto label = [](vertex_t v) { return "x" + std::to_string(ray_ids::decode(v)); };
    return GraphOracle(neighbors, ray_ids::encode(0), label, budget);
}

/// Vertices -m..m of the square of the double ray, ids in increasing order.
/// The boundary is the two vertices at each end.
inline Truncation gen_ray_square_truncation(int m)
{
    if (m < 2)
        throw invalid_input("ray square truncation needs m >= 2");
    detail::EdgeBuilder eb;
    Truncation t;
    for (std::int64_t z = -m; z <= m; ++z) {
        eb.add("x" + std::to_string(z));
        t.oracle_id.push_back(ray_ids::encode(z));
    }
    const std::size_t n = eb.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 1; s <= 2; ++s)
            if (i + s < n)
                eb.edge(i, i + s);
    t.graph = eb.build();
    t.boundary.assign(n, false);
    t.boundary[0] = t.boundary[1] = t.boundary[n - 2] = t.boundary[n - 1] = true;
    detail::finish_truncation(t);
    return t;
}

/// K_{p,p+1} plus `inner_edges` inside the p-side. A = 0..p-1 labelled
/// A1..Ap, B = p..2p labelled B1..B{p+1}.
inline Graph gen_K_class(std::size_t p, const std::vector<edge_t>& inner_edges)
{
    if (p < 2)
        throw invalid_input("gen_K_class needs p >= 2");
    detail::EdgeBuilder eb;
    for (std::size_t i = 1; i <= p; ++i)
        eb.add(detail::indexed('A', i));
    for (std::size_t i = 1; i <= p + 1; ++i)
        eb.add(detail::indexed('B', i));
    for (vertex_t x = 0; x < p; ++x)
        for (vertex_t y = p; y <= 2 * p; ++y)
            eb.edge(x, y);
    std::vector<edge_t> seen;
    for (auto [x, y] : inner_edges) {
        if (x >= p || y >= p || x == y)
            throw invalid_input("inner edge (" + std::to_string(x) + "," + std::to_string(y) +
                                ") is not a pair inside the p-side");
        const edge_t e{std::min(x, y), std::max(x, y)};
        if (std::ranges::find(seen, e) != seen.end())
            throw invalid_input("duplicate inner edge");
        seen.push_back(e);
        eb.edge(x, y);
    }
    return eb.build();
}

/// All pairs inside the p-side, for the upper extreme K_p ∨ complement(K_{p+1}).
inline std::vector<edge_t> all_inner_edges(std::size_t p)
{
    std::vector<edge_t> out;
    for (vertex_t x = 0; x < p; ++x)
        for (vertex_t y = x + 1; y < p; ++y)
            out.emplace_back(x, y);
    return out;
}

inline Graph complete_graph(std::size_t n)
{
    std::vector<edge_t> e;
    for (vertex_t x = 0; x < n; ++x)
        for (vertex_t y = x + 1; y < n; ++y)
            e.emplace_back(x, y);
    return Graph::from_edges(n, e);
}

inline Graph cycle_graph(std::size_t n)
{
    if (n < 3)
        throw invalid_input("cycle needs n >= 3");
    std::vector<edge_t> e;
    for (vertex_t x = 0; x + 1 < n; ++x)
        e.emplace_back(x, x + 1);
    e.emplace_back(0, n - 1);
    return Graph::from_edges(n, e);
}

inline Graph path_graph(std::size_t n)
{
    if (n < 1)
        throw invalid_input("path needs n >= 1");
    std::vector<edge_t> e;
    for (vertex_t x = 0; x + 1 < n; ++x)
        e.emplace_back(x, x + 1);
    return Graph::from_edges(n, e);
}

/// Star on n vertices: center 0 joined to 1..n-1.
inline Graph star_graph(std::size_t n)
{
    if (n < 2)
        throw invalid_input("star needs n >= 2");
    std::vector<edge_t> e;
    for (vertex_t x = 1; x < n; ++x)
        e.emplace_back(0, x);
    return Graph::from_edges(n, e);
}

/// Outer 5-cycle 0..4, spokes i ~ i+5, inner pentagram on 5..9.
inline Graph petersen_graph()
{
    std::vector<edge_t> e;
    for (vertex_t i = 0; i < 5; ++i) {
        e.emplace_back(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));
        e.emplace_back(i, i + 5);
        const vertex_t a = 5 + i, b = 5 + (i + 2) % 5;
        e.emplace_back(std::min(a, b), std::max(a, b));
    }
    return Graph::from_edges(10, e);
}

/// x ~ x ± s (mod n) for each jump s.
inline Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& jumps)
{
    if (n < 3)
        throw invalid_input("circulant needs n >= 3");
    std::vector<edge_t> e;
    for (std::size_t s : jumps) {
        if (s == 0 || 2 * s > n)
            throw invalid_input("circulant jump " + std::to_string(s) + " out of range");
        for (vertex_t x = 0; x < n; ++x) {
            const vertex_t y = (x + s) % n;
            e.emplace_back(std::min(x, y), std::max(x, y));
        }
    }
    std::ranges::sort(e);
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return Graph::from_edges(n, e);
}

/// Uniform G(n, m): m distinct edges drawn with a seeded mt19937_64.
inline Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed)
{
    const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
    if (m > pairs)
        throw invalid_input("random graph: m = " + std::to_string(m) + " exceeds " +
                            std::to_string(pairs) + " possible edges");
    std::vector<edge_t> all;
    all.reserve(pairs);
    for (vertex_t x = 0; x < n; ++x)
        for (vertex_t y = x + 1; y < n; ++y)
            all.emplace_back(x, y);
    std::mt19937_64 rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(m);
    return Graph::from_edges(n, all);
}

/// Graph-source description for the CLI and for reproducible runs.
struct FamilySpec {
    std::string family = "standard"; // Gd | H | layered | Kclass | ray_square | standard
    int d = 4;
    int m = 3;                 // H truncation depth; ray square half-width
    int r = 1;
    std::vector<std::size_t> sizes{2, 4}; // layered |V_0|, |V_1|, ... (last repeats)
    std::size_t layers = 5;    // layered truncation depth
    std::size_t p = 2;
    std::vector<edge_t> inner_edges;
    std::string name = "complete"; // standard graph name
    std::size_t n = 4;
    std::size_t edges = 0;         // random: edge count
    std::uint64_t seed = 1;
    std::vector<std::size_t> jumps{1, 2};
};

/// The finite graph a spec names: truncations for the infinite families.
inline Graph build_graph(const FamilySpec& s)
{
    if (s.family == "Gd")
        return gen_Gd(s.d);
    if (s.family == "H")
        return gen_H(s.m).graph;
    if (s.family == "layered")
        return gen_layered_truncation(s.r, LayerSizes(s.sizes), s.layers).graph;
    if (s.family == "ray_square")
        return gen_ray_square_truncation(s.m).graph;
    if (s.family == "Kclass")
        return gen_K_class(s.p, s.inner_edges);
    if (s.family == "standard") {
        if (s.name == "complete")
            return complete_graph(s.n);
        if (s.name == "cycle")
            return cycle_graph(s.n);
        if (s.name == "path")
            return path_graph(s.n);
        if (s.name == "star")
            return star_graph(s.n);
        if (s.name == "petersen")
            return petersen_graph();
        if (s.name == "circulant")
            return circulant_graph(s.n, s.jumps);
        if (s.name == "random")
            return random_graph(s.n, s.edges, s.seed);
        throw invalid_input("unknown standard graph '" + s.name + "'");
    }
    throw invalid_input("unknown family '" + s.family + "'");
}

/// The oracle for the infinite families (H, layered, ray_square); finite
/// families are wrapped.
inline GraphOracle build_oracle(const FamilySpec& s, std::size_t budget = default_oracle_budget)
{
    if (s.family == "H")
        return gen_H_oracle(budget);
    if (s.family == "layered")
        return gen_layered(s.r, LayerSizes(s.sizes), budget);
    if (s.family == "ray_square")
        return gen_ray_square(budget);
    return GraphOracle::from_graph(build_graph(s));
}

inline bool is_infinite_family(const FamilySpec& s)
{
    return s.family == "H" || s.family == "layered" || s.family == "ray_square";
}

/// Oracle id for a label of an infinite family (a1, b5, c3 / V2.3 / x-4).
inline std::optional<vertex_t> parse_oracle_label(const FamilySpec& s, const std::string& label)
{
    try {
        if (s.family == "H" && label.size() >= 2) {
            const char k = label[0];
            std::size_t used = 0;
            const auto i = std::stoull(label.substr(1), &used);
            if (used + 1 != label.size() || i == 0)
                return std::nullopt;
            if (k == 'a' && i <= 2)
                return h_ids::make(h_ids::a, i);
            if (k == 'b')
                return h_ids::make(h_ids::b, i);
            if (k == 'c')
                return h_ids::make(h_ids::c, i);
        }
        if (s.family == "layered" && label.size() >= 4 && label[0] == 'V') {
            const auto dot = label.find('.');
            if (dot == std::string::npos)
                return std::nullopt;
            const auto layer = std::stoull(label.substr(1, dot - 1));
            const auto index = std::stoull(label.substr(dot + 1));
            if (index >= LayerSizes(s.sizes)(layer))
                return std::nullopt;
            return layer_ids::make(layer, index);
        }
        if (s.family == "ray_square" && label.size() >= 2 && label[0] == 'x') {
            std::size_t used = 0;
            const auto z = std::stoll(label.substr(1), &used);
            if (used + 1 != label.size())
                return std::nullopt;
            return ray_ids::encode(z);
        }
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

} // namespace ballscope
