#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ballscope/cycles.hpp"
#include "ballscope/families.hpp"
#include "support.hpp"

using namespace ballscope;
using support::by_label;
using support::by_labels;

namespace {

std::vector<vertex_t> all_vertices(const Graph& g)
{
    std::vector<vertex_t> v(g.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

bool contains_all(const OrientedCycle& c, const std::vector<vertex_t>& s)
{
    return std::all_of(s.begin(), s.end(), [&](vertex_t x) { return c.contains(x); });
}

// Checks a move against an independent reconstruction of its edge list.
void expect_sound(const Graph& g, const OrientedCycle& before, const ExtensionMove& m)
{
    EXPECT_TRUE(oracle::is_cycle(g, m.result.order()));
    EXPECT_GT(m.result.size(), before.size());
    EXPECT_TRUE(contains_all(m.result, before.order()));
    EXPECT_TRUE(oracle::splice_matches(before.order(), m.removed, m.added, m.result.order()))
        << rule_name(m.rule);
    EXPECT_TRUE(m.result.contains(m.pivot));
}

Graph with_edges(std::size_t n, std::vector<edge_t> e) { return Graph::from_edges(n, e); }

} // namespace

// ---- OrientedCycle ---------------------------------------------------------

TEST(OrientedCycle, SuccessorPredecessorAndArcs)
{
    OrientedCycle c({4, 7, 1, 9, 3});
    EXPECT_EQ(c.succ(4), 7u);
    EXPECT_EQ(c.succ(3), 4u);
    EXPECT_EQ(c.pred(4), 3u);
    EXPECT_EQ(c.pred(1), 7u);
    EXPECT_EQ(c.forward(1, 4), (std::vector<vertex_t>{1, 9, 3, 4}));
    EXPECT_EQ(c.backward(1, 3), (std::vector<vertex_t>{1, 7, 4, 3}));
    EXPECT_EQ(c.forward_until(9, 7), (std::vector<vertex_t>{9, 3, 4}));
    EXPECT_EQ(c.reversed().succ(4), 3u);
    EXPECT_EQ(c.position(9), 3u);
    EXPECT_FALSE(c.contains(8));
}

TEST(OrientedCycle, RejectsShortOrRepeatingSequences)
{
    EXPECT_THROW(OrientedCycle({1, 2}), invalid_input);
    EXPECT_THROW(OrientedCycle({1, 2, 1}), invalid_input);
    EXPECT_FALSE(OrientedCycle({0, 1, 2}).valid_in(path_graph(3)));
    EXPECT_TRUE(OrientedCycle({0, 1, 2}).valid_in(complete_graph(3)));
}

// ---- hamilton_cycle -----------------------------------------------------------

TEST(HamiltonCycle, CompleteGraphOnFour)
{
    auto c = hamilton_cycle(complete_graph(4));
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->size(), 4u);
    EXPECT_TRUE(oracle::is_cycle(complete_graph(4), c->order()));
}

TEST(HamiltonCycle, PetersenHasNone)
{
    EXPECT_FALSE(oracle::hamiltonian(petersen_graph()));
    EXPECT_FALSE(hamilton_cycle(petersen_graph()).has_value());
    HamiltonOptions search_only{0, 64};
    EXPECT_FALSE(hamilton_cycle(petersen_graph(), search_only).has_value());
}

TEST(HamiltonCycle, GdHasNone)
{
    for (int d = 3; d <= 6; ++d)
        EXPECT_FALSE(hamilton_cycle(gen_Gd(d)).has_value()) << d;
}

TEST(HamiltonCycle, SizeBoundIsEnforced)
{
    EXPECT_THROW(hamilton_cycle(cycle_graph(65)), budget_exceeded);
    EXPECT_THROW(hamilton_cycle(cycle_graph(30), {20, 25}), budget_exceeded);
    EXPECT_TRUE(hamilton_cycle(cycle_graph(64)).has_value());
}

TEST(HamiltonCycle, AgreesWithPermutationSearch)
{
    for (const auto& g : corpus::random_graphs(400, 3, 9, 0.2, 0.9, 301)) {
        const bool want = oracle::hamiltonian(g);
        auto dp = hamilton_cycle(g);
        auto search = hamilton_cycle(g, {0, 64});
        EXPECT_EQ(dp.has_value(), want);
        EXPECT_EQ(search.has_value(), want);
        if (dp) {
            EXPECT_EQ(dp->size(), g.size());
            EXPECT_TRUE(oracle::is_cycle(g, dp->order()));
        }
        if (search) {
            EXPECT_TRUE(oracle::is_cycle(g, search->order()));
        }
    }
}

TEST(HamiltonCycle, DpAndSearchAgreeOnMidsizeGraphs)
{
    for (const auto& g : corpus::random_graphs(80, 12, 20, 0.15, 0.45, 311)) {
        auto dp = hamilton_cycle(g, {24, 64});
        auto search = hamilton_cycle(g, {0, 64});
        EXPECT_EQ(dp.has_value(), search.has_value());
        if (dp) {
            EXPECT_TRUE(oracle::is_cycle(g, dp->order()));
        }
        if (search) {
            EXPECT_TRUE(oracle::is_cycle(g, search->order()));
        }
    }
}

// ---- cycle_through ---------------------------------------------------------------

TEST(CycleThrough, SixCycleAnySubset)
{
    const Graph c6 = cycle_graph(6);
    for (std::uint64_t m = 1; m < 64; ++m) {
        std::vector<vertex_t> s;
        for (vertex_t v = 0; v < 6; ++v)
            if (m >> v & 1)
                s.push_back(v);
        auto c = cycle_through(c6, s, s.front());
        ASSERT_TRUE(c.has_value());
        EXPECT_EQ(c->size(), 6u);
        EXPECT_TRUE(oracle::is_cycle(c6, c->order()));
    }
}

TEST(CycleThrough, StarHasNoCycle)
{
    const Graph star = star_graph(4);
    EXPECT_FALSE(cycle_through(star, {1, 2}, 1).has_value());
}

TEST(CycleThrough, G4ThroughA1AndA3)
{
    // a1 b1 b5 b9 a3 b10 b6 b2 is a cycle of G(4)
    const Graph g = gen_Gd(4);
    const auto explicit_cycle = by_labels(g, {"a1", "b1", "b5", "b9", "a3", "b10", "b6", "b2"});
    EXPECT_TRUE(oracle::is_cycle(g, explicit_cycle));
    const vertex_t a1 = by_label(g, "a1"), a3 = by_label(g, "a3");
    auto c = cycle_through(g, {a1, a3}, a1);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(oracle::is_cycle(g, c->order()));
    EXPECT_TRUE(c->contains(a1) && c->contains(a3));
}

TEST(CycleThrough, AnchorMustBelongToS)
{
    EXPECT_THROW(cycle_through(cycle_graph(5), {1, 2}, 3), invalid_input);
    EXPECT_THROW(cycle_through(cycle_graph(5), {1, 9}, 1), invalid_input);
    EXPECT_THROW(cycle_through(cycle_graph(10), {1, 2}, 1, {5}), budget_exceeded);
}

TEST(CycleThrough, AgreesWithCycleEnumeration)
{
    std::mt19937_64 rng(321);
    for (const auto& g : corpus::random_graphs(300, 3, 10, 0.15, 0.7, 322)) {
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<vertex_t> pool = all_vertices(g);
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(1 + rng() % std::min<std::size_t>(5, g.size()));
            const bool want = oracle::cycle_through(g, pool);
            auto c = cycle_through(g, pool, pool.front());
            ASSERT_EQ(c.has_value(), want);
            if (c) {
                EXPECT_TRUE(oracle::is_cycle(g, c->order()));
                EXPECT_TRUE(contains_all(*c, pool));
            }
        }
    }
}

TEST(ShortestCycleThrough, IsShortest)
{
    for (const auto& g : corpus::random_graphs(100, 3, 9, 0.2, 0.6, 331))
        for (vertex_t a = 0; a < g.size(); ++a) {
            auto c = shortest_cycle_through(g, a);
            if (!c) {
                EXPECT_FALSE(oracle::cycle_through(g, {a}));
                continue;
            }
            EXPECT_TRUE(oracle::is_cycle(g, c->order()));
            EXPECT_TRUE(c->contains(a));
            // no shorter cycle through a: a neighbor pair joined by a path
            // of length < |c| - 2 avoiding a
            const std::size_t len = c->size();
            auto nb = g.neighbors(a);
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j) {
                    std::uint64_t removed = std::uint64_t{1} << a;
                    std::vector<int> dist(g.size(), -1);
                    std::vector<vertex_t> q{nb[i]};
                    dist[nb[i]] = 0;
                    for (std::size_t h = 0; h < q.size(); ++h)
                        for (vertex_t y : g.neighbors(q[h]))
                            if (!(removed >> y & 1) && dist[y] < 0) {
                                dist[y] = dist[q[h]] + 1;
                                q.push_back(y);
                            }
                    if (dist[nb[j]] >= 0) {
                        EXPECT_GE(static_cast<std::size_t>(dist[nb[j]] + 2), len);
                    }
                }
        }
}

// ---- extension rules ---------------------------------------------------------------

TEST(ExtensionRules, InsertionIntoAFourCycle)
{
    // x1..x4 = 0..3, v = 4 adjacent to x1, x2
    const Graph g = with_edges(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}});
    const OrientedCycle c({0, 1, 2, 3});
    auto m = extend_cycle(g, c, {4, nullptr, {Rule::insertion}});
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->rule, Rule::insertion);
    EXPECT_EQ(m->result.order(), (std::vector<vertex_t>{0, 4, 1, 2, 3}));
    expect_sound(g, c, *m);
}

TEST(ExtensionRules, CommonOutsideNeighbor)
{
    // v = 4 adjacent to x1; z = 5 adjacent to v and x2
    const Graph g = with_edges(6, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {4, 5}, {1, 5}});
    const OrientedCycle c({0, 1, 2, 3});
    EXPECT_FALSE(extend_cycle(g, c, {4, nullptr, {Rule::insertion}}).has_value());
    auto m = extend_cycle(g, c, {4, nullptr, {Rule::common_neighbor}});
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->result.size(), 6u);
    expect_sound(g, c, *m);
}

TEST(ExtensionRules, CrossingChord)
{
    // v = 4 adjacent to x1, x3; chord x2x4
    const Graph g = with_edges(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {2, 4}, {1, 3}});
    const OrientedCycle c({0, 1, 2, 3});
    auto m = extend_cycle(g, c, {4, nullptr, {Rule::crossing_chord}});
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->rule, Rule::crossing_chord);
    // x1 v x3 x2 x4 x1
    EXPECT_EQ(oracle::cycle_edges(m->result.order()), oracle::cycle_edges({0, 4, 2, 1, 3}));
    expect_sound(g, c, *m);
}

TEST(ExtensionRules, DetourThroughRadiusTwoBall)
{
    // cycle c0..c5, w = c1 with chord w⁻w⁺ = c0c2; v = 6 adjacent to w,
    // p = 7 joins v to z = w⁺⁺ = c3
    const Graph g = with_edges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 2},
                                   {1, 6}, {6, 7}, {3, 7}});
    const OrientedCycle c({0, 1, 2, 3, 4, 5});
    auto m = extend_cycle(g, c, {6, nullptr, {Rule::detour}});
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->rule, Rule::detour);
    EXPECT_EQ(m->result.size(), 8u);
    // w⁻ w⁺ w v p z →C w⁻
    EXPECT_EQ(oracle::cycle_edges(m->result.order()), oracle::cycle_edges({0, 2, 1, 6, 7, 3, 4, 5}));
    expect_sound(g, c, *m);
}

TEST(ExtensionRules, DisjointPathSplice)
{
    // cycle 0..5; v = 6 reaches 0 via 7 and 2 via 8; chord 1-3 joins the successors
    const Graph g = with_edges(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {1, 3},
                                   {6, 7}, {7, 0}, {6, 8}, {8, 2}});
    const OrientedCycle c({0, 1, 2, 3, 4, 5});
    auto m = extend_cycle(g, c, {6, nullptr, {Rule::disjoint_paths}});
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->rule, Rule::disjoint_paths);
    EXPECT_EQ(m->result.size(), 9u);
    expect_sound(g, c, *m);
}

TEST(ExtensionRules, NoRuleLeavesNoMove)
{
    // v hangs off the cycle by a single edge
    const Graph g = with_edges(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}});
    EXPECT_FALSE(extend_cycle(g, OrientedCycle({0, 1, 2, 3}), {4}).has_value());
}

TEST(ExtensionRules, RegionConfinesAddedVertices)
{
    const Graph g = with_edges(6, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {4, 5}, {1, 5}});
    std::vector<bool> region(6, true);
    region[5] = false;
    EXPECT_FALSE(extend_cycle(g, OrientedCycle({0, 1, 2, 3}), {4, &region, {Rule::common_neighbor}})
                     .has_value());
}

TEST(ExtensionRules, InvalidInputsAreRejected)
{
    const Graph g = cycle_graph(5);
    EXPECT_THROW(extend_cycle(g, OrientedCycle({0, 1, 3}), {4}), invalid_input);
    std::vector<bool> small(2, true);
    EXPECT_THROW(extend_cycle(g, OrientedCycle({0, 1, 2, 3, 4}), {0, &small}), invalid_input);
}

TEST(ExtensionRules, FuzzedMovesMatchGenericSplicing)
{
    std::mt19937_64 rng(341);
    std::size_t moves = 0;
    for (const auto& g : corpus::connected_graphs(150, 6, 14, 0.2, 0.6, 342)) {
        for (int trial = 0; trial < 6; ++trial) {
            auto start = shortest_cycle_through(g, rng() % g.size());
            if (!start)
                continue;
            std::vector<vertex_t> off;
            for (vertex_t x = 0; x < g.size(); ++x)
                if (!start->contains(x))
                    off.push_back(x);
            if (off.empty())
                continue;
            const vertex_t v = off[rng() % off.size()];
            for (Rule r : default_rule_order()) {
                auto m = extend_cycle(g, *start, {v, nullptr, {r}});
                if (!m)
                    continue;
                ++moves;
                EXPECT_EQ(m->rule, r);
                expect_sound(g, *start, *m);
            }
        }
    }
    EXPECT_GT(moves, 200u);
}

// ---- guided engine ---------------------------------------------------------------

TEST(GuidedCycle, CompleteGraphBall)
{
    const Graph k6 = complete_graph(6);
    Ball b = ball(k6, 0, 1);
    auto res = guided_cycle_through(b, {0, 2, 4}, 0);
    ASSERT_TRUE(res.cycle.has_value());
    EXPECT_TRUE(contains_all(*res.cycle, {0, 2, 4}));
    EXPECT_TRUE(oracle::is_cycle(k6, res.cycle->order()));
    ASSERT_FALSE(res.trace.empty());
    EXPECT_EQ(res.trace.front().step, "initial");
    EXPECT_FALSE(res.fallback_absence);
}

TEST(GuidedCycle, LayeredTruncationTwoVerticesThreeLayersApart)
{
    const Truncation t = gen_layered_truncation(1, LayerSizes(4), 5);
    const vertex_t a = 2;  // V1.0
    const vertex_t b = 14; // V4.0
    ASSERT_EQ(t.oracle_id[b], layer_ids::make(4, 0));
    ASSERT_EQ(distances_from(t.graph, a)[b], 3);
    Ball bl = ball(t.graph, a, 3 + 5);
    GuidedOptions opts;
    opts.hypothesis = GuidedHypothesis::none;
    auto res = guided_cycle_through(bl, {a, b}, a, opts);
    ASSERT_TRUE(res.cycle.has_value());
    EXPECT_TRUE(oracle::is_cycle(t.graph, res.cycle->order()));
    EXPECT_TRUE(res.cycle->contains(a) && res.cycle->contains(b));
    EXPECT_TRUE(cycle_through(t.graph, {a, b}, a).has_value());
    // the degree-sum clause fails next to V_0, so the m2-checked run refuses
    EXPECT_THROW(guided_cycle_through(bl, {a, b}, a), hypothesis_violation);
}

TEST(GuidedCycle, SixCycleViolatesTheHypothesis)
{
    const Graph c6 = cycle_graph(6);
    Ball b = ball(c6, 0, 3);
    EXPECT_THROW(guided_cycle_through(b, {0, 2}, 0), hypothesis_violation);
}

TEST(GuidedCycle, RadiusBelowMarginIsRejected)
{
    const Graph sq = circulant_graph(40, {1, 2});
    Ball b = ball(sq, 0, 5);
    EXPECT_THROW(guided_cycle_through(b, {0, 2}, 0), hypothesis_violation);
    Ball ok = ball(sq, 0, 6);
    EXPECT_TRUE(guided_cycle_through(ok, {0, 2}, 0).cycle.has_value());
    EXPECT_THROW(guided_cycle_through(ok, {0, 2}, 1), invalid_input);
}

TEST(GuidedCycle, DegreeBoundHostsNeverNeedAbsence)
{
    std::mt19937_64 rng(351);
    std::vector<Graph> hosts{circulant_graph(30, {1, 2}), circulant_graph(24, {1, 2, 3}),
                             complete_graph(7)};
    for (const auto& g : hosts) {
        ASSERT_TRUE(m2_condition(g, all_vertices(g)).verdict());
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<vertex_t> s = all_vertices(g);
            std::shuffle(s.begin(), s.end(), rng);
            s.resize(1 + rng() % 5);
            std::sort(s.begin(), s.end());
            int q = 0;
            for (vertex_t x : s)
                for (vertex_t y : s)
                    q = std::max(q, distances_from(g, x)[y]);
            Ball b = ball(g, s.front(), q + 5);
            auto res = guided_cycle_through(b, s, s.front());
            ASSERT_TRUE(res.cycle.has_value());
            EXPECT_FALSE(res.fallback_absence);
            EXPECT_TRUE(oracle::is_cycle(g, res.cycle->order()));
            EXPECT_TRUE(contains_all(*res.cycle, s));
            EXPECT_EQ(res.trace.front().step, "initial");
            for (std::size_t i = 1; i < res.trace.size(); ++i)
                if (res.trace[i].step != "fallback") {
                    EXPECT_GT(res.trace[i].length, res.trace[i - 1].length);
                }
        }
    }
}

// ---- uniformly_hamiltonian ---------------------------------------------------------

TEST(UniformlyHamiltonian, CompleteGraph)
{
    const Graph k5 = complete_graph(5);
    auto sweep = uniformly_hamiltonian(k5, all_vertices(k5), 2);
    EXPECT_TRUE(sweep.report.verdict);
    EXPECT_EQ(sweep.undetermined, 0u);
}

TEST(UniformlyHamiltonian, HTruncationAtSafeCenters)
{
    const Truncation t = gen_H(6);
    for (int r = 1; r <= 3; ++r) {
        auto centers = t.safe_centers(r);
        ASSERT_FALSE(centers.empty());
        auto sweep = uniformly_hamiltonian(t.graph, centers, r);
        EXPECT_TRUE(sweep.report.verdict) << "r=" << r;
        EXPECT_EQ(sweep.undetermined, 0u);
    }
}

TEST(UniformlyHamiltonian, EightCycleRadiusOneFails)
{
    const Graph c8 = cycle_graph(8);
    auto sweep = uniformly_hamiltonian(c8, {0}, 1);
    ASSERT_FALSE(sweep.report.verdict);
    const auto& f = std::get<CenterFailure>(sweep.report.witnesses.front());
    EXPECT_EQ(f.center, 0u);
    EXPECT_EQ(f.radius, 1);
    EXPECT_FALSE(oracle::hamiltonian(ball(c8, 0, 1).graph));
}

TEST(UniformlyHamiltonian, OversizedBallsAreUndeterminedNotFatal)
{
    const Graph c = circulant_graph(40, {1, 2});
    SweepOptions opts;
    opts.exact = {20, 25};
    auto sweep = uniformly_hamiltonian(c, {0}, 8, opts);
    EXPECT_GT(sweep.undetermined, 0u);
    EXPECT_TRUE(sweep.report.verdict);
    EXPECT_FALSE(sweep.report.notes.empty());
}

TEST(UniformlyHamiltonian, LocalOreGraphsHaveHamiltonianBalls)
{
    std::size_t passing = 0;
    for (const auto& g : corpus::connected_graphs(120, 4, 12, 0.55, 0.95, 361)) {
        if (!local_ore(g, all_vertices(g)).verdict)
            continue;
        ++passing;
        auto sweep = uniformly_hamiltonian(g, all_vertices(g), static_cast<int>(g.size()));
        EXPECT_TRUE(sweep.report.verdict);
        for (const auto& b : sweep.balls)
            EXPECT_TRUE(oracle::hamiltonian(ball(g, b.center, b.radius).graph));
    }
    EXPECT_GT(passing, 10u);
}
