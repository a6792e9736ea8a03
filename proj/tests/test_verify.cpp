#include <gtest/gtest.h>

#include <set>

#include "ballscope/verify.hpp"
#include "support.hpp"

using namespace ballscope;

namespace {

std::vector<vertex_t> all_vertices(const Graph& g)
{
    std::vector<vertex_t> v(g.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

template <class H>
void expect_cycles_sound(const H& host, const TheoremRun& run)
{
    for (const auto& art : run.cycles) {
        ASSERT_TRUE(art.cycle.has_value());
        const auto& order = art.cycle->order();
        std::set<vertex_t> distinct(order.begin(), order.end());
        EXPECT_EQ(distinct.size(), order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            EXPECT_TRUE(host.adjacent(order[i], order[(i + 1) % order.size()]));
        for (vertex_t s : art.set)
            EXPECT_TRUE(art.cycle->contains(s));
        EXPECT_TRUE(art.cycle->contains(art.anchor));
        EXPECT_FALSE(art.fallback_absence);
    }
}

int host_distance(const GraphOracle& o, vertex_t a, vertex_t b)
{
    for (int r = 0;; ++r) {
        Ball bl = ball(o, a, r);
        if (bl.from_host(b))
            return r;
    }
}

} // namespace

// ---- G(d) catalogue -------------------------------------------------------------

TEST(GdCatalogue, AllProperBallsHamiltonianButNotTheWhole)
{
    for (int d = 3; d <= 4; ++d) {
        auto run = run_gd_catalogue(d);
        EXPECT_TRUE(run.confirmed) << d;
        EXPECT_FALSE(run.violation);
        EXPECT_EQ(run.verdict(), "confirmed");
        EXPECT_FALSE(run.stages.empty());
    }
}

TEST(GdCatalogue, DispatchedById)
{
    FamilySpec s;
    s.family = "Gd";
    s.d = 3;
    auto run = run_theorem("T10", s);
    EXPECT_EQ(run.id, "T10");
    EXPECT_TRUE(run.confirmed);
    EXPECT_EQ(run.source, "Gd d=3");
    EXPECT_THROW(run_theorem("T99", s), invalid_input);
}

// ---- local Ore ------------------------------------------------------------------

TEST(LocalOreUniform, CompleteGraphsAndCycles)
{
    for (std::size_t n = 3; n <= 7; ++n) {
        auto run = run_local_ore_uniform(complete_graph(n));
        EXPECT_TRUE(run.hypothesis_holds);
        EXPECT_TRUE(run.confirmed);
    }
    auto c8 = run_local_ore_uniform(cycle_graph(8));
    EXPECT_FALSE(c8.hypothesis_holds);
    EXPECT_EQ(c8.verdict(), "hypothesis not satisfied");
}

TEST(LocalOreUniform, RandomCorpusNeverContradicts)
{
    std::size_t qualifying = 0;
    auto graphs = corpus::connected_graphs(120, 4, 12, 0.5, 0.95, 401);
    for (std::size_t p = 2; p <= 4; ++p)
        graphs.push_back(gen_K_class(p, all_inner_edges(p)));
    for (const auto& g : graphs) {
        auto run = run_local_ore_uniform(g);
        EXPECT_FALSE(run.violation);
        if (!run.hypothesis_holds)
            continue;
        ++qualifying;
        EXPECT_TRUE(run.confirmed);
        for (vertex_t v = 0; v < g.size(); ++v)
            for (int r = 1; r <= 2; ++r)
                EXPECT_TRUE(oracle::hamiltonian(ball(g, v, r).graph));
    }
    EXPECT_GT(qualifying, 10u);
}

// ---- propagation, Chvatal-Erdos, degree bound, regular ------------------------------

TEST(Bundles, BallPropagationOnCompleteGraph)
{
    TheoremScope scope;
    scope.r = 1;
    scope.k = 3;
    auto run = run_ball_propagation(complete_graph(7), scope);
    EXPECT_TRUE(run.confirmed);
    EXPECT_EQ(run.reports.size(), 2u);
}

TEST(Bundles, ChvatalErdosOnLayeredOracle)
{
    const GraphOracle g = gen_layered(1, LayerSizes(4));
    TheoremScope scope;
    scope.samples = 15;
    scope.centers = std::vector<vertex_t>{};
    for (std::uint64_t layer = 1; layer <= 4; ++layer)
        for (std::uint64_t i = 0; i < 4; ++i)
            scope.centers->push_back(layer_ids::make(layer, i));
    auto run = run_local_chvatal_erdos(g, scope);
    EXPECT_TRUE(run.hypothesis_holds);
    EXPECT_TRUE(run.confirmed);
    EXPECT_EQ(run.cycles.size(), 15u);
    expect_cycles_sound(g, run);
}

TEST(Bundles, DegreeBoundCyclesOnSquareOfCycle)
{
    const Graph g = circulant_graph(30, {1, 2});
    TheoremScope scope;
    scope.samples = 20;
    auto run = run_m2_cycles(g, scope);
    EXPECT_TRUE(run.hypothesis_holds);
    EXPECT_TRUE(run.confirmed);
    expect_cycles_sound(g, run);
    for (const auto& art : run.cycles)
        EXPECT_EQ(art.ball_radius, art.q + 5);
}

TEST(Bundles, DegreeBoundFailsOnSixCycle)
{
    auto run = run_m2_cycles(cycle_graph(6));
    EXPECT_FALSE(run.hypothesis_holds);
    EXPECT_FALSE(run.confirmed);
    EXPECT_TRUE(run.cycles.empty());
}

TEST(Bundles, RegularCyclesOnRaySquare)
{
    FamilySpec s;
    s.family = "ray_square";
    TheoremScope scope;
    scope.k = 4;
    scope.samples = 20;
    auto run = run_theorem("C16", s, scope);
    EXPECT_TRUE(run.hypothesis_holds);
    EXPECT_TRUE(run.confirmed);
    expect_cycles_sound(gen_ray_square(), run);
}

TEST(Bundles, HCurveAndNoCircle)
{
    TheoremScope scope;
    scope.samples = 10;
    auto curve = run_h_curve(6, scope);
    EXPECT_TRUE(curve.confirmed);
    EXPECT_FALSE(curve.violation);
    expect_cycles_sound(gen_H_oracle(), curve);
    for (int m = 4; m <= 8; ++m) {
        auto no = run_h_no_circle(m);
        EXPECT_TRUE(no.confirmed) << m;
        EXPECT_FALSE(no.notes.empty());
    }
}

// ---- certify_curve ------------------------------------------------------------------

TEST(CertifyCurve, LayeredSingleton)
{
    const GraphOracle g = gen_layered(1, LayerSizes(4));
    CurveOptions opts;
    opts.hypothesis = GuidedHypothesis::none;
    auto run = certify_curve(g, {{layer_ids::make(1, 0)}}, opts);
    EXPECT_TRUE(run.confirmed);
    ASSERT_EQ(run.cycles.size(), 1u);
    EXPECT_EQ(run.cycles[0].q, 0);
    EXPECT_EQ(run.cycles[0].ball_radius, 5);
    expect_cycles_sound(g, run);
    EXPECT_FALSE(run.notes.empty());
}

TEST(CertifyCurve, LayeredFourVerticesOverThreeLayers)
{
    const GraphOracle g = gen_layered(2, LayerSizes(5));
    CurveOptions opts;
    opts.hypothesis = GuidedHypothesis::none;
    const std::vector<vertex_t> s{layer_ids::make(1, 0), layer_ids::make(1, 3), layer_ids::make(2, 4),
                                  layer_ids::make(3, 2)};
    auto run = certify_curve(g, {s}, opts);
    EXPECT_TRUE(run.confirmed);
    ASSERT_EQ(run.cycles.size(), 1u);
    int q = 0;
    for (vertex_t x : s)
        for (vertex_t y : s)
            q = std::max(q, host_distance(g, x, y));
    EXPECT_EQ(run.cycles[0].q, q);
    EXPECT_EQ(q, 2);
    expect_cycles_sound(g, run);
}

TEST(CertifyCurve, HPairOfDegreeTwoVertices)
{
    const GraphOracle h = gen_H_oracle();
    CurveOptions opts;
    opts.hypothesis = GuidedHypothesis::none;
    auto run = certify_curve(h, {{h_ids::make(h_ids::a, 1), h_ids::make(h_ids::a, 2)}}, opts);
    EXPECT_TRUE(run.confirmed);
    expect_cycles_sound(h, run);
}

TEST(CertifyCurve, HypothesisFailureIsReportedNotThrown)
{
    auto run = certify_curve(cycle_graph(12), {{0, 3}});
    EXPECT_FALSE(run.hypothesis_holds);
    EXPECT_FALSE(run.confirmed);
    EXPECT_FALSE(run.violation);
    EXPECT_THROW(certify_curve(cycle_graph(12), {{}}), invalid_input);
}

TEST(CertifyCurve, ResultsDoNotDependOnLaterSets)
{
    const Graph g = circulant_graph(24, {1, 2, 3});
    auto schedule = sample_sets(all_vertices(g), 12, 4, 9);
    auto full = certify_curve(g, schedule);
    auto prefix = certify_curve(g, std::vector<std::vector<vertex_t>>(schedule.begin(), schedule.begin() + 5));
    ASSERT_EQ(prefix.cycles.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(prefix.cycles[i].set, full.cycles[i].set);
        EXPECT_EQ(prefix.cycles[i].cycle->order(), full.cycles[i].cycle->order());
    }
    EXPECT_TRUE(full.confirmed);
}

TEST(SampleSets, SeededAndWellFormed)
{
    const std::vector<vertex_t> region{3, 5, 8, 13, 21, 34};
    auto a = sample_sets(region, 40, 4, 3), b = sample_sets(region, 40, 4, 3);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample_sets(region, 40, 4, 4));
    for (const auto& s : a) {
        EXPECT_GE(s.size(), 1u);
        EXPECT_LE(s.size(), 4u);
        EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
        EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
        for (vertex_t x : s)
            EXPECT_NE(std::find(region.begin(), region.end(), x), region.end());
    }
    EXPECT_THROW(sample_sets({}, 3, 2, 1), invalid_input);
}

// ---- circle_obstruction ------------------------------------------------------------------

TEST(CircleObstruction, GdHasTwoForcedCycles)
{
    for (int d = 3; d <= 7; ++d) {
        auto rep = circle_obstruction(gen_Gd(d));
        EXPECT_EQ(rep.count(ForcedKind::cycle), 2u) << d;
        EXPECT_EQ(rep.components.size(), 2u);
        EXPECT_TRUE(rep.hamiltonicity_refuted);
        EXPECT_TRUE(rep.overloaded.empty());
    }
}

TEST(CircleObstruction, HHasTwoBoundaryPaths)
{
    for (int m = 4; m <= 8; ++m) {
        const Truncation t = gen_H(m);
        auto rep = circle_obstruction(t.graph, t.boundary);
        EXPECT_EQ(rep.count(ForcedKind::boundary_path), 2u) << m;
        EXPECT_EQ(rep.components.size(), 2u);
        EXPECT_FALSE(rep.hamiltonicity_refuted);
        EXPECT_FALSE(rep.pattern.empty());
    }
}

TEST(CircleObstruction, PlainCycleIsNoObstruction)
{
    auto rep = circle_obstruction(cycle_graph(6));
    EXPECT_EQ(rep.count(ForcedKind::cycle), 1u);
    EXPECT_EQ(rep.components.front().vertices.size(), 6u);
    EXPECT_TRUE(rep.pattern.empty());
    EXPECT_FALSE(rep.hamiltonicity_refuted);
    EXPECT_TRUE(circle_obstruction(complete_graph(4)).forced_edges.empty());
}

TEST(CircleObstruction, OverloadedVertex)
{
    // subdivided claw: the center meets three forced edges
    const Graph g = Graph::from_edges(7, std::vector<edge_t>{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5},
                                                             {3, 6}, {4, 5}, {5, 6}, {4, 6}});
    auto rep = circle_obstruction(g);
    EXPECT_EQ(rep.overloaded, (std::vector<vertex_t>{0}));
    EXPECT_TRUE(rep.hamiltonicity_refuted);
    EXPECT_FALSE(oracle::hamiltonian(g));
    EXPECT_THROW(circle_obstruction(g, std::vector<bool>(3)), invalid_input);
}

TEST(CircleObstruction, RefutationsAreSound)
{
    std::size_t refuted = 0;
    for (const auto& g : corpus::random_graphs(400, 3, 9, 0.2, 0.6, 411)) {
        auto rep = circle_obstruction(g);
        if (!rep.hamiltonicity_refuted)
            continue;
        ++refuted;
        EXPECT_FALSE(oracle::hamiltonian(g));
    }
    EXPECT_GT(refuted, 20u);
}
