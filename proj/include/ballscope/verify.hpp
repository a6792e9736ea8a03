#pragma once

// Reproducible desk-scale experiments: cycle-through-S certificate
// schedules, the forced-edge obstruction, and named hypothesis-gated bundles.

#include <algorithm>
#include <chrono>
#include <climits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ballscope/conditions.hpp"
#include "ballscope/connectivity.hpp"
#include "ballscope/cycles.hpp"
#include "ballscope/families.hpp"
#include "ballscope/graph.hpp"
#include "ballscope/report.hpp"

namespace ballscope {

inline constexpr const char* violation_flag = "THEOREM VIOLATION (check implementation)";
inline constexpr const char* schedule_label =
    "cycle-through-every-finite-set criterion verified on schedule";

/// One certificate: a cycle through S found inside a ball around the anchor.
struct CycleArtifact {
    std::vector<vertex_t> set; // host ids, sorted
    vertex_t anchor = 0;
    int q = 0;
    int ball_radius = 0;
    std::size_t ball_size = 0;
    std::optional<OrientedCycle> cycle; // host ids
    std::vector<TraceEntry> trace;
    bool fallback_used = false;
    bool fallback_absence = false;
};

struct TheoremRun {
    std::string id;
    std::string description;
    std::string source;
    bool hypothesis_holds = true;
    bool confirmed = false;
    bool violation = false;
    std::vector<std::string> stages; // human-readable stage log
    std::vector<ConditionReport> reports;
    std::vector<CycleArtifact> cycles;
    std::vector<std::string> notes;
    double seconds = 0;

    std::string verdict() const
    {
        if (violation)
            return violation_flag;
        if (!hypothesis_holds)
            return "hypothesis not satisfied";
        return confirmed ? "confirmed" : "not confirmed";
    }
};

namespace detail {

inline TheoremRun start_run(std::string id, std::string description)
{
    TheoremRun run;
    run.id = std::move(id);
    run.description = std::move(description);
    return run;
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// d(x, y) by BFS from x, giving up past `limit`.
template <Host H>
int host_distance(const H& host, vertex_t x, vertex_t y, int limit)
{
    if (x == y)
        return 0;
    std::unordered_map<vertex_t, int> dist{{x, 0}};
    std::queue<vertex_t> q;
    q.push(x);
    while (!q.empty()) {
        vertex_t a = q.front();
        q.pop();
        if (dist[a] >= limit)
            continue;
        for (vertex_t b : host.neighbors(a))
            if (dist.emplace(b, dist[a] + 1).second) {
                if (b == y)
                    return dist[b];
                q.push(b);
            }
    }
    throw invalid_input("vertices " + host.label(x) + " and " + host.label(y) +
                        " are farther apart than " + std::to_string(limit));
}

} // namespace detail

struct CurveOptions {
    int radius_margin = 5;
    GuidedHypothesis hypothesis = GuidedHypothesis::m2;
    BallOptions ball{};
    CycleSearchOptions exact{};
    int distance_limit = 64;
};

/// For each S: anchor = lowest id, q = max pairwise distance, ball of radius
/// q + margin around the anchor, then the guided engine. Confirmed iff every
/// S gets a cycle. A finite schedule only, labelled as such.
template <Host H>
TheoremRun certify_curve(const H& host, const std::vector<std::vector<vertex_t>>& schedule,
                         const CurveOptions& opts = {})
{
    detail::Stopwatch sw;
    TheoremRun run;
    run.id = "P-curve";
    run.description = schedule_label;
    run.confirmed = true;
    for (auto s : schedule) {
        if (s.empty())
            throw invalid_input("certify_curve: empty set in schedule");
        std::ranges::sort(s);
        s.erase(std::unique(s.begin(), s.end()), s.end());
        CycleArtifact art;
        art.set = s;
        art.anchor = s.front();
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                art.q = std::max(art.q, detail::host_distance(host, s[i], s[j], opts.distance_limit));
        art.ball_radius = art.q + opts.radius_margin;
        Ball b = ball(host, art.anchor, art.ball_radius, opts.ball);
        art.ball_size = b.size();
        GuidedOptions g;
        g.exact = opts.exact;
        g.hypothesis = opts.hypothesis;
        g.radius_margin = opts.radius_margin;
        try {
            auto res = guided_cycle_through(b, s, art.anchor, g);
            art.cycle = std::move(res.cycle);
            art.trace = std::move(res.trace);
            art.fallback_used = res.fallback_used;
            art.fallback_absence = res.fallback_absence;
        } catch (const hypothesis_violation& e) {
            run.hypothesis_holds = false;
            run.notes.push_back(std::string("hypothesis: ") + e.what());
        }
        if (!art.cycle)
            run.confirmed = false;
        run.cycles.push_back(std::move(art));
    }
    run.confirmed = run.confirmed && run.hypothesis_holds;
    run.stages.push_back(std::to_string(schedule.size()) + " sets scheduled");
    run.notes.push_back(std::string(schedule_label) + "; this is not a proof of curve existence");
    run.seconds = sw.seconds();
    return run;
}

/// Seeded sampler: sizes uniform in 1..s_max, members uniform over `region`
/// without repetition.
inline std::vector<std::vector<vertex_t>> sample_sets(const std::vector<vertex_t>& region,
                                                      std::size_t count, std::size_t s_max,
                                                      std::uint64_t seed)
{
    if (region.empty())
        throw invalid_input("sample_sets: empty region");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_dist(1, std::min(s_max, region.size()));
    std::vector<std::vector<vertex_t>> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<vertex_t> pool = region;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(size_dist(rng));
        std::ranges::sort(pool);
        out.push_back(std::move(pool));
    }
    return out;
}

enum class ForcedKind { cycle, path, boundary_path };

inline std::string forced_kind_name(ForcedKind k)
{
    switch (k) {
    case ForcedKind::cycle: return "cycle";
    case ForcedKind::path: return "path";
    case ForcedKind::boundary_path: return "boundary-path";
    }
    return "?";
}

struct ForcedComponent {
    ForcedKind kind = ForcedKind::path;
    std::vector<vertex_t> vertices; // traversal order
};

struct ObstructionReport {
    std::vector<edge_t> forced_edges;
    std::vector<ForcedComponent> components;
    std::vector<vertex_t> overloaded; // vertices with >= 3 forced edges
    std::string pattern;              // empty when no obstruction pattern applies
    bool hamiltonicity_refuted = false;
    std::vector<std::string> notes;

    std::size_t count(ForcedKind k) const
    {
        return static_cast<std::size_t>(
            std::ranges::count_if(components, [&](const auto& c) { return c.kind == k; }));
    }
};

/// Both edges at every degree-2 vertex not on the boundary, the subgraph they
/// induce, and its components. A forced cycle shorter than |V| or an
/// overloaded vertex refutes Hamiltonicity. On a truncation, forced paths with
/// both ends on the boundary are prefixes of forced double rays; treating the
/// boundary as a single end region is a heuristic and is labelled so.
inline ObstructionReport circle_obstruction(const Graph& g, const std::vector<bool>& boundary = {})
{
    const std::size_t n = g.size();
    if (!boundary.empty() && boundary.size() != n)
        throw invalid_input("circle_obstruction: boundary mask size mismatch");
    auto on_boundary = [&](vertex_t v) { return !boundary.empty() && boundary[v]; };
    ObstructionReport rep;
    for (vertex_t v = 0; v < n; ++v)
        if (g.degree(v) == 2 && !on_boundary(v))
            for (vertex_t y : g.neighbors(v))
                rep.forced_edges.emplace_back(std::min(v, y), std::max(v, y));
    std::ranges::sort(rep.forced_edges);
    rep.forced_edges.erase(std::unique(rep.forced_edges.begin(), rep.forced_edges.end()),
                           rep.forced_edges.end());
    std::vector<std::vector<vertex_t>> f(n);
    for (auto [a, b] : rep.forced_edges) {
        f[a].push_back(b);
        f[b].push_back(a);
    }
    for (vertex_t v = 0; v < n; ++v) {
        std::ranges::sort(f[v]);
        if (f[v].size() > 2)
            rep.overloaded.push_back(v);
    }
    std::vector<bool> seen(n, false);
    auto walk = [&](vertex_t start) {
        std::vector<vertex_t> order{start};
        seen[start] = true;
        for (vertex_t prev = n, cur = start;;) {
            vertex_t next = n;
            for (vertex_t y : f[cur])
                if (y != prev && !seen[y]) {
                    next = y;
                    break;
                }
            if (next == n)
                break;
            seen[next] = true;
            order.push_back(next);
            prev = cur;
            cur = next;
        }
        return order;
    };
    if (rep.overloaded.empty()) {
        // paths first (start at an end), then what remains are cycles
        for (vertex_t v = 0; v < n; ++v)
            if (!seen[v] && f[v].size() == 1) {
                ForcedComponent c{ForcedKind::path, walk(v)};
                if (on_boundary(c.vertices.front()) && on_boundary(c.vertices.back()))
                    c.kind = ForcedKind::boundary_path;
                rep.components.push_back(std::move(c));
            }
        for (vertex_t v = 0; v < n; ++v)
            if (!seen[v] && f[v].size() == 2)
                rep.components.push_back({ForcedKind::cycle, walk(v)});
    }

    const std::size_t cycles = rep.count(ForcedKind::cycle);
    const std::size_t rays = rep.count(ForcedKind::boundary_path);
    bool short_cycle = false;
    for (const auto& c : rep.components)
        if (c.kind == ForcedKind::cycle && c.vertices.size() < n)
            short_cycle = true;
    if (!rep.overloaded.empty()) {
        rep.pattern = "vertex with three or more forced edges";
        rep.hamiltonicity_refuted = true;
    } else if (cycles >= 2) {
        rep.pattern = "two disjoint forced cycles";
        rep.hamiltonicity_refuted = true;
    } else if (short_cycle) {
        rep.pattern = "forced cycle missing vertices";
        rep.hamiltonicity_refuted = true;
    } else if (rays >= 2) {
        rep.pattern = "two disjoint forced rays into one end region";
        rep.notes.push_back("end counting on a truncation is heuristic: the boundary is treated "
                            "as one end region");
    }
    return rep;
}

/// Scope of a bundle run. Centers default to every vertex of a finite host,
/// or to M_region_radius(root) of an oracle.
struct TheoremScope {
    std::optional<std::vector<vertex_t>> centers;
    int region_radius = 2;
    int r = 1;
    std::size_t k = 2;
    int r_max = 3;
    std::size_t samples = 50;
    std::size_t s_max = 5;
    std::uint64_t seed = 1;
    BallOptions ball{};
    HamiltonOptions exact{};
    CycleSearchOptions cycle_exact{};
};

namespace detail {

template <Host H>
std::vector<vertex_t> default_centers(const H& host, const TheoremScope& scope)
{
    if (scope.centers)
        return *scope.centers;
    if constexpr (std::is_same_v<H, Graph>) {
        std::vector<vertex_t> all(host.size());
        for (vertex_t v = 0; v < host.size(); ++v)
            all[v] = v;
        return all;
    } else {
        return flatten(bfs_layers(host, host.root(), scope.region_radius));
    }
}

inline void add_cycles(TheoremRun& run, TheoremRun&& part)
{
    for (auto& c : part.cycles)
        run.cycles.push_back(std::move(c));
    for (auto& n : part.notes)
        run.notes.push_back(std::move(n));
}

/// Conclusion stage shared by the cycle-through bundles.
template <Host H>
void cycle_samples(TheoremRun& run, const H& host, const std::vector<vertex_t>& region,
                   const TheoremScope& scope, int margin, GuidedHypothesis hyp)
{
    auto schedule = sample_sets(region, scope.samples, scope.s_max, scope.seed);
    CurveOptions opts;
    opts.radius_margin = margin;
    opts.hypothesis = hyp;
    opts.ball = scope.ball;
    opts.exact = scope.cycle_exact;
    auto part = certify_curve(host, schedule, opts);
    const bool ok = part.confirmed;
    bool absence = false;
    for (const auto& c : part.cycles)
        absence = absence || c.fallback_absence;
    if (!part.hypothesis_holds)
        run.notes.push_back("guided engine rejected a sampling ball");
    run.stages.push_back("conclusion: " + std::to_string(schedule.size()) + " sampled sets, " +
                         (ok ? "all have a cycle" : "some set has no cycle found"));
    run.confirmed = ok;
    run.violation = !ok && part.hypothesis_holds;
    if (absence)
        run.notes.push_back("exact search certified that some sampled set lies on no cycle");
    add_cycles(run, std::move(part));
    run.notes.push_back("hypothesis verified on scope only");
}

} // namespace detail

/// Local Ore condition at every vertex, then the Hamiltonicity sweep of all
/// balls up to the radius where they stop growing.
inline TheoremRun run_local_ore_uniform(const Graph& g, const TheoremScope& scope = {})
{
    detail::Stopwatch sw;
    TheoremRun run = detail::start_run("T8", "local Ore condition implies every ball is Hamiltonian");
    auto centers = detail::default_centers(g, scope);
    auto hyp = local_ore(g, centers);
    run.hypothesis_holds = hyp.verdict;
    run.stages.push_back(std::string("hypothesis: local Ore ") + (hyp.verdict ? "holds" : "fails"));
    run.reports.push_back(std::move(hyp));
    if (run.hypothesis_holds) {
        SweepOptions so;
        so.exact = scope.exact;
        so.ball = scope.ball;
        const int r_max = std::max<int>(1, static_cast<int>(g.size()));
        auto sweep = uniformly_hamiltonian(g, centers, r_max, so);
        run.confirmed = sweep.report.verdict && sweep.undetermined == 0;
        run.violation = !sweep.report.verdict;
        run.stages.push_back("conclusion: " + std::to_string(sweep.balls.size()) + " balls, " +
                             std::to_string(sweep.undetermined) + " undetermined");
        run.reports.push_back(std::move(sweep.report));
    }
    run.seconds = sw.seconds();
    return run;
}

/// G(d): diameter d, not Hamiltonian, every ball other than G itself
/// Hamiltonian, and the forced edges form two disjoint cycles.
inline TheoremRun run_gd_catalogue(int d, const TheoremScope& scope = {})
{
    detail::Stopwatch sw;
    TheoremRun run = detail::start_run("T10", "G(d) is not Hamiltonian while all its proper balls are");
    const Graph g = gen_Gd(d);
    run.source = "Gd d=" + std::to_string(d);
    const int diam = diameter(g);
    const bool diam_ok = diam == d;
    run.stages.push_back("vertices: " + std::to_string(g.size()) + ", diameter " +
                         std::to_string(diam));
    const bool ham = hamilton_cycle(g, scope.exact).has_value();
    run.stages.push_back(std::string("whole graph: ") + (ham ? "Hamiltonian" : "not Hamiltonian"));
    SweepOptions so;
    so.exact = scope.exact;
    so.ball = scope.ball;
    so.skip_closed_balls = true;
    auto sweep = uniformly_hamiltonian(g, detail::default_centers(g, scope), diam, so);
    run.stages.push_back("proper balls: " + std::to_string(sweep.balls.size()) + " checked, " +
                         (sweep.report.verdict ? "all Hamiltonian" : "some not Hamiltonian"));
    auto obs = circle_obstruction(g);
    const bool two_cycles = obs.count(ForcedKind::cycle) == 2 && obs.components.size() == 2;
    run.stages.push_back("forced edges: " + std::to_string(obs.count(ForcedKind::cycle)) +
                         " disjoint cycles");
    run.reports.push_back(std::move(sweep.report));
    run.confirmed = diam_ok && !ham && run.reports.back().verdict && sweep.undetermined == 0 &&
                    two_cycles;
    run.violation = !run.confirmed;
    run.seconds = sw.seconds();
    return run;
}

/// Ball-connectivity propagation from radius r to r + 1.
template <Host H>
TheoremRun run_ball_propagation(const H& host, const TheoremScope& scope = {})
{
    detail::Stopwatch sw;
    TheoremRun run = detail::start_run("T12", "k-connected radius-r balls imply k-connected radius-(r+1) balls");
    auto rep = check_ball_propagation(host, detail::default_centers(host, scope), scope.r, scope.k,
                                      scope.ball);
    run.hypothesis_holds = rep.hypothesis_holds;
    run.stages.push_back(std::string("hypothesis: ") + (rep.hypothesis_holds ? "holds" : "fails"));
    if (rep.hypothesis_holds)
        run.stages.push_back("conclusion: " + std::to_string(rep.concluded_centers.size()) +
                             " centers, " + (rep.conclusion.verdict ? "all hold" : "failure"));
    run.confirmed = rep.hypothesis_holds && rep.conclusion.verdict;
    run.violation = rep.violation;
    run.reports.push_back(std::move(rep.hypothesis));
    run.reports.push_back(std::move(rep.conclusion));
    run.notes.push_back("hypothesis verified on scope only");
    run.seconds = sw.seconds();
    return run;
}

/// kappa(G_r(u)) >= alpha(G_{r+1}(u)) on scope, then cycles through sampled
/// sets inside balls of radius q + r + 1.
template <Host H>
TheoremRun run_local_chvatal_erdos(const H& host, const TheoremScope& scope = {})
{
    detail::Stopwatch sw;
    TheoremRun run = detail::start_run("T13", "local Chvatal-Erdos condition implies cycles through finite sets");
    auto centers = detail::default_centers(host, scope);
    auto hyp = chvatal_erdos_local(host, centers, scope.r, scope.ball);
    run.hypothesis_holds = hyp.verdict;
    run.stages.push_back(std::string("hypothesis: ") + (hyp.verdict ? "holds" : "fails"));
    run.reports.push_back(std::move(hyp));
    if (run.hypothesis_holds)
        detail::cycle_samples(run, host, centers, scope, scope.r + 1, GuidedHypothesis::none);
    run.seconds = sw.seconds();
    return run;
}

/// 2-connected radius-2 balls and the degree bound on scope, then the guided
/// engine on sampled sets.
template <Host H>
TheoremRun run_m2_cycles(const H& host, const TheoremScope& scope = {})
{
    detail::Stopwatch sw;
    TheoremRun run = detail::start_run("T14", "2-connected radius-2 balls with the degree bound give cycles through "
                          "finite sets");
    auto centers = detail::default_centers(host, scope);
    auto hyp = m2_condition(host, centers, scope.ball);
    run.hypothesis_holds = hyp.verdict();
    run.stages.push_back(std::string("hypothesis: ") + (run.hypothesis_holds ? "holds" : "fails"));
    run.reports.push_back(std::move(hyp.balls_2connected));
    run.reports.push_back(std::move(hyp.degree_bound));
    if (run.hypothesis_holds)
        detail::cycle_samples(run, host, centers, scope, 5, GuidedHypothesis::m2);
    run.seconds = sw.seconds();
    return run;
}

/// k-regular host with 2-connected radius-2 balls and |N_2(w)| <= k, then
/// cycles through sampled sets.
template <Host H>
TheoremRun run_regular_cycles(const H& host, const TheoremScope& scope = {})
{
    detail::Stopwatch sw;
    TheoremRun run = detail::start_run("C16", "regular graphs with 2-connected radius-2 balls and |N_2| <= k give "
                          "cycles through finite sets");
    auto centers = detail::default_centers(host, scope);
    auto reg = regular_n2_bound(host, centers, scope.k);
    auto conn = m2_condition(host, centers, scope.ball).balls_2connected;
    run.hypothesis_holds = reg.verdict() && conn.verdict;
    run.stages.push_back(std::string("hypothesis: ") + (run.hypothesis_holds ? "holds" : "fails"));
    if (!reg.forms_agree())
        run.notes.push_back("|N_2| <= k and 2k >= |M_2| - 1 disagree");
    run.reports.push_back(std::move(reg.regular));
    run.reports.push_back(std::move(reg.n2_bound));
    run.reports.push_back(std::move(conn));
    if (run.hypothesis_holds)
        detail::cycle_samples(run, host, centers, scope, 5, GuidedHypothesis::m2);
    run.seconds = sw.seconds();
    return run;
}

/// H: balls at safe centers of a truncation are Hamiltonian, and sampled sets
/// lie on cycles of H.
inline TheoremRun run_h_curve(int m, const TheoremScope& scope = {})
{
    detail::Stopwatch sw;
    TheoremRun run = detail::start_run("P-curve", "every ball of H is Hamiltonian, so H has cycles through finite sets");
    run.source = "H m=" + std::to_string(m);
    const Truncation t = gen_H(m);
    SweepOptions so;
    so.exact = scope.exact;
    so.ball = scope.ball;
    ConditionReport hyp{"uniformly-hamiltonian", "M_r(u)", {}};
    std::size_t undetermined = 0;
    for (int r = 1; r <= scope.r_max; ++r) {
        auto centers = t.safe_centers(r);
        if (centers.empty())
            continue;
        auto sweep = uniformly_hamiltonian(t.graph, centers, r, so);
        for (const auto& b : sweep.balls)
            if (b.radius == r)
                undetermined += b.undetermined;
        for (auto& w : sweep.report.witnesses)
            if (std::get<CenterFailure>(w).radius == r)
                hyp.fail(std::move(w));
    }
    run.hypothesis_holds = hyp.verdict && undetermined == 0;
    run.stages.push_back(std::string("balls of radius <= ") + std::to_string(scope.r_max) +
                         " at safe centers: " + (hyp.verdict ? "all Hamiltonian" : "failure") +
                         (undetermined ? " (some undetermined)" : ""));
    run.violation = !hyp.verdict;
    run.reports.push_back(std::move(hyp));
    if (run.hypothesis_holds) {
        const GraphOracle oracle = gen_H_oracle();
        detail::cycle_samples(run, oracle, detail::default_centers(oracle, scope), scope, 5,
                              GuidedHypothesis::none);
    }
    run.seconds = sw.seconds();
    return run;
}

/// H truncation: the forced edges form two disjoint paths through the
/// boundary, so no Hamilton circle can exist.
inline TheoremRun run_h_no_circle(int m, const TheoremScope& = {})
{
    detail::Stopwatch sw;
    TheoremRun run = detail::start_run("P-no-circle", "forced edges of H form two disjoint double rays");
    run.source = "H m=" + std::to_string(m);
    const Truncation t = gen_H(m);
    auto obs = circle_obstruction(t.graph, t.boundary);
    const std::size_t rays = obs.count(ForcedKind::boundary_path);
    run.stages.push_back("forced components: " + std::to_string(obs.components.size()) +
                         ", reaching the boundary at both ends: " + std::to_string(rays));
    run.confirmed = rays == 2 && obs.components.size() == 2;
    run.violation = !run.confirmed;
    for (auto& n : obs.notes)
        run.notes.push_back(std::move(n));
    run.seconds = sw.seconds();
    return run;
}

inline const std::vector<std::string>& bundle_ids()
{
    static const std::vector<std::string> ids{"T8", "T10", "T12", "T13", "T14", "C16",
                                              "P-curve", "P-no-circle"};
    return ids;
}

/// Dispatch by bundle id. Finite families run on the finite graph; infinite
/// families run on their oracle, except the bundles defined on H itself.
inline TheoremRun run_theorem(const std::string& id, const FamilySpec& spec,
                              const TheoremScope& scope = {})
{
    auto on_host = [&](auto&& f) {
        if (is_infinite_family(spec))
            return f(build_oracle(spec));
        return f(build_graph(spec));
    };
    TheoremRun run;
    if (id == "T8")
        run = run_local_ore_uniform(build_graph(spec), scope);
    else if (id == "T10")
        run = run_gd_catalogue(spec.d, scope);
    else if (id == "T12")
        run = on_host([&](const auto& h) { return run_ball_propagation(h, scope); });
    else if (id == "T13")
        run = on_host([&](const auto& h) { return run_local_chvatal_erdos(h, scope); });
    else if (id == "T14")
        run = on_host([&](const auto& h) { return run_m2_cycles(h, scope); });
    else if (id == "C16")
        run = on_host([&](const auto& h) { return run_regular_cycles(h, scope); });
    else if (id == "P-curve")
        run = run_h_curve(spec.m, scope);
    else if (id == "P-no-circle")
        run = run_h_no_circle(spec.m, scope);
    else
        throw invalid_input("unknown bundle '" + id + "'");
    if (run.source.empty())
        run.source = spec.family;
    return run;
}

} // namespace ballscope
