#pragma once

// Command-line front end: gen | ball | check | cycle | verify | export.

#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "ballscope/conditions.hpp"
#include "ballscope/connectivity.hpp"
#include "ballscope/cycles.hpp"
#include "ballscope/families.hpp"
#include "ballscope/graph.hpp"
#include "ballscope/io.hpp"
#include "ballscope/verify.hpp"

namespace ballscope::cli {

enum exit_code : int { ok = 0, verdict_false = 1, usage = 2, budget = 3, other = 4 };

struct SourceOptions {
    std::string in;
    std::string spec_file;
    FamilySpec spec;
    std::vector<std::string> inner;
    std::size_t oracle_budget = default_oracle_budget;

    bool from_family() const { return in.empty(); }
};

struct Budgets {
    std::size_t ball_max = 4000;
    std::size_t dp_limit = 20;
    std::size_t exact_max = 64;
    std::size_t cycle_max = 256;
    std::size_t alpha_max = default_alpha_bound;

    BallOptions ball() const { return {ball_max}; }
    HamiltonOptions hamilton() const { return {dp_limit, exact_max}; }
    CycleSearchOptions cycle() const { return {cycle_max}; }
};

using HostVariant = std::variant<Graph, GraphOracle>;

inline void add_source(CLI::App* app, SourceOptions& s)
{
    app->add_option("--in", s.in, "graph JSON file");
    app->add_option("--spec", s.spec_file, "family spec JSON file");
    app->add_option("--family", s.spec.family, "Gd | H | layered | Kclass | ray_square | standard")
        ->check(CLI::IsMember({"Gd", "H", "layered", "Kclass", "ray_square", "standard"}));
    app->add_option("--d", s.spec.d, "G(d) parameter (>= 3)");
    app->add_option("--m", s.spec.m, "H truncation depth / ray square half-width");
    app->add_option("--layered-r", s.spec.r, "layered graph parameter r (>= 1)");
    app->add_option("--sizes", s.spec.sizes, "layer sizes |V_0|=2, |V_1|, ... (last repeats)");
    app->add_option("--layers", s.spec.layers, "layered truncation depth");
    app->add_option("--p", s.spec.p, "class K parameter (>= 2)");
    app->add_option("--inner", s.inner, "class K inner edge 'x-y' on the p-side");
    app->add_option("--name", s.spec.name,
                    "standard graph: complete | cycle | path | star | petersen | circulant | random");
    app->add_option("--n", s.spec.n, "standard graph order");
    app->add_option("--edges", s.spec.edges, "random graph edge count");
    app->add_option("--seed", s.spec.seed, "random graph seed");
    app->add_option("--jumps", s.spec.jumps, "circulant jumps");
    app->add_option("--oracle-budget", s.oracle_budget, "oracle memo budget (vertices)");
}

inline void add_budgets(CLI::App* app, Budgets& b)
{
    app->add_option("--ball-max", b.ball_max, "ball extraction limit (vertices)");
    app->add_option("--dp-limit", b.dp_limit, "Hamiltonicity bitmask DP limit (vertices, <= 24)");
    app->add_option("--exact-max", b.exact_max, "exact Hamiltonicity limit (vertices, <= 64)");
    app->add_option("--cycle-max", b.cycle_max, "exact cycle-through-S limit (vertices)");
    app->add_option("--alpha-max", b.alpha_max, "independence number limit (vertices)");
}

inline FamilySpec resolve_spec(SourceOptions& s)
{
    FamilySpec spec = s.spec;
    if (!s.spec_file.empty())
        spec = spec_from_json(parse_json_text(read_file(s.spec_file), s.spec_file));
    for (const auto& e : s.inner) {
        const auto dash = e.find('-');
        if (dash == std::string::npos)
            throw invalid_input("inner edge '" + e + "' must look like x-y");
        try {
            spec.inner_edges.emplace_back(std::stoull(e.substr(0, dash)),
                                          std::stoull(e.substr(dash + 1)));
        } catch (const std::logic_error&) {
            throw invalid_input("inner edge '" + e + "' must look like x-y");
        }
    }
    return spec;
}

inline HostVariant load_host(SourceOptions& s, bool want_oracle = true)
{
    if (!s.from_family())
        return load_graph(s.in);
    FamilySpec spec = resolve_spec(s);
    if (want_oracle && is_infinite_family(spec))
        return build_oracle(spec, s.oracle_budget);
    return build_graph(spec);
}

inline Graph load_finite(SourceOptions& s)
{
    return std::get<Graph>(load_host(s, false));
}

inline vertex_t parse_vertex(const HostVariant& host, const SourceOptions& s,
                             const std::string& text)
{
    if (const auto* g = std::get_if<Graph>(&host)) {
        if (auto v = g->find_label(text))
            return *v;
    } else if (s.from_family()) {
        FamilySpec spec = s.spec;
        if (!s.spec_file.empty())
            spec = spec_from_json(parse_json_text(read_file(s.spec_file), s.spec_file));
        if (auto v = parse_oracle_label(spec, text))
            return *v;
    }
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used);
        if (used == text.size()) {
            const bool known = std::visit([&](const auto& h) { return h.has_vertex(v); }, host);
            if (known)
                return v;
        }
    } catch (const std::logic_error&) {
    }
    throw invalid_input("unknown vertex '" + text + "'");
}

inline std::vector<vertex_t> parse_vertices(const HostVariant& host, const SourceOptions& s,
                                            const std::vector<std::string>& items)
{
    std::vector<vertex_t> out;
    for (const auto& t : items)
        out.push_back(parse_vertex(host, s, t));
    return out;
}

inline std::vector<vertex_t> default_centers(const HostVariant& host, int region_radius)
{
    if (const auto* g = std::get_if<Graph>(&host)) {
        std::vector<vertex_t> all(g->size());
        for (vertex_t v = 0; v < g->size(); ++v)
            all[v] = v;
        return all;
    }
    const auto& o = std::get<GraphOracle>(host);
    return detail::flatten(bfs_layers(o, o.root(), region_radius));
}

template <class H>
std::string labels_of(const H& host, const std::vector<vertex_t>& vs)
{
    std::string out;
    for (vertex_t v : vs)
        out += (out.empty() ? "" : " ") + host.label(v);
    return out;
}

template <class H>
std::string describe_witness(const H& host, const Witness& w)
{
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TripleFailure>)
                return "path " + host.label(x.triple.u) + "-" + host.label(x.triple.w) + "-" +
                       host.label(x.triple.v) + ": " + std::to_string(x.lhs) + " < " +
                       std::to_string(x.rhs);
            else if constexpr (std::is_same_v<T, PairFailure>)
                return "pair " + host.label(x.u) + "," + host.label(x.v) + ": degree sum " +
                       std::to_string(x.degree_sum) + " < " + std::to_string(x.order);
            else if constexpr (std::is_same_v<T, Claw>)
                return "claw at " + host.label(x.center) + " with leaves " +
                       labels_of(host, {x.leaves.begin(), x.leaves.end()});
            else {
                std::string s = "center " + host.label(x.center) + " r=" +
                                std::to_string(x.radius) + ": " + x.reason;
                if (x.cut)
                    s += " (separator {" + labels_of(host, x.cut->separator) + "})";
                if (!x.independent_set.empty())
                    s += " (independent {" + labels_of(host, x.independent_set) + "})";
                return s;
            }
        },
        w);
}

template <class H>
void print_report(std::ostream& out, const H& host, const ConditionReport& r)
{
    out << r.condition << " [" << r.examined_set << ", " << r.scope.size()
        << " centers]: " << (r.verdict ? "holds" : "FAILS") << "\n";
    const std::size_t shown = std::min<std::size_t>(r.witnesses.size(), 10);
    for (std::size_t i = 0; i < shown; ++i)
        out << "  witness: " << describe_witness(host, r.witnesses[i]) << "\n";
    if (r.witnesses.size() > shown)
        out << "  ... " << r.witnesses.size() - shown << " more witnesses\n";
    for (const auto& n : r.notes)
        out << "  note: " << n << "\n";
}

inline const char* help_footer()
{
    return "Default budgets: ball extraction <= 4000 vertices; exact Hamiltonicity by bitmask DP\n"
           "up to 20 vertices (at most 24), backtracking up to 64; exact cycle-through-S up to 256\n"
           "vertices; independence number up to 64 vertices; oracle memo 1000000 vertices.\n"
           "BALLSCOPE_THREADS caps worker threads.\n"
           "Exit codes: 0 verdict true, 1 verdict false, 2 usage error, 3 budget exceeded,\n"
           "4 other error.";
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool json = false;
};

inline void emit(Context& c, const json& j) { c.out << canonical(j); }

// ---- verbs -----------------------------------------------------------------

inline int do_gen(Context& c, SourceOptions& s, const std::string& out_path,
                  const std::string& format)
{
    if (!s.from_family())
        throw invalid_input("gen takes a family, not --in");
    const Graph g = load_finite(s);
    const std::string text = format == "dot" ? graph_to_dot(g) : canonical(graph_to_json(g));
    if (out_path.empty()) {
        c.out << text;
    } else {
        write_file(out_path, text);
        if (c.json)
            emit(c, {{"out", out_path}, {"vertices", g.size()}, {"edges", g.edge_count()}});
        else
            c.out << "wrote " << g.size() << " vertices, " << g.edge_count() << " edges to "
                  << out_path << "\n";
    }
    return ok;
}

inline int do_ball(Context& c, SourceOptions& s, const Budgets& b, const std::string& center,
                   int radius, const std::string& out_path)
{
    const HostVariant host = load_host(s);
    const vertex_t u = parse_vertex(host, s, center);
    return std::visit(
        [&](const auto& h) {
            Ball bl = ball(h, u, radius, b.ball());
            std::vector<std::size_t> layer_sizes(static_cast<std::size_t>(radius) + 1, 0);
            std::vector<vertex_t> interior;
            for (vertex_t l = 0; l < bl.size(); ++l) {
                ++layer_sizes[static_cast<std::size_t>(bl.dist[l])];
                if (bl.interior[l])
                    interior.push_back(bl.host(l));
            }
            while (!layer_sizes.empty() && layer_sizes.back() == 0)
                layer_sizes.pop_back();
            if (!out_path.empty())
                write_file(out_path, canonical(graph_to_json(bl.graph)));
            if (c.json) {
                emit(c, {{"center", u},
                         {"radius", radius},
                         {"size", bl.size()},
                         {"layer_sizes", layer_sizes},
                         {"interior", interior},
                         {"closed", bl.is_closed()},
                         {"vertices", bl.to_host},
                         {"graph", graph_to_json(bl.graph)}});
            } else {
                c.out << "ball G_" << radius << "(" << h.label(u) << "): " << bl.size()
                      << " vertices, " << bl.graph.edge_count() << " edges\n";
                c.out << "layer sizes:";
                for (auto x : layer_sizes)
                    c.out << " " << x;
                c.out << "\ninterior: " << interior.size() << " vertices"
                      << (bl.is_closed() ? " (ball is the whole component)" : "") << "\n";
                c.out << "vertices: " << labels_of(h, bl.to_host) << "\n";
            }
            return static_cast<int>(ok);
        },
        host);
}

struct CheckOptions {
    std::string condition;
    std::vector<std::string> centers;
    int region_radius = 2;
    int r = 1;
    std::size_t k = 2;
    int r_max = 3;
    std::string center;
};

inline const std::vector<std::string>& condition_names()
{
    static const std::vector<std::string> names{
        "ore",          "local-ore",      "l0",          "m2",         "claw-free",
        "locally-connected", "chvatal-erdos", "k-connected", "kappa", "ball-profile",
        "propagation",  "regular-n2",     "k-class",     "uniformly-hamiltonian"};
    return names;
}

inline int do_check(Context& c, SourceOptions& s, const Budgets& b, const CheckOptions& o)
{
    const HostVariant host = load_host(s);
    const bool finite = std::holds_alternative<Graph>(host);
    auto centers = o.centers.empty() ? default_centers(host, o.region_radius)
                                     : parse_vertices(host, s, o.centers);
    auto need_finite = [&]() -> const Graph& {
        if (!finite)
            throw invalid_input("condition '" + o.condition + "' needs a finite graph");
        return std::get<Graph>(host);
    };
    std::vector<ConditionReport> reports;
    json extra = json::object();
    bool verdict = true;

    if (o.condition == "ore") {
        const Graph& g = need_finite();
        auto res = is_ore_graph(g);
        ConditionReport r{"ore", "V(G)", centers};
        if (res.witness)
            r.fail(*res.witness);
        reports.push_back(std::move(r));
    } else if (o.condition == "kappa") {
        const Graph& g = need_finite();
        auto res = detail::connectivity(g, 0);
        extra["kappa"] = res.kappa;
        if (res.witness)
            extra["witness"] = cut_to_json(*res.witness);
    } else if (o.condition == "k-connected") {
        const Graph& g = need_finite();
        auto res = is_k_connected(g, o.k);
        ConditionReport r{std::to_string(o.k) + "-connected", "V(G)", {}};
        if (!res.holds)
            r.fail(CenterFailure{0, 0, "separator of size < k", *res.witness, {}, 0, 0});
        reports.push_back(std::move(r));
    } else if (o.condition == "k-class") {
        const Graph& g = need_finite();
        auto w = k_class_membership(g);
        verdict = w.has_value();
        if (w)
            extra = {{"p", w->p}, {"a_side", w->a_side}, {"b_side", w->b_side}};
    } else {
        std::visit(
            [&](const auto& h) {
                if (o.condition == "local-ore")
                    reports.push_back(local_ore(h, centers));
                else if (o.condition == "l0")
                    reports.push_back(l0_condition(h, centers));
                else if (o.condition == "m2") {
                    auto m = m2_condition(h, centers, b.ball());
                    reports.push_back(std::move(m.balls_2connected));
                    reports.push_back(std::move(m.degree_bound));
                } else if (o.condition == "claw-free")
                    reports.push_back(claw_free_on(h, centers));
                else if (o.condition == "locally-connected")
                    reports.push_back(locally_connected(h, centers));
                else if (o.condition == "chvatal-erdos")
                    reports.push_back(chvatal_erdos_local(h, centers, o.r, b.ball(), b.alpha_max));
                else if (o.condition == "regular-n2") {
                    auto m = regular_n2_bound(h, centers, o.k);
                    reports.push_back(std::move(m.regular));
                    reports.push_back(std::move(m.n2_bound));
                } else if (o.condition == "propagation") {
                    auto p = check_ball_propagation(h, centers, o.r, o.k, b.ball());
                    extra["concluded_centers"] = p.concluded_centers;
                    extra["violation"] = p.violation;
                    reports.push_back(std::move(p.hypothesis));
                    reports.push_back(std::move(p.conclusion));
                    verdict = p.hypothesis_holds && !p.violation;
                } else if (o.condition == "ball-profile") {
                    if (o.center.empty())
                        throw invalid_input("ball-profile needs --center");
                    const vertex_t u = parse_vertex(host, s, o.center);
                    json prof = json::array();
                    for (const auto& e : ball_connectivity_profile(h, u, o.r_max, o.k, b.ball())) {
                        json j{{"radius", e.radius},
                               {"k_connected", e.k_connected},
                               {"ball_size", e.ball_size}};
                        if (e.witness)
                            j["witness"] = cut_to_json(*e.witness);
                        verdict = verdict && e.k_connected;
                        prof.push_back(std::move(j));
                    }
                    extra["profile"] = std::move(prof);
                } else if (o.condition == "uniformly-hamiltonian") {
                    SweepOptions so;
                    so.exact = b.hamilton();
                    so.ball = b.ball();
                    auto sw = uniformly_hamiltonian(h, centers, o.r_max, so);
                    extra["undetermined"] = sw.undetermined;
                    extra["balls"] = sw.balls.size();
                    reports.push_back(std::move(sw.report));
                } else
                    throw invalid_input("unknown condition '" + o.condition + "'");
            },
            host);
    }
    for (const auto& r : reports)
        verdict = verdict && r.verdict;

    if (c.json) {
        json rs = json::array();
        for (const auto& r : reports)
            rs.push_back(report_to_json(r));
        emit(c, {{"condition", o.condition}, {"verdict", verdict}, {"reports", rs}, {"details", extra}});
    } else {
        std::visit(
            [&](const auto& h) {
                for (const auto& r : reports)
                    print_report(c.out, h, r);
            },
            host);
        if (!extra.empty())
            c.out << extra.dump(2) << "\n";
        c.out << "verdict: " << (verdict ? "true" : "false") << "\n";
    }
    return verdict ? ok : verdict_false;
}

struct CycleOptions {
    std::string mode = "hamilton";
    std::vector<std::string> set;
    std::string anchor;
    int radius = -1;
    int margin = 5;
    std::string hypothesis = "m2";
    std::string out;
};

inline int do_cycle(Context& c, SourceOptions& s, const Budgets& b, const CycleOptions& o)
{
    const HostVariant host = load_host(s);
    std::optional<OrientedCycle> cyc;
    json extra = json::object();
    auto label = [&](vertex_t v) {
        return std::visit([&](const auto& h) { return h.label(v); }, host);
    };
    if (o.mode == "hamilton") {
        if (!std::holds_alternative<Graph>(host))
            throw invalid_input("hamilton mode needs a finite graph");
        cyc = hamilton_cycle(std::get<Graph>(host), b.hamilton());
    } else {
        auto set = parse_vertices(host, s, o.set);
        if (set.empty())
            throw invalid_input("--set is required for mode '" + o.mode + "'");
        const vertex_t anchor = o.anchor.empty() ? *std::ranges::min_element(set)
                                                 : parse_vertex(host, s, o.anchor);
        if (o.mode == "through") {
            if (!std::holds_alternative<Graph>(host))
                throw invalid_input("through mode needs a finite graph; use guided for families");
            cyc = cycle_through(std::get<Graph>(host), set, anchor, b.cycle());
        } else if (o.mode == "guided") {
            GuidedOptions g;
            g.exact = b.cycle();
            g.radius_margin = o.margin;
            g.hypothesis = o.hypothesis == "none" ? GuidedHypothesis::none : GuidedHypothesis::m2;
            auto res = std::visit(
                [&](const auto& h) {
                    int q = 0;
                    for (vertex_t x : set)
                        for (vertex_t y : set)
                            q = std::max(q, detail::host_distance(h, x, y, 64));
                    const int radius = o.radius >= 0 ? o.radius : q + o.margin;
                    extra["q"] = q;
                    extra["ball_radius"] = radius;
                    Ball bl = ball(h, anchor, radius, b.ball());
                    extra["ball_size"] = bl.size();
                    return guided_cycle_through(bl, set, anchor, g);
                },
                host);
            cyc = std::move(res.cycle);
            extra["trace"] = trace_to_json(res.trace);
            extra["fallback_used"] = res.fallback_used;
            extra["fallback_absence"] = res.fallback_absence;
        } else {
            throw invalid_input("unknown cycle mode '" + o.mode + "'");
        }
    }
    if (cyc && !o.out.empty())
        write_file(o.out, canonical(cycle_to_json(*cyc)));
    if (c.json) {
        json j{{"mode", o.mode}, {"found", cyc.has_value()}, {"details", extra}};
        j["cycle"] = cyc ? cycle_to_json(*cyc) : json(nullptr);
        emit(c, j);
    } else if (cyc) {
        c.out << "cycle of length " << cyc->size() << ":";
        for (vertex_t v : cyc->order())
            c.out << " " << label(v);
        c.out << "\n";
        if (extra.contains("trace"))
            for (const auto& t : extra["trace"])
                c.out << "  " << t["step"].get<std::string>() << " at "
                      << label(t["pivot"].get<vertex_t>()) << " -> length " << t["length"] << "\n";
    } else {
        c.out << "no cycle exists (exact search completed)\n";
    }
    return cyc ? ok : verdict_false;
}

struct VerifyOptions {
    std::string theorem;
    std::vector<std::string> centers;
    TheoremScope scope;
    std::vector<int> margin_sweep;
    bool timing = false;
};

/// Sampled sets at several ball margins: an experiment, not a claim.
inline int do_margin_sweep(Context& c, SourceOptions& s, const VerifyOptions& o, const Budgets& b)
{
    const HostVariant host = load_host(s);
    auto centers = o.centers.empty() ? default_centers(host, o.scope.region_radius)
                                     : parse_vertices(host, s, o.centers);
    auto schedule = sample_sets(centers, o.scope.samples, o.scope.s_max, o.scope.seed);
    const auto hyp = o.theorem == "T13" || o.theorem == "P-curve" ? GuidedHypothesis::none
                                                                  : GuidedHypothesis::m2;
    json rows = json::array();
    for (int m : o.margin_sweep) {
        CurveOptions co;
        co.radius_margin = m;
        co.hypothesis = hyp;
        co.ball = b.ball();
        co.exact = b.cycle();
        auto run = std::visit([&](const auto& h) { return certify_curve(h, schedule, co); }, host);
        std::size_t found = 0, fallback = 0, absent = 0;
        for (const auto& a : run.cycles) {
            found += a.cycle.has_value();
            fallback += a.fallback_used;
            absent += a.fallback_absence;
        }
        rows.push_back({{"margin", m},
                        {"sets", schedule.size()},
                        {"found", found},
                        {"fallbacks", fallback},
                        {"absent", absent},
                        {"hypothesis_holds", run.hypothesis_holds}});
    }
    if (c.json) {
        emit(c, {{"experiment", "ball radius q + margin"}, {"seed", o.scope.seed}, {"rows", rows}});
    } else {
        c.out << "experiment: ball radius q + margin, seed " << o.scope.seed << "\n";
        for (const auto& r : rows)
            c.out << "  margin " << r["margin"] << ": " << r["found"] << "/" << r["sets"]
                  << " sets on a cycle, " << r["fallbacks"] << " exact fallbacks, " << r["absent"]
                  << " certified absent\n";
    }
    return ok;
}

inline int do_verify(Context& c, SourceOptions& s, const Budgets& b, VerifyOptions& o)
{
    if (std::ranges::find(bundle_ids(), o.theorem) == bundle_ids().end())
        throw invalid_input("unknown bundle '" + o.theorem + "'");
    o.scope.ball = b.ball();
    o.scope.exact = b.hamilton();
    o.scope.cycle_exact = b.cycle();
    if (!o.margin_sweep.empty())
        return do_margin_sweep(c, s, o, b);
    TheoremRun run;
    if (!s.from_family()) {
        const Graph g = load_graph(s.in);
        if (!o.centers.empty())
            o.scope.centers = parse_vertices(g, s, o.centers);
        if (o.theorem == "T8")
            run = run_local_ore_uniform(g, o.scope);
        else if (o.theorem == "T12")
            run = run_ball_propagation(g, o.scope);
        else if (o.theorem == "T13")
            run = run_local_chvatal_erdos(g, o.scope);
        else if (o.theorem == "T14")
            run = run_m2_cycles(g, o.scope);
        else if (o.theorem == "C16")
            run = run_regular_cycles(g, o.scope);
        else
            throw invalid_input("bundle '" + o.theorem + "' runs on a family, not --in");
        run.source = s.in;
    } else {
        FamilySpec spec = resolve_spec(s);
        if (!o.centers.empty()) {
            const HostVariant host = load_host(s);
            o.scope.centers = parse_vertices(host, s, o.centers);
        }
        run = run_theorem(o.theorem, spec, o.scope);
    }
    if (c.json) {
        json j = run_to_json(run, o.timing);
        j["seed"] = o.scope.seed;
        emit(c, j);
    } else {
        c.out << run.id << ": " << run.description << "\n";
        c.out << "source: " << run.source << ", seed " << o.scope.seed << "\n";
        for (const auto& st : run.stages)
            c.out << "  " << st << "\n";
        for (const auto& n : run.notes)
            c.out << "  note: " << n << "\n";
        if (o.timing)
            c.out << "  time: " << run.seconds << " s\n";
        c.out << "verdict: " << run.verdict() << "\n";
    }
    return run.confirmed && !run.violation ? ok : verdict_false;
}

inline int do_export(Context& c, const std::string& in, const std::string& cycle_file,
                     const std::string& report_file, const std::string& format,
                     const std::string& out_path)
{
    std::string text;
    if (!report_file.empty()) {
        text = canonical(parse_json_text(read_file(report_file), report_file));
    } else {
        if (in.empty())
            throw invalid_input("export needs --in or --report");
        const Graph g = load_graph(in);
        std::optional<OrientedCycle> cyc;
        if (!cycle_file.empty()) {
            cyc = cycle_from_json(parse_json_text(read_file(cycle_file), cycle_file));
            if (!cyc->valid_in(g))
                throw invalid_input("cycle in '" + cycle_file + "' is not a cycle of the graph");
        }
        if (format == "dot")
            text = graph_to_dot(g, cyc ? &*cyc : nullptr);
        else if (cyc)
            text = canonical({{"graph", graph_to_json(g)}, {"cycle", cycle_to_json(*cyc)}});
        else
            text = canonical(graph_to_json(g));
    }
    if (out_path.empty())
        c.out << text;
    else
        write_file(out_path, text);
    return ok;
}

// ---- entry -------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr)
{
    CLI::App app{"ballscope: local conditions, balls and cycles in locally finite graphs",
                 "ballscope"};
    app.footer(help_footer());
    app.require_subcommand(1);
    Context ctx{out, err};
    app.add_flag("--json", ctx.json, "machine-readable JSON output");

    SourceOptions src;
    Budgets budgets;

    auto* gen = app.add_subcommand("gen", "generate a family graph");
    std::string gen_out, gen_format = "json";
    add_source(gen, src);
    gen->add_option("--out", gen_out, "output file (default stdout)");
    gen->add_option("--format", gen_format, "json | dot")->check(CLI::IsMember({"json", "dot"}));

    auto* ballc = app.add_subcommand("ball", "extract G_r(u)");
    std::string ball_center, ball_out;
    int ball_radius = 1;
    add_source(ballc, src);
    add_budgets(ballc, budgets);
    ballc->add_option("--center", ball_center, "center vertex (label or id)")->required();
    ballc->add_option("--radius,-r", ball_radius, "radius")->check(CLI::NonNegativeNumber);
    ballc->add_option("--out", ball_out, "write the ball graph as JSON");

    auto* check = app.add_subcommand("check", "evaluate a condition");
    CheckOptions co;
    add_source(check, src);
    add_budgets(check, budgets);
    check->add_option("--condition", co.condition, "condition name")
        ->required()
        ->check(CLI::IsMember(condition_names()));
    check->add_option("--centers", co.centers, "centers (default: all, or a region for families)");
    check->add_option("--region-radius", co.region_radius, "oracle region radius around the root");
    check->add_option("--radius,-r", co.r, "radius r");
    check->add_option("-k", co.k, "connectivity k");
    check->add_option("--r-max", co.r_max, "largest radius for sweeps");
    check->add_option("--center", co.center, "center for ball-profile");

    auto* cycle = app.add_subcommand("cycle", "find a cycle");
    CycleOptions cy;
    add_source(cycle, src);
    add_budgets(cycle, budgets);
    cycle->add_option("--mode", cy.mode, "hamilton | through | guided")
        ->check(CLI::IsMember({"hamilton", "through", "guided"}));
    cycle->add_option("--set", cy.set, "vertex set S");
    cycle->add_option("--anchor", cy.anchor, "anchor in S (default: lowest id)");
    cycle->add_option("--radius", cy.radius, "guided ball radius (default: q + margin)");
    cycle->add_option("--margin", cy.margin, "guided radius margin over q");
    cycle->add_option("--hypothesis", cy.hypothesis, "m2 | none")
        ->check(CLI::IsMember({"m2", "none"}));
    cycle->add_option("--out", cy.out, "write the cycle as JSON");

    auto* verify = app.add_subcommand("verify", "run a named experiment bundle");
    VerifyOptions vo;
    add_source(verify, src);
    add_budgets(verify, budgets);
    verify->add_option("--theorem", vo.theorem, "bundle id")
        ->required()
        ->check(CLI::IsMember(bundle_ids()));
    verify->add_option("--centers", vo.centers, "scope centers");
    verify->add_option("--region-radius", vo.scope.region_radius, "oracle region radius");
    verify->add_option("--radius,-r", vo.scope.r, "radius r");
    verify->add_option("-k", vo.scope.k, "connectivity / regularity k");
    verify->add_option("--r-max", vo.scope.r_max, "largest swept radius");
    verify->add_option("--samples", vo.scope.samples, "sampled sets");
    verify->add_option("--s-max", vo.scope.s_max, "largest sampled set");
    verify->add_option("--sample-seed", vo.scope.seed, "sampler seed");
    verify->add_option("--margin-sweep", vo.margin_sweep, "experiment: ball margins to try");
    verify->add_flag("--timing", vo.timing, "report wall-clock time");

    auto* exp = app.add_subcommand("export", "re-emit a graph, cycle or report");
    std::string ex_in, ex_cycle, ex_report, ex_format = "json", ex_out;
    exp->add_option("--in", ex_in, "graph JSON");
    exp->add_option("--cycle", ex_cycle, "cycle JSON to highlight");
    exp->add_option("--report", ex_report, "report JSON to canonicalize");
    exp->add_option("--format", ex_format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
    exp->add_option("--out", ex_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    try {
        if (*gen)
            return do_gen(ctx, src, gen_out, gen_format);
        if (*ballc)
            return do_ball(ctx, src, budgets, ball_center, ball_radius, ball_out);
        if (*check)
            return do_check(ctx, src, budgets, co);
        if (*cycle)
            return do_cycle(ctx, src, budgets, cy);
        if (*verify)
            return do_verify(ctx, src, budgets, vo);
        if (*exp)
            return do_export(ctx, ex_in, ex_cycle, ex_report, ex_format, ex_out);
    } catch (const budget_exceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return budget;
    } catch (const hypothesis_violation& e) {
        err << "hypothesis not satisfied: " << e.what() << "\n";
        return verdict_false;
    } catch (const io_error& e) {
        err << "i/o error: " << e.what() << "\n";
        return other;
    } catch (const invalid_input& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return other;
    }
    return usage;
}

} // namespace ballscope::cli
