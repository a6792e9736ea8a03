#pragma once

// JSON and DOT serialization. Output is canonical: keys sorted, edges
// sorted, compact JSON followed by a newline.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ballscope/conditions.hpp"
#include "ballscope/connectivity.hpp"
#include "ballscope/cycles.hpp"
#include "ballscope/families.hpp"
#include "ballscope/graph.hpp"
#include "ballscope/report.hpp"
#include "ballscope/verify.hpp"

namespace ballscope {

using json = nlohmann::json;

class io_error : public error {
public:
    using error::error;
};

inline std::string canonical(const json& j) { return j.dump() + "\n"; }

// ---- graphs ------------------------------------------------------------

/// {"n": int, "edges": [[u,v],...] with u < v sorted, "labels": {"id": s}}.
/// Labels are omitted when the graph carries none.
inline json graph_to_json(const Graph& g)
{
    json j;
    j["n"] = g.size();
    json edges = json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (g.has_labels()) {
        json labels = json::object();
        for (vertex_t v = 0; v < g.size(); ++v)
            labels[std::to_string(v)] = g.label(v);
        j["labels"] = std::move(labels);
    }
    return j;
}

inline Graph graph_from_json(const json& j)
{
    try {
        if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
            throw invalid_input("graph JSON needs \"n\" and \"edges\"");
        const auto n = j.at("n").get<std::size_t>();
        std::vector<edge_t> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw invalid_input("each edge must be a [u, v] pair");
            vertex_t u = e[0].get<vertex_t>(), v = e[1].get<vertex_t>();
            if (u > v)
                std::swap(u, v);
            edges.emplace_back(u, v);
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            labels.resize(n);
            for (vertex_t v = 0; v < n; ++v)
                labels[v] = std::to_string(v);
            for (const auto& [key, value] : j.at("labels").items()) {
                std::size_t used = 0;
                const auto id = std::stoull(key, &used);
                if (used != key.size() || id >= n)
                    throw invalid_input("label key '" + key + "' is not a vertex id");
                labels[id] = value.get<std::string>();
            }
        }
        return Graph::from_edges(n, edges, std::move(labels));
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed graph JSON: ") + e.what());
    } catch (const std::logic_error& e) {
        throw invalid_input(std::string("malformed graph JSON: ") + e.what());
    }
}

inline json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(what + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw io_error("write to '" + path + "' failed");
}

inline Graph load_graph(const std::string& path)
{
    return graph_from_json(parse_json_text(read_file(path), path));
}

/// Undirected DOT: nodes by id, edges sorted, cycle edges highlighted.
inline std::string graph_to_dot(const Graph& g, const OrientedCycle* highlight = nullptr)
{
    std::vector<edge_t> marked;
    if (highlight)
        marked = highlight->edges();
    std::ostringstream out;
    out << "graph G {\n";
    for (vertex_t v = 0; v < g.size(); ++v)
        out << "  " << v << " [label=" << json(g.label(v)).dump() << "];\n";
    for (auto e : g.edges()) {
        out << "  " << e.first << " -- " << e.second;
        if (std::ranges::binary_search(marked, e))
            out << " [color=red, penwidth=2]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

// ---- certificates --------------------------------------------------------

inline json cycle_to_json(const OrientedCycle& c)
{
    json edges = json::array();
    const auto& o = c.order();
    for (std::size_t i = 0; i < o.size(); ++i)
        edges.push_back({o[i], o[(i + 1) % o.size()]});
    return {{"order", o}, {"edges", std::move(edges)}, {"length", o.size()}};
}

inline OrientedCycle cycle_from_json(const json& j)
{
    try {
        return OrientedCycle(j.at("order").get<std::vector<vertex_t>>());
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed cycle JSON: ") + e.what());
    }
}

inline json cut_to_json(const CutWitness& w)
{
    return {{"separator", w.separator},
            {"side_a", w.side_a},
            {"side_b", w.side_b},
            {"disconnects", w.disconnects}};
}

inline json path_system_to_json(const PathSystem& ps)
{
    return {{"source", ps.source}, {"target", ps.target}, {"paths", ps.paths}};
}

inline json witness_to_json(const Witness& w)
{
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TripleFailure>)
                return {{"type", "path-triple"},
                        {"u", x.triple.u},
                        {"w", x.triple.w},
                        {"v", x.triple.v},
                        {"lhs", x.lhs},
                        {"rhs", x.rhs}};
            else if constexpr (std::is_same_v<T, PairFailure>)
                return {{"type", "nonadjacent-pair"},
                        {"u", x.u},
                        {"v", x.v},
                        {"degree_sum", x.degree_sum},
                        {"order", x.order}};
            else if constexpr (std::is_same_v<T, Claw>)
                return {{"type", "claw"}, {"center", x.center}, {"leaves", x.leaves}};
            else {
                json j{{"type", "center"},
                       {"center", x.center},
                       {"radius", x.radius},
                       {"reason", x.reason},
                       {"lhs", x.lhs},
                       {"rhs", x.rhs}};
                if (x.cut)
                    j["cut"] = cut_to_json(*x.cut);
                if (!x.independent_set.empty())
                    j["independent_set"] = x.independent_set;
                return j;
            }
        },
        w);
}

inline json report_to_json(const ConditionReport& r)
{
    json w = json::array();
    for (const auto& x : r.witnesses)
        w.push_back(witness_to_json(x));
    return {{"condition", r.condition},
            {"examined_set", r.examined_set},
            {"scope", r.scope},
            {"verdict", r.verdict},
            {"witnesses", std::move(w)},
            {"notes", r.notes}};
}

inline json trace_to_json(const std::vector<TraceEntry>& trace)
{
    json t = json::array();
    for (const auto& e : trace)
        t.push_back({{"step", e.step}, {"pivot", e.pivot}, {"length", e.length}});
    return t;
}

inline json move_to_json(const ExtensionMove& m)
{
    json removed = json::array(), added = json::array();
    for (auto e : m.removed)
        removed.push_back({e.first, e.second});
    for (auto e : m.added)
        added.push_back({e.first, e.second});
    return {{"rule", rule_name(m.rule)},
            {"pivot", m.pivot},
            {"removed", std::move(removed)},
            {"added", std::move(added)},
            {"result", cycle_to_json(m.result)}};
}

inline json artifact_to_json(const CycleArtifact& a)
{
    json j{{"set", a.set},
           {"anchor", a.anchor},
           {"q", a.q},
           {"ball_radius", a.ball_radius},
           {"ball_size", a.ball_size},
           {"trace", trace_to_json(a.trace)},
           {"fallback_used", a.fallback_used},
           {"fallback_absence", a.fallback_absence}};
    j["cycle"] = a.cycle ? cycle_to_json(*a.cycle) : json(nullptr);
    return j;
}

/// Wall-clock time is included only on request so that repeated runs
/// produce identical bytes.
inline json run_to_json(const TheoremRun& run, bool with_timing = false)
{
    json reports = json::array(), cycles = json::array();
    for (const auto& r : run.reports)
        reports.push_back(report_to_json(r));
    for (const auto& c : run.cycles)
        cycles.push_back(artifact_to_json(c));
    json j{{"id", run.id},
           {"description", run.description},
           {"source", run.source},
           {"verdict", run.verdict()},
           {"confirmed", run.confirmed},
           {"hypothesis_holds", run.hypothesis_holds},
           {"violation", run.violation},
           {"stages", run.stages},
           {"reports", std::move(reports)},
           {"cycles", std::move(cycles)},
           {"notes", run.notes}};
    if (with_timing)
        j["seconds"] = run.seconds;
    return j;
}

inline json obstruction_to_json(const ObstructionReport& r)
{
    json comps = json::array(), forced = json::array();
    for (const auto& c : r.components)
        comps.push_back({{"kind", forced_kind_name(c.kind)}, {"vertices", c.vertices}});
    for (auto e : r.forced_edges)
        forced.push_back({e.first, e.second});
    return {{"forced_edges", std::move(forced)},
            {"components", std::move(comps)},
            {"overloaded", r.overloaded},
            {"pattern", r.pattern},
            {"hamiltonicity_refuted", r.hamiltonicity_refuted},
            {"notes", r.notes}};
}

// ---- family specs --------------------------------------------------------

inline json spec_to_json(const FamilySpec& s)
{
    json j{{"family", s.family}};
    if (s.family == "Gd")
        j["d"] = s.d;
    else if (s.family == "H" || s.family == "ray_square")
        j["m"] = s.m;
    else if (s.family == "layered")
        j.update({{"r", s.r}, {"sizes", s.sizes}, {"layers", s.layers}});
    else if (s.family == "Kclass") {
        json inner = json::array();
        for (auto e : s.inner_edges)
            inner.push_back({e.first, e.second});
        j.update({{"p", s.p}, {"inner_edges", std::move(inner)}});
    } else {
        j.update({{"name", s.name}, {"n", s.n}});
        if (s.name == "random")
            j.update({{"edges", s.edges}, {"seed", s.seed}});
        if (s.name == "circulant")
            j["jumps"] = s.jumps;
    }
    return j;
}

inline FamilySpec spec_from_json(const json& j)
{
    static const std::vector<std::string> known{"family", "d",     "m",     "r",     "sizes",
                                                "layers", "p",     "inner_edges",    "name",
                                                "n",      "edges", "seed",  "jumps"};
    try {
        FamilySpec s;
        for (const auto& [key, _] : j.items())
            if (std::ranges::find(known, key) == known.end())
                throw invalid_input("unknown family spec key '" + key + "'");
        s.family = j.at("family").get<std::string>();
        s.d = j.value("d", s.d);
        s.m = j.value("m", s.m);
        s.r = j.value("r", s.r);
        s.sizes = j.value("sizes", s.sizes);
        s.layers = j.value("layers", s.layers);
        s.p = j.value("p", s.p);
        if (j.contains("inner_edges"))
            for (const auto& e : j.at("inner_edges"))
                s.inner_edges.emplace_back(e.at(0).get<vertex_t>(), e.at(1).get<vertex_t>());
        s.name = j.value("name", s.name);
        s.n = j.value("n", s.n);
        s.edges = j.value("edges", s.edges);
        s.seed = j.value("seed", s.seed);
        s.jumps = j.value("jumps", s.jumps);
        return s;
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed family spec: ") + e.what());
    }
}

} // namespace ballscope
