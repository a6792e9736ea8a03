#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <regex>

#include "ballscope/cli.hpp"
#include "ballscope/io.hpp"

using namespace ballscope;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "ballscope");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args)
{
    args.insert(args.begin(), "--json");
    auto r = run_cli(std::move(args));
    return json::parse(r.out);
}

// Runs the installed binary through the shell; returns exit status and stdout.
std::pair<int, std::string> run_binary(const std::string& args)
{
    const std::string cmd = std::string(BALLSCOPE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p))
        out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class TempDir {
public:
    TempDir()
    {
        path_ = fs::temp_directory_path() /
                ("ballscope-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
    static inline int counter_ = 0;
};

} // namespace

// ---- serialization ------------------------------------------------------------

TEST(GraphJson, RoundTripIsByteIdentical)
{
    for (const Graph& g : {gen_Gd(4), petersen_graph(), random_graph(15, 40, 3), gen_H(3).graph}) {
        const std::string once = canonical(graph_to_json(g));
        const Graph back = graph_from_json(json::parse(once));
        EXPECT_EQ(back, g);
        EXPECT_EQ(canonical(graph_to_json(back)), once);
    }
}

TEST(GraphJson, ShapeAndErrors)
{
    const json j = graph_to_json(cycle_graph(3));
    EXPECT_EQ(j["n"], 3);
    EXPECT_EQ(j["edges"], json::parse("[[0,1],[0,2],[1,2]]"));
    EXPECT_THROW(graph_from_json(json::parse(R"({"edges": []})")), invalid_input);
    EXPECT_THROW(graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 2]]})")), invalid_input);
    EXPECT_THROW(graph_from_json(json::parse(R"({"n": 2, "edges": [[0]]})")), invalid_input);
    EXPECT_THROW(graph_from_json(json::parse(R"({"n": 2, "edges": [], "labels": {"7": "x"}})")),
                 invalid_input);
    EXPECT_THROW(parse_json_text("{", "inline"), invalid_input);
    EXPECT_THROW(read_file("/nonexistent/ballscope.json"), io_error);
}

TEST(Dot, CompleteGraphOnFour)
{
    const std::string dot = graph_to_dot(complete_graph(4));
    EXPECT_EQ(dot.rfind("graph G {", 0), 0u);
    const std::regex node(R"(^  \d+ \[label=)"), edge(R"(^  \d+ -- \d+;)");
    std::size_t nodes = 0, edges = 0;
    std::istringstream in(dot);
    for (std::string line; std::getline(in, line);) {
        nodes += std::regex_search(line, node);
        edges += std::regex_search(line, edge);
    }
    EXPECT_EQ(nodes, 4u);
    EXPECT_EQ(edges, 6u);
}

TEST(Dot, HighlightsCycleEdges)
{
    const OrientedCycle c({0, 1, 2});
    const std::string dot = graph_to_dot(complete_graph(4), &c);
    std::size_t red = 0;
    for (std::size_t p = dot.find("color=red"); p != std::string::npos; p = dot.find("color=red", p + 1))
        ++red;
    EXPECT_EQ(red, 3u);
}

TEST(CycleJson, EdgesInTraversalOrder)
{
    const json j = cycle_to_json(OrientedCycle({4, 2, 7, 1}));
    EXPECT_EQ(j["length"], 4);
    EXPECT_EQ(j["edges"], json::parse("[[4,2],[2,7],[7,1],[1,4]]"));
    EXPECT_EQ(cycle_from_json(j).order(), (std::vector<vertex_t>{4, 2, 7, 1}));
    EXPECT_THROW(cycle_from_json(json::parse("{}")), invalid_input);
}

TEST(ReportJson, WitnessesAreTyped)
{
    const Graph c6 = cycle_graph(6);
    const json j = report_to_json(local_ore(c6, {0}));
    EXPECT_EQ(j["verdict"], false);
    EXPECT_EQ(j["condition"], "local-ore");
    ASSERT_FALSE(j["witnesses"].empty());
    EXPECT_EQ(j["witnesses"][0]["type"], "path-triple");
    EXPECT_EQ(j["witnesses"][0]["lhs"], 2);
    EXPECT_EQ(j["witnesses"][0]["rhs"], 3);
}

TEST(RunJson, TimingOnlyOnRequest)
{
    auto run = run_h_no_circle(4);
    EXPECT_FALSE(run_to_json(run).contains("seconds"));
    EXPECT_TRUE(run_to_json(run, true).contains("seconds"));
    EXPECT_EQ(canonical(run_to_json(run)), canonical(run_to_json(run_h_no_circle(4))));
}

TEST(SpecJson, RoundTrip)
{
    FamilySpec s;
    s.family = "layered";
    s.r = 2;
    s.sizes = {2, 5, 6};
    s.layers = 4;
    const FamilySpec back = spec_from_json(spec_to_json(s));
    EXPECT_EQ(build_graph(back), build_graph(s));
    FamilySpec k;
    k.family = "Kclass";
    k.p = 3;
    k.inner_edges = {{0, 2}};
    EXPECT_EQ(build_graph(spec_from_json(spec_to_json(k))), build_graph(k));
    EXPECT_THROW(spec_from_json(json::parse(R"({"family": "Gd", "dd": 3})")), invalid_input);
}

// ---- CLI: verbs ---------------------------------------------------------------------

TEST(Cli, GenGdFour)
{
    auto j = run_json({"gen", "--family", "Gd", "--d", "4"});
    EXPECT_EQ(j["n"], 24);
    EXPECT_EQ(graph_from_json(j), gen_Gd(4));
    auto dot = run_cli({"gen", "--family", "Gd", "--d", "4", "--format", "dot"});
    EXPECT_EQ(dot.code, 0);
    EXPECT_EQ(dot.out, graph_to_dot(gen_Gd(4)));
}

TEST(Cli, GenToFileAndExportBack)
{
    TempDir tmp;
    const std::string g = tmp.file("g.json"), c = tmp.file("c.json");
    EXPECT_EQ(run_cli({"gen", "--family", "standard", "--name", "petersen", "--out", g}).code, 0);
    EXPECT_EQ(load_graph(g), petersen_graph());
    auto cyc = run_cli({"cycle", "--in", g, "--mode", "through", "--set", "0", "2", "--out", c});
    EXPECT_EQ(cyc.code, 0);
    auto ex = run_cli({"export", "--in", g, "--cycle", c, "--format", "dot"});
    EXPECT_EQ(ex.code, 0);
    EXPECT_NE(ex.out.find("color=red"), std::string::npos);
    auto plain = run_cli({"export", "--in", g});
    EXPECT_EQ(plain.out, canonical(graph_to_json(petersen_graph())));
}

TEST(Cli, BallOfOracleVertex)
{
    auto j = run_json({"ball", "--family", "layered", "--sizes", "2", "4", "--center", "V0.0",
                       "--radius", "2"});
    EXPECT_EQ(j["size"], 10);
    EXPECT_EQ(j["layer_sizes"], json::parse("[1,4,5]"));
    EXPECT_EQ(j["closed"], false);
}

TEST(Cli, CheckLocalOreOnSixCycleIsFalse)
{
    auto r = run_cli({"check", "--family", "standard", "--name", "cycle", "--n", "6", "--condition",
                      "local-ore"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("verdict: false"), std::string::npos);
    EXPECT_NE(r.out.find("witness: path"), std::string::npos);
    auto j = run_json({"check", "--family", "standard", "--name", "complete", "--n", "5",
                       "--condition", "local-ore"});
    EXPECT_EQ(j["verdict"], true);
}

TEST(Cli, CheckKappaAndProfile)
{
    auto j = run_json({"check", "--family", "standard", "--name", "petersen", "--condition", "kappa"});
    EXPECT_EQ(j["details"]["kappa"], 3);
    auto p = run_json({"check", "--family", "standard", "--name", "cycle", "--n", "8", "--condition",
                       "ball-profile", "--center", "0", "--r-max", "2"});
    EXPECT_EQ(p["verdict"], false);
    EXPECT_EQ(p["details"]["profile"].size(), 2u);
}

TEST(Cli, CycleModes)
{
    auto h = run_json({"cycle", "--family", "standard", "--name", "complete", "--n", "5"});
    EXPECT_EQ(h["found"], true);
    EXPECT_EQ(h["cycle"]["length"], 5);
    auto none = run_cli({"cycle", "--family", "standard", "--name", "petersen"});
    EXPECT_EQ(none.code, 1);
    auto g = run_json({"cycle", "--family", "H", "--mode", "guided", "--set", "a1", "a2",
                       "--hypothesis", "none"});
    EXPECT_EQ(g["found"], true);
    EXPECT_EQ(g["details"]["ball_radius"].get<int>(), g["details"]["q"].get<int>() + 5);
    EXPECT_EQ(g["details"]["fallback_absence"], false);
}

TEST(Cli, VerifyGdThree)
{
    auto r = run_cli({"verify", "--theorem", "T10", "--family", "Gd", "--d", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verdict: confirmed"), std::string::npos);
    auto j = run_json({"verify", "--theorem", "P-no-circle", "--family", "H", "--m", "5"});
    EXPECT_EQ(j["confirmed"], true);
    EXPECT_FALSE(j.contains("seconds"));
}

TEST(Cli, MarginSweepIsLabelledAnExperiment)
{
    auto j = run_json({"verify", "--theorem", "T14", "--family", "standard", "--name", "circulant",
                       "--n", "24", "--jumps", "1", "2", "--margin-sweep", "3", "5", "--samples", "5"});
    EXPECT_EQ(j["experiment"], "ball radius q + margin");
    EXPECT_EQ(j["rows"].size(), 2u);
}

TEST(Cli, OutputIsDeterministic)
{
    std::vector<std::string> args{"verify", "--theorem", "T14", "--family", "standard", "--name",
                                  "circulant", "--n", "20", "--jumps", "1", "2", "--samples", "8"};
    auto a = run_cli(args), b = run_cli(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    args.insert(args.begin(), "--json");
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

// ---- CLI: exit codes ------------------------------------------------------------------

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"gen", "--bogus"}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"check", "--family", "Gd", "--condition", "nope"}).code, 2);
    EXPECT_EQ(run_cli({"verify", "--theorem", "T99", "--family", "Gd"}).code, 2);
    EXPECT_EQ(run_cli({"ball", "--family", "Gd", "--center", "zz"}).code, 2);
    EXPECT_EQ(run_cli({"gen", "--family", "Gd", "--d", "2"}).code, 2);
    auto bad = run_cli({"ball", "--family", "Gd"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, BudgetExitsThree)
{
    EXPECT_EQ(run_cli({"cycle", "--family", "standard", "--name", "cycle", "--n", "30", "--exact-max",
                       "25"})
                  .code,
              3);
    EXPECT_EQ(run_cli({"ball", "--family", "layered", "--center", "V0.0", "--radius", "6",
                       "--ball-max", "10"})
                  .code,
              3);
}

TEST(Cli, IoErrorsExitFour)
{
    EXPECT_EQ(run_cli({"check", "--in", "/nonexistent/g.json", "--condition", "ore"}).code, 4);
}

TEST(Cli, HelpExitsZero)
{
    auto h = run_cli({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("Exit codes"), std::string::npos);
}

TEST(CliBinary, ExitCodesMatchInProcess)
{
    auto [ok, out] = run_binary("--json gen --family Gd --d 4");
    EXPECT_EQ(ok, 0);
    EXPECT_EQ(json::parse(out)["n"], 24);
    EXPECT_EQ(run_binary("check --family standard --name cycle --n 6 --condition local-ore").first, 1);
    EXPECT_EQ(run_binary("gen --nope").first, 2);
    EXPECT_EQ(run_binary("cycle --family standard --name cycle --n 30 --exact-max 25").first, 3);
    EXPECT_EQ(run_binary("verify --theorem T10 --family Gd --d 3").first, 0);
}
