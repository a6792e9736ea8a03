#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ballscope/graph.hpp"

namespace ballscope {

/// Path u-w-v with uw, wv edges and uv a non-edge.
struct PathTriple {
    vertex_t u = 0, w = 0, v = 0;
    friend bool operator==(const PathTriple&, const PathTriple&) = default;
};

/// Vertex separator certifying a failure of k-connectedness.
///
/// `disconnects`: G - separator has no edge between the two sides.
/// Otherwise removing the separator leaves the trivial one-vertex graph
/// (sides = {remaining vertex}, {}).
struct CutWitness {
    std::vector<vertex_t> separator;
    std::vector<vertex_t> side_a;
    std::vector<vertex_t> side_b;
    bool disconnects = true;
};

/// Inequality `lhs >= rhs` failed for a path triple.
struct TripleFailure {
    PathTriple triple;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

/// Nonadjacent pair with d(u) + d(v) < |V| (global Ore check).
struct PairFailure {
    vertex_t u = 0, v = 0;
    std::int64_t degree_sum = 0;
    std::int64_t order = 0;
};

/// Induced K_{1,3}.
struct Claw {
    vertex_t center = 0;
    std::array<vertex_t, 3> leaves{};
};

/// A center whose ball (or neighborhood) fails the condition.
struct CenterFailure {
    vertex_t center = 0;
    int radius = 0;
    std::string reason;
    std::optional<CutWitness> cut;
    std::vector<vertex_t> independent_set;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

using Witness = std::variant<TripleFailure, PairFailure, Claw, CenterFailure>;

/// Outcome of a condition sweep over an explicit scope. All vertex ids in
/// witnesses are host ids.
struct ConditionReport {
    ConditionReport() = default;
    ConditionReport(std::string cond, std::string examined, std::vector<vertex_t> centers)
        : condition(std::move(cond)), examined_set(std::move(examined)), scope(std::move(centers))
    {
    }

    std::string condition;
    std::string examined_set; // which vertex set each center's check used
    std::vector<vertex_t> scope;
    bool verdict = true;
    std::vector<Witness> witnesses;
    std::vector<std::string> notes;

    void fail(Witness w)
    {
        verdict = false;
        witnesses.push_back(std::move(w));
    }

    void merge(ConditionReport other)
    {
        verdict = verdict && other.verdict;
        for (auto& w : other.witnesses)
            witnesses.push_back(std::move(w));
    }
};

} // namespace ballscope
