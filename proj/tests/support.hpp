#pragma once

#include <string>
#include <vector>

#include "ballscope/graph.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

namespace support {

inline ballscope::vertex_t by_label(const ballscope::Graph& g, const std::string& name)
{
    auto v = g.find_label(name);
    if (!v)
        throw std::runtime_error("no vertex labelled " + name);
    return *v;
}

inline std::vector<ballscope::vertex_t> by_labels(const ballscope::Graph& g,
                                                  const std::vector<std::string>& names)
{
    std::vector<ballscope::vertex_t> out;
    for (const auto& n : names)
        out.push_back(by_label(g, n));
    return out;
}

/// "b" 1..k -> {"b1", ..., "bk"}
inline std::vector<std::string> run_of(const std::string& prefix, int from, int to)
{
    std::vector<std::string> out;
    for (int i = from; i <= to; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

inline std::vector<std::string> concat(std::vector<std::vector<std::string>> parts)
{
    std::vector<std::string> out;
    for (auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

} // namespace support
