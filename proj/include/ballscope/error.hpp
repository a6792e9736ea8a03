#pragma once

#include <stdexcept>
#include <string>

namespace ballscope {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: unknown vertex, loop or duplicate edge, parameter out of range.
class invalid_input : public error {
public:
    using error::error;
};

/// An exploration or exact-solver budget was exceeded. Never silently truncated.
class budget_exceeded : public error {
public:
    using error::error;
};

/// Operation needs a connected graph.
class disconnected_graph : public error {
public:
    using error::error;
};

/// A neighbor oracle returned inconsistent data (asymmetric, loops, duplicates).
class oracle_error : public error {
public:
    using error::error;
};

} // namespace ballscope
