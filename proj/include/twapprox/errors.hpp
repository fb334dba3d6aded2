#pragma once

#include <stdexcept>
#include <string>

namespace twapprox {

// Malformed input: unknown vertex ids, bad files, invalid decompositions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured size guard or table cap was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected solver parameters, e.g. an epsilon override with delta_{h0} >= 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A proven invariant failed at run time; always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace twapprox
