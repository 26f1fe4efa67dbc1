#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace abusekit {

// I/O and format problems (unreadable file, malformed line in strict mode).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Bad user-supplied configuration (unknown keys, unknown feature names).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative solver ran out of iterations; carries the last iterate so
// callers can inspect how far it got.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> last)
        : std::runtime_error(what), last_iterate(std::move(last)) {}

    std::vector<double> last_iterate;
};

}  // namespace abusekit
