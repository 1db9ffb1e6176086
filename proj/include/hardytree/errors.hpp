#pragma once

#include <stdexcept>
#include <string>

namespace hardytree {

// Malformed input: bad tree structure, invalid cut, out-of-range exponent,
// unparseable file, violated precondition. Maps to CLI exit code 2.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A configurable instance-size guard was exceeded (matrix dimension,
// cut-enumeration budget, series length). Maps to CLI exit code 3.
class SizeCapExceeded : public std::runtime_error {
public:
    explicit SizeCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver failed to meet its tolerance within the iteration
// budget. Reported, never silently swallowed. Maps to CLI exit code 3.
class ConvergenceFailure : public std::runtime_error {
public:
    explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hardytree
