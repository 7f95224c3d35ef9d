#pragma once

#include <stdexcept>
#include <string>

namespace exclusion {

/// A caller violated a documented precondition (alphabet mismatch, bad depth, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured size cap (vertex count, region count).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative numeric method hit its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed JSON input; `pointer` is the JSON pointer of the offending node.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string pointer, const std::string& what)
        : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

} // namespace exclusion
