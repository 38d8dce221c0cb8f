#pragma once

#include <stdexcept>
#include <string>

namespace sderand {

/// Raised when a run configuration violates a precondition. The message names the field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A fine path that does not coarsen onto the path a trajectory was built from.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested an antiderivative for a function outside the closed-form corpus.
class UnsupportedFunctionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace sderand
