#pragma once

#include <stdexcept>
#include <string>

namespace gerbe {

// Error taxonomy shared by the library and the CLI exit codes:
// malformed input -> 2, violated precondition -> 3, internal consistency -> 4.

struct MalformedInputError : std::runtime_error {
    explicit MalformedInputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalConsistencyError : std::runtime_error {
    explicit InternalConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gerbe
