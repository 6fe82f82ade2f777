#pragma once

#include <stdexcept>
#include <string>

namespace mra {

// Raised when an argument violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a computation cannot complete (non-finite values, I/O).
class RuntimeFailure : public std::runtime_error {
public:
    explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw InvalidParameter(message);
    }
}

} // namespace mra
