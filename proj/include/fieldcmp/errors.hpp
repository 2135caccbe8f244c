#pragma once

#include <stdexcept>
#include <string>

namespace fieldcmp {

// A party tried to touch a qubit it does not own.
struct locality_error : std::logic_error {
    explicit locality_error(const std::string& what) : std::logic_error(what) {}
};

// A protocol precondition was violated (bad promise, wrong shared resource,
// out-of-order classical message).
struct protocol_error : std::runtime_error {
    explicit protocol_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fieldcmp
