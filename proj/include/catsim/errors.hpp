#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

// Raised before allocating a dense propagator that would exceed the
// configured memory budget; the message carries the required size.
struct MemoryBudgetError : std::runtime_error {
    explicit MemoryBudgetError(const std::string& what)
        : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace catsim
