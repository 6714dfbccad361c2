#pragma once

#include <stdexcept>
#include <string>

namespace hz {

// Base class for every error raised by the library. Subclasses carry the
// failure kind in the type so callers can dispatch without string matching.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an adaptive integrator underflows its minimum step size.
class StepFailure : public Error {
public:
    explicit StepFailure(const std::string& what) : Error(what) {}
};

}  // namespace hz
