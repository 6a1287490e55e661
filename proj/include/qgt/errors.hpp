#pragma once

#include <stdexcept>
#include <string>

namespace qgt {

// Band touching: the QGT is undefined where the control vector vanishes.
struct DegeneratePointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidStepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridTooCoarseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowTooNarrowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear-response regime broken during a quasi-adiabatic ramp.
struct AdiabaticityViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qgt
