#pragma once

#include <numbers>
#include <string>

#include "qgt/errors.hpp"

namespace qgt {

// Internally Omega = 1 and time is measured in 1/Omega. The reference drive
// strength is 10 MHz; whether that is Omega/2pi (angular) or Omega itself
// (cyclic) changes how laboratory nanoseconds map onto simulation time.
enum class OmegaConvention { angular, cyclic };

inline double omega_rad_per_us(OmegaConvention c) {
    return c == OmegaConvention::angular ? 2.0 * std::numbers::pi * 10.0 : 10.0;
}

// t[ns] -> Omega * t (dimensionless simulation time)
inline double ns_to_sim_time(double t_ns, OmegaConvention c) {
    return t_ns * 1e-3 * omega_rad_per_us(c);
}

inline double sim_time_to_ns(double t, OmegaConvention c) {
    return t * 1e3 / omega_rad_per_us(c);
}

inline std::string to_string(OmegaConvention c) {
    return c == OmegaConvention::angular ? "angular" : "cyclic";
}

inline OmegaConvention omega_convention_from_string(const std::string& s) {
    if (s == "angular") return OmegaConvention::angular;
    if (s == "cyclic") return OmegaConvention::cyclic;
    throw ConfigError("unknown omega convention: " + s);
}

} // namespace qgt
