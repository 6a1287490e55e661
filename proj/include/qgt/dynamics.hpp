#pragma once

#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "qgt/model.hpp"

namespace qgt {

// Parameter-space trajectories. Schedules evaluate parameters, never
// matrices; matrix assembly is delegated to the family each step.
struct ConstantSchedule {
    ParameterPoint point;
    double duration = 1.0;
};

struct LinearRamp {
    ParameterPoint start;
    ParameterPoint end;
    double duration = 1.0;
};

// lambda(t) = base + axis * amplitude * cos(angular_frequency * t)
struct CosineModulation {
    ParameterPoint base;
    double axis1 = 1.0;
    double axis2 = 0.0;
    double amplitude = 0.0;        // radians
    double angular_frequency = 1.0;
    double duration = 1.0;
};

class Schedule {
  public:
    Schedule(ConstantSchedule s) : seg_(std::move(s)) {}
    Schedule(LinearRamp s) : seg_(std::move(s)) {}
    Schedule(CosineModulation s) : seg_(std::move(s)) {}
    static Schedule composite(std::vector<Schedule> parts);

    ParameterPoint at(double t) const;
    double duration() const;

  private:
    struct Composite {
        std::vector<Schedule> parts;
    };
    Schedule() = default;
    std::variant<ConstantSchedule, LinearRamp, CosineModulation, Composite> seg_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
};

// exp(-i H dt) with H = w.sigma/2: cos(|w|dt/2) I - i sin(|w|dt/2) n.sigma.
// Exactly unitary for any dt.
Eigen::Matrix2cd pauli_exponential(const ControlVector& w, double dt);

// Core stepper: n uniform steps over [0, total], per-step propagator is the
// exact exponential of the midpoint-evaluated Hamiltonian. The visitor is
// called with (step_index, t, psi) after every step (step_index from 1) and
// once with (0, 0, psi0) before the first.
template <class PathFn, class Visitor>
void evolve_visit(const HamiltonianFamily& family, PathFn&& path, double total,
                  StateVector psi, double dt, Visitor&& visit) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidStepError("evolve: dt must be positive and finite");
    }
    if (!(total >= 0.0) || !std::isfinite(total)) {
        throw InvalidStepError("evolve: duration must be non-negative and finite");
    }
    const long n = std::max(1L, static_cast<long>(std::ceil(total / dt - 1e-12)));
    const double h = total / static_cast<double>(n);
    visit(0L, 0.0, psi);
    for (long i = 0; i < n; ++i) {
        const double tmid = (static_cast<double>(i) + 0.5) * h;
        psi = (pauli_exponential(family.control_vector(path(tmid)), h) * psi).eval();
        visit(i + 1, static_cast<double>(i + 1) * h, psi);
    }
}

// dt = min(0.005/Omega_eff, duration/2000), Omega_eff bounding |w| on the
// schedule (sampled).
double default_time_step(const HamiltonianFamily& family, const Schedule& schedule);

// Records every `stride`-th step (and always the final state).
Trajectory evolve(const HamiltonianFamily& family, const Schedule& schedule,
                  const StateVector& psi0, double dt, long stride = 1);

StateVector evolve_final(const HamiltonianFamily& family, const Schedule& schedule,
                         const StateVector& psi0, double dt);

// <psi|O|psi> for Hermitian O; the imaginary part is discarded (checked small).
double expectation(const StateVector& psi, const Eigen::Matrix2cd& observable);

// 1 - |<u_band(p)|psi>|^2: probability of having left the reference band.
double transition_probability(const StateVector& psi, const HamiltonianFamily& family,
                              ParameterPoint p, Band reference_band = Band::ground,
                              double tol = kDegeneracyTolerance);

} // namespace qgt
