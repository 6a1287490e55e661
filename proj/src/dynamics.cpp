#include "qgt/dynamics.hpp"

#include <algorithm>

namespace qgt {

using std::complex;

Schedule Schedule::composite(std::vector<Schedule> parts) {
    Schedule s;
    s.seg_ = Composite{std::move(parts)};
    return s;
}

double Schedule::duration() const {
    return std::visit(
        [](const auto& seg) -> double {
            using T = std::decay_t<decltype(seg)>;
            if constexpr (std::is_same_v<T, Composite>) {
                double total = 0.0;
                for (const auto& p : seg.parts) total += p.duration();
                return total;
            } else {
                return seg.duration;
            }
        },
        seg_);
}

ParameterPoint Schedule::at(double t) const {
    return std::visit(
        [t](const auto& seg) -> ParameterPoint {
            using T = std::decay_t<decltype(seg)>;
            if constexpr (std::is_same_v<T, ConstantSchedule>) {
                return seg.point;
            } else if constexpr (std::is_same_v<T, LinearRamp>) {
                const double s = std::clamp(t / seg.duration, 0.0, 1.0);
                return {seg.start.lambda1 + s * (seg.end.lambda1 - seg.start.lambda1),
                        seg.start.lambda2 + s * (seg.end.lambda2 - seg.start.lambda2)};
            } else if constexpr (std::is_same_v<T, CosineModulation>) {
                const double c = seg.amplitude * std::cos(seg.angular_frequency * t);
                return {seg.base.lambda1 + seg.axis1 * c, seg.base.lambda2 + seg.axis2 * c};
            } else {
                double t0 = 0.0;
                for (const auto& p : seg.parts) {
                    const double d = p.duration();
                    if (t <= t0 + d || &p == &seg.parts.back()) return p.at(t - t0);
                    t0 += d;
                }
                return {};
            }
        },
        seg_);
}

Eigen::Matrix2cd pauli_exponential(const ControlVector& w, double dt) {
    const double r = w.norm();
    Eigen::Matrix2cd U;
    if (r * dt < 1e-300) {
        U.setIdentity();
        return U;
    }
    const double half = 0.5 * r * dt;
    const double c = std::cos(half);
    const double s = std::sin(half) / r; // sin(half) * (per-component n = w/r)
    const complex<double> i01(0.0, -1.0);
    U(0, 0) = complex<double>(c, -s * w.z);
    U(1, 1) = complex<double>(c, s * w.z);
    U(0, 1) = i01 * complex<double>(s * w.x, -s * w.y);
    U(1, 0) = i01 * complex<double>(s * w.x, s * w.y);
    return U;
}

double default_time_step(const HamiltonianFamily& family, const Schedule& schedule) {
    const double total = schedule.duration();
    double omega_eff = 0.0;
    const int samples = 128;
    for (int i = 0; i <= samples; ++i) {
        const double t = total * static_cast<double>(i) / samples;
        omega_eff = std::max(omega_eff, family.control_vector(schedule.at(t)).norm());
    }
    omega_eff = std::max(omega_eff, 1e-6);
    return std::min(0.005 / omega_eff, total / 2000.0);
}

Trajectory evolve(const HamiltonianFamily& family, const Schedule& schedule,
                  const StateVector& psi0, double dt, long stride) {
    const double total = schedule.duration();
    if (!(dt <= total)) throw InvalidStepError("evolve: dt exceeds schedule duration");
    stride = std::max(1L, stride);
    Trajectory traj;
    const long n = std::max(1L, static_cast<long>(std::ceil(total / dt - 1e-12)));
    traj.times.reserve(static_cast<size_t>(n / stride) + 2);
    traj.states.reserve(traj.times.capacity());
    evolve_visit(family, [&](double t) { return schedule.at(t); }, total, psi0, dt,
                 [&](long i, double t, const StateVector& psi) {
                     if (i % stride == 0 || i == n) {
                         traj.times.push_back(t);
                         traj.states.push_back(psi);
                     }
                 });
    return traj;
}

StateVector evolve_final(const HamiltonianFamily& family, const Schedule& schedule,
                         const StateVector& psi0, double dt) {
    const double total = schedule.duration();
    if (!(dt <= total)) throw InvalidStepError("evolve: dt exceeds schedule duration");
    StateVector out = psi0;
    evolve_visit(family, [&](double t) { return schedule.at(t); }, total, psi0, dt,
                 [&](long, double, const StateVector& psi) { out = psi; });
    return out;
}

double expectation(const StateVector& psi, const Eigen::Matrix2cd& observable) {
    const complex<double> v = psi.dot(observable * psi);
    return v.real();
}

double transition_probability(const StateVector& psi, const HamiltonianFamily& family,
                              ParameterPoint p, Band reference_band, double tol) {
    const EigenSystem es = eigensystem(family, p, tol);
    const double overlap = std::norm(es.state(reference_band).dot(psi));
    return std::clamp(1.0 - overlap, 0.0, 1.0);
}

} // namespace qgt
