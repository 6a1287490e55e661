#include "qgt/model.hpp"

#include <complex>

namespace qgt {

using std::complex;

HamiltonianFamily HamiltonianFamily::bloch_sphere() {
    HamiltonianFamily f;
    f.kind_ = FamilyKind::bloch_sphere;
    return f;
}

HamiltonianFamily HamiltonianFamily::trs_band(double h, double alpha) {
    HamiltonianFamily f;
    f.kind_ = FamilyKind::trs_band;
    f.h_ = h;
    f.alpha_ = alpha;
    return f;
}

HamiltonianFamily HamiltonianFamily::custom(CustomMap map, double fd_step, bool richardson) {
    HamiltonianFamily f;
    f.kind_ = FamilyKind::custom;
    f.map_ = std::move(map);
    f.fd_step_ = fd_step;
    f.richardson_ = richardson;
    return f;
}

ControlVector HamiltonianFamily::control_vector(ParameterPoint p) const {
    switch (kind_) {
        case FamilyKind::bloch_sphere: {
            const double st = std::sin(p.lambda1), ct = std::cos(p.lambda1);
            const double sp = std::sin(p.lambda2), cp = std::cos(p.lambda2);
            return {st * cp, st * sp, ct};
        }
        case FamilyKind::trs_band: {
            const double sx = std::sin(p.lambda1), cx = std::cos(p.lambda1);
            const double sy = std::sin(p.lambda2), cy = std::cos(p.lambda2);
            return {alpha_ * sx * cy, alpha_ * sx * sy, -(h_ + cx)};
        }
        case FamilyKind::custom:
            return map_(p);
    }
    return {};
}

std::array<ControlVector, 2> HamiltonianFamily::control_gradient(ParameterPoint p) const {
    switch (kind_) {
        case FamilyKind::bloch_sphere: {
            const double st = std::sin(p.lambda1), ct = std::cos(p.lambda1);
            const double sp = std::sin(p.lambda2), cp = std::cos(p.lambda2);
            return {ControlVector{ct * cp, ct * sp, -st},
                    ControlVector{-st * sp, st * cp, 0.0}};
        }
        case FamilyKind::trs_band: {
            const double sx = std::sin(p.lambda1), cx = std::cos(p.lambda1);
            const double sy = std::sin(p.lambda2), cy = std::cos(p.lambda2);
            return {ControlVector{alpha_ * cx * cy, alpha_ * cx * sy, sx},
                    ControlVector{-alpha_ * sx * sy, alpha_ * sx * cy, 0.0}};
        }
        case FamilyKind::custom: {
            auto central = [&](int axis, double step) {
                ParameterPoint hi = p, lo = p;
                (axis == 0 ? hi.lambda1 : hi.lambda2) += step;
                (axis == 0 ? lo.lambda1 : lo.lambda2) -= step;
                const ControlVector a = map_(hi), b = map_(lo);
                const double inv = 1.0 / (2.0 * step);
                return ControlVector{(a.x - b.x) * inv, (a.y - b.y) * inv, (a.z - b.z) * inv};
            };
            std::array<ControlVector, 2> out;
            for (int axis = 0; axis < 2; ++axis) {
                ControlVector d = central(axis, fd_step_);
                if (richardson_) {
                    const ControlVector dh = central(axis, fd_step_ / 2.0);
                    d = {(4.0 * dh.x - d.x) / 3.0, (4.0 * dh.y - d.y) / 3.0,
                         (4.0 * dh.z - d.z) / 3.0};
                }
                out[axis] = d;
            }
            return out;
        }
    }
    return {};
}

Eigen::Matrix2cd pauli_combination(const ControlVector& w) {
    Eigen::Matrix2cd H;
    const complex<double> off(0.5 * w.x, -0.5 * w.y);
    H(0, 0) = complex<double>(0.5 * w.z, 0.0);
    H(0, 1) = off;
    H(1, 0) = std::conj(off);
    H(1, 1) = complex<double>(-0.5 * w.z, 0.0);
    return H;
}

Eigen::Matrix2cd hamiltonian_matrix(const HamiltonianFamily& family, ParameterPoint p) {
    return pauli_combination(family.control_vector(p));
}

void gauge_fix(StateVector& psi) {
    constexpr double kTiny = 1e-12;
    const int lead = std::abs(psi(0)) > kTiny ? 0 : 1;
    const double mag = std::abs(psi(lead));
    if (mag > 0.0) psi *= std::conj(psi(lead)) / mag;
}

EigenSystem eigensystem(const ControlVector& w, double tol) {
    const double r = w.norm();
    if (!(r > tol)) {
        throw DegeneratePointError("eigensystem: control vector norm " + std::to_string(r) +
                                   " below degeneracy tolerance (band touching)");
    }
    const double nz = w.z / r;
    // Clamp against roundoff when |nz| is within an ulp of 1.
    const double ch = std::sqrt(std::max(0.0, 0.5 * (1.0 + nz))); // cos(theta/2)
    const double sh = std::sqrt(std::max(0.0, 0.5 * (1.0 - nz))); // sin(theta/2)
    const double rho = std::hypot(w.x, w.y);
    const complex<double> phase =
        rho > 0.0 ? complex<double>(w.x / rho, w.y / rho) : complex<double>(1.0, 0.0);

    EigenSystem es;
    es.energy_minus = -0.5 * r;
    es.energy_plus = 0.5 * r;
    es.state_minus = StateVector(complex<double>(sh, 0.0), -ch * phase);
    es.state_plus = StateVector(complex<double>(ch, 0.0), sh * phase);
    gauge_fix(es.state_minus);
    gauge_fix(es.state_plus);
    return es;
}

EigenSystem eigensystem(const HamiltonianFamily& family, ParameterPoint p, double tol) {
    return eigensystem(family.control_vector(p), tol);
}

} // namespace qgt
