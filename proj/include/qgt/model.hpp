#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>

#include "qgt/errors.hpp"

namespace qgt {

using StateVector = Eigen::Vector2cd;

// A point in the two-dimensional parameter space (radians). Families are
// 2pi-periodic by construction; wrapping is the caller's business.
struct ParameterPoint {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

// The three microwave amplitudes (units of the energy scale Omega = 1).
struct ControlVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

enum class FamilyKind { bloch_sphere, trs_band, custom };
enum class Band { ground, excited };

using CustomMap = std::function<ControlVector(ParameterPoint)>;

// A named map from a parameter point to a control vector.
//
//   bloch_sphere: Omega * (sin l1 cos l2, sin l1 sin l2, cos l1)
//   trs_band:     Omega * (a sin l1 cos l2, a sin l1 sin l2, -(h + cos l1))
//   custom:       any pure user map; derivatives by central differences
class HamiltonianFamily {
  public:
    static HamiltonianFamily bloch_sphere();
    static HamiltonianFamily trs_band(double h, double alpha = 0.5);
    static HamiltonianFamily custom(CustomMap map, double fd_step = 1e-5,
                                    bool richardson = false);

    FamilyKind kind() const { return kind_; }
    double h() const { return h_; }
    double alpha() const { return alpha_; }

    ControlVector control_vector(ParameterPoint p) const;

    // d(control vector)/d lambda_mu, mu = 0, 1. Closed-form for the built-in
    // families, central differences (optionally Richardson) for custom maps.
    std::array<ControlVector, 2> control_gradient(ParameterPoint p) const;

  private:
    HamiltonianFamily() = default;

    FamilyKind kind_ = FamilyKind::bloch_sphere;
    double h_ = 0.0;
    double alpha_ = 0.5;
    CustomMap map_;
    double fd_step_ = 1e-5;
    bool richardson_ = false;
};

struct EigenSystem {
    double energy_minus = 0.0;
    double energy_plus = 0.0;
    StateVector state_minus;
    StateVector state_plus;

    double gap() const { return energy_plus - energy_minus; }
    const StateVector& state(Band b) const {
        return b == Band::ground ? state_minus : state_plus;
    }
    double energy(Band b) const {
        return b == Band::ground ? energy_minus : energy_plus;
    }
};

inline constexpr double kDegeneracyTolerance = 1e-9;

// H = (Omega_x sigma_x + Omega_y sigma_y + Omega_z sigma_z) / 2.
// Hermitian by construction, trace zero.
Eigen::Matrix2cd pauli_combination(const ControlVector& w);

Eigen::Matrix2cd hamiltonian_matrix(const HamiltonianFamily& family, ParameterPoint p);

// Fix the global phase so the first component with magnitude > 1e-12 is real
// and non-negative. Deterministic eigenvectors are needed for
// finite-difference derivatives; the QGT itself is gauge-invariant.
void gauge_fix(StateVector& psi);

// Closed-form eigensystem of the control vector. Energies -+|w|/2.
// Throws DegeneratePointError when |w| <= tol.
EigenSystem eigensystem(const ControlVector& w, double tol = kDegeneracyTolerance);
EigenSystem eigensystem(const HamiltonianFamily& family, ParameterPoint p,
                        double tol = kDegeneracyTolerance);

inline Band other_band(Band b) {
    return b == Band::ground ? Band::excited : Band::ground;
}

} // namespace qgt
