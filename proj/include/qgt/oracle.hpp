#pragma once

#include "qgt/model.hpp"

namespace qgt {

// 2x2 QGT of a two-level band, split into the symmetric metric and the
// antisymmetric curvature: Q_{mu nu} = g_{mu nu} + i F_{mu nu}/2.
struct QGTValue {
    double g11 = 0.0;
    double g12 = 0.0;
    double g22 = 0.0;
    double f12 = 0.0;

    double det_g() const { return g11 * g22 - g12 * g12; }
    double sqrt_det_g() const { return std::sqrt(std::max(0.0, det_g())); }
};

struct MetricEstimate {
    double g11 = 0.0;
    double g22 = 0.0;
    double g12 = 0.0;
};

// Spectral route: Q_{mu nu} = <u|dH_mu|v><v|dH_nu|u> / (E_u - E_v)^2 with v
// the other band; dH from the family's control gradient.
QGTValue qgt_spectral(const HamiltonianFamily& family, ParameterPoint p, Band band,
                      double tol = kDegeneracyTolerance);

// Same contraction from externally supplied states; used to check gauge
// invariance and by the spectral route.
QGTValue qgt_from_states(const StateVector& u_band, const StateVector& u_other,
                         const Eigen::Matrix2cd& dH1, const Eigen::Matrix2cd& dH2,
                         double gap);

// Overlap route: symmetric two-sided probes of 1 - |<u(p)|u(p +- d e)>|^2,
// diagonal-direction probe for the cross term (the quench-extraction
// algebra). O(delta^2) accurate.
MetricEstimate metric_overlap_fd(const HamiltonianFamily& family, ParameterPoint p,
                                 Band band, double delta = 1e-4,
                                 double tol = kDegeneracyTolerance);

// Bloch-vector route: g = 1/4 dn.dn, F = -+ 1/2 n.(d1 n x d2 n) with n the
// unit control vector (ground band takes the minus sign).
QGTValue bloch_qgt(const HamiltonianFamily& family, ParameterPoint p, Band band,
                   double tol = kDegeneracyTolerance);

// Ground-band sqrt(det g) of the TRS band family, independent of k_y:
//   alpha^2 |(1 + h cos kx) sin kx| / (4 f^{3/2}),
//   f = (h + cos kx)^2 + alpha^2 sin^2 kx.
double trs_sqrt_det_g_closed_form(double h, double alpha, double kx,
                                  double tol = kDegeneracyTolerance);

} // namespace qgt
