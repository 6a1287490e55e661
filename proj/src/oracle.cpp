#include "qgt/oracle.hpp"

#include <complex>

namespace qgt {

using std::complex;

QGTValue qgt_from_states(const StateVector& u_band, const StateVector& u_other,
                         const Eigen::Matrix2cd& dH1, const Eigen::Matrix2cd& dH2,
                         double gap) {
    const double inv_gap2 = 1.0 / (gap * gap);
    const complex<double> t1 = u_band.dot(dH1 * u_other);
    const complex<double> t2 = u_band.dot(dH2 * u_other);
    const complex<double> q11 = t1 * std::conj(t1) * inv_gap2;
    const complex<double> q12 = t1 * std::conj(t2) * inv_gap2;
    const complex<double> q22 = t2 * std::conj(t2) * inv_gap2;
    QGTValue q;
    q.g11 = q11.real();
    q.g12 = q12.real();
    q.g22 = q22.real();
    q.f12 = 2.0 * q12.imag();
    return q;
}

QGTValue qgt_spectral(const HamiltonianFamily& family, ParameterPoint p, Band band,
                      double tol) {
    const EigenSystem es = eigensystem(family, p, tol);
    const auto grad = family.control_gradient(p);
    const Eigen::Matrix2cd dH1 = pauli_combination(grad[0]);
    const Eigen::Matrix2cd dH2 = pauli_combination(grad[1]);
    return qgt_from_states(es.state(band), es.state(other_band(band)), dH1, dH2, es.gap());
}

MetricEstimate metric_overlap_fd(const HamiltonianFamily& family, ParameterPoint p,
                                 Band band, double delta, double tol) {
    auto probe = [&](double d1, double d2) {
        const EigenSystem a = eigensystem(family, p, tol);
        const EigenSystem b =
            eigensystem(family, {p.lambda1 + d1, p.lambda2 + d2}, tol);
        return 1.0 - std::norm(a.state(band).dot(b.state(band)));
    };
    // Two-sided probes cancel the (dg/dlambda) * delta bias.
    const double inv = 1.0 / (delta * delta);
    const double p11 = 0.5 * (probe(delta, 0.0) + probe(-delta, 0.0));
    const double p22 = 0.5 * (probe(0.0, delta) + probe(0.0, -delta));
    const double p12 = 0.5 * (probe(delta, delta) + probe(-delta, -delta));
    MetricEstimate m;
    m.g11 = p11 * inv;
    m.g22 = p22 * inv;
    m.g12 = 0.5 * (p12 - p11 - p22) * inv;
    return m;
}

namespace {

struct Vec3 {
    double x, y, z;
};

inline Vec3 unit(const ControlVector& w, double r) { return {w.x / r, w.y / r, w.z / r}; }

// Tangential projection of dw onto the unit sphere at n: (dw - n(n.dw))/r.
inline Vec3 dn_from(const ControlVector& w, const ControlVector& dw, double r) {
    const Vec3 n = unit(w, r);
    const double proj = n.x * dw.x + n.y * dw.y + n.z * dw.z;
    return {(dw.x - n.x * proj) / r, (dw.y - n.y * proj) / r, (dw.z - n.z * proj) / r};
}

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

} // namespace

QGTValue bloch_qgt(const HamiltonianFamily& family, ParameterPoint p, Band band,
                   double tol) {
    const ControlVector w = family.control_vector(p);
    const double r = w.norm();
    if (!(r > tol)) {
        throw DegeneratePointError("bloch_qgt: control vector norm below tolerance");
    }
    const auto grad = family.control_gradient(p);
    const Vec3 n = unit(w, r);
    const Vec3 d1 = dn_from(w, grad[0], r);
    const Vec3 d2 = dn_from(w, grad[1], r);
    QGTValue q;
    q.g11 = 0.25 * dot(d1, d1);
    q.g12 = 0.25 * dot(d1, d2);
    q.g22 = 0.25 * dot(d2, d2);
    const double solid = dot(n, cross(d1, d2));
    q.f12 = (band == Band::ground ? -0.5 : 0.5) * solid;
    return q;
}

double trs_sqrt_det_g_closed_form(double h, double alpha, double kx, double tol) {
    const double s = std::sin(kx), c = std::cos(kx);
    const double f = (h + c) * (h + c) + alpha * alpha * s * s;
    if (!(std::sqrt(f) > tol)) {
        throw DegeneratePointError("trs_sqrt_det_g_closed_form: gap closes at this kx");
    }
    return alpha * alpha * std::abs((1.0 + h * c) * s) / (4.0 * std::pow(f, 1.5));
}

} // namespace qgt
