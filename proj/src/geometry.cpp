#include "qgt/geometry.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace qgt {

namespace {

constexpr double kPi = std::numbers::pi;

using Field = std::vector<double>;

struct FdPlan {
    int n1, n2;
    double d1, d2;
    bool per1, per2;
    StencilOrder order;

    int wrap(int i, int n) const { return ((i % n) + n) % n; }

    double get(const Field& f, int i1, int i2) const {
        return f[static_cast<size_t>(i1) * n2 + i2];
    }

    // First/second derivative of f along `axis` at (i1, i2). Centered 5-point
    // where it fits, 3-point otherwise, one-sided second-order at open edges
    // (edge values are later replaced by extrapolation of K itself).
    double d(const Field& f, int i1, int i2, int axis, int der) const {
        const int n = axis == 0 ? n1 : n2;
        const bool per = axis == 0 ? per1 : per2;
        const double dx = axis == 0 ? d1 : d2;
        const int i = axis == 0 ? i1 : i2;
        auto at = [&](int k) {
            const int idx = per ? wrap(k, n) : k;
            return axis == 0 ? get(f, idx, i2) : get(f, i1, idx);
        };
        const bool five = order == StencilOrder::five_point &&
                          (per || (i >= 2 && i <= n - 3));
        const bool three = per || (i >= 1 && i <= n - 2);
        if (der == 1) {
            if (five)
                return (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) /
                       (12.0 * dx);
            if (three) return (at(i + 1) - at(i - 1)) / (2.0 * dx);
            if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * dx);
            return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * dx);
        }
        if (five)
            return (-at(i + 2) + 16.0 * at(i + 1) - 30.0 * at(i) + 16.0 * at(i - 1) -
                    at(i - 2)) /
                   (12.0 * dx * dx);
        if (three) return (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (dx * dx);
        if (i == 0) return (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (dx * dx);
        return (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) /
               (dx * dx);
    }
};

double det3(const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Gaussian curvature per node (Brioschi), with quadratic extrapolation onto
// the edge rows of non-periodic axes.
Field gaussian_curvature_field(const MetricGrid& mg, StencilOrder order) {
    const int n1 = mg.spec.axis1.count, n2 = mg.spec.axis2.count;
    FdPlan fd{n1, n2,
              mg.spec.axis1.spacing(), mg.spec.axis2.spacing(),
              mg.spec.axis1.periodic, mg.spec.axis2.periodic, order};

    const Field& E = mg.g11;
    const Field& F = mg.g12;
    const Field& G = mg.g22;

    Field Fu(static_cast<size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            Fu[static_cast<size_t>(i) * n2 + j] = fd.d(F, i, j, 0, 1);

    Field K(static_cast<size_t>(n1) * n2, 0.0);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const size_t idx = static_cast<size_t>(i) * n2 + j;
            const double e = E[idx], f = F[idx], g = G[idx];
            const double det = e * g - f * f;
            const double Eu = fd.d(E, i, j, 0, 1), Ev = fd.d(E, i, j, 1, 1);
            const double Evv = fd.d(E, i, j, 1, 2);
            const double Fv = fd.d(F, i, j, 1, 1);
            const double Fuv = fd.d(Fu, i, j, 1, 1);
            const double Gu = fd.d(G, i, j, 0, 1), Gv = fd.d(G, i, j, 1, 1);
            const double Guu = fd.d(G, i, j, 0, 2);

            const double m1[3][3] = {
                {-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu[idx] - 0.5 * Ev},
                {Fv - 0.5 * Gu, e, f},
                {0.5 * Gv, f, g}};
            const double m2[3][3] = {
                {0.0, 0.5 * Ev, 0.5 * Gu}, {0.5 * Ev, e, f}, {0.5 * Gu, f, g}};
            K[idx] = (det3(m1) - det3(m2)) / (det * det);
        }
    }

    // Rows where the centered stencil does not fully fit take K by quadratic
    // extrapolation from the first rows where it does.
    const int margin = order == StencilOrder::five_point ? 2 : 1;
    auto extrapolate = [](double k1, double k2, double k3, int dist) {
        // quadratic through values at offsets 0, 1, 2 evaluated at -dist
        const double d = static_cast<double>(dist);
        return k1 * 0.5 * (d + 1.0) * (d + 2.0) - k2 * d * (d + 2.0) + k3 * 0.5 * d * (d + 1.0);
    };
    if (!mg.spec.axis1.periodic && n1 >= margin * 2 + 3) {
        for (int j = 0; j < n2; ++j) {
            auto k = [&](int i) { return K[static_cast<size_t>(i) * n2 + j]; };
            for (int e = 0; e < margin; ++e) {
                K[static_cast<size_t>(e) * n2 + j] =
                    extrapolate(k(margin), k(margin + 1), k(margin + 2), margin - e);
                K[static_cast<size_t>(n1 - 1 - e) * n2 + j] = extrapolate(
                    k(n1 - 1 - margin), k(n1 - 2 - margin), k(n1 - 3 - margin), margin - e);
            }
        }
    }
    if (!mg.spec.axis2.periodic && n2 >= margin * 2 + 3) {
        for (int i = 0; i < n1; ++i) {
            auto k = [&](int j) { return K[static_cast<size_t>(i) * n2 + j]; };
            for (int e = 0; e < margin; ++e) {
                K[static_cast<size_t>(i) * n2 + e] =
                    extrapolate(k(margin), k(margin + 1), k(margin + 2), margin - e);
                K[static_cast<size_t>(i) * n2 + (n2 - 1 - e)] = extrapolate(
                    k(n2 - 1 - margin), k(n2 - 2 - margin), k(n2 - 3 - margin), margin - e);
            }
        }
    }
    return K;
}

double euler_sum(const MetricGrid& mg, StencilOrder order) {
    const int n1 = mg.spec.axis1.count, n2 = mg.spec.axis2.count;
    if (n1 < 5 || n2 < 5) {
        throw GridTooCoarseError("euler_characteristic: need at least 5 nodes per axis");
    }
    for (int i = 1; i + 1 < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const size_t idx = static_cast<size_t>(i) * n2 + j;
            const double det = mg.g11[idx] * mg.g22[idx] - mg.g12[idx] * mg.g12[idx];
            if (det < 1e-12) {
                throw SingularMetricError(
                    "euler_characteristic: det g < 1e-12 on an interior node");
            }
        }
    }
    const Field K = gaussian_curvature_field(mg, order);
    const double w = mg.spec.axis1.spacing() * mg.spec.axis2.spacing();
    double chi = 0.0;
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const size_t idx = static_cast<size_t>(i) * n2 + j;
            const double det = mg.g11[idx] * mg.g22[idx] - mg.g12[idx] * mg.g12[idx];
            const double sdet = std::sqrt(std::max(0.0, det));
            chi += 2.0 * K[idx] * sdet; // R = 2K
        }
    }
    return chi * w / (4.0 * kPi);
}

MetricGrid subsample(const MetricGrid& mg) {
    MetricGrid out;
    const int n1 = mg.spec.axis1.count / 2, n2 = mg.spec.axis2.count / 2;
    out.spec = mg.spec;
    out.spec.axis1.count = n1;
    out.spec.axis2.count = n2;
    out.provenance = mg.provenance;
    out.g11.resize(static_cast<size_t>(n1) * n2);
    out.g12.resize(out.g11.size());
    out.g22.resize(out.g11.size());
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const size_t src = static_cast<size_t>(2 * i) * mg.spec.axis2.count + 2 * j;
            const size_t dst = static_cast<size_t>(i) * n2 + j;
            out.g11[dst] = mg.g11[src];
            out.g12[dst] = mg.g12[src];
            out.g22[dst] = mg.g22[src];
        }
    }
    return out;
}

CurvatureGrid subsample(const CurvatureGrid& cg) {
    CurvatureGrid out;
    const int n1 = cg.spec.axis1.count / 2, n2 = cg.spec.axis2.count / 2;
    out.spec = cg.spec;
    out.spec.axis1.count = n1;
    out.spec.axis2.count = n2;
    out.provenance = cg.provenance;
    out.f12.resize(static_cast<size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            out.f12[static_cast<size_t>(i) * n2 + j] =
                cg.f12[static_cast<size_t>(2 * i) * cg.spec.axis2.count + 2 * j];
    return out;
}

} // namespace

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::oracle: return "oracle";
        case Provenance::quench: return "quench";
        case Provenance::drive: return "drive";
        case Provenance::berry: return "berry";
    }
    return "?";
}

MetricGrid oracle_metric_grid(const HamiltonianFamily& family, const GridSpec& spec,
                              Band band, double tol) {
    MetricGrid mg;
    mg.spec = spec;
    mg.provenance = Provenance::oracle;
    mg.g11.resize(spec.size());
    mg.g12.resize(spec.size());
    mg.g22.resize(spec.size());
    for (int i = 0; i < spec.axis1.count; ++i) {
        for (int j = 0; j < spec.axis2.count; ++j) {
            const QGTValue q = bloch_qgt(family, spec.point(i, j), band, tol);
            const int idx = spec.index(i, j);
            mg.g11[idx] = q.g11;
            mg.g12[idx] = q.g12;
            mg.g22[idx] = q.g22;
        }
    }
    return mg;
}

CurvatureGrid oracle_curvature_grid(const HamiltonianFamily& family, const GridSpec& spec,
                                    Band band, double tol) {
    CurvatureGrid cg;
    cg.spec = spec;
    cg.provenance = Provenance::oracle;
    cg.f12.resize(spec.size());
    for (int i = 0; i < spec.axis1.count; ++i)
        for (int j = 0; j < spec.axis2.count; ++j)
            cg.f12[spec.index(i, j)] = bloch_qgt(family, spec.point(i, j), band, tol).f12;
    return cg;
}

InvariantResult euler_characteristic_diag(const MetricGrid& mg, StencilOrder order) {
    InvariantResult r;
    r.value = euler_sum(mg, order);
    if (mg.spec.axis1.count / 2 >= 8 && mg.spec.axis2.count / 2 >= 8) {
        r.refinement_delta = std::abs(r.value - euler_sum(subsample(mg), order));
    }
    return r;
}

double euler_characteristic(const MetricGrid& mg, StencilOrder order) {
    const InvariantResult r = euler_characteristic_diag(mg, order);
    if (r.refinement_delta > 0.05) {
        throw GridTooCoarseError("euler_characteristic: subgrid check moved by " +
                                 std::to_string(r.refinement_delta));
    }
    return r.value;
}

namespace {

double chern_sum(const CurvatureGrid& cg) {
    const double w = cg.spec.axis1.spacing() * cg.spec.axis2.spacing();
    double total = 0.0;
    for (double f : cg.f12) total += f;
    return total * w / (2.0 * kPi);
}

} // namespace

InvariantResult chern_number_diag(const CurvatureGrid& cg) {
    InvariantResult r;
    r.value = chern_sum(cg);
    if (cg.spec.axis1.count / 2 >= 8 && cg.spec.axis2.count / 2 >= 8) {
        r.refinement_delta = std::abs(r.value - chern_sum(subsample(cg)));
    }
    return r;
}

double chern_number(const CurvatureGrid& cg) {
    const InvariantResult r = chern_number_diag(cg);
    if (r.refinement_delta > 0.05) {
        throw GridTooCoarseError("chern_number: subgrid check moved by " +
                                 std::to_string(r.refinement_delta));
    }
    return r.value;
}

int chern_plaquette(const HamiltonianFamily& family, const GridSpec& spec, Band band,
                    double tol) {
    const int n1 = spec.axis1.count, n2 = spec.axis2.count;
    std::vector<StateVector> states(static_cast<size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            states[spec.index(i, j)] = eigensystem(family, spec.point(i, j), tol).state(band);

    const int p1 = spec.axis1.periodic ? n1 : n1 - 1;
    const int p2 = spec.axis2.periodic ? n2 : n2 - 1;
    double total = 0.0;
    double max_phase = 0.0;
    for (int i = 0; i < p1; ++i) {
        const int i1 = (i + 1) % n1;
        for (int j = 0; j < p2; ++j) {
            const int j1 = (j + 1) % n2;
            const StateVector& a = states[spec.index(i, j)];
            const StateVector& b = states[spec.index(i1, j)];
            const StateVector& c = states[spec.index(i1, j1)];
            const StateVector& d = states[spec.index(i, j1)];
            const std::complex<double> loop = a.dot(b) * b.dot(c) * c.dot(d) * d.dot(a);
            const double phase = std::arg(loop);
            max_phase = std::max(max_phase, std::abs(phase));
            total += phase;
        }
    }
    if (max_phase > 0.99 * kPi) {
        throw GridTooCoarseError("chern_plaquette: plaquette phase near the branch cut");
    }
    return static_cast<int>(std::llround(total / (2.0 * kPi)));
}

TrsEulerResult euler_trs_reduced(double h, double alpha, int kx_samples) {
    if (std::abs(std::abs(h) - 1.0) < 1e-12) {
        throw DegeneratePointError("euler_trs_reduced: gap closes at |h| = 1");
    }
    TrsEulerResult r;
    r.near_transition = std::abs(std::abs(h) - 1.0) < 0.1;
    const double dk = 2.0 * kPi / kx_samples;
    double chi = 0.0, chi_abs = 0.0;
    for (int i = 0; i < kx_samples; ++i) {
        const double kx = i * dk; // uniform sum over the period == trapezoid
        const double v = trs_sqrt_det_g_closed_form(h, alpha, kx);
        const double sign = (1.0 + h * std::cos(kx)) < 0.0 ? -1.0 : 1.0;
        chi += sign * v;
        chi_abs += v;
    }
    r.chi = 4.0 * chi * dk;
    r.chi_unsigned = 4.0 * chi_abs * dk;
    return r;
}

TrsEulerResult euler_trs_reduced(double h, const std::vector<double>& kx_nodes,
                                 const std::vector<double>& sqrt_det_g) {
    if (std::abs(std::abs(h) - 1.0) < 1e-12) {
        throw DegeneratePointError("euler_trs_reduced: gap closes at |h| = 1");
    }
    if (kx_nodes.size() != sqrt_det_g.size() || kx_nodes.size() < 2) {
        throw ConfigError("euler_trs_reduced: node/value size mismatch");
    }
    TrsEulerResult r;
    r.near_transition = std::abs(std::abs(h) - 1.0) < 0.1;
    const double dk = kx_nodes[1] - kx_nodes[0];
    double chi = 0.0, chi_abs = 0.0;
    for (size_t i = 0; i < kx_nodes.size(); ++i) {
        const double v = std::abs(sqrt_det_g[i]);
        const double sign = (1.0 + h * std::cos(kx_nodes[i])) < 0.0 ? -1.0 : 1.0;
        chi += sign * v;
        chi_abs += v;
    }
    r.chi = 4.0 * chi * dk;
    r.chi_unsigned = 4.0 * chi_abs * dk;
    return r;
}

std::vector<double> sqrt_det_g_rows(const MetricGrid& mg) {
    const int n1 = mg.spec.axis1.count, n2 = mg.spec.axis2.count;
    std::vector<double> rows(n1, 0.0);
    for (int i = 0; i < n1; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n2; ++j) {
            const size_t idx = static_cast<size_t>(i) * n2 + j;
            const double det = mg.g11[idx] * mg.g22[idx] - mg.g12[idx] * mg.g12[idx];
            acc += std::sqrt(std::max(0.0, det));
        }
        rows[i] = acc / n2;
    }
    return rows;
}

} // namespace qgt
