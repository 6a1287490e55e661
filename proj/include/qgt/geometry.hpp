#pragma once

#include <string>
#include <vector>

#include "qgt/oracle.hpp"

namespace qgt {

enum class Sampling { midpoint, open_node };

// Uniform axis of `count` cells on [lo, hi]. Midpoint sampling places nodes
// at cell centers; open_node at left edges (natural for periodic axes).
struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    int count = 8;
    Sampling sampling = Sampling::midpoint;
    bool periodic = false;

    double spacing() const { return (hi - lo) / count; }
    double node(int i) const {
        return lo + (i + (sampling == Sampling::midpoint ? 0.5 : 0.0)) * spacing();
    }
};

struct GridSpec {
    GridAxis axis1;
    GridAxis axis2;

    int size() const { return axis1.count * axis2.count; }
    int index(int i1, int i2) const { return i1 * axis2.count + i2; }
    ParameterPoint point(int i1, int i2) const {
        return {axis1.node(i1), axis2.node(i2)};
    }
};

enum class Provenance { oracle, quench, drive, berry };

std::string to_string(Provenance p);

// Sampled metric field; g12 stored once (symmetric).
struct MetricGrid {
    GridSpec spec;
    std::vector<double> g11, g12, g22;
    Provenance provenance = Provenance::oracle;
};

struct CurvatureGrid {
    GridSpec spec;
    std::vector<double> f12;
    Provenance provenance = Provenance::oracle;
};

MetricGrid oracle_metric_grid(const HamiltonianFamily& family, const GridSpec& spec,
                              Band band, double tol = kDegeneracyTolerance);
CurvatureGrid oracle_curvature_grid(const HamiltonianFamily& family, const GridSpec& spec,
                                    Band band, double tol = kDegeneracyTolerance);

enum class StencilOrder { three_point, five_point };

struct InvariantResult {
    double value = 0.0;
    double refinement_delta = 0.0; // |value - value on the 2x-coarser subgrid|
};

// Euler characteristic (1/4pi) sum R sqrt(det g) dA with R = 2K, K per node
// from the Brioschi finite-difference formula. Edge rows of non-periodic axes
// take K by quadratic extrapolation from the interior (one-sided stencils are
// unusable next to coordinate poles where det g -> 0).
InvariantResult euler_characteristic_diag(const MetricGrid& mg,
                                          StencilOrder order = StencilOrder::five_point);
// Throws GridTooCoarseError when the subgrid check moves by more than 0.05.
double euler_characteristic(const MetricGrid& mg,
                            StencilOrder order = StencilOrder::five_point);

InvariantResult chern_number_diag(const CurvatureGrid& cg);
double chern_number(const CurvatureGrid& cg);

// Discretized Berry-phase plaquette field summed and rounded; exact integer
// on admissible grids.
int chern_plaquette(const HamiltonianFamily& family, const GridSpec& spec, Band band,
                    double tol = kDegeneracyTolerance);

struct TrsEulerResult {
    double chi = 0.0;          // fold-orientation-signed integral (the invariant)
    double chi_unsigned = 0.0; // literal integral of the non-negative sqrt(det g)
    bool near_transition = false;
};

// chi = 4 * integral over kx in [0, 2pi] of sgn(1 + h cos kx) * sqrt(det g).
// sqrt(det g) is ky-independent for this family. The orientation sign makes
// the result the Gauss-map degree: exactly 4 for |h| < 1, 0 for |h| > 1.
TrsEulerResult euler_trs_reduced(double h, double alpha, int kx_samples = 1024);

// Same integration from measured data: uniformly spaced kx nodes covering one
// period and the (non-negative) per-kx sqrt(det g) row.
TrsEulerResult euler_trs_reduced(double h, const std::vector<double>& kx_nodes,
                                 const std::vector<double>& sqrt_det_g);

// Per-kx-row mean of sqrt(det g) over the ky axis of a metric grid.
std::vector<double> sqrt_det_g_rows(const MetricGrid& mg);

} // namespace qgt
