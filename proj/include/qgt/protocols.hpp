#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qgt/dynamics.hpp"
#include "qgt/oracle.hpp"

namespace qgt {

// Projective-tomography statistics. shots == nullopt means exact expectation
// values; finite shots draw binomial counts from a seeded generator.
struct ShotModel {
    std::optional<long> shots;
    std::uint64_t seed = 0;

    static ShotModel exact() { return {}; }
    static ShotModel finite(long n, std::uint64_t seed) { return {n, seed}; }
};

// Deterministic per-task stream derived from (seed, tag); sampling a given
// task never depends on scheduling order.
double sample_probability(double p, const ShotModel& shots, std::uint64_t tag);

enum class QuenchMode { finite_ramp, instantaneous };

struct QuenchConfig {
    double delta_lambda = std::numbers::pi / 16.0;
    double ramp_time = std::numbers::pi / 10.0; // 5 ns at the angular convention
    QuenchMode mode = QuenchMode::finite_ramp;
    Band band = Band::ground;
    ShotModel shots;
    double dt = 0.0; // 0 -> default_time_step
};

struct QuenchResult {
    double g11 = 0.0;
    double g22 = 0.0;
    double g12 = 0.0;
    // Raw transition probabilities for the three probes (e1, e2, e1+e2) and
    // the instantaneous predictions they are checked against.
    double p_probe[3] = {0.0, 0.0, 0.0};
    double p_instant[3] = {0.0, 0.0, 0.0};
    bool sudden_approximation_warning = false;
};

// Three probes lambda(t) = p0 + (t/T) dl e_eta, eta in {e1, e2, e1+e2};
// transition probability against the end-point eigenbasis, then
//   g11 = P11/dl^2, g22 = P22/dl^2, g12 = (P12 - P11 - P22)/(2 dl^2).
QuenchResult quench_metric(const HamiltonianFamily& family, ParameterPoint p0,
                           const QuenchConfig& cfg);

enum class DriveNormalization { per_omega, at_gap };

struct DriveConfig {
    double relative_amplitude = 0.1; // E/omega
    double omega_min = 0.5;
    double omega_max = 3.5;
    int omega_count = 61;
    double t_meas = 4.0 * std::numbers::pi; // 200 ns at the angular convention
    Band band = Band::ground;
    DriveNormalization normalization = DriveNormalization::per_omega;
    ShotModel shots;
    double dt = 0.0;
    int threads = 1;
};

struct DriveResult {
    double g11 = 0.0;
    double g22 = 0.0;
    double g12 = 0.0;
    std::vector<double> omegas;
    // Excitation rates for the four modulations: e1, e2, e1+e2, e1-e2.
    std::vector<double> rate_1, rate_2, rate_plus, rate_minus;
};

// Weak sinusoidal modulation lambda_mu(t) = lambda_mu0 + 2(E/w) cos(w t);
// rate Gamma(w) = n_+(w, t_meas)/t_meas; frequency-integrated, normalized
// excitation gives the metric. Cross term from the +/- simultaneous drives:
// g12 = (I+ - I-)/4.
DriveResult drive_metric(const HamiltonianFamily& family, ParameterPoint p0,
                         const DriveConfig& cfg);

// n_+(w, t) against the base-point eigenbasis on a (omega x time) grid.
std::vector<std::vector<double>> drive_excitation_map(const HamiltonianFamily& family,
                                                      ParameterPoint p0,
                                                      const DriveConfig& cfg,
                                                      const std::vector<double>& times);

enum class RampEnvelope { linear, sin_squared };

struct RampConfig {
    int sweep_axis = 0;        // ramped parameter index
    double from = 0.0;
    double to = std::numbers::pi;
    double fixed_other = 0.0;  // the transverse parameter stays here
    double ramp_duration = 0.0; // 0 -> auto (targets ~1% peak excitation)
    RampEnvelope envelope = RampEnvelope::sin_squared;
    Band band = Band::ground;
    double dt = 0.0;
    double max_excitation = 0.10; // AdiabaticityViolation threshold
};

struct BerrySample {
    double lambda = 0.0; // ramped coordinate
    double f = 0.0;      // curvature estimate F_{mu nu}
};

struct BerryResult {
    std::vector<BerrySample> samples;
    double peak_excitation = 0.0;
    double velocity = 0.0; // peak ramp velocity used
};

// Quasi-adiabatic ramp of one parameter; the transverse generalized force
// minus its eigenstate value, divided by the velocity, samples the Berry
// curvature along the path. Ends with |v| below 5% of peak are dropped and
// raw deltas are boxcar-averaged over one local gap period.
BerryResult berry_response(const HamiltonianFamily& family, const RampConfig& ramp,
                           int measure_axis);

// Peak sin^2-envelope velocity for a target excitation fraction, from a scan
// of gap and transition matrix element along the path.
double auto_ramp_duration(const HamiltonianFamily& family, const RampConfig& ramp,
                          double target_excitation = 0.002);

// Trapezoid integral of interpolated berry samples over [from, to].
double integrate_berry_samples(const BerryResult& r, double from, double to);

} // namespace qgt
