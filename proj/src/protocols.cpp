#include "qgt/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "qgt/parallel.hpp"

namespace qgt {

namespace {

constexpr double kPi = std::numbers::pi;

struct SplitMix64 {
    std::uint64_t s;
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace

double sample_probability(double p, const ShotModel& shots, std::uint64_t tag) {
    if (!shots.shots) return p;
    const long n = *shots.shots;
    if (n < 1) throw ConfigError("ShotModel: shots must be >= 1 when finite");
    SplitMix64 rng{shots.seed ^ (0x9E3779B97F4A7C15ULL * (tag + 1))};
    long hits = 0;
    for (long i = 0; i < n; ++i) {
        if (rng.u01() < p) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

QuenchResult quench_metric(const HamiltonianFamily& family, ParameterPoint p0,
                           const QuenchConfig& cfg) {
    if (!(cfg.delta_lambda > 0.0)) throw ConfigError("quench: delta_lambda must be > 0");
    if (cfg.mode == QuenchMode::finite_ramp && !(cfg.ramp_time > 0.0)) {
        throw ConfigError("quench: ramp_time must be > 0 in finite_ramp mode");
    }
    const double dl = cfg.delta_lambda;
    const double directions[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};

    const StateVector psi0 = eigensystem(family, p0).state(cfg.band);

    QuenchResult out;
    for (int k = 0; k < 3; ++k) {
        const ParameterPoint pk{p0.lambda1 + dl * directions[k][0],
                                p0.lambda2 + dl * directions[k][1]};
        out.p_instant[k] = transition_probability(psi0, family, pk, cfg.band);
        double p = out.p_instant[k];
        if (cfg.mode == QuenchMode::finite_ramp) {
            const Schedule ramp{LinearRamp{p0, pk, cfg.ramp_time}};
            const double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(family, ramp);
            const StateVector psi = evolve_final(family, ramp, psi0, dt);
            p = transition_probability(psi, family, pk, cfg.band);
        }
        out.p_probe[k] = sample_probability(p, cfg.shots, static_cast<std::uint64_t>(k));
        if (cfg.mode == QuenchMode::finite_ramp && out.p_instant[k] > 1e-12 &&
            out.p_probe[k] < 0.1 * out.p_instant[k]) {
            out.sudden_approximation_warning = true;
        }
    }
    const double inv = 1.0 / (dl * dl);
    out.g11 = out.p_probe[0] * inv;
    out.g22 = out.p_probe[1] * inv;
    out.g12 = 0.5 * (out.p_probe[2] - out.p_probe[0] - out.p_probe[1]) * inv;
    return out;
}

namespace {

// Excitation rates for one modulation direction over the frequency grid.
std::vector<double> drive_rates(const HamiltonianFamily& family, ParameterPoint p0,
                                const DriveConfig& cfg, double ax1, double ax2,
                                std::uint64_t tag_base) {
    const StateVector psi0 = eigensystem(family, p0).state(cfg.band);
    const double dw = (cfg.omega_max - cfg.omega_min) / (cfg.omega_count - 1);
    return parallel_map<double>(cfg.omega_count, cfg.threads, [&](int i) {
        const double omega = cfg.omega_min + i * dw;
        const Schedule mod{CosineModulation{p0, ax1, ax2, 2.0 * cfg.relative_amplitude,
                                            omega, cfg.t_meas}};
        const double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(family, mod);
        const StateVector psi = evolve_final(family, mod, psi0, dt);
        double n_plus = transition_probability(psi, family, p0, cfg.band);
        n_plus = sample_probability(n_plus, cfg.shots,
                                    tag_base + static_cast<std::uint64_t>(i));
        return n_plus / cfg.t_meas;
    });
}

// Trapezoid of Gamma(w)/(2 pi E(w)^2) over the window.
double normalized_rate_integral(const std::vector<double>& rates, const DriveConfig& cfg,
                                double gap) {
    const double dw = (cfg.omega_max - cfg.omega_min) / (cfg.omega_count - 1);
    double acc = 0.0;
    for (int i = 0; i < cfg.omega_count; ++i) {
        const double omega = cfg.omega_min + i * dw;
        const double e = cfg.normalization == DriveNormalization::per_omega
                             ? cfg.relative_amplitude * omega
                             : cfg.relative_amplitude * gap;
        const double weight = (i == 0 || i == cfg.omega_count - 1) ? 0.5 : 1.0;
        acc += weight * rates[static_cast<size_t>(i)] / (2.0 * kPi * e * e);
    }
    return acc * dw;
}

void check_window(const std::vector<double>& rates, const char* label) {
    double peak = 0.0;
    for (double r : rates) peak = std::max(peak, r);
    if (peak <= 0.0) return;
    if (rates.front() > 0.05 * peak || rates.back() > 0.05 * peak) {
        throw WindowTooNarrowError(std::string("drive: edge rate above 5% of peak (") +
                                   label + ")");
    }
}

} // namespace

DriveResult drive_metric(const HamiltonianFamily& family, ParameterPoint p0,
                         const DriveConfig& cfg) {
    if (!(cfg.relative_amplitude > 0.0 && cfg.relative_amplitude < 1.0)) {
        throw ConfigError("drive: relative_amplitude must be in (0, 1)");
    }
    if (!(cfg.omega_min < cfg.omega_max)) throw ConfigError("drive: empty frequency window");
    if (cfg.omega_count < 16) throw ConfigError("drive: omega_count must be >= 16");
    const double gap = family.control_vector(p0).norm();
    if (!(cfg.omega_min < gap && gap < cfg.omega_max)) {
        throw WindowTooNarrowError("drive: frequency window does not bracket the gap");
    }

    DriveResult out;
    out.omegas.resize(static_cast<size_t>(cfg.omega_count));
    const double dw = (cfg.omega_max - cfg.omega_min) / (cfg.omega_count - 1);
    for (int i = 0; i < cfg.omega_count; ++i) out.omegas[static_cast<size_t>(i)] = cfg.omega_min + i * dw;

    out.rate_1 = drive_rates(family, p0, cfg, 1.0, 0.0, 1ULL << 40);
    out.rate_2 = drive_rates(family, p0, cfg, 0.0, 1.0, 2ULL << 40);
    out.rate_plus = drive_rates(family, p0, cfg, 1.0, 1.0, 3ULL << 40);
    out.rate_minus = drive_rates(family, p0, cfg, 1.0, -1.0, 4ULL << 40);
    check_window(out.rate_1, "axis 1");
    check_window(out.rate_2, "axis 2");

    out.g11 = normalized_rate_integral(out.rate_1, cfg, gap);
    out.g22 = normalized_rate_integral(out.rate_2, cfg, gap);
    const double i_plus = normalized_rate_integral(out.rate_plus, cfg, gap);
    const double i_minus = normalized_rate_integral(out.rate_minus, cfg, gap);
    out.g12 = 0.25 * (i_plus - i_minus);
    return out;
}

std::vector<std::vector<double>> drive_excitation_map(const HamiltonianFamily& family,
                                                      ParameterPoint p0,
                                                      const DriveConfig& cfg,
                                                      const std::vector<double>& times) {
    const StateVector psi0 = eigensystem(family, p0).state(cfg.band);
    const StateVector ref = psi0;
    const double dw = (cfg.omega_max - cfg.omega_min) / (cfg.omega_count - 1);
    return parallel_map<std::vector<double>>(cfg.omega_count, cfg.threads, [&](int i) {
        const double omega = cfg.omega_min + i * dw;
        const CosineModulation mod{p0, 1.0, 0.0, 2.0 * cfg.relative_amplitude, omega,
                                   cfg.t_meas};
        const Schedule schedule{mod};
        const double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(family, schedule);
        std::vector<double> row(times.size(), 0.0);
        size_t next = 0;
        evolve_visit(
            family, [&](double t) { return schedule.at(t); }, cfg.t_meas, psi0, dt,
            [&](long, double t, const StateVector& psi) {
                while (next < times.size() && t >= times[next] - 1e-12) {
                    row[next] = std::clamp(1.0 - std::norm(ref.dot(psi)), 0.0, 1.0);
                    ++next;
                }
            });
        while (next < times.size()) { // times at/past t_meas
            row[next] = row.empty() ? 0.0 : row[next > 0 ? next - 1 : 0];
            ++next;
        }
        return row;
    });
}

namespace {

struct RampPath {
    const RampConfig* cfg;
    double length; // to - from (signed)

    double s(double t) const {
        const double x = std::clamp(t / cfg->ramp_duration, 0.0, 1.0);
        if (cfg->envelope == RampEnvelope::linear) return x;
        return x - std::sin(2.0 * kPi * x) / (2.0 * kPi);
    }
    double velocity(double t) const {
        const double x = std::clamp(t / cfg->ramp_duration, 0.0, 1.0);
        const double ds =
            cfg->envelope == RampEnvelope::linear
                ? 1.0
                : 2.0 * std::pow(std::sin(kPi * x), 2);
        return ds * length / cfg->ramp_duration;
    }
    ParameterPoint at(double t) const {
        const double lam = cfg->from + s(t) * length;
        if (cfg->sweep_axis == 0) return {lam, cfg->fixed_other};
        return {cfg->fixed_other, lam};
    }
};

} // namespace

double auto_ramp_duration(const HamiltonianFamily& family, const RampConfig& ramp,
                          double target_excitation) {
    RampConfig probe = ramp;
    probe.ramp_duration = 1.0;
    const RampPath path{&probe, ramp.to - ramp.from};
    // v_max = sqrt(target) * min(gap^2 / |<u+|dH_mu|u->|) along the path
    double vmax = 1e9;
    const int samples = 256;
    for (int i = 0; i <= samples; ++i) {
        const ParameterPoint p = path.at(static_cast<double>(i) / samples);
        const EigenSystem es = eigensystem(family, p);
        const auto grad = family.control_gradient(p);
        const Eigen::Matrix2cd dH = pauli_combination(grad[ramp.sweep_axis]);
        const double m = std::abs(es.state_plus.dot(dH * es.state_minus));
        const double gap = es.gap();
        if (m > 1e-12) vmax = std::min(vmax, std::sqrt(target_excitation) * gap * gap / m);
    }
    const double dist = std::abs(ramp.to - ramp.from);
    const double factor = ramp.envelope == RampEnvelope::sin_squared ? 2.0 : 1.0;
    return factor * dist / vmax;
}

BerryResult berry_response(const HamiltonianFamily& family, const RampConfig& ramp,
                           int measure_axis) {
    RampConfig cfg = ramp;
    if (!(cfg.ramp_duration > 0.0)) cfg.ramp_duration = auto_ramp_duration(family, ramp);
    const RampPath path{&cfg, cfg.to - cfg.from};

    double omega_eff = 1e-6, min_gap = 1e9;
    for (int i = 0; i <= 128; ++i) {
        const double r =
            family.control_vector(path.at(cfg.ramp_duration * i / 128.0)).norm();
        omega_eff = std::max(omega_eff, r);
        min_gap = std::min(min_gap, r);
    }
    const double dt =
        cfg.dt > 0.0 ? cfg.dt : std::min(0.005 / omega_eff, cfg.ramp_duration / 2000.0);

    // Sample spacing: >= 24 points per period of the fastest gap.
    const double sample_dt = (2.0 * kPi / omega_eff) / 24.0;
    const long stride = std::max(1L, static_cast<long>(sample_dt / dt));

    const StateVector psi0 = eigensystem(family, path.at(0.0)).state(cfg.band);
    const double band_sign = cfg.band == Band::ground ? 1.0 : -1.0;

    std::vector<double> ts, lams, vs, dms;
    double peak_excitation = 0.0;
    evolve_visit(
        family, [&](double t) { return path.at(t); }, cfg.ramp_duration, psi0, dt,
        [&](long i, double t, const StateVector& psi) {
            if (i % stride != 0) return;
            const ParameterPoint p = path.at(t);
            const ControlVector w = family.control_vector(p);
            const double r = w.norm();
            const auto grad = family.control_gradient(p);
            const ControlVector& dwn = grad[measure_axis];
            const Eigen::Matrix2cd dH = pauli_combination(dwn);
            // Hellmann-Feynman eigenstate value of -<dH>.
            const double static_force =
                band_sign * 0.5 * (w.x * dwn.x + w.y * dwn.y + w.z * dwn.z) / r;
            const double force = -expectation(psi, dH);
            const double n_up =
                std::clamp(1.0 - std::norm(eigensystem(w).state(cfg.band).dot(psi)), 0.0, 1.0);
            peak_excitation = std::max(peak_excitation, n_up);
            ts.push_back(t);
            lams.push_back(cfg.sweep_axis == 0 ? p.lambda1 : p.lambda2);
            vs.push_back(path.velocity(t));
            dms.push_back(force - static_force);
        });

    if (peak_excitation > cfg.max_excitation) {
        throw AdiabaticityViolationError(
            "berry_response: excited population " + std::to_string(peak_excitation) +
            " breaks the linear-response regime");
    }

    double v_peak = 0.0;
    for (double v : vs) v_peak = std::max(v_peak, std::abs(v));

    BerryResult out;
    out.peak_excitation = peak_excitation;
    out.velocity = v_peak;

    // Boxcar over one local gap period, then divide averaged delta by
    // averaged velocity. Ends with |v| < 5% of peak are dropped.
    const double half_window = kPi / std::max(min_gap, 1e-6);
    size_t lo = 0, hi = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        if (std::abs(vs[i]) < 0.05 * v_peak) continue;
        while (lo < ts.size() && ts[lo] < ts[i] - half_window) ++lo;
        while (hi < ts.size() && ts[hi] <= ts[i] + half_window) ++hi;
        double dm = 0.0, v = 0.0;
        for (size_t k = lo; k < hi; ++k) {
            dm += dms[k];
            v += vs[k];
        }
        if (std::abs(v) < 1e-300) continue;
        out.samples.push_back({lams[i], dm / v});
    }
    return out;
}

double integrate_berry_samples(const BerryResult& r, double from, double to) {
    std::vector<BerrySample> s = r.samples;
    std::sort(s.begin(), s.end(),
              [](const BerrySample& a, const BerrySample& b) { return a.lambda < b.lambda; });
    double acc = 0.0;
    for (size_t i = 1; i < s.size(); ++i) {
        const double a = std::clamp(s[i - 1].lambda, std::min(from, to), std::max(from, to));
        const double b = std::clamp(s[i].lambda, std::min(from, to), std::max(from, to));
        acc += 0.5 * (s[i - 1].f + s[i].f) * (b - a);
    }
    return acc;
}

} // namespace qgt
