// Acceptance battery: one line per criterion, nonzero exit on any failure.
// Grids, amplitudes and tolerances are pinned here; nothing is calibrated at
// run time.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qgt/experiments.hpp"
#include "qgt/parallel.hpp"

using namespace qgt;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %s (%s)\n", pass ? "PASS" : "FAIL", number, label.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

GridSpec sphere_spec(int n) {
    GridSpec spec;
    spec.axis1 = {0.0, kPi, n, Sampling::midpoint, false};
    spec.axis2 = {0.0, 2.0 * kPi, n, Sampling::open_node, true};
    return spec;
}

// ---------------------------------------------------------------- criterion 1
void criterion_three_routes() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    auto sample = [&](const HamiltonianFamily& fam, bool sphere_domain) {
        for (;;) {
            ParameterPoint p{sphere_domain ? 0.1 + u01(rng) * (kPi - 0.2)
                                           : u01(rng) * 2.0 * kPi,
                             u01(rng) * 2.0 * kPi};
            if (fam.control_vector(p).norm() > 0.05) return p;
        }
    };
    auto run_family = [&](const HamiltonianFamily& fam, bool sphere_domain, int count) {
        for (int i = 0; i < count; ++i) {
            const ParameterPoint p = sample(fam, sphere_domain);
            for (Band b : {Band::ground, Band::excited}) {
                const QGTValue qs = qgt_spectral(fam, p, b);
                const QGTValue qb = bloch_qgt(fam, p, b);
                const MetricEstimate qf = metric_overlap_fd(fam, p, b, 1e-4);
                worst = std::max({worst, std::abs(qs.g11 - qb.g11), std::abs(qs.g22 - qb.g22),
                                  std::abs(qs.g12 - qb.g12), std::abs(qs.f12 - qb.f12),
                                  std::abs(qf.g11 - qs.g11), std::abs(qf.g22 - qs.g22),
                                  std::abs(qf.g12 - qs.g12)});
            }
        }
    };
    run_family(HamiltonianFamily::bloch_sphere(), true, 200);
    for (double h : {0.5, -0.5, 2.0, -1.5}) {
        run_family(HamiltonianFamily::trs_band(h, 0.5), false, 50);
    }
    report(1, "oracle three-route agreement, 200 points per family and band",
           worst < 1e-5, fmt("max componentwise diff %.2e, bound 1e-5", worst));
}

// ---------------------------------------------------------------- criterion 2
void criterion_closed_forms() {
    const auto sphere = HamiltonianFamily::bloch_sphere();
    double worst_metric = 0.0, worst_monopole = 0.0;
    for (int i = 1; i < 400; ++i) {
        const double theta = i * kPi / 400.0;
        const double phi = 0.37 * i;
        const QGTValue q = qgt_spectral(sphere, {theta, phi}, Band::ground);
        worst_metric = std::max({worst_metric, std::abs(q.g11 - 0.25),
                                 std::abs(q.g22 - std::pow(std::sin(theta), 2) / 4.0),
                                 std::abs(q.g12)});
        const QGTValue e = bloch_qgt(sphere, {theta, phi}, Band::excited);
        worst_monopole = std::max(worst_monopole, std::abs(e.f12 - 2.0 * e.sqrt_det_g()));
    }
    const bool pass = worst_metric < 1e-9 && worst_monopole < 1e-9;
    report(2, "sphere closed-form metric and F = 2 sqrt(det g)", pass,
           fmt("metric dev %.2e, monopole dev %.2e, bound 1e-9", worst_metric, worst_monopole));
}

// ------------------------------------------------------------- criteria 3, 10
ScenarioResult fig2_result_default(int threads) {
    ScenarioConfig cfg = scenario_defaults("fig2_quench_sphere");
    cfg.threads = threads;
    return run_scenario(cfg);
}

void criterion_quench(const ScenarioResult& fig2) {
    double worst_err = 0.0;
    for (const auto& table : fig2.tables) {
        for (const auto& row : table.rows) {
            worst_err = std::max({worst_err, std::abs(row[1] - row[4]),
                                  std::abs(row[2] - row[5]), std::abs(row[3] - row[6])});
        }
    }
    const double chi_g = fig2.summary["bands"]["ground"]["chi"].get<double>();
    const double chi_e = fig2.summary["bands"]["excited"]["chi"].get<double>();
    const bool pass = worst_err <= 0.015 && std::abs(chi_g - 2.0) <= 0.1 &&
                      std::abs(chi_e - 2.0) <= 0.1;
    report(3, "quench sweep: metric error and Euler number, both bands", pass,
           fmt("max |g_est - g| %.4f <= 0.015, chi %.3f / %.3f = 2 +- 0.1", worst_err,
               chi_g, chi_e));
}

// ---------------------------------------------------------------- criterion 4
void criterion_drive(int threads) {
    ScenarioConfig cfg = scenario_defaults("fig3_drive_sphere");
    cfg.threads = threads;
    const ScenarioResult fig3 = run_scenario(cfg);
    const double gap = fig3.summary["gap"].get<double>();
    const double ridge = fig3.summary["ridge_omega"].get<double>();
    const double gtt = fig3.summary["g_tt_mid_theta"].get<double>();
    const double chi = fig3.summary["bands"]["ground"]["chi"].get<double>();
    const bool pass = std::abs(ridge - gap) <= 0.05 * gap &&
                      std::abs(gtt - 0.25) <= 0.25 * 0.25 &&
                      std::abs(chi - 2.0) <= 0.25 * 2.0;
    report(4, "drive sweep: resonance ridge, g_tt at pi/2, Euler number", pass,
           fmt("ridge %.3f (gap +- 5%%), g_tt %.4f (0.25 +- 25%%), chi %.3f (2 +- 25%%)",
               ridge, gtt, chi));
}

// ---------------------------------------------------------------- criterion 5
void criterion_berry_sphere() {
    const auto sphere = HamiltonianFamily::bloch_sphere();
    RampConfig rc;
    rc.from = 0.0;
    rc.to = kPi;
    rc.fixed_other = 0.0;
    const BerryResult ground = berry_response(sphere, rc, 1);
    rc.band = Band::excited;
    const BerryResult excited = berry_response(sphere, rc, 1);
    const double c_g = integrate_berry_samples(ground, 0.0, kPi);
    const double c_e = integrate_berry_samples(excited, 0.0, kPi);
    const double exc = std::max(ground.peak_excitation, excited.peak_excitation);
    const bool pass = std::abs(std::abs(c_g) - 1.0) <= 0.1 &&
                      std::abs(std::abs(c_e) - 1.0) <= 0.1 && exc < 0.10;
    report(5, "dynamical-response Chern numbers, both bands", pass,
           fmt("|C| %.3f / %.3f = 1 +- 0.1, peak excitation %.3f < 0.1", std::abs(c_g),
               std::abs(c_e), exc));
}

// ---------------------------------------------------------------- criterion 6
void criterion_euler_integrator() {
    const MetricGrid mg =
        oracle_metric_grid(HamiltonianFamily::bloch_sphere(), sphere_spec(200), Band::ground);
    const double chi_sphere = euler_characteristic(mg);

    MetricGrid flat;
    flat.spec.axis1 = {0.0, 2.0 * kPi, 64, Sampling::open_node, true};
    flat.spec.axis2 = {0.0, 2.0 * kPi, 64, Sampling::open_node, true};
    flat.g11.assign(flat.spec.size(), 1.0);
    flat.g12.assign(flat.spec.size(), 0.0);
    flat.g22.assign(flat.spec.size(), 1.0);
    const double chi_flat = euler_characteristic(flat);

    const bool pass = std::abs(chi_sphere - 2.0) <= 1e-3 && std::abs(chi_flat) <= 1e-12;
    report(6, "Gauss-Bonnet integrator: sphere 200x200 and flat torus", pass,
           fmt("sphere chi-2 = %.2e <= 1e-3, flat chi = %.2e <= 1e-12", chi_sphere - 2.0,
               chi_flat));
}

// ------------------------------------------------------------- criteria 7, 8
void criteria_trs_transition(int threads) {
    ScenarioConfig cfg = scenario_defaults("fig4_trs_transition");
    cfg.threads = threads;
    cfg.h_values = {-2.0, -1.75, -1.5, -1.25, -1.0, -0.75, -0.5, -0.25,
                    0.0,  0.25,  0.5,  0.75,  1.0,  1.25,  1.5,  1.75, 2.0};
    const ScenarioResult fig4 = run_scenario(cfg);
    const auto& inv = fig4.tables[1];

    double worst_plateau = 0.0, worst_trivial = 0.0;
    double worst_meas_plateau = 0.0, worst_meas_trivial = 0.0;
    double worst_chern = 0.0;
    bool plaquette_zero = true;
    for (const auto& row : inv.rows) {
        const double h = row[0], chi_o = row[1], chi_m = row[2];
        const double chern_o = row[4], chern_p = row[5];
        if (std::abs(h) <= 0.75) {
            worst_plateau = std::max(worst_plateau, std::abs(chi_o - 4.0));
            worst_meas_plateau = std::max(worst_meas_plateau, std::abs(chi_m - 4.0));
        }
        if (std::abs(h) >= 1.25) {
            worst_trivial = std::max(worst_trivial, std::abs(chi_o));
            worst_meas_trivial = std::max(worst_meas_trivial, std::abs(chi_m));
        }
        worst_chern = std::max(worst_chern, std::abs(chern_o));
        if (!std::isnan(chern_p) && chern_p != 0.0) plaquette_zero = false;
        if (std::isnan(chern_p) && std::abs(std::abs(h) - 1.0) > 0.5) plaquette_zero = false;
    }
    const bool pass7 = worst_plateau <= 0.02 && worst_trivial <= 0.02 &&
                       worst_meas_plateau <= 0.2 && worst_meas_trivial <= 0.2 &&
                       worst_chern <= 0.05 && plaquette_zero;
    report(7, "TRS transition: chi plateaus, vanishing Chern, exact plaquette", pass7,
           fmt("oracle chi dev %.4f <= 0.02, measured %.4f <= 0.2, |C| %.4f <= 0.05",
               std::max(worst_plateau, worst_trivial),
               std::max(worst_meas_plateau, worst_meas_trivial), worst_chern));

    const double surf = fig4.summary["surface_max_abs_error"].get<double>();
    report(8, "sqrt(det g) surface matches the closed form away from |h| = 1",
           surf <= 0.02, fmt("max abs error %.4f <= 0.02", surf));
}

// ---------------------------------------------------------------- criterion 9
void criterion_trs_antisymmetry() {
    const auto fam = HamiltonianFamily::trs_band(0.5, 0.5);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    double worst_oracle = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double kx = u(rng), ky = u(rng);
        if (fam.control_vector({kx, ky}).norm() < 0.05) continue;
        const double f = bloch_qgt(fam, {kx, ky}, Band::ground).f12;
        const double fn = bloch_qgt(fam, {-kx, -ky}, Band::ground).f12;
        worst_oracle = std::max(worst_oracle, std::abs(f + fn));
    }

    // protocol-measured mirror rows
    RampConfig rc;
    rc.from = 0.0;
    rc.to = 2.0 * kPi;
    rc.fixed_other = 1.1;
    const BerryResult a = berry_response(fam, rc, 1);
    rc.fixed_other = 2.0 * kPi - 1.1;
    const BerryResult b = berry_response(fam, rc, 1);
    auto interp = [](const BerryResult& r, double x) {
        for (size_t i = 1; i < r.samples.size(); ++i) {
            if (r.samples[i].lambda >= x) {
                const auto& s0 = r.samples[i - 1];
                const auto& s1 = r.samples[i];
                const double w = (x - s0.lambda) / (s1.lambda - s0.lambda);
                return s0.f * (1.0 - w) + s1.f * w;
            }
        }
        return r.samples.back().f;
    };
    double worst_measured = 0.0;
    for (const auto& s : a.samples) {
        const double mirror = 2.0 * kPi - s.lambda;
        if (mirror < b.samples.front().lambda || mirror > b.samples.back().lambda) continue;
        worst_measured = std::max(worst_measured, std::abs(s.f + interp(b, mirror)));
    }
    const bool pass = worst_oracle <= 1e-10 && worst_measured <= 0.02;
    report(9, "curvature antisymmetry F(k) = -F(-k), oracle and measured", pass,
           fmt("oracle %.2e <= 1e-10, measured %.4f <= 0.02", worst_oracle, worst_measured));
}

// --------------------------------------------------------------- criterion 10
void criterion_determinism() {
    ScenarioConfig cfg = scenario_defaults("fig2_quench_sphere");
    cfg.theta_count = 7;
    cfg.phi_count = 16;
    cfg.shots = 400;
    cfg.seed = 11;

    auto serialize = [](const ScenarioResult& r) {
        std::string all;
        for (const auto& t : r.tables) all += t.to_csv();
        all += r.summary.dump();
        return all;
    };
    cfg.threads = 1;
    const std::string a = serialize(run_scenario(cfg));
    const std::string b = serialize(run_scenario(cfg));
    cfg.threads = 4;
    const std::string c = serialize(run_scenario(cfg));

    // golden file at a pinned reduced grid
    ScenarioConfig gold_cfg = scenario_defaults("fig2_quench_sphere");
    gold_cfg.theta_count = 5;
    gold_cfg.phi_count = 16;
    gold_cfg.threads = 2;
    const ScenarioResult gold_run = run_scenario(gold_cfg);
    std::string golden;
    {
        FILE* f = std::fopen((std::string(QGTLAB_GOLDEN_DIR) + "/fig2_ground_reduced.csv").c_str(), "rb");
        if (f) {
            char buf[4096];
            size_t n;
            while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) golden.append(buf, n);
            std::fclose(f);
        }
    }
    const bool pass = a == b && a == c && gold_run.tables[0].to_csv() == golden;
    report(10, "byte-identical reruns, worker-count independence, golden file", pass,
           fmt("rerun match %d, thread match %d, golden match %d", a == b ? 1 : 0,
               a == c ? 1 : 0, gold_run.tables[0].to_csv() == golden ? 1 : 0));
}

} // namespace

int main() {
    const int threads = default_thread_count();
    std::printf("acceptance battery (%d workers)\n", threads);
    criterion_three_routes();
    criterion_closed_forms();
    const ScenarioResult fig2 = fig2_result_default(threads);
    criterion_quench(fig2);
    criterion_drive(threads);
    criterion_berry_sphere();
    criterion_euler_integrator();
    criteria_trs_transition(threads);
    criterion_trs_antisymmetry();
    criterion_determinism();
    if (failures > 0) {
        std::printf("%d criteria FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
