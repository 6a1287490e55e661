// qgtlab: virtual experiments measuring the quantum geometric tensor of
// two-level Hamiltonian families, plus the topological invariants built
// from it (Euler characteristic, Chern number).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qgt/experiments.hpp"
#include "qgt/parallel.hpp"

namespace {

using namespace qgt;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::string threads = "auto";
    std::string convention = "angular";
    std::string format = "csv";
    std::string drive_normalization = "per-omega";
    long shots = 0;
};

int resolve_threads(const std::string& s) {
    if (s == "auto") return default_thread_count();
    const int n = std::atoi(s.c_str());
    if (n < 1) throw ConfigError("--threads must be a positive integer or 'auto'");
    return n;
}

HamiltonianFamily family_from(const std::string& name, double h, double alpha) {
    if (name == "sphere") return HamiltonianFamily::bloch_sphere();
    if (name == "trs") return HamiltonianFamily::trs_band(h, alpha);
    throw ConfigError("unknown family: " + name);
}

Band band_from(const std::string& name) {
    if (name == "ground") return Band::ground;
    if (name == "excited") return Band::excited;
    throw ConfigError("unknown band: " + name);
}

json qgt_to_json(const QGTValue& q) {
    return json{{"g11", q.g11}, {"g12", q.g12}, {"g22", q.g22}, {"f12", q.f12}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json scenario_overrides_from(const GlobalOpts& g, const std::vector<std::string>& sets) {
    json overrides = json::object();
    if (!g.config_path.empty()) {
        std::ifstream f(g.config_path);
        if (!f) throw ConfigError("cannot open config file: " + g.config_path);
        try {
            overrides = json::parse(f);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
    }
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value: " + kv);
        const std::string key = kv.substr(0, eq), raw = kv.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::exception&) {
            value = raw; // bare strings are fine
        }
        overrides[key] = value;
    }
    return overrides;
}

int run_reproduce(const GlobalOpts& g, const std::string& fig,
                  const std::vector<std::string>& sets) {
    std::string name;
    if (fig == "fig2") name = "fig2_quench_sphere";
    else if (fig == "fig3") name = "fig3_drive_sphere";
    else if (fig == "fig4") name = "fig4_trs_transition";
    else throw ConfigError("reproduce expects fig2, fig3 or fig4");

    ScenarioConfig cfg = scenario_defaults(name);
    cfg.seed = g.seed;
    cfg.threads = resolve_threads(g.threads);
    cfg.convention = omega_convention_from_string(g.convention);
    cfg.drive_normalization = g.drive_normalization;
    cfg.shots = g.shots;
    const json overrides = scenario_overrides_from(g, sets);
    cfg.apply_overrides(overrides);
    if (cfg.name != name) throw ConfigError("config name does not match requested figure");

    const ScenarioResult result = run_scenario(cfg);
    const auto files = write_scenario_result(result, g.out_dir, g.format);
    json done;
    done["written"] = files;
    emit(done);
    return 0;
}

int run_selftest(const GlobalOpts& g) {
    const int threads = resolve_threads(g.threads);
    (void)threads;
    int failures = 0;
    auto check = [&](const char* label, bool ok, double worst) {
        std::printf("[%s] %s (worst %.3e)\n", ok ? "ok" : "FAIL", label, worst);
        if (!ok) ++failures;
    };

    // Three-route agreement on scattered points.
    {
        double worst = 0.0;
        std::uint64_t s = 12345;
        auto next01 = [&s] {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            return static_cast<double>(s % 100000) / 100000.0;
        };
        for (const auto& fam : {HamiltonianFamily::bloch_sphere(),
                                HamiltonianFamily::trs_band(0.5),
                                HamiltonianFamily::trs_band(2.0)}) {
            for (int i = 0; i < 40; ++i) {
                ParameterPoint p{0.15 + next01() * (kPi - 0.3), next01() * 2.0 * kPi};
                if (fam.kind() == FamilyKind::trs_band) p.lambda1 = 0.15 + next01() * (2.0 * kPi - 0.3);
                for (Band b : {Band::ground, Band::excited}) {
                    const QGTValue qs = qgt_spectral(fam, p, b);
                    const QGTValue qb = bloch_qgt(fam, p, b);
                    const MetricEstimate qf = metric_overlap_fd(fam, p, b);
                    worst = std::max({worst, std::abs(qs.g11 - qb.g11),
                                      std::abs(qs.g22 - qb.g22), std::abs(qs.g12 - qb.g12),
                                      std::abs(qs.f12 - qb.f12), std::abs(qs.g11 - qf.g11),
                                      std::abs(qs.g22 - qf.g22), std::abs(qs.g12 - qf.g12)});
                }
            }
        }
        check("oracle three-route agreement", worst < 1e-5, worst);
    }

    // Sphere closed forms.
    {
        double worst = 0.0;
        for (int i = 1; i < 20; ++i) {
            const double theta = i * kPi / 20.0;
            const QGTValue q = qgt_spectral(HamiltonianFamily::bloch_sphere(), {theta, 0.4},
                                            Band::ground);
            worst = std::max({worst, std::abs(q.g11 - 0.25),
                              std::abs(q.g22 - std::pow(std::sin(theta), 2) / 4.0),
                              std::abs(q.g12), std::abs(q.f12 + 0.5 * std::sin(theta))});
        }
        check("sphere closed-form metric and curvature", worst < 1e-9, worst);
    }

    // Euler characteristic of the oracle sphere metric and a flat torus.
    {
        GridSpec spec;
        spec.axis1 = {0.0, kPi, 100, Sampling::midpoint, false};
        spec.axis2 = {0.0, 2.0 * kPi, 100, Sampling::open_node, true};
        const MetricGrid mg =
            oracle_metric_grid(HamiltonianFamily::bloch_sphere(), spec, Band::ground);
        const double chi = euler_characteristic_diag(mg).value;

        MetricGrid flat;
        flat.spec.axis1 = {0.0, 2.0 * kPi, 32, Sampling::open_node, true};
        flat.spec.axis2 = {0.0, 2.0 * kPi, 32, Sampling::open_node, true};
        flat.g11.assign(flat.spec.size(), 1.0);
        flat.g12.assign(flat.spec.size(), 0.0);
        flat.g22.assign(flat.spec.size(), 1.0);
        const double chi_flat = euler_characteristic_diag(flat).value;
        const double worst = std::max(std::abs(chi - 2.0), std::abs(chi_flat));
        check("euler characteristic (sphere 2, flat torus 0)", worst < 5e-3, worst);
    }

    // Plaquette Chern numbers.
    {
        GridSpec spec;
        spec.axis1 = {0.0, kPi, 16, Sampling::midpoint, false};
        spec.axis2 = {0.0, 2.0 * kPi, 16, Sampling::open_node, true};
        const int c_plus =
            chern_plaquette(HamiltonianFamily::bloch_sphere(), spec, Band::excited);
        const int c_minus =
            chern_plaquette(HamiltonianFamily::bloch_sphere(), spec, Band::ground);
        GridSpec torus;
        torus.axis1 = {0.0, 2.0 * kPi, 16, Sampling::midpoint, true};
        torus.axis2 = {0.0, 2.0 * kPi, 16, Sampling::midpoint, true};
        const int c_trs = chern_plaquette(HamiltonianFamily::trs_band(1.5), torus, Band::ground);
        const bool ok = c_plus == 1 && c_minus == -1 && c_trs == 0;
        check("plaquette chern numbers (+1/-1/0)", ok, ok ? 0.0 : 1.0);
    }

    if (failures > 0) throw std::runtime_error("selftest failed");
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"two-level quantum-geometry virtual experiments"};
    app.set_help_flag("--help", "print help"); // leave --h free for the band parameter
    app.require_subcommand(1);
    app.fallthrough(true); // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON scenario config file");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--seed", g.seed, "seed fixing all stochastic behavior");
    app.add_option("--threads", g.threads, "worker count or 'auto'");
    app.add_option("--omega-convention", g.convention, "angular | cyclic")
        ->check(CLI::IsMember({"angular", "cyclic"}));
    app.add_option("--format", g.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--drive-normalization", g.drive_normalization, "per-omega | at-gap")
        ->check(CLI::IsMember({"per-omega", "at-gap"}));
    app.add_option("--shots", g.shots, "tomography shots per probe (0 = exact)");

    std::string family = "sphere", band = "ground";
    double h = 0.5, alpha = 0.5, p1 = kPi / 2.0, p2 = 0.0;

    auto add_point_opts = [&](CLI::App* c) {
        c->set_help_flag("--help", "print help");
        c->add_option("--family", family, "sphere | trs");
        c->add_option("--h", h, "trs band parameter");
        c->add_option("--alpha", alpha, "trs band coupling");
        c->add_option("--band", band, "ground | excited");
        c->add_option("--p1", p1, "first parameter (theta or kx)");
        c->add_option("--p2", p2, "second parameter (phi or ky)");
    };

    auto* oracle_cmd = app.add_subcommand("oracle", "QGT at a point by three routes");
    double fd_delta = 1e-4;
    add_point_opts(oracle_cmd);
    oracle_cmd->add_option("--delta", fd_delta, "overlap probe step");

    auto* quench_cmd = app.add_subcommand("quench", "sudden-quench metric estimate");
    double delta_lambda = kPi / 16.0, ramp_ns = 5.0;
    std::string quench_mode = "finite_ramp";
    add_point_opts(quench_cmd);
    quench_cmd->add_option("--delta-lambda", delta_lambda, "quench amplitude (radians)");
    quench_cmd->add_option("--ramp-ns", ramp_ns, "ramp time in ns");
    quench_cmd->add_option("--mode", quench_mode, "finite_ramp | instantaneous")
        ->check(CLI::IsMember({"finite_ramp", "instantaneous"}));

    auto* drive_cmd = app.add_subcommand("drive", "periodic-drive metric estimate");
    double amplitude = 0.1, omega_min = 0.5, omega_max = 3.5, t_meas_ns = 200.0;
    int omega_count = 61;
    add_point_opts(drive_cmd);
    drive_cmd->add_option("--amplitude", amplitude, "relative amplitude E/omega");
    drive_cmd->add_option("--omega-min", omega_min, "window lower edge");
    drive_cmd->add_option("--omega-max", omega_max, "window upper edge");
    drive_cmd->add_option("--omega-count", omega_count, "frequency grid size");
    drive_cmd->add_option("--t-meas-ns", t_meas_ns, "measurement time in ns");

    auto* berry_cmd = app.add_subcommand("berry", "quasi-adiabatic curvature ramp");
    int sweep_axis = 0, measure_axis = 1;
    double ramp_from = 0.0, ramp_to = kPi, fixed_other = 0.0, duration = 0.0;
    std::string envelope = "sin_squared";
    add_point_opts(berry_cmd);
    berry_cmd->add_option("--sweep-axis", sweep_axis, "ramped parameter index (0|1)");
    berry_cmd->add_option("--measure-axis", measure_axis, "transverse force index (0|1)");
    berry_cmd->add_option("--from", ramp_from, "ramp start");
    berry_cmd->add_option("--to", ramp_to, "ramp end");
    berry_cmd->add_option("--fixed", fixed_other, "fixed transverse coordinate");
    berry_cmd->add_option("--duration", duration, "ramp duration (0 = auto)");
    berry_cmd->add_option("--envelope", envelope, "linear | sin_squared")
        ->check(CLI::IsMember({"linear", "sin_squared"}));

    auto* invariants_cmd = app.add_subcommand("invariants", "chi and Chern numbers");
    int grid = 200;
    add_point_opts(invariants_cmd);
    invariants_cmd->add_option("--grid", grid, "reference grid nodes per axis");

    auto* reproduce_cmd = app.add_subcommand("reproduce", "run a named scenario");
    std::string fig;
    std::vector<std::string> sets;
    reproduce_cmd->add_option("figure", fig, "fig2 | fig3 | fig4")->required();
    reproduce_cmd->add_option("--set", sets, "override config key=value (repeatable)");

    auto* selftest_cmd = app.add_subcommand("selftest", "fast consistency battery");

    app.parse(argc, argv);

    const OmegaConvention convention = omega_convention_from_string(g.convention);
    const ShotModel shots = g.shots > 0 ? ShotModel::finite(g.shots, g.seed) : ShotModel::exact();

    if (oracle_cmd->parsed()) {
        const HamiltonianFamily fam = family_from(family, h, alpha);
        const ParameterPoint p{p1, p2};
        const Band b = band_from(band);
        json out;
        out["point"] = {{"lambda1", p1}, {"lambda2", p2}};
        out["band"] = band;
        out["spectral"] = qgt_to_json(qgt_spectral(fam, p, b));
        const MetricEstimate fd = metric_overlap_fd(fam, p, b, fd_delta);
        out["overlap_fd"] = {{"g11", fd.g11}, {"g12", fd.g12}, {"g22", fd.g22}};
        out["bloch"] = qgt_to_json(bloch_qgt(fam, p, b));
        emit(out);
        return 0;
    }
    if (quench_cmd->parsed()) {
        const HamiltonianFamily fam = family_from(family, h, alpha);
        QuenchConfig qc;
        qc.delta_lambda = delta_lambda;
        qc.ramp_time = ns_to_sim_time(ramp_ns, convention);
        qc.mode = quench_mode == "instantaneous" ? QuenchMode::instantaneous
                                                 : QuenchMode::finite_ramp;
        qc.band = band_from(band);
        qc.shots = shots;
        const QuenchResult r = quench_metric(fam, {p1, p2}, qc);
        const QGTValue o = bloch_qgt(fam, {p1, p2}, qc.band);
        json out;
        out["estimate"] = {{"g11", r.g11}, {"g22", r.g22}, {"g12", r.g12}};
        out["oracle"] = qgt_to_json(o);
        out["probes"] = {r.p_probe[0], r.p_probe[1], r.p_probe[2]};
        out["sudden_approximation_warning"] = r.sudden_approximation_warning;
        emit(out);
        return 0;
    }
    if (drive_cmd->parsed()) {
        const HamiltonianFamily fam = family_from(family, h, alpha);
        DriveConfig dc;
        dc.relative_amplitude = amplitude;
        dc.omega_min = omega_min;
        dc.omega_max = omega_max;
        dc.omega_count = omega_count;
        dc.t_meas = ns_to_sim_time(t_meas_ns, convention);
        dc.band = band_from(band);
        dc.normalization = g.drive_normalization == "at-gap" ? DriveNormalization::at_gap
                                                             : DriveNormalization::per_omega;
        dc.shots = shots;
        dc.threads = resolve_threads(g.threads);
        const DriveResult r = drive_metric(fam, {p1, p2}, dc);
        const QGTValue o = bloch_qgt(fam, {p1, p2}, dc.band);
        json out;
        out["estimate"] = {{"g11", r.g11}, {"g22", r.g22}, {"g12", r.g12}};
        out["oracle"] = qgt_to_json(o);
        emit(out);
        return 0;
    }
    if (berry_cmd->parsed()) {
        const HamiltonianFamily fam = family_from(family, h, alpha);
        RampConfig rc;
        rc.sweep_axis = sweep_axis;
        rc.from = ramp_from;
        rc.to = ramp_to;
        rc.fixed_other = fixed_other;
        rc.ramp_duration = duration;
        rc.envelope = envelope == "linear" ? RampEnvelope::linear : RampEnvelope::sin_squared;
        rc.band = band_from(band);
        const BerryResult r = berry_response(fam, rc, measure_axis);
        json out;
        json lam = json::array(), f = json::array();
        for (const auto& s : r.samples) {
            lam.push_back(s.lambda);
            f.push_back(s.f);
        }
        out["lambda"] = std::move(lam);
        out["f"] = std::move(f);
        out["peak_excitation"] = r.peak_excitation;
        out["integral"] = integrate_berry_samples(r, std::min(ramp_from, ramp_to),
                                                  std::max(ramp_from, ramp_to));
        emit(out);
        return 0;
    }
    if (invariants_cmd->parsed()) {
        json out;
        out["family"] = family;
        if (family == "sphere") {
            GridSpec spec;
            spec.axis1 = {0.0, kPi, grid, Sampling::midpoint, false};
            spec.axis2 = {0.0, 2.0 * kPi, grid, Sampling::open_node, true};
            const HamiltonianFamily fam = HamiltonianFamily::bloch_sphere();
            out["chi"] = euler_characteristic_diag(oracle_metric_grid(fam, spec, Band::ground)).value;
            out["chern"] = chern_number_diag(oracle_curvature_grid(fam, spec, Band::ground)).value;
            out["chern_excited"] =
                chern_number_diag(oracle_curvature_grid(fam, spec, Band::excited)).value;
            GridSpec plaq = spec;
            plaq.axis1.count = plaq.axis2.count = 24;
            out["chern_plaquette"] = chern_plaquette(fam, plaq, Band::ground);
        } else {
            const HamiltonianFamily fam = HamiltonianFamily::trs_band(h, alpha);
            out["h"] = h;
            const TrsEulerResult chi = euler_trs_reduced(h, alpha, 2048);
            out["chi"] = chi.chi;
            out["chi_unsigned"] = chi.chi_unsigned;
            out["near_transition"] = chi.near_transition;
            GridSpec torus;
            torus.axis1 = {0.0, 2.0 * kPi, std::min(grid, 128), Sampling::midpoint, true};
            torus.axis2 = {0.0, 2.0 * kPi, std::min(grid, 128), Sampling::midpoint, true};
            out["chern"] = chern_number_diag(oracle_curvature_grid(fam, torus, Band::ground)).value;
            GridSpec plaq = torus;
            plaq.axis1.count = plaq.axis2.count = 24;
            out["chern_plaquette"] = chern_plaquette(fam, plaq, Band::ground);
        }
        emit(out);
        return 0;
    }
    if (reproduce_cmd->parsed()) return run_reproduce(g, fig, sets);
    if (selftest_cmd->parsed()) return run_selftest(g);
    throw ConfigError("no subcommand");
}

} // namespace

int main(int argc, char** argv) {
    try {
        try {
            return dispatch(argc, argv);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) return 0; // --help
            throw ConfigError(e.what());
        }
    } catch (const qgt::ConfigError& e) {
        nlohmann::json err;
        err["error"] = {{"type", "config"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = {{"type", "numerical"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    }
}
