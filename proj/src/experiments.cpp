#include "qgt/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>

#include "qgt/parallel.hpp"

namespace qgt {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

HamiltonianFamily make_family(const ScenarioConfig& cfg) {
    if (cfg.family == "sphere") return HamiltonianFamily::bloch_sphere();
    if (cfg.family == "trs") return HamiltonianFamily::trs_band(cfg.h, cfg.alpha);
    throw ConfigError("unknown family: " + cfg.family);
}

ShotModel make_shots(const ScenarioConfig& cfg) {
    return cfg.shots > 0 ? ShotModel::finite(cfg.shots, cfg.seed) : ShotModel::exact();
}

QuenchConfig make_quench(const ScenarioConfig& cfg, Band band) {
    QuenchConfig q;
    q.delta_lambda = cfg.quench_delta_lambda;
    q.ramp_time = ns_to_sim_time(cfg.quench_ramp_ns, cfg.convention);
    if (cfg.quench_mode == "finite_ramp") {
        q.mode = QuenchMode::finite_ramp;
    } else if (cfg.quench_mode == "instantaneous") {
        q.mode = QuenchMode::instantaneous;
    } else {
        throw ConfigError("unknown quench mode: " + cfg.quench_mode);
    }
    q.band = band;
    q.shots = make_shots(cfg);
    return q;
}

DriveConfig make_drive(const ScenarioConfig& cfg, Band band) {
    DriveConfig d;
    d.relative_amplitude = cfg.drive_relative_amplitude;
    d.omega_min = cfg.drive_omega_min;
    d.omega_max = cfg.drive_omega_max;
    d.omega_count = cfg.drive_omega_count;
    d.t_meas = ns_to_sim_time(cfg.drive_t_meas_ns, cfg.convention);
    if (cfg.drive_normalization == "per-omega") {
        d.normalization = DriveNormalization::per_omega;
    } else if (cfg.drive_normalization == "at-gap") {
        d.normalization = DriveNormalization::at_gap;
    } else {
        throw ConfigError("unknown drive normalization: " + cfg.drive_normalization);
    }
    d.band = band;
    d.shots = make_shots(cfg);
    d.threads = cfg.threads;
    return d;
}

std::string config_hash_hex(const ScenarioConfig& cfg) {
    nlohmann::json j = cfg.to_json();
    j.erase("threads"); // execution parameter, not part of the result identity
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

void stamp(ResultTable& t, const ScenarioConfig& cfg, Provenance prov) {
    t.metadata["scenario"] = cfg.name;
    t.metadata["config_hash"] = config_hash_hex(cfg);
    t.metadata["omega_convention"] = to_string(cfg.convention);
    t.metadata["seed"] = std::to_string(cfg.seed);
    t.metadata["provenance"] = to_string(prov);
    t.metadata["code_version"] = "qgtlab 1.0";
}

std::string band_name(Band b) { return b == Band::ground ? "ground" : "excited"; }

// phi-independent sphere metrics broadcast onto a (theta x phi) grid.
MetricGrid broadcast_sphere_grid(const GridAxis& theta_axis, int phi_count,
                                 const std::vector<MetricEstimate>& per_theta,
                                 Provenance prov) {
    MetricGrid mg;
    mg.spec.axis1 = theta_axis;
    mg.spec.axis2 = {0.0, 2.0 * kPi, phi_count, Sampling::open_node, true};
    mg.provenance = prov;
    mg.g11.resize(mg.spec.size());
    mg.g12.resize(mg.spec.size());
    mg.g22.resize(mg.spec.size());
    for (int i = 0; i < theta_axis.count; ++i) {
        for (int j = 0; j < phi_count; ++j) {
            const int idx = mg.spec.index(i, j);
            mg.g11[idx] = per_theta[static_cast<size_t>(i)].g11;
            mg.g12[idx] = per_theta[static_cast<size_t>(i)].g12;
            mg.g22[idx] = per_theta[static_cast<size_t>(i)].g22;
        }
    }
    return mg;
}

struct SphereSweepRow {
    MetricEstimate est;
    QGTValue oracle;
    bool warned = false;
};

nlohmann::json sphere_band_summary(const ScenarioConfig& cfg, const GridAxis& axis,
                                   const std::vector<SphereSweepRow>& rows,
                                   Provenance prov) {
    std::vector<MetricEstimate> est(rows.size()), oracle(rows.size());
    double max_err = 0.0;
    int warnings = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        est[i] = rows[i].est;
        oracle[i] = {rows[i].oracle.g11, rows[i].oracle.g22, rows[i].oracle.g12};
        max_err = std::max({max_err, std::abs(est[i].g11 - oracle[i].g11),
                            std::abs(est[i].g22 - oracle[i].g22),
                            std::abs(est[i].g12 - oracle[i].g12)});
        if (rows[i].warned) ++warnings;
    }
    const MetricGrid measured = broadcast_sphere_grid(axis, cfg.phi_count, est, prov);
    const MetricGrid reference =
        broadcast_sphere_grid(axis, cfg.phi_count, oracle, Provenance::oracle);
    const InvariantResult chi = euler_characteristic_diag(measured);
    const InvariantResult chi_ref = euler_characteristic_diag(reference);
    nlohmann::json j;
    j["chi"] = chi.value;
    j["chi_err"] = 0.5 * chi.refinement_delta;
    j["chi_oracle_grid"] = chi_ref.value;
    j["max_abs_metric_error"] = max_err;
    j["sudden_approximation_warnings"] = warnings;
    return j;
}

ScenarioResult run_fig2(const ScenarioConfig& cfg) {
    const HamiltonianFamily family = HamiltonianFamily::bloch_sphere();
    const GridAxis axis = interior_theta_axis(cfg.theta_count);

    ScenarioResult result;
    result.summary["scenario"] = cfg.name;
    result.summary["seed"] = cfg.seed;
    result.summary["omega_convention"] = to_string(cfg.convention);
    result.summary["config_hash"] = config_hash_hex(cfg);

    for (Band band : {Band::ground, Band::excited}) {
        const QuenchConfig qcfg = make_quench(cfg, band);
        auto rows = parallel_map<SphereSweepRow>(axis.count, cfg.threads, [&](int i) {
            const ParameterPoint p{axis.node(i), 0.0};
            const QuenchResult q = quench_metric(family, p, qcfg);
            SphereSweepRow row;
            row.est = {q.g11, q.g22, q.g12};
            row.oracle = bloch_qgt(family, p, band);
            row.warned = q.sudden_approximation_warning;
            return row;
        });

        ResultTable t;
        t.name = "fig2_" + band_name(band);
        t.columns = {"theta",      "g_tt_est",    "g_pp_est",    "g_tp_est",
                     "g_tt_oracle", "g_pp_oracle", "g_tp_oracle"};
        stamp(t, cfg, Provenance::quench);
        t.metadata["band"] = band_name(band);
        for (int i = 0; i < axis.count; ++i) {
            const auto& r = rows[static_cast<size_t>(i)];
            t.add_row({axis.node(i), r.est.g11, r.est.g22, r.est.g12, r.oracle.g11,
                       r.oracle.g22, r.oracle.g12});
        }
        result.tables.push_back(std::move(t));
        result.summary["bands"][band_name(band)] =
            sphere_band_summary(cfg, axis, rows, Provenance::quench);
    }
    return result;
}

ScenarioResult run_fig3(const ScenarioConfig& cfg) {
    const HamiltonianFamily family = HamiltonianFamily::bloch_sphere();

    ScenarioResult result;
    result.summary["scenario"] = cfg.name;
    result.summary["seed"] = cfg.seed;
    result.summary["omega_convention"] = to_string(cfg.convention);
    result.summary["config_hash"] = config_hash_hex(cfg);

    // Excitation map n+(omega, t) at theta0 = pi/2.
    DriveConfig map_cfg = make_drive(cfg, Band::ground);
    map_cfg.omega_count = cfg.map_omega_count;
    std::vector<double> times(static_cast<size_t>(cfg.map_time_count));
    for (int k = 0; k < cfg.map_time_count; ++k) {
        times[static_cast<size_t>(k)] = map_cfg.t_meas * (k + 1) / cfg.map_time_count;
    }
    const ParameterPoint map_point{kPi / 2.0, 0.0};
    const auto map = drive_excitation_map(family, map_point, map_cfg, times);

    ResultTable map_table;
    map_table.name = "fig3_map";
    map_table.columns = {"omega", "t", "n_plus"};
    stamp(map_table, cfg, Provenance::drive);
    const double dwm = (map_cfg.omega_max - map_cfg.omega_min) / (map_cfg.omega_count - 1);
    for (int i = 0; i < map_cfg.omega_count; ++i) {
        for (int k = 0; k < cfg.map_time_count; ++k) {
            map_table.add_row({map_cfg.omega_min + i * dwm, times[static_cast<size_t>(k)],
                               map[static_cast<size_t>(i)][static_cast<size_t>(k)]});
        }
    }
    result.tables.push_back(std::move(map_table));

    double ridge_omega = map_cfg.omega_min;
    double ridge_peak = -1.0;
    for (int i = 0; i < map_cfg.omega_count; ++i) {
        const double v = map[static_cast<size_t>(i)].back();
        if (v > ridge_peak) {
            ridge_peak = v;
            ridge_omega = map_cfg.omega_min + i * dwm;
        }
    }

    // Metric extraction over theta.
    const GridAxis axis = interior_theta_axis(cfg.drive_theta_count);
    const DriveConfig dcfg = make_drive(cfg, Band::ground);
    std::vector<SphereSweepRow> rows(static_cast<size_t>(axis.count));
    for (int i = 0; i < axis.count; ++i) {
        const ParameterPoint p{axis.node(i), 0.0};
        const DriveResult d = drive_metric(family, p, dcfg);
        rows[static_cast<size_t>(i)].est = {d.g11, d.g22, d.g12};
        rows[static_cast<size_t>(i)].oracle = bloch_qgt(family, p, Band::ground);
    }

    ResultTable t;
    t.name = "fig3_metric";
    t.columns = {"theta",      "g_tt_est",    "g_pp_est",    "g_tp_est",
                 "g_tt_oracle", "g_pp_oracle", "g_tp_oracle"};
    stamp(t, cfg, Provenance::drive);
    for (int i = 0; i < axis.count; ++i) {
        const auto& r = rows[static_cast<size_t>(i)];
        t.add_row({axis.node(i), r.est.g11, r.est.g22, r.est.g12, r.oracle.g11,
                   r.oracle.g22, r.oracle.g12});
    }
    result.tables.push_back(std::move(t));

    result.summary["bands"]["ground"] =
        sphere_band_summary(cfg, axis, rows, Provenance::drive);
    result.summary["ridge_omega"] = ridge_omega;
    result.summary["gap"] = family.control_vector(map_point).norm();
    // g_tt extracted at the theta node nearest pi/2
    int mid = 0;
    for (int i = 0; i < axis.count; ++i) {
        if (std::abs(axis.node(i) - kPi / 2.0) < std::abs(axis.node(mid) - kPi / 2.0)) mid = i;
    }
    result.summary["g_tt_mid_theta"] = rows[static_cast<size_t>(mid)].est.g11;
    result.summary["theta_mid"] = axis.node(mid);
    return result;
}

ScenarioResult run_fig4(const ScenarioConfig& cfg) {
    ScenarioResult result;
    result.summary["scenario"] = cfg.name;
    result.summary["seed"] = cfg.seed;
    result.summary["omega_convention"] = to_string(cfg.convention);
    result.summary["config_hash"] = config_hash_hex(cfg);

    ResultTable surface;
    surface.name = "fig4_surface";
    surface.columns = {"h", "kx", "sqrt_det_g_measured", "sqrt_det_g_theory"};
    stamp(surface, cfg, Provenance::quench);

    ResultTable inv;
    inv.name = "fig4_invariants";
    inv.columns = {"h",           "chi_oracle",   "chi_measured", "chi_unsigned_oracle",
                   "chern_oracle", "chern_plaquette", "chern_berry", "near_transition",
                   "degenerate"};
    stamp(inv, cfg, Provenance::quench);

    GridSpec torus;
    torus.axis1 = {0.0, 2.0 * kPi, cfg.kx_count, Sampling::midpoint, true};
    torus.axis2 = {0.0, 2.0 * kPi, cfg.ky_count, Sampling::midpoint, true};

    GridSpec curv_spec;
    curv_spec.axis1 = {0.0, 2.0 * kPi, 64, Sampling::midpoint, true};
    curv_spec.axis2 = {0.0, 2.0 * kPi, 64, Sampling::midpoint, true};

    GridSpec plaq_spec;
    plaq_spec.axis1 = {0.0, 2.0 * kPi, cfg.plaquette_grid, Sampling::midpoint, true};
    plaq_spec.axis2 = {0.0, 2.0 * kPi, cfg.plaquette_grid, Sampling::midpoint, true};

    nlohmann::json hs = nlohmann::json::array(), chi_o = nlohmann::json::array(),
                   chi_m = nlohmann::json::array(), chern_o = nlohmann::json::array(),
                   chern_p = nlohmann::json::array(), chern_b = nlohmann::json::array();
    double surface_max_err = 0.0;

    for (double h : cfg.h_values) {
        const HamiltonianFamily family = HamiltonianFamily::trs_band(h, cfg.alpha);
        const bool degenerate = std::abs(std::abs(h) - 1.0) < 1e-12;
        const bool near = std::abs(std::abs(h) - 1.0) < 0.25;

        // Quench-measured metric surface.
        const QuenchConfig qcfg = make_quench(cfg, Band::ground);
        MetricGrid measured;
        measured.spec = torus;
        measured.provenance = Provenance::quench;
        measured.g11.resize(torus.size());
        measured.g12.resize(torus.size());
        measured.g22.resize(torus.size());
        const auto node_metrics =
            parallel_map<MetricEstimate>(torus.size(), cfg.threads, [&](int idx) {
                const int i = idx / torus.axis2.count, j = idx % torus.axis2.count;
                const QuenchResult q = quench_metric(family, torus.point(i, j), qcfg);
                return MetricEstimate{q.g11, q.g22, q.g12};
            });
        for (int idx = 0; idx < torus.size(); ++idx) {
            measured.g11[static_cast<size_t>(idx)] = node_metrics[static_cast<size_t>(idx)].g11;
            measured.g22[static_cast<size_t>(idx)] = node_metrics[static_cast<size_t>(idx)].g22;
            measured.g12[static_cast<size_t>(idx)] = node_metrics[static_cast<size_t>(idx)].g12;
        }
        const std::vector<double> rows = sqrt_det_g_rows(measured);
        std::vector<double> kx_nodes(static_cast<size_t>(torus.axis1.count));
        for (int i = 0; i < torus.axis1.count; ++i) {
            kx_nodes[static_cast<size_t>(i)] = torus.axis1.node(i);
            const double theory = trs_sqrt_det_g_closed_form(h, cfg.alpha, kx_nodes[static_cast<size_t>(i)]);
            surface.add_row({h, kx_nodes[static_cast<size_t>(i)], rows[static_cast<size_t>(i)], theory});
            if (!near) surface_max_err = std::max(surface_max_err, std::abs(rows[static_cast<size_t>(i)] - theory));
        }

        // Invariants.
        double chi_oracle = kNaN, chi_measured = kNaN, chi_unsigned = kNaN;
        bool near_flag = near;
        if (!degenerate) {
            const TrsEulerResult to_ = euler_trs_reduced(h, cfg.alpha, 1024);
            chi_oracle = to_.chi;
            chi_unsigned = to_.chi_unsigned;
            near_flag = near_flag || to_.near_transition;
            chi_measured = euler_trs_reduced(h, kx_nodes, rows).chi;
        }

        const CurvatureGrid cg = oracle_curvature_grid(family, curv_spec, Band::ground);
        const double chern_oracle = chern_number_diag(cg).value;

        double chern_plaq = kNaN;
        try {
            chern_plaq = chern_plaquette(family, plaq_spec, Band::ground);
        } catch (const GridTooCoarseError&) {
        }

        double chern_berry = kNaN;
        if (!near) {
            RampConfig ramp;
            ramp.sweep_axis = 0;
            ramp.from = 0.0;
            ramp.to = 2.0 * kPi;
            ramp.band = Band::ground;
            const double dky = 2.0 * kPi / cfg.berry_ky_rows;
            const auto row_integrals =
                parallel_map<double>(cfg.berry_ky_rows, cfg.threads, [&](int r) {
                    RampConfig rc = ramp;
                    rc.fixed_other = (r + 0.5) * dky;
                    const BerryResult br = berry_response(family, rc, 1);
                    return integrate_berry_samples(br, 0.0, 2.0 * kPi);
                });
            double acc = 0.0;
            for (double v : row_integrals) acc += v;
            chern_berry = acc * dky / (2.0 * kPi);
        }

        inv.add_row({h, chi_oracle, chi_measured, chi_unsigned, chern_oracle, chern_plaq,
                     chern_berry, near_flag ? 1.0 : 0.0, degenerate ? 1.0 : 0.0});
        hs.push_back(h);
        chi_o.push_back(chi_oracle);
        chi_m.push_back(chi_measured);
        chern_o.push_back(chern_oracle);
        chern_p.push_back(chern_plaq);
        chern_b.push_back(chern_berry);
    }

    result.tables.push_back(std::move(surface));
    result.tables.push_back(std::move(inv));
    result.summary["h"] = std::move(hs);
    result.summary["chi_oracle"] = std::move(chi_o);
    result.summary["chi_measured"] = std::move(chi_m);
    result.summary["chern_oracle"] = std::move(chern_o);
    result.summary["chern_plaquette"] = std::move(chern_p);
    result.summary["chern_berry"] = std::move(chern_b);
    result.summary["surface_max_abs_error"] = surface_max_err;
    return result;
}

ScenarioResult run_custom(const ScenarioConfig& cfg) {
    const HamiltonianFamily family = make_family(cfg);
    GridSpec spec;
    if (cfg.family == "sphere") {
        spec.axis1 = {0.0, kPi, cfg.theta_count, Sampling::midpoint, false};
        spec.axis2 = {0.0, 2.0 * kPi, cfg.phi_count, Sampling::open_node, true};
    } else {
        spec.axis1 = {0.0, 2.0 * kPi, cfg.kx_count, Sampling::midpoint, true};
        spec.axis2 = {0.0, 2.0 * kPi, cfg.ky_count, Sampling::midpoint, true};
    }

    ScenarioResult result;
    result.summary["scenario"] = cfg.name;
    result.summary["seed"] = cfg.seed;
    result.summary["omega_convention"] = to_string(cfg.convention);
    result.summary["config_hash"] = config_hash_hex(cfg);

    ResultTable t;
    t.name = "custom_oracle_qgt";
    t.columns = {"lambda1", "lambda2", "g11", "g12", "g22", "f12_ground", "f12_excited"};
    stamp(t, cfg, Provenance::oracle);
    for (int i = 0; i < spec.axis1.count; ++i) {
        for (int j = 0; j < spec.axis2.count; ++j) {
            const ParameterPoint p = spec.point(i, j);
            const QGTValue g = bloch_qgt(family, p, Band::ground);
            const QGTValue e = bloch_qgt(family, p, Band::excited);
            t.add_row({p.lambda1, p.lambda2, g.g11, g.g12, g.g22, g.f12, e.f12});
        }
    }
    result.tables.push_back(std::move(t));
    return result;
}

} // namespace

GridAxis interior_theta_axis(int count) {
    const double d = kPi / (count + 1);
    return {0.5 * d, kPi - 0.5 * d, count, Sampling::midpoint, false};
}

nlohmann::json ScenarioConfig::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["family"] = family;
    j["h"] = h;
    j["alpha"] = alpha;
    j["omega_convention"] = qgt::to_string(convention);
    j["quench_delta_lambda"] = quench_delta_lambda;
    j["quench_ramp_ns"] = quench_ramp_ns;
    j["quench_mode"] = quench_mode;
    j["drive_relative_amplitude"] = drive_relative_amplitude;
    j["drive_omega_min"] = drive_omega_min;
    j["drive_omega_max"] = drive_omega_max;
    j["drive_omega_count"] = drive_omega_count;
    j["drive_t_meas_ns"] = drive_t_meas_ns;
    j["drive_normalization"] = drive_normalization;
    j["map_omega_count"] = map_omega_count;
    j["map_time_count"] = map_time_count;
    j["theta_count"] = theta_count;
    j["phi_count"] = phi_count;
    j["drive_theta_count"] = drive_theta_count;
    j["kx_count"] = kx_count;
    j["ky_count"] = ky_count;
    j["h_values"] = h_values;
    j["oracle_grid"] = oracle_grid;
    j["plaquette_grid"] = plaquette_grid;
    j["berry_ky_rows"] = berry_ky_rows;
    j["shots"] = shots;
    j["seed"] = seed;
    j["threads"] = threads;
    return j;
}

void ScenarioConfig::apply_overrides(const nlohmann::json& j) {
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "name") name = value.get<std::string>();
            else if (key == "family") family = value.get<std::string>();
            else if (key == "h") h = value.get<double>();
            else if (key == "alpha") alpha = value.get<double>();
            else if (key == "omega_convention")
                convention = omega_convention_from_string(value.get<std::string>());
            else if (key == "quench_delta_lambda") quench_delta_lambda = value.get<double>();
            else if (key == "quench_ramp_ns") quench_ramp_ns = value.get<double>();
            else if (key == "quench_mode") quench_mode = value.get<std::string>();
            else if (key == "drive_relative_amplitude")
                drive_relative_amplitude = value.get<double>();
            else if (key == "drive_omega_min") drive_omega_min = value.get<double>();
            else if (key == "drive_omega_max") drive_omega_max = value.get<double>();
            else if (key == "drive_omega_count") drive_omega_count = value.get<int>();
            else if (key == "drive_t_meas_ns") drive_t_meas_ns = value.get<double>();
            else if (key == "drive_normalization")
                drive_normalization = value.get<std::string>();
            else if (key == "map_omega_count") map_omega_count = value.get<int>();
            else if (key == "map_time_count") map_time_count = value.get<int>();
            else if (key == "theta_count") theta_count = value.get<int>();
            else if (key == "phi_count") phi_count = value.get<int>();
            else if (key == "drive_theta_count") drive_theta_count = value.get<int>();
            else if (key == "kx_count") kx_count = value.get<int>();
            else if (key == "ky_count") ky_count = value.get<int>();
            else if (key == "h_values") h_values = value.get<std::vector<double>>();
            else if (key == "oracle_grid") oracle_grid = value.get<int>();
            else if (key == "plaquette_grid") plaquette_grid = value.get<int>();
            else if (key == "berry_ky_rows") berry_ky_rows = value.get<int>();
            else if (key == "shots") shots = value.get<long>();
            else if (key == "seed") seed = value.get<std::uint64_t>();
            else if (key == "threads") threads = value.get<int>();
            else throw ConfigError("unknown config key: " + key);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad value for config key '" + key + "': " + e.what());
        }
    }
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
    ScenarioConfig base;
    if (j.contains("name")) base = scenario_defaults(j.at("name").get<std::string>());
    base.apply_overrides(j);
    return base;
}

ScenarioConfig scenario_defaults(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    if (name == "fig2_quench_sphere" || name == "fig3_drive_sphere") {
        cfg.family = "sphere";
    } else if (name == "fig4_trs_transition") {
        cfg.family = "trs";
    } else if (name != "custom") {
        throw ConfigError("unknown scenario: " + name);
    }
    return cfg;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    if (cfg.name == "fig2_quench_sphere") return run_fig2(cfg);
    if (cfg.name == "fig3_drive_sphere") return run_fig3(cfg);
    if (cfg.name == "fig4_trs_transition") return run_fig4(cfg);
    if (cfg.name == "custom") return run_custom(cfg);
    throw ConfigError("unknown scenario: " + cfg.name);
}

std::vector<std::string> write_scenario_result(const ScenarioResult& result,
                                               const std::string& out_dir,
                                               const std::string& format) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    for (const auto& t : result.tables) {
        const std::string ext = format == "json" ? ".json" : ".csv";
        const std::string path = (fs::path(out_dir) / (t.name + ext)).string();
        write_text_file(path, format == "json" ? t.to_json() : t.to_csv());
        written.push_back(path);
    }
    const std::string summary_path = (fs::path(out_dir) / "summary.json").string();
    write_text_file(summary_path, result.summary.dump(2) + "\n");
    written.push_back(summary_path);

    // Timestamp lives in a sidecar so the data files stay byte-reproducible.
    nlohmann::json info;
    info["written_at_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    write_text_file((fs::path(out_dir) / "run_info.json").string(), info.dump(2) + "\n");
    return written;
}

} // namespace qgt
