#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qgt/geometry.hpp"
#include "qgt/protocols.hpp"
#include "qgt/table.hpp"
#include "qgt/units.hpp"

namespace qgt {

// One reproducible sweep: family + protocol + grids + seed. JSON config files
// mirror this struct field-for-field; CLI flags override single fields.
struct ScenarioConfig {
    std::string name = "fig2_quench_sphere"; // fig2_quench_sphere | fig3_drive_sphere |
                                             // fig4_trs_transition | custom
    std::string family = "sphere";           // sphere | trs
    double h = 0.5;
    double alpha = 0.5;
    OmegaConvention convention = OmegaConvention::angular;

    // quench protocol
    double quench_delta_lambda = std::numbers::pi / 16.0;
    double quench_ramp_ns = 5.0;
    std::string quench_mode = "finite_ramp"; // finite_ramp | instantaneous

    // drive protocol
    double drive_relative_amplitude = 0.1;
    double drive_omega_min = 0.5;
    double drive_omega_max = 3.5;
    int drive_omega_count = 61;
    double drive_t_meas_ns = 200.0;
    std::string drive_normalization = "per-omega"; // per-omega | at-gap
    int map_omega_count = 121;
    int map_time_count = 81;

    // sweep grids
    int theta_count = 19; // interior nodes k pi/(n+1), k = 1..n
    int phi_count = 64;   // broadcast axis for the sphere Euler integration
    int drive_theta_count = 9;
    int kx_count = 40;
    int ky_count = 8;
    std::vector<double> h_values = {-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
    int oracle_grid = 200;    // reference grids for oracle invariants
    int plaquette_grid = 24;
    int berry_ky_rows = 6;

    long shots = 0; // 0 = exact tomography
    std::uint64_t seed = 1;
    int threads = 1;

    nlohmann::json to_json() const;
    static ScenarioConfig from_json(const nlohmann::json& j);
    void apply_overrides(const nlohmann::json& j);
};

ScenarioConfig scenario_defaults(const std::string& name);

struct ScenarioResult {
    std::vector<ResultTable> tables;
    nlohmann::json summary;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Writes every table (csv or json per `format`), summary.json, and the
// run_info.json timestamp sidecar into `out_dir`.
std::vector<std::string> write_scenario_result(const ScenarioResult& result,
                                               const std::string& out_dir,
                                               const std::string& format);

// The nodes k pi/(n+1), k = 1..n, as a midpoint axis on [d/2, pi - d/2].
GridAxis interior_theta_axis(int count);

} // namespace qgt
