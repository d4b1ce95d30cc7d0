#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smrprec/channel.hpp"
#include "smrprec/precoding.hpp"
#include "smrprec/solver.hpp"

namespace smrprec {

/// Flat key=value simulation configuration ('#' starts a comment).
struct SimulationConfig {
    std::size_t m = 128;
    std::size_t n = 16;
    ChannelModel channel = ChannelModel::elaa_los;
    std::size_t users = 2;
    std::size_t antennas_per_user = 8;

    std::vector<double> power_grid_db = {40, 45, 50, 55, 60, 65};
    std::size_t trials = 1000;       // trial cap per power point
    std::size_t min_errors = 100;    // auto-extension target
    std::size_t vectors_per_trial = 10;
    std::uint64_t base_seed = 1;

    std::vector<InverseMethod> methods = {InverseMethod::exact};
    PrecoderKind precoder = PrecoderKind::zf;
    double alpha = std::nan("");  // NaN = auto (scenario default)
    double xi = std::nan("");     // NaN = auto
    double tol = 1e-10;
    int max_iter = 200;

    // ELAA surrogate knobs.
    ElaaParams elaa;
    double carrier_hz = 3.5e9;
    double antenna_spacing = 0.0429;
    double bs_height = 10.0;
    double user_height = 1.5;
    // Default cell keeps users inside the array's angular resolution so the
    // LoS Wishart matrix is strongly correlated (dominant singular value).
    double cell_x_min = -1.0;
    double cell_x_max = 1.0;
    double cell_y_min = 300.0;
    double cell_y_max = 500.0;
};

SimulationConfig parse_config(const std::string& text);
SimulationConfig parse_config_file(const std::string& path);

/// Canonical text form; parse(serialize(c)) == c.
std::string serialize_config(const SimulationConfig& config);

/// FNV-1a 64-bit over the canonical serialization, as a hex string.
std::string config_hash(const SimulationConfig& config);

ChannelScenario scenario_for(const SimulationConfig& config);

/// Per-method inversion options derived from a config.
InvertOptions invert_options_for(const SimulationConfig& config, InverseMethod method);

/// Channel realization for one Monte-Carlo trial; seed = base_seed + trial.
ChannelRealization make_channel(const SimulationConfig& config, std::uint64_t seed);

}  // namespace smrprec
