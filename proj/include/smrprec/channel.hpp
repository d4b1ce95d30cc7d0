#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "smrprec/matrix.hpp"

namespace smrprec {

enum class ChannelModel { rayleigh, elaa_los, elaa_mixed };

ChannelModel channel_model_from_string(const std::string& name);
std::string to_string(ChannelModel model);

/// Base-station ULA plus user antenna geometry, all in meters.
struct ElaaGeometry {
    double bs_height = 10.0;
    double user_height = 1.5;
    double antenna_spacing = 0.0429;
    double carrier_hz = 3.5e9;
    std::vector<std::array<double, 2>> user_positions;  // (x, y) ground coordinates
    std::size_t antennas_per_user = 8;
};

/// Surrogate propagation constants; every knob lives here, not in code.
struct ElaaParams {
    double los_exponent = 2.0;
    double nlos_exponent = 3.5;
    double shadow_sigma_db = 4.0;  // NLoS only
    double los_decay_m = 50.0;     // p_los(d) = exp(-d / los_decay_m)
    double rician_k = 10.0;        // LoS links in mixed mode
};

struct ChannelRealization {
    ComplexMatrix h;  // N x M
    ChannelModel model = ChannelModel::rayleigh;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> los_mask;  // row-major N x M, ELAA only
};

/// i.i.d. CN(0,1) entries, normalized so ||H||_F^2 = N.
ChannelRealization rayleigh_channel(std::size_t n, std::size_t m, std::uint64_t seed);

/// Throws if the geometry is inconsistent or a user sits on the array.
void validate_geometry(const ElaaGeometry& geometry, std::size_t m);

ChannelRealization elaa_channel(const ElaaGeometry& geometry, const ElaaParams& params,
                                ChannelModel mode, std::size_t m, std::uint64_t seed);

/// Uniform user placement in the rectangle [x0,x1] x [y0,y1] in front of the
/// array, seeded so placement is reproducible.
std::vector<std::array<double, 2>> place_users(std::size_t users, double x0, double x1, double y0,
                                               double y1, std::uint64_t seed);

}  // namespace smrprec
