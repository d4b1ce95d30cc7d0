#include "smrprec/channel.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace smrprec {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

void normalize_to_n(ComplexMatrix& h) {
    const double target = static_cast<double>(h.rows());
    const double scale = std::sqrt(target / frobenius_norm_sq(h));
    h *= cx{scale, 0.0};
}

cx circular_gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    return cx{re, im} * std::sqrt(0.5);
}

}  // namespace

ChannelModel channel_model_from_string(const std::string& name) {
    if (name == "rayleigh") return ChannelModel::rayleigh;
    if (name == "elaa-los") return ChannelModel::elaa_los;
    if (name == "elaa-mixed") return ChannelModel::elaa_mixed;
    throw std::invalid_argument("unknown channel model: " + name);
}

std::string to_string(ChannelModel model) {
    switch (model) {
        case ChannelModel::rayleigh:
            return "rayleigh";
        case ChannelModel::elaa_los:
            return "elaa-los";
        case ChannelModel::elaa_mixed:
            return "elaa-mixed";
    }
    return "unknown";
}

ChannelRealization rayleigh_channel(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 1 || n > m) throw std::invalid_argument("rayleigh_channel: need 1 <= N <= M");
    std::mt19937_64 rng(seed);
    ComplexMatrix h(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) h(i, j) = circular_gaussian(rng);
    normalize_to_n(h);
    return {std::move(h), ChannelModel::rayleigh, seed, {}};
}

void validate_geometry(const ElaaGeometry& geometry, std::size_t m) {
    if (m == 0) throw std::invalid_argument("elaa geometry: M must be positive");
    if (geometry.user_positions.empty())
        throw std::invalid_argument("elaa geometry: no user positions");
    if (geometry.antennas_per_user == 0)
        throw std::invalid_argument("elaa geometry: antennas_per_user must be positive");
    const double half_wavelength = 0.5 * kSpeedOfLight / geometry.carrier_hz;
    if (std::abs(geometry.antenna_spacing - half_wavelength) > 0.01 * half_wavelength) {
        std::ostringstream msg;
        msg << "elaa geometry: spacing " << geometry.antenna_spacing
            << " m is not within 1% of half wavelength " << half_wavelength << " m";
        throw std::invalid_argument(msg.str());
    }
}

ChannelRealization elaa_channel(const ElaaGeometry& geometry, const ElaaParams& params,
                                ChannelModel mode, std::size_t m, std::uint64_t seed) {
    if (mode != ChannelModel::elaa_los && mode != ChannelModel::elaa_mixed)
        throw std::invalid_argument("elaa_channel: mode must be elaa-los or elaa-mixed");
    validate_geometry(geometry, m);

    const std::size_t n = geometry.user_positions.size() * geometry.antennas_per_user;
    if (n > m) throw std::invalid_argument("elaa_channel: need N <= M");
    const double wavelength = kSpeedOfLight / geometry.carrier_hz;
    const double spacing = geometry.antenna_spacing;
    const double dz = geometry.bs_height - geometry.user_height;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    ComplexMatrix h(n, m);
    std::vector<std::uint8_t> los_mask(n * m, 1);

    // BS antennas along the x axis, centered at the origin.
    const double bs_origin = -0.5 * static_cast<double>(m - 1) * spacing;
    for (std::size_t row = 0; row < n; ++row) {
        const std::size_t user = row / geometry.antennas_per_user;
        const std::size_t k = row % geometry.antennas_per_user;
        const double ux = geometry.user_positions[user][0] + static_cast<double>(k) * spacing;
        const double uy = geometry.user_positions[user][1];
        for (std::size_t col = 0; col < m; ++col) {
            const double bx = bs_origin + static_cast<double>(col) * spacing;
            const double d = std::sqrt((ux - bx) * (ux - bx) + uy * uy + dz * dz);
            if (d < 1e-6) {
                std::ostringstream msg;
                msg << "elaa_channel: user " << user << " antenna " << k
                    << " coincides with BS antenna " << col;
                throw std::invalid_argument(msg.str());
            }
            const cx los_ray = std::polar(1.0, -2.0 * M_PI * d / wavelength);
            cx g;
            bool is_los = true;
            if (mode == ChannelModel::elaa_los) {
                g = std::pow(d, -0.5 * params.los_exponent) * los_ray;
            } else {
                is_los = uniform(rng) < std::exp(-d / params.los_decay_m);
                const cx scatter = circular_gaussian(rng);
                const double shadow_db = params.shadow_sigma_db * gauss(rng);
                if (is_los) {
                    const double kf = params.rician_k;
                    g = std::pow(d, -0.5 * params.los_exponent) *
                        (std::sqrt(kf / (kf + 1.0)) * los_ray +
                         std::sqrt(1.0 / (kf + 1.0)) * scatter);
                } else {
                    g = std::pow(d, -0.5 * params.nlos_exponent) *
                        std::pow(10.0, shadow_db / 20.0) * scatter;
                }
            }
            h(row, col) = g;
            los_mask[row * m + col] = is_los ? 1 : 0;
        }
    }
    normalize_to_n(h);
    return {std::move(h), mode, seed, std::move(los_mask)};
}

std::vector<std::array<double, 2>> place_users(std::size_t users, double x0, double x1, double y0,
                                               double y1, std::uint64_t seed) {
    if (users == 0) throw std::invalid_argument("place_users: need at least one user");
    if (!(x1 >= x0) || !(y1 >= y0)) throw std::invalid_argument("place_users: empty rectangle");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> ux(x0, x1);
    std::uniform_real_distribution<double> uy(y0, y1);
    std::vector<std::array<double, 2>> out;
    out.reserve(users);
    for (std::size_t u = 0; u < users; ++u) out.push_back({ux(rng), uy(rng)});
    return out;
}

}  // namespace smrprec
