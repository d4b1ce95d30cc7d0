#include "smrprec/qam.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace smrprec {

namespace {

// Average energy of the +-1, +-3, +-5, +-7 square grid is 42.
const double kScale = 1.0 / std::sqrt(42.0);

int gray_decode3(int g) {
    int b = g;
    b ^= b >> 1;
    b ^= b >> 2;
    return b & 7;
}

double axis_level(int bits3) { return 2.0 * gray_decode3(bits3) - 7.0; }

const std::array<cx, 64>& constellation() {
    static const std::array<cx, 64> table = [] {
        std::array<cx, 64> t;
        for (int idx = 0; idx < 64; ++idx)
            t[idx] = cx{axis_level(idx >> 3), axis_level(idx & 7)} * kScale;
        return t;
    }();
    return table;
}

}  // namespace

QamSymbol qam64_map(int index) {
    if (index < 0 || index > 63) throw std::invalid_argument("qam64_map: index out of range");
    return {index, constellation()[static_cast<std::size_t>(index)]};
}

std::vector<QamSymbol> qam64_map(const std::vector<int>& indices) {
    std::vector<QamSymbol> out;
    out.reserve(indices.size());
    for (int i : indices) out.push_back(qam64_map(i));
    return out;
}

int qam64_demap(cx received) {
    const auto& table = constellation();
    int best = 0;
    double best_d = std::norm(received - table[0]);
    for (int idx = 1; idx < 64; ++idx) {
        const double d = std::norm(received - table[static_cast<std::size_t>(idx)]);
        if (d < best_d) {
            best_d = d;
            best = idx;
        }
    }
    return best;
}

std::vector<int> qam64_demap(const std::vector<cx>& received) {
    std::vector<int> out;
    out.reserve(received.size());
    for (cx v : received) out.push_back(qam64_demap(v));
    return out;
}

}  // namespace smrprec
