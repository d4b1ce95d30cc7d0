#pragma once

#include <vector>

#include "smrprec/matrix.hpp"

namespace smrprec {

/// Gray-mapped square 64-QAM with unit average energy.
struct QamSymbol {
    int index = 0;  // 0..63
    cx point;
};

QamSymbol qam64_map(int index);
std::vector<QamSymbol> qam64_map(const std::vector<int>& indices);

/// Minimum-distance hard decision; ties break to the lowest index.
int qam64_demap(cx received);
std::vector<int> qam64_demap(const std::vector<cx>& received);

}  // namespace smrprec
